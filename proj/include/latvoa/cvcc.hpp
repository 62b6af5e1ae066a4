#pragma once

// Conformal vectors of central charge one half: construction from norm-four
// lattice vectors or from embedded doubled-E8 sublattices, exact checks of
// the defining mode relations, and the order-two involution that acts as -1
// on the sixteenth-family eigenvectors of the weight-one mode.

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "latvoa/vertex.hpp"

namespace latvoa {

enum class IsingType { AA1, EE8 };

struct IsingVector {
  IsingType type = IsingType::AA1;
  VoaElement e;
  LatticeVector alpha;   // AA1: the norm-four source vector
  IntMatrix embedding;   // EE8: generator rows in ambient coordinates
  std::vector<int> phi;  // EE8: sign character value on each generator row
};

// (1/16) alpha(-1)^2 + sign (1/4)(e^alpha + e^{-alpha}) for (alpha,alpha)=4.
IsingVector cvcc_aa1(const Voa& v, const LatticeVector& alpha, int sign);

// (1/32) q + (1/32) sum_a phi(a) e^a over the 240 norm-four vectors a of
// the row span E of `embedding`, with q the dual-Gram contraction of the
// generator rows (twice the conformal vector when E spans the lattice).
// The coefficients are the unique pair putting the element at central
// charge one half.  E must have determinant 2^8 and minimum norm 4; phi
// gives one sign per generator row and extends multiplicatively.
IsingVector cvcc_ee8(const Voa& v, const IntMatrix& embedding,
                     const std::vector<int>& phi);

struct IsingCheckOptions {
  int64_t bracket_degree = 3;   // bracket identity tested on pieces 0..this
  int64_t bracket_samples = 0;  // cap of basis vectors per piece; 0 = all
  int64_t mode_range = 2;       // bracket indices range over [-this, this]
};

struct IsingReport {
  bool modes_ok = false;    // e1e=2e, e2e=0, e3e=(1/4)vac, eke=0 for k>=4
  bool bracket_ok = false;  // [L(m),L(n)] = (m-n)L(m+n)+d_{m+n,0}(m^3-m)/24
  std::vector<std::string> failures;
  bool ok() const { return modes_ok && bracket_ok; }
};

// Verifies the central-charge-one-half relations for a weight-two candidate,
// with L(n) realized as the (n+1)-mode of e.  Failures are listed, not
// thrown.
IsingReport ising_check(const Voa& v, const VoaElement& e,
                        const IsingCheckOptions& opt = {});

struct MiyamotoData {
  int64_t degree = 0;
  RatMatrix mode_one;  // row-vector action of e_1 on the degree frame
  std::vector<std::pair<Rat, int64_t>> spectrum;  // eigenvalue, multiplicity
  RatMatrix involution;  // -1 on the sixteenth family, +1 elsewhere
  bool has_sixteenth = false;
};

// Exact eigendecomposition of e_1 on the degree-n piece.  Every eigenvalue
// must lie in {0, 1/2, 1/16} + Z>=0 and the eigenspaces must fill the piece;
// anything else throws invariant_violation.  The computation splits into the
// blocks of charges connected by the exponential terms of e, so large frames
// with shallow charge mixing stay cheap.
MiyamotoData miyamoto(const Voa& v, const VoaElement& e, int64_t degree);

// The involution of e applied to a single homogeneous element; only the
// charge blocks meeting the support of x are decomposed.
VoaElement miyamoto_apply(const Voa& v, const VoaElement& e,
                          const VoaElement& x);

struct StabilizationDegree {
  int64_t degree = 0;
  bool span_preserved = false;
  // Invariant factors of R_n / (R_n meet t R_n) and t R_n / (R_n meet t R_n).
  AbelianInvariants form_over_meet;
  AbelianInvariants image_over_meet;
};

struct StabilizationReport {
  std::vector<StabilizationDegree> degrees;
  bool ok() const;
};

// Checks that the involution of e preserves the rational span of each graded
// module of r with degree <= max_degree, and reports the integral index data
// of the image against the module.  When r contains a weight-two module, e
// must lie in its rational span.  Modules whose canonical bases respect the
// charge blocks are processed blockwise.
StabilizationReport stabilization_check(const Voa& v, const VoaElement& e,
                                        const std::vector<GradedZForm>& r,
                                        int64_t max_degree);

}  // namespace latvoa
