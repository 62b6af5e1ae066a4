#pragma once

// Structure audits of the graded pieces of the standard span: orthogonal
// block decomposition of the Gram matrix by charge sector, determinants,
// parity, discriminant invariants, and exact minimum-norm enumeration of a
// selected block.

#include <optional>
#include <vector>

#include "latvoa/pairing.hpp"
#include "latvoa/voa.hpp"

namespace latvoa {

// Sectors sharing one charge norm.  Under the hermitian pairing each charge
// spans its own sector; under the bilinear pairing opposite charges merge.
struct SectorClass {
  Int charge_norm;
  int64_t sectors = 0;
  int64_t sector_rank = 0;
  bool uniform = true;  // all sector Grams in the class coincide
  RatMatrix gram;       // first sector Gram in frame order (shared if uniform)
  Rat det;
  bool odd = false;  // integral sector with an odd diagonal entry exists
};

struct DegreeAudit {
  int64_t degree = 0;
  int64_t rank = 0;
  Rat det;
  bool odd = false;
  Int denominator_scale;         // least d > 0 with d * Gram integral
  AbelianInvariants invariants;  // elementary divisors > 1 of the Gram;
                                 // only when every sector is integral and
                                 // nonsingular
  std::vector<SectorClass> classes;  // ascending charge norm
  std::optional<Rat> min_norm_value;
  std::optional<int64_t> min_norm_count;  // attaining vectors, both signs
};

// Audits the weight-n piece of the standard span sector by sector.  When
// min_norm_class is non-negative, the sectors of that charge norm get an
// exact minimum-norm enumeration.
DegreeAudit audit_degree(const Voa& v, int64_t n, PairKind kind,
                         const Int& min_norm_class = Int(-1), int threads = 1);

// Weight-one summary, including whether the full Gram equals the lattice
// Gram on the oscillator block plus an identity block on the charges, in
// basis order.
struct WeightOneAudit {
  int64_t rank = 0;
  Rat det;
  bool odd = false;
  bool lattice_plus_identity = false;
  AbelianInvariants invariants;
};

WeightOneAudit weight_one_audit(const Voa& v, PairKind kind, int threads = 1);

// Weight-two zero-charge block: the intersections of its span with the two
// oscillator-shape coordinate subspaces (two mode-one factors / one mode-two
// factor), the glue quotient over their orthogonal sum, and the exact
// minimum norm by enumeration.
struct WeightTwoZeroSplit {
  int64_t rank = 0;
  Rat det;
  bool odd = false;
  int64_t pair_rank = 0;  // intersection with the two-factor subspace
  Rat pair_det;
  int64_t single_rank = 0;  // intersection with the one-factor subspace
  Rat single_det;
  AbelianInvariants glue;  // block over the sum of the two intersections
  Rat min;
  int64_t min_count = 0;  // attaining vectors, both signs
};

WeightTwoZeroSplit weight_two_zero_split(const Voa& v, PairKind kind);

}  // namespace latvoa
