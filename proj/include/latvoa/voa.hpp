#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "latvoa/fock.hpp"
#include "latvoa/lattice.hpp"
#include "latvoa/zmodule.hpp"

namespace latvoa {

// Sign-valued group 2-cocycle attached to the Gram matrix, given by the bit
// form eps(a,b) = (-1)^{a^T E b} with E strictly lower = G mod 2 and
// E_ii = (G_ii / 2) mod 2.  Then eps(a,a) = (-1)^{(a,a)/2} and
// eps(a,b) eps(b,a) = (-1)^{(a,b)}.
class Cocycle {
 public:
  explicit Cocycle(const IntMatrix& gram);
  int sign(const LatticeVector& a, const LatticeVector& b) const;  // +1 or -1
  std::size_t rank() const { return e_.size(); }

 private:
  std::vector<std::vector<uint8_t>> e_;
};

// Basis monomial of the charged oscillator space: an oscillator monomial
// times the charge `alpha` (coordinates in the lattice basis).
struct VoaKey {
  FockMonomial mono;
  LatticeVector charge;

  friend bool operator==(const VoaKey& a, const VoaKey& b) {
    return a.charge == b.charge && a.mono == b.mono;
  }
  friend bool operator<(const VoaKey& a, const VoaKey& b) {
    if (a.charge != b.charge) return a.charge < b.charge;
    return a.mono < b.mono;
  }
};

// Rational linear combination of charged monomials.
class VoaElement {
 public:
  std::map<VoaKey, Rat> terms;

  static VoaElement zero() { return VoaElement{}; }
  static VoaElement vacuum(std::size_t rank);
  static VoaElement charge_vector(LatticeVector alpha);  // the element 1*e^alpha
  static VoaElement from_fock(const FockPolynomial& p, LatticeVector charge);

  bool is_zero() const { return terms.empty(); }
  void add_term(VoaKey k, const Rat& c);
  VoaElement& operator+=(const VoaElement& o);
  VoaElement& operator-=(const VoaElement& o);
  VoaElement& operator*=(const Rat& c);
  std::string str() const;

  friend bool operator==(const VoaElement& a, const VoaElement& b) {
    return a.terms == b.terms;
  }
};

VoaElement operator+(VoaElement a, const VoaElement& b);
VoaElement operator-(VoaElement a, const VoaElement& b);
VoaElement operator*(const Rat& c, VoaElement a);

// Lattice context: the even lattice together with its sign cocycle.
class Voa {
 public:
  explicit Voa(EvenLattice lattice)
      : lattice_(std::move(lattice)), cocycle_(lattice_.gram()) {}

  const EvenLattice& lattice() const { return lattice_; }
  const Cocycle& cocycle() const { return cocycle_; }
  std::size_t rank() const { return lattice_.rank(); }

  // Weight of a charged monomial: oscillator degree + (charge, charge)/2.
  Int key_weight(const VoaKey& k) const;
  // True when all terms share one weight; writes it to wt.
  bool homogeneous_weight(const VoaElement& u, Int* wt) const;

 private:
  EvenLattice lattice_;
  Cocycle cocycle_;
};

// Ordered ambient coordinate system for one weight: every charged monomial of
// that weight.  Charges come in (norm, lex) order with zero first; monomials
// within a charge are sorted.
struct DegreeFrame {
  int64_t degree = 0;
  std::vector<VoaKey> keys;
  std::map<VoaKey, std::size_t> index;
  std::vector<LatticeVector> charges;
  // Half-open key ranges, one per charge, in `charges` order.
  std::vector<std::pair<std::size_t, std::size_t>> charge_ranges;
};

DegreeFrame degree_frame(const Voa& v, int64_t n);
// Coordinates of u in the frame; throws invalid_input on a key outside it.
std::vector<Rat> coordinatize(const DegreeFrame& f, const VoaElement& u);
VoaElement element_from_coords(const DegreeFrame& f,
                               const std::vector<Rat>& coords);

// Basis family for the weight-n piece.
enum class BasisVariant {
  STANDARD_H,            // products of complete generators of lattice basis
                         // vectors times e^alpha
  SCHUR_PRIMAL,          // Schur elements of lattice basis vectors, e^alpha
  SCHUR_DUAL_HERMITIAN,  // Schur elements of the dual basis, e^alpha
  SCHUR_DUAL_BILINEAR,   // Schur elements of the negated dual basis, e^{-alpha}
};

struct BasisElement {
  ColoredPartition cp;
  LatticeVector charge;
  VoaElement element;
  std::string desc;
};

// Elements indexed by (charge from the frame, colored partition of the
// leftover weight); all variants share the index order of STANDARD_H.
std::vector<BasisElement> degree_basis(const Voa& v, int64_t n,
                                       BasisVariant variant);

// Number of basis elements of weight n without enumerating them.
Int graded_dimension(const Voa& v, int64_t n);
// Coefficient of q^n in prod_k (1-q^k)^{-d}.
Int colored_partition_count(int32_t d, int64_t n);

// Weight-n piece of a graded integral span.
struct GradedZForm {
  int64_t degree = 0;
  ZModule module;
};

// Span of the STANDARD_H basis in frame coordinates (the full standard form).
GradedZForm standard_form(const Voa& v, int64_t n);
// Span of any basis variant in frame coordinates.
GradedZForm variant_form(const Voa& v, int64_t n, BasisVariant variant);

std::string charge_str(const LatticeVector& a);

}  // namespace latvoa
