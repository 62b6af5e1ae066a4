#pragma once

// Finitely generated subgroups of Q^n, stored canonically as
//   (1/denom) * rowspan_Z(mat)
// with mat in Hermite normal form and gcd(denom, content(mat)) == 1.
// Equality of canonical forms is equality of subgroups.

#include <optional>
#include <vector>

#include "latvoa/hnf.hpp"

namespace latvoa {

// Elementary divisors > 1 of a finite abelian quotient, in divisibility order.
using AbelianInvariants = std::vector<Int>;

class ZModule {
 public:
  ZModule() : denom_(1), ambient_(0) {}

  // Span of the given rational rows.
  static ZModule from_rows(const RatMatrix& rows);
  static ZModule from_rows(const IntMatrix& rows);
  // Z^n as a module over itself.
  static ZModule full(std::size_t n);
  // The zero module in ambient dimension n.
  static ZModule zero(std::size_t n);

  std::size_t rank() const { return basis_.h.rows(); }
  std::size_t ambient_dim() const { return ambient_; }
  const Int& denominator() const { return denom_; }
  const IntMatrix& numerator_basis() const { return basis_.h; }

  // Basis rows as rational vectors (numerator_basis / denominator).
  RatMatrix basis_rows() const;

  bool operator==(const ZModule& o) const {
    return ambient_ == o.ambient_ && denom_ == o.denom_ && basis_.h == o.basis_.h;
  }
  bool operator!=(const ZModule& o) const { return !(*this == o); }

  bool contains(const std::vector<Rat>& v) const;
  bool contains(const ZModule& sub) const;

  // Integer coordinates of v in the basis; nullopt if v is not a member.
  std::optional<std::vector<Int>> coordinates(const std::vector<Rat>& v) const;

  // Rational coordinates of v in the basis; nullopt if v is outside the
  // rational span.
  std::optional<std::vector<Rat>> rational_coordinates(
      const std::vector<Rat>& v) const;

  bool rational_span_contains(const ZModule& other) const;

  friend ZModule sum(const ZModule& a, const ZModule& b);
  friend ZModule intersect(const ZModule& a, const ZModule& b);

 private:
  void canonicalize(RatMatrix rows);

  Int denom_;
  HnfResult basis_;
  std::size_t ambient_;
};

ZModule sum(const ZModule& a, const ZModule& b);
ZModule intersect(const ZModule& a, const ZModule& b);

// Index result for index_of: finite value or INFINITE (rank drop).
struct IndexResult {
  bool finite = true;
  Int value = 1;  // meaningful when finite
};

// [super : sub] for sub a submodule of super with the same rational span.
// Throws containment_error if sub is not contained in super as integer
// modules; returns INFINITE if rank(sub) < rank(super).
// Pre: rational-span containment.
IndexResult index_of(const ZModule& sub, const ZModule& super);

// Elementary divisors > 1 of super/sub.  Pre: sub a finite-index submodule
// of super (same rank); throws containment_error / invalid_input otherwise.
AbelianInvariants quotient_invariants(const ZModule& sub, const ZModule& super);

// Matrix t of the map v -> v * action restricted to the module, in its basis
// coordinates.  Throws invariant_violation (with a witness row in the
// message) if the module is not invariant under the action.
IntMatrix restrict_action(const ZModule& mod, const RatMatrix& action);

// Submodule { x in mod : x * action == x } (as a module in the same ambient).
ZModule fixed_submodule(const ZModule& mod, const std::vector<RatMatrix>& actions);

// Submodule { x in mod : x * action_j == sign_j * x for all j }.
ZModule eigen_submodule(const ZModule& mod, const std::vector<RatMatrix>& actions,
                        const std::vector<int>& signs);

// Image { x * action : x in mod }.
ZModule image_module(const ZModule& mod, const RatMatrix& action);

}  // namespace latvoa
