#pragma once

// Even positive-definite lattices presented by a Gram matrix, plus the small
// named catalog used by the command-line tool.

#include <cstdint>
#include <string>
#include <vector>

#include "latvoa/zmodule.hpp"

namespace latvoa {

// Coordinates of a lattice element in the fixed basis.  Desk-scale vectors;
// all bilinear data goes through exact Int arithmetic.
using LatticeVector = std::vector<std::int64_t>;

class EvenLattice {
 public:
  // Validates: symmetric, even diagonal, positive definite.
  explicit EvenLattice(IntMatrix gram);

  std::size_t rank() const { return gram_.rows(); }
  const IntMatrix& gram() const { return gram_; }

  Int inner(const LatticeVector& a, const LatticeVector& b) const;
  Int norm(const LatticeVector& a) const { return inner(a, a); }

  // Gram matrix of the dual basis (inverse of the Gram matrix).
  RatMatrix dual_gram() const;

  // Elementary divisors > 1 of L*/L.
  AbelianInvariants discriminant_group() const;

  Int determinant() const { return det(gram_); }

 private:
  IntMatrix gram_;
};

// Catalog names: A1, A2, A(n), D(n), E8, EE8 (= E8 with doubled form),
// RANK1(2k).  Also accepts "@path" to read a Gram file: first line the rank,
// then rank lines of rank integers.
struct LatticeSpec {
  std::string name;
};
EvenLattice resolve_lattice(const LatticeSpec& spec);

IntMatrix e8_gram();
IntMatrix a_n_gram(std::size_t n);
IntMatrix d_n_gram(std::size_t n);

LatticeVector add(const LatticeVector& a, const LatticeVector& b);
LatticeVector sub(const LatticeVector& a, const LatticeVector& b);
LatticeVector negate(const LatticeVector& a);
bool is_zero(const LatticeVector& a);

}  // namespace latvoa
