#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "latvoa/ints.hpp"
#include "latvoa/matrix.hpp"

namespace latvoa {

// One oscillator factor: basis direction `idx` in negative mode `-mode`
// (mode >= 1).
struct FockFactor {
  int32_t idx = 0;
  int32_t mode = 1;

  friend bool operator==(const FockFactor& a, const FockFactor& b) {
    return a.idx == b.idx && a.mode == b.mode;
  }
  friend bool operator<(const FockFactor& a, const FockFactor& b) {
    if (a.idx != b.idx) return a.idx < b.idx;
    return a.mode < b.mode;
  }
};

// Commutative product of oscillator factors, kept sorted.
struct FockMonomial {
  std::vector<FockFactor> factors;

  static FockMonomial one() { return FockMonomial{}; }

  void normalize();
  int64_t degree() const;
  std::string str() const;

  friend bool operator==(const FockMonomial& a, const FockMonomial& b) {
    return a.factors == b.factors;
  }
  friend bool operator<(const FockMonomial& a, const FockMonomial& b);
};

// Rational linear combination of oscillator monomials.
class FockPolynomial {
 public:
  std::map<FockMonomial, Rat> terms;

  static FockPolynomial zero() { return FockPolynomial{}; }
  static FockPolynomial one();
  static FockPolynomial monomial(FockMonomial m, const Rat& c = Rat(1));

  bool is_zero() const { return terms.empty(); }
  // True when every term has the same degree; writes it to degree_out.
  bool is_homogeneous(int64_t* degree_out = nullptr) const;

  void add_term(FockMonomial m, const Rat& c);
  FockPolynomial& operator+=(const FockPolynomial& o);
  FockPolynomial& operator-=(const FockPolynomial& o);
  FockPolynomial& operator*=(const Rat& c);
  std::string str() const;

  friend bool operator==(const FockPolynomial& a, const FockPolynomial& b) {
    return a.terms == b.terms;
  }
};

FockPolynomial operator+(FockPolynomial a, const FockPolynomial& b);
FockPolynomial operator-(FockPolynomial a, const FockPolynomial& b);
FockPolynomial operator*(const Rat& c, FockPolynomial a);
FockPolynomial fock_mul(const FockPolynomial& a, const FockPolynomial& b);

// Substitute each basis direction i by the linear combination sum_j S(j,i) * j
// in every factor.
FockPolynomial fock_apply_linear(const FockMonomial& m, const IntMatrix& s);
FockPolynomial fock_apply_linear(const FockPolynomial& p, const IntMatrix& s);

// Complete homogeneous generators h_0..h_max for the vector with coordinates
// `coords`: sum_n h_n w^n = exp(sum_{k>=1} coords(-k) w^k / k).  Satisfies the
// recurrence n*h_n = sum_{k=1}^n p_k h_{n-k} with p_k the degree-k linear
// oscillator in direction `coords`.
std::vector<FockPolynomial> complete_series(const std::vector<Rat>& coords,
                                            int64_t max_n);

// Schur element s_lambda(coords) = det(h_{lambda_i + j - i}) (Jacobi-Trudi).
FockPolynomial schur_element(const std::vector<Rat>& coords,
                             const std::vector<int64_t>& lambda);

// Partitions of n in non-increasing part order; partitions(0) = { {} }.
std::vector<std::vector<int64_t>> partitions(int64_t n);

// A multiset of (color, part) pairs: a d-colored partition.  Parts are kept
// sorted by descending part, then ascending color.
struct ColoredPartition {
  std::vector<std::pair<int32_t, int64_t>> parts;

  int64_t total() const;
  std::string str() const;

  friend bool operator==(const ColoredPartition& a, const ColoredPartition& b) {
    return a.parts == b.parts;
  }
  friend bool operator<(const ColoredPartition& a, const ColoredPartition& b) {
    return a.parts < b.parts;
  }
};

// All d-colored partitions of n, sorted.
std::vector<ColoredPartition> colored_partitions(int32_t d, int64_t n);

// The basis element attached to a colored partition: the product over its
// pairs (c, k) of h_k in basis direction c.
FockPolynomial colored_partition_element(int32_t d, const ColoredPartition& cp);

}  // namespace latvoa
