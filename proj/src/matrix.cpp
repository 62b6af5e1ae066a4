#include "latvoa/matrix.hpp"

namespace latvoa {

Int det(const IntMatrix& m) {
  if (m.rows() != m.cols()) throw invalid_input("det: square matrix required");
  std::size_t n = m.rows();
  if (n == 0) return Int(1);
  IntMatrix a(m);
  Int prev(1);
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a(k, k) == 0) {
      std::size_t p = k + 1;
      while (p < n && a(p, k) == 0) ++p;
      if (p == n) return Int(0);
      a.swap_rows(k, p);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) {
        Int t = a(i, j) * a(k, k) - a(i, k) * a(k, j);
        // Bareiss: division is exact.
        mpz_divexact(t.get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
        a(i, j) = t;
      }
    prev = a(k, k);
  }
  return sign > 0 ? a(n - 1, n - 1) : -a(n - 1, n - 1);
}

Rat det(const RatMatrix& m) {
  if (m.rows() != m.cols()) throw invalid_input("det: square matrix required");
  std::size_t n = m.rows();
  RatMatrix a(m);
  Rat d(1);
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    while (p < n && a(p, k) == 0) ++p;
    if (p == n) return Rat(0);
    if (p != k) {
      a.swap_rows(k, p);
      d = -d;
    }
    d *= a(k, k);
    Rat inv = Rat(1) / a(k, k);
    for (std::size_t i = k + 1; i < n; ++i) {
      if (a(i, k) == 0) continue;
      Rat f = a(i, k) * inv;
      for (std::size_t j = k; j < n; ++j) a(i, j) -= f * a(k, j);
    }
  }
  return d;
}

RatMatrix inverse(const RatMatrix& m) {
  if (m.rows() != m.cols()) throw invalid_input("inverse: square matrix required");
  std::size_t n = m.rows();
  RatMatrix a(m);
  RatMatrix inv = RatMatrix::identity(n);
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    while (p < n && a(p, k) == 0) ++p;
    if (p == n) throw invalid_input("inverse: singular matrix");
    if (p != k) {
      a.swap_rows(k, p);
      inv.swap_rows(k, p);
    }
    Rat piv = Rat(1) / a(k, k);
    for (std::size_t j = 0; j < n; ++j) {
      a(k, j) *= piv;
      inv(k, j) *= piv;
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (i == k || a(i, k) == 0) continue;
      Rat f = a(i, k);
      for (std::size_t j = 0; j < n; ++j) {
        a(i, j) -= f * a(k, j);
        inv(i, j) -= f * inv(k, j);
      }
    }
  }
  return inv;
}

std::size_t rank(const RatMatrix& m) {
  RatMatrix a(m);
  std::size_t r = 0;
  for (std::size_t c = 0; c < a.cols() && r < a.rows(); ++c) {
    std::size_t p = r;
    while (p < a.rows() && a(p, c) == 0) ++p;
    if (p == a.rows()) continue;
    a.swap_rows(r, p);
    Rat inv = Rat(1) / a(r, c);
    for (std::size_t i = r + 1; i < a.rows(); ++i) {
      if (a(i, c) == 0) continue;
      Rat f = a(i, c) * inv;
      for (std::size_t j = c; j < a.cols(); ++j) a(i, j) -= f * a(r, j);
    }
    ++r;
  }
  return r;
}

}  // namespace latvoa
