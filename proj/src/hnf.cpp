#include "latvoa/hnf.hpp"

namespace latvoa {

namespace {

// Column-by-column elimination; if u is non-null the same row operations are
// mirrored there, keeping u * original == current throughout.
void hnf_in_place(IntMatrix& a, IntMatrix* u, std::vector<std::size_t>& pivots) {
  const std::size_t r = a.rows(), c = a.cols();
  std::size_t row = 0;
  for (std::size_t col = 0; col < c && row < r; ++col) {
    std::size_t p = row;
    while (p < r && a(p, col) == 0) ++p;
    if (p == r) continue;
    // Fold every lower nonzero entry into row p via extended gcd.
    for (std::size_t i = p + 1; i < r; ++i) {
      if (a(i, col) == 0) continue;
      Int x = a(p, col), y = a(i, col), s, t;
      Int g = int_gcdext(x, y, s, t);
      Int xg = x / g, yg = y / g;
      for (std::size_t j = 0; j < c; ++j) {
        Int ap = a(p, j), ai = a(i, j);
        a(p, j) = s * ap + t * ai;
        a(i, j) = -yg * ap + xg * ai;
      }
      if (u) {
        for (std::size_t j = 0; j < u->cols(); ++j) {
          Int up = (*u)(p, j), ui = (*u)(i, j);
          (*u)(p, j) = s * up + t * ui;
          (*u)(i, j) = -yg * up + xg * ui;
        }
      }
    }
    if (p != row) {
      a.swap_rows(row, p);
      if (u) u->swap_rows(row, p);
    }
    if (a(row, col) < 0) {
      for (std::size_t j = 0; j < c; ++j) a(row, j) = -a(row, j);
      if (u)
        for (std::size_t j = 0; j < u->cols(); ++j) (*u)(row, j) = -(*u)(row, j);
    }
    // Reduce entries above the pivot into [0, pivot).
    for (std::size_t i = 0; i < row; ++i) {
      Int q;
      mpz_fdiv_q(q.get_mpz_t(), a(i, col).get_mpz_t(), a(row, col).get_mpz_t());
      if (q == 0) continue;
      for (std::size_t j = 0; j < c; ++j) a(i, j) -= q * a(row, j);
      if (u)
        for (std::size_t j = 0; j < u->cols(); ++j) (*u)(i, j) -= q * (*u)(row, j);
    }
    pivots.push_back(col);
    ++row;
  }
}

IntMatrix take_rows(const IntMatrix& m, std::size_t from, std::size_t to) {
  IntMatrix out(to - from, m.cols());
  for (std::size_t i = from; i < to; ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out(i - from, j) = m(i, j);
  return out;
}

}  // namespace

HnfResult hnf(const IntMatrix& m) {
  IntMatrix a(m);
  HnfResult res;
  hnf_in_place(a, nullptr, res.pivots);
  res.rank = res.pivots.size();
  res.h = take_rows(a, 0, res.rank);
  return res;
}

HnfTransformResult hnf_transform(const IntMatrix& m) {
  IntMatrix a(m);
  IntMatrix u = IntMatrix::identity(m.rows());
  HnfTransformResult res;
  hnf_in_place(a, &u, res.pivots);
  res.rank = res.pivots.size();
  res.h = take_rows(a, 0, res.rank);
  res.u = take_rows(u, 0, res.rank);
  res.kernel = take_rows(u, res.rank, m.rows());
  return res;
}

IntMatrix left_kernel(const IntMatrix& m) { return hnf_transform(m).kernel; }

SnfResult snf(const IntMatrix& m) {
  IntMatrix a(m);
  const std::size_t r = a.rows(), c = a.cols();
  std::size_t t = 0;
  while (t < r && t < c) {
    // Locate a nonzero entry in the remaining submatrix.
    std::size_t pi = r, pj = c;
    for (std::size_t i = t; i < r && pi == r; ++i)
      for (std::size_t j = t; j < c; ++j)
        if (a(i, j) != 0) {
          pi = i;
          pj = j;
          break;
        }
    if (pi == r) break;
    a.swap_rows(t, pi);
    if (pj != t)
      for (std::size_t i = 0; i < r; ++i) std::swap(a(i, t), a(i, pj));
    for (;;) {
      // Clear column t.  Plain division when the pivot divides the entry
      // keeps the pivot fixed; the gcd combine strictly shrinks it, so the
      // alternation below terminates.
      for (std::size_t i = t + 1; i < r; ++i) {
        if (a(i, t) == 0) continue;
        if (a(i, t) % a(t, t) == 0) {
          Int q = a(i, t) / a(t, t);
          for (std::size_t j = t; j < c; ++j) a(i, j) -= q * a(t, j);
          continue;
        }
        Int x = a(t, t), y = a(i, t), s, w;
        Int g = int_gcdext(x, y, s, w);
        Int xg = x / g, yg = y / g;
        for (std::size_t j = t; j < c; ++j) {
          Int at = a(t, j), ai = a(i, j);
          a(t, j) = s * at + w * ai;
          a(i, j) = -yg * at + xg * ai;
        }
      }
      // Clear row t.
      bool row_dirty = false;
      for (std::size_t j = t + 1; j < c; ++j) {
        if (a(t, j) == 0) continue;
        if (a(t, j) % a(t, t) == 0) {
          Int q = a(t, j) / a(t, t);
          for (std::size_t i = t; i < r; ++i) a(i, j) -= q * a(i, t);
          continue;
        }
        Int x = a(t, t), y = a(t, j), s, w;
        Int g = int_gcdext(x, y, s, w);
        Int xg = x / g, yg = y / g;
        for (std::size_t i = t; i < r; ++i) {
          Int at = a(i, t), aj = a(i, j);
          a(i, t) = s * at + w * aj;
          a(i, j) = -yg * at + xg * aj;
        }
        row_dirty = true;
      }
      if (!row_dirty) {
        bool col_clear = true;
        for (std::size_t i = t + 1; i < r; ++i)
          if (a(i, t) != 0) col_clear = false;
        if (col_clear) break;
      }
    }
    // Pull non-divisible entries into position t to keep d_t | d_{t+1}.
    bool redo = false;
    for (std::size_t i = t + 1; i < r && !redo; ++i)
      for (std::size_t j = t + 1; j < c && !redo; ++j)
        if (a(i, j) % a(t, t) != 0) {
          for (std::size_t jj = t; jj < c; ++jj) a(t, jj) += a(i, jj);
          redo = true;
        }
    if (!redo) ++t;
  }
  SnfResult res;
  res.rank = t;
  for (std::size_t i = 0; i < t; ++i) res.divisors.push_back(abs(a(i, i)));
  return res;
}

std::optional<std::vector<Rat>> solve_in_rows(const HnfResult& h,
                                              const std::vector<Rat>& v) {
  if (v.size() != h.h.cols() && !(h.rank == 0 && h.h.cols() == 0))
    throw invalid_input("solve_in_rows: dimension mismatch");
  std::vector<Rat> rem(v);
  std::vector<Rat> coeff(h.rank, Rat(0));
  for (std::size_t k = 0; k < h.rank; ++k) {
    std::size_t p = h.pivots[k];
    if (rem[p] == 0) continue;
    Rat ck = rem[p] / Rat(h.h(k, p));
    coeff[k] = ck;
    for (std::size_t j = p; j < h.h.cols(); ++j)
      if (h.h(k, j) != 0) rem[j] -= ck * Rat(h.h(k, j));
  }
  for (const Rat& x : rem)
    if (x != 0) return std::nullopt;
  return coeff;
}

}  // namespace latvoa
