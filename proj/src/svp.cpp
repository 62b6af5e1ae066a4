#include "latvoa/svp.hpp"

#include <algorithm>

namespace latvoa {

namespace {

struct Gso {
  std::vector<Rat> b;                // squared Gram-Schmidt norms
  std::vector<std::vector<Rat>> mu;  // mu[i][j], j < i
};

Gso compute_gso(const RatMatrix& g) {
  const std::size_t n = g.rows();
  Gso s;
  s.b.assign(n, Rat(0));
  s.mu.assign(n, std::vector<Rat>(n, Rat(0)));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      Rat c = g(i, j);
      for (std::size_t l = 0; l < j; ++l) c -= s.mu[j][l] * s.mu[i][l] * s.b[l];
      if (s.b[j] == 0) throw invalid_input("lll: form is degenerate");
      s.mu[i][j] = c / s.b[j];
    }
    Rat bi = g(i, i);
    for (std::size_t l = 0; l < i; ++l) bi -= s.mu[i][l] * s.mu[i][l] * s.b[l];
    if (bi <= 0) throw invalid_input("lll: form is not positive definite");
    s.b[i] = bi;
  }
  return s;
}

Int round_nearest(const Rat& q) {
  // Nearest integer, ties toward even via floor(q + 1/2).
  Rat t = q + Rat(1, 2);
  Int r;
  mpz_fdiv_q(r.get_mpz_t(), t.get_num().get_mpz_t(), t.get_den().get_mpz_t());
  return r;
}

}  // namespace

IntMatrix lll_transform(const RatMatrix& gram) {
  const std::size_t n = gram.rows();
  if (n == 0 || gram.cols() != n) throw invalid_input("lll: bad Gram shape");
  Gso s = compute_gso(gram);
  IntMatrix u = IntMatrix::identity(n);
  const Rat delta(99, 100);

  auto size_reduce = [&](std::size_t k, std::size_t j) {
    Int r = round_nearest(s.mu[k][j]);
    if (r == 0) return;
    Rat rr(r);
    for (std::size_t c = 0; c < n; ++c) u(k, c) -= r * u(j, c);
    s.mu[k][j] -= rr;
    for (std::size_t l = 0; l < j; ++l) s.mu[k][l] -= rr * s.mu[j][l];
  };

  std::size_t k = 1;
  while (k < n) {
    for (std::size_t j = k; j-- > 0;) size_reduce(k, j);
    Rat lhs = s.b[k];
    Rat rhs = (delta - s.mu[k][k - 1] * s.mu[k][k - 1]) * s.b[k - 1];
    if (lhs >= rhs) {
      ++k;
      continue;
    }
    // Swap basis vectors k-1 and k, updating the GSO in place.
    u.swap_rows(k - 1, k);
    Rat mu_old = s.mu[k][k - 1];
    Rat big = s.b[k] + mu_old * mu_old * s.b[k - 1];
    Rat mu_new = mu_old * s.b[k - 1] / big;
    s.b[k] = s.b[k - 1] * s.b[k] / big;
    s.b[k - 1] = big;
    s.mu[k][k - 1] = mu_new;
    for (std::size_t j = 0; j + 1 < k; ++j) std::swap(s.mu[k - 1][j], s.mu[k][j]);
    for (std::size_t i = k + 1; i < n; ++i) {
      Rat t = s.mu[i][k];
      s.mu[i][k] = s.mu[i][k - 1] - mu_old * t;
      s.mu[i][k - 1] = t + mu_new * s.mu[i][k];
    }
    k = (k > 1) ? k - 1 : 1;
  }
  return u;
}

namespace {

// q(x) = sum_k d[k] * (x_k + sum_{i>k} f[k][i] x_i)^2
struct Ldl {
  std::size_t n = 0;
  std::vector<Rat> d;
  std::vector<std::vector<Rat>> f;
};

Ldl compute_ldl(const RatMatrix& g) {
  Ldl l;
  l.n = g.rows();
  RatMatrix a(g);
  l.d.assign(l.n, Rat(0));
  l.f.assign(l.n, std::vector<Rat>(l.n, Rat(0)));
  for (std::size_t k = 0; k < l.n; ++k) {
    if (a(k, k) <= 0)
      throw invalid_input("enumeration: form is not positive definite");
    l.d[k] = a(k, k);
    for (std::size_t i = k + 1; i < l.n; ++i) l.f[k][i] = a(k, i) / a(k, k);
    for (std::size_t i = k + 1; i < l.n; ++i) {
      if (a(k, i) == 0) continue;
      Rat m = l.f[k][i];
      for (std::size_t j = i; j < l.n; ++j) a(i, j) -= m * a(k, j);
    }
  }
  return l;
}

// Integer solutions of (x + c)^2 <= t, exactly.  The two ends are computed
// independently as floor(sqrt(t) - c) and ceil(-sqrt(t) - c), so an empty
// integer interval comes out as lo > hi.
bool integer_range(const Rat& c, const Rat& t, Int& lo, Int& hi) {
  if (t < 0) return false;
  Int num = t.get_num(), den = t.get_den();
  Int s = int_sqrt_floor(num * den);
  Rat s_over(s + 1);
  s_over /= Rat(den);  // sqrt(t) < s_over <= sqrt(t) + 1/den
  auto le_sqrt = [&](const Rat& v) { return v <= 0 || v * v <= t; };
  auto ge_neg_sqrt = [&](const Rat& v) { return v >= 0 || v * v <= t; };
  {
    // hi = floor(sqrt(t) - c); the estimate overshoots by at most one.
    Rat approx = s_over - c;
    Int x;
    mpz_fdiv_q(x.get_mpz_t(), approx.get_num().get_mpz_t(),
               approx.get_den().get_mpz_t());
    if (!le_sqrt(Rat(x) + c)) --x;
    while (le_sqrt(Rat(x + 1) + c)) ++x;
    hi = x;
  }
  {
    // lo = ceil(-sqrt(t) - c); the estimate undershoots by at most one.
    Rat approx = -s_over - c;
    Int x;
    mpz_cdiv_q(x.get_mpz_t(), approx.get_num().get_mpz_t(),
               approx.get_den().get_mpz_t());
    if (!ge_neg_sqrt(Rat(x) + c)) ++x;
    while (ge_neg_sqrt(Rat(x - 1) + c)) --x;
    lo = x;
  }
  return lo <= hi;
}

struct EnumState {
  const Ldl* ldl;
  bool collect;              // collect all (short_vectors) vs track min
  Rat bound;                 // fixed radius when collecting
  bool have_best = false;
  Rat best;
  std::vector<Int> best_x;
  std::vector<Int> x;
  std::vector<std::pair<std::vector<Int>, Rat>> out;
};

// Levels are processed from n-1 down to 0; rem is the budget left relative
// to the root radius st.bound.
void enumerate_level(EnumState& st, std::size_t level, const Rat& rem) {
  const Ldl& l = *st.ldl;
  std::size_t k = level - 1;  // current coordinate (level counts remaining)
  Rat c(0);
  for (std::size_t i = k + 1; i < l.n; ++i)
    if (st.x[i] != 0) c += l.f[k][i] * Rat(st.x[i]);
  Rat t = rem / l.d[k];
  Int lo, hi;
  if (!integer_range(c, t, lo, hi)) return;
  for (Int v = lo; v <= hi; ++v) {
    st.x[k] = v;
    Rat term = (Rat(v) + c);
    Rat used = l.d[k] * term * term;
    Rat rem2 = rem - used;
    if (k == 0) {
      bool nonzero = false;
      for (const Int& xi : st.x)
        if (xi != 0) nonzero = true;
      if (!nonzero) continue;
      Rat norm = st.bound - rem2;
      if (st.collect) {
        st.out.emplace_back(st.x, norm);
      } else {
        if (!st.have_best || norm < st.best) {
          st.have_best = true;
          st.best = norm;
          st.best_x = st.x;
        }
      }
    } else {
      // When hunting the minimum, shrink the budget to beat the incumbent.
      if (!st.collect && st.have_best) {
        Rat slack = st.best - (st.bound - rem2);
        if (slack <= 0) continue;
      }
      enumerate_level(st, k, rem2);
    }
  }
  st.x[k] = 0;
}

}  // namespace

std::vector<ShortVector> short_vectors(const RatMatrix& gram, const Rat& bound) {
  if (bound <= 0) throw invalid_input("short_vectors: bound must be positive");
  IntMatrix u = lll_transform(gram);
  RatMatrix ured = to_rational(u);
  RatMatrix reduced = ured * gram * ured.transpose();
  Ldl l = compute_ldl(reduced);
  EnumState st;
  st.ldl = &l;
  st.collect = true;
  st.bound = bound;
  st.x.assign(l.n, Int(0));
  enumerate_level(st, l.n, bound);
  std::vector<ShortVector> res;
  for (const auto& [x, norm] : st.out) {
    LatticeVector v(gram.rows(), 0);
    for (std::size_t j = 0; j < gram.rows(); ++j) {
      Int acc(0);
      for (std::size_t i = 0; i < l.n; ++i)
        if (x[i] != 0) acc += x[i] * u(i, j);
      if (!acc.fits_slong_p())
        throw invariant_violation("short_vectors: coordinate overflow");
      v[j] = acc.get_si();
    }
    res.push_back(ShortVector{v, norm});
  }
  std::sort(res.begin(), res.end(), [](const ShortVector& a, const ShortVector& b) {
    if (a.norm != b.norm) return a.norm < b.norm;
    return a.coords < b.coords;
  });
  return res;
}

std::vector<ShortVector> short_vectors(const IntMatrix& gram, const Int& bound) {
  return short_vectors(to_rational(gram), Rat(bound));
}

MinNormResult min_norm(const RatMatrix& gram, const Rat& bound) {
  if (bound <= 0) throw invalid_input("min_norm: bound must be positive");
  IntMatrix u = lll_transform(gram);
  RatMatrix ured = to_rational(u);
  RatMatrix reduced = ured * gram * ured.transpose();
  Ldl l = compute_ldl(reduced);
  EnumState st;
  st.ldl = &l;
  st.collect = false;
  st.bound = bound;
  st.x.assign(l.n, Int(0));
  enumerate_level(st, l.n, bound);
  MinNormResult res;
  if (!st.have_best) return res;
  res.found = true;
  res.min = st.best;
  res.witness.assign(gram.rows(), 0);
  for (std::size_t j = 0; j < gram.rows(); ++j) {
    Int acc(0);
    for (std::size_t i = 0; i < l.n; ++i)
      if (st.best_x[i] != 0) acc += st.best_x[i] * u(i, j);
    if (!acc.fits_slong_p())
      throw invariant_violation("min_norm: coordinate overflow");
    res.witness[j] = acc.get_si();
  }
  return res;
}

MinNormResult min_norm(const IntMatrix& gram, const Int& bound) {
  return min_norm(to_rational(gram), Rat(bound));
}

}  // namespace latvoa
