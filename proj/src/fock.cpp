#include "latvoa/fock.hpp"

#include <algorithm>
#include <sstream>

#include "latvoa/error.hpp"

namespace latvoa {

void FockMonomial::normalize() { std::sort(factors.begin(), factors.end()); }

int64_t FockMonomial::degree() const {
  int64_t d = 0;
  for (const auto& f : factors) d += f.mode;
  return d;
}

bool operator<(const FockMonomial& a, const FockMonomial& b) {
  return a.factors < b.factors;
}

std::string FockMonomial::str() const {
  if (factors.empty()) return "1";
  std::ostringstream os;
  std::size_t i = 0;
  bool first = true;
  while (i < factors.size()) {
    std::size_t j = i;
    while (j < factors.size() && factors[j] == factors[i]) ++j;
    if (!first) os << "*";
    first = false;
    os << "g" << factors[i].idx << "(-" << factors[i].mode << ")";
    if (j - i > 1) os << "^" << (j - i);
    i = j;
  }
  return os.str();
}

FockPolynomial FockPolynomial::one() {
  FockPolynomial p;
  p.terms[FockMonomial::one()] = Rat(1);
  return p;
}

FockPolynomial FockPolynomial::monomial(FockMonomial m, const Rat& c) {
  FockPolynomial p;
  if (c != 0) {
    m.normalize();
    p.terms[std::move(m)] = c;
  }
  return p;
}

bool FockPolynomial::is_homogeneous(int64_t* degree_out) const {
  bool have = false;
  int64_t d = 0;
  for (const auto& [m, c] : terms) {
    int64_t md = m.degree();
    if (!have) {
      d = md;
      have = true;
    } else if (md != d) {
      return false;
    }
  }
  if (degree_out) *degree_out = have ? d : 0;
  return true;
}

void FockPolynomial::add_term(FockMonomial m, const Rat& c) {
  if (c == 0) return;
  auto it = terms.find(m);
  if (it == terms.end()) {
    terms.emplace(std::move(m), c);
  } else {
    it->second += c;
    if (it->second == 0) terms.erase(it);
  }
}

FockPolynomial& FockPolynomial::operator+=(const FockPolynomial& o) {
  for (const auto& [m, c] : o.terms) add_term(m, c);
  return *this;
}

FockPolynomial& FockPolynomial::operator-=(const FockPolynomial& o) {
  for (const auto& [m, c] : o.terms) add_term(m, -c);
  return *this;
}

FockPolynomial& FockPolynomial::operator*=(const Rat& c) {
  if (c == 0) {
    terms.clear();
    return *this;
  }
  for (auto& [m, v] : terms) v *= c;
  return *this;
}

std::string FockPolynomial::str() const {
  if (terms.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [m, c] : terms) {
    if (!first) os << " + ";
    first = false;
    os << rat_str(c) << "*" << m.str();
  }
  return os.str();
}

FockPolynomial operator+(FockPolynomial a, const FockPolynomial& b) {
  a += b;
  return a;
}

FockPolynomial operator-(FockPolynomial a, const FockPolynomial& b) {
  a -= b;
  return a;
}

FockPolynomial operator*(const Rat& c, FockPolynomial a) {
  a *= c;
  return a;
}

FockPolynomial fock_mul(const FockPolynomial& a, const FockPolynomial& b) {
  FockPolynomial out;
  for (const auto& [ma, ca] : a.terms) {
    for (const auto& [mb, cb] : b.terms) {
      FockMonomial m;
      m.factors.resize(ma.factors.size() + mb.factors.size());
      std::merge(ma.factors.begin(), ma.factors.end(), mb.factors.begin(),
                 mb.factors.end(), m.factors.begin());
      out.add_term(std::move(m), ca * cb);
    }
  }
  return out;
}

FockPolynomial fock_apply_linear(const FockMonomial& m, const IntMatrix& s) {
  FockPolynomial out = FockPolynomial::one();
  for (const auto& f : m.factors) {
    if (f.idx < 0 || static_cast<std::size_t>(f.idx) >= s.cols())
      throw invalid_input("factor index out of range for substitution");
    FockPolynomial lin;
    for (std::size_t j = 0; j < s.rows(); ++j) {
      if (s(j, f.idx) == 0) continue;
      lin.add_term(FockMonomial{{{static_cast<int32_t>(j), f.mode}}},
                   Rat(s(j, f.idx)));
    }
    out = fock_mul(out, lin);
  }
  return out;
}

FockPolynomial fock_apply_linear(const FockPolynomial& p, const IntMatrix& s) {
  FockPolynomial out;
  for (const auto& [m, c] : p.terms) {
    FockPolynomial img = fock_apply_linear(m, s);
    img *= c;
    out += img;
  }
  return out;
}

std::vector<FockPolynomial> complete_series(const std::vector<Rat>& coords,
                                            int64_t max_n) {
  if (max_n < 0) throw invalid_input("negative series order");
  std::vector<FockPolynomial> p(max_n + 1);  // p[k] = coords(-k), k >= 1
  for (int64_t k = 1; k <= max_n; ++k) {
    for (std::size_t i = 0; i < coords.size(); ++i) {
      if (coords[i] == 0) continue;
      p[k].add_term(FockMonomial{{{static_cast<int32_t>(i),
                                   static_cast<int32_t>(k)}}},
                    coords[i]);
    }
  }
  std::vector<FockPolynomial> h(max_n + 1);
  h[0] = FockPolynomial::one();
  for (int64_t n = 1; n <= max_n; ++n) {
    FockPolynomial acc;
    for (int64_t k = 1; k <= n; ++k) acc += fock_mul(p[k], h[n - k]);
    acc *= Rat(1) / Rat(n);
    h[n] = std::move(acc);
  }
  return h;
}

namespace {

// Determinant of the Jacobi-Trudi matrix by expansion over column subsets.
FockPolynomial jt_det(const std::vector<std::vector<const FockPolynomial*>>& m,
                      std::size_t row, uint32_t mask,
                      std::map<uint32_t, FockPolynomial>* memo) {
  std::size_t n = m.size();
  if (row == n) return FockPolynomial::one();
  auto it = memo->find(mask);
  if (it != memo->end()) return it->second;
  FockPolynomial out;
  int sign = 1;
  for (std::size_t j = 0; j < n; ++j) {
    if (mask & (1u << j)) continue;
    if (m[row][j] != nullptr && !m[row][j]->is_zero()) {
      FockPolynomial sub = jt_det(m, row + 1, mask | (1u << j), memo);
      FockPolynomial term = fock_mul(*m[row][j], sub);
      if (sign < 0) term *= Rat(-1);
      out += term;
    }
    sign = -sign;
  }
  memo->emplace(mask, out);
  return out;
}

}  // namespace

FockPolynomial schur_element(const std::vector<Rat>& coords,
                             const std::vector<int64_t>& lambda) {
  std::vector<int64_t> lam;
  for (int64_t x : lambda) {
    if (x < 0) throw invalid_input("negative partition part");
    if (x > 0) lam.push_back(x);
  }
  for (std::size_t i = 1; i < lam.size(); ++i)
    if (lam[i] > lam[i - 1])
      throw invalid_input("partition parts must be non-increasing");
  if (lam.empty()) return FockPolynomial::one();
  std::size_t l = lam.size();
  if (l > 30) throw invalid_input("partition too long");
  int64_t max_idx = lam[0] + static_cast<int64_t>(l) - 1;
  std::vector<FockPolynomial> h = complete_series(coords, max_idx);
  std::vector<std::vector<const FockPolynomial*>> m(
      l, std::vector<const FockPolynomial*>(l, nullptr));
  for (std::size_t i = 0; i < l; ++i) {
    for (std::size_t j = 0; j < l; ++j) {
      int64_t t = lam[i] - static_cast<int64_t>(i) + static_cast<int64_t>(j);
      if (t >= 0 && t <= max_idx) m[i][j] = &h[t];
    }
  }
  std::map<uint32_t, FockPolynomial> memo;
  return jt_det(m, 0, 0, &memo);
}

namespace {

void partitions_rec(int64_t n, int64_t max_part, std::vector<int64_t>* cur,
                    std::vector<std::vector<int64_t>>* out) {
  if (n == 0) {
    out->push_back(*cur);
    return;
  }
  for (int64_t k = std::min(n, max_part); k >= 1; --k) {
    cur->push_back(k);
    partitions_rec(n - k, k, cur, out);
    cur->pop_back();
  }
}

void colored_rec(int32_t d, int64_t n, int64_t max_part, int32_t min_color,
                 ColoredPartition* cur, std::vector<ColoredPartition>* out) {
  if (n == 0) {
    out->push_back(*cur);
    return;
  }
  for (int64_t k = std::min(n, max_part); k >= 1; --k) {
    int32_t c0 = (k == max_part) ? min_color : 0;
    for (int32_t c = c0; c < d; ++c) {
      cur->parts.emplace_back(c, k);
      colored_rec(d, n - k, k, c, cur, out);
      cur->parts.pop_back();
    }
  }
}

}  // namespace

std::vector<std::vector<int64_t>> partitions(int64_t n) {
  if (n < 0) throw invalid_input("negative partition target");
  std::vector<std::vector<int64_t>> out;
  std::vector<int64_t> cur;
  partitions_rec(n, n == 0 ? 1 : n, &cur, &out);
  return out;
}

int64_t ColoredPartition::total() const {
  int64_t t = 0;
  for (const auto& [c, k] : parts) t += k;
  return t;
}

std::string ColoredPartition::str() const {
  if (parts.empty()) return "1";
  std::ostringstream os;
  bool first = true;
  for (const auto& [c, k] : parts) {
    if (!first) os << "*";
    first = false;
    os << "h" << k << "(g" << c << ")";
  }
  return os.str();
}

std::vector<ColoredPartition> colored_partitions(int32_t d, int64_t n) {
  if (d <= 0) throw invalid_input("color count must be positive");
  if (n < 0) throw invalid_input("negative partition target");
  std::vector<ColoredPartition> out;
  ColoredPartition cur;
  colored_rec(d, n, n == 0 ? 1 : n, 0, &cur, &out);
  std::sort(out.begin(), out.end());
  return out;
}

FockPolynomial colored_partition_element(int32_t d, const ColoredPartition& cp) {
  std::map<std::pair<int32_t, int64_t>, FockPolynomial> cache;
  FockPolynomial out = FockPolynomial::one();
  for (const auto& [c, k] : cp.parts) {
    if (c < 0 || c >= d) throw invalid_input("color out of range");
    auto key = std::make_pair(c, k);
    auto it = cache.find(key);
    if (it == cache.end()) {
      std::vector<Rat> coords(d, Rat(0));
      coords[c] = 1;
      it = cache.emplace(key, complete_series(coords, k)[k]).first;
    }
    out = fock_mul(out, it->second);
  }
  return out;
}

}  // namespace latvoa
