#include "latvoa/pairing.hpp"

#include <algorithm>
#include <map>
#include <thread>

#include "latvoa/error.hpp"
#include "latvoa/hnf.hpp"

namespace latvoa {

namespace {

Rat permanent(const std::vector<std::vector<Rat>>& m) {
  std::size_t n = m.size();
  if (n == 0) return Rat(1);
  if (n > 20) throw invalid_input("permanent too large");
  std::vector<Rat> dp(std::size_t(1) << n, Rat(0));
  dp[0] = 1;
  for (std::size_t mask = 1; mask < dp.size(); ++mask) {
    std::size_t row = static_cast<std::size_t>(__builtin_popcountll(mask)) - 1;
    Rat acc(0);
    for (std::size_t j = 0; j < n; ++j) {
      if (!(mask & (std::size_t(1) << j))) continue;
      if (m[row][j] == 0) continue;
      acc += m[row][j] * dp[mask ^ (std::size_t(1) << j)];
    }
    dp[mask] = std::move(acc);
  }
  return dp.back();
}

// Contraction of two oscillator monomials: product over mode values of
// mode^p * permanent of the Gram submatrix of their directions.
Rat contract(const IntMatrix& gram, const FockMonomial& a,
             const FockMonomial& b) {
  if (a.factors.size() != b.factors.size()) return 0;
  std::map<int32_t, std::pair<std::vector<int32_t>, std::vector<int32_t>>> by_mode;
  for (const auto& f : a.factors) by_mode[f.mode].first.push_back(f.idx);
  for (const auto& f : b.factors) by_mode[f.mode].second.push_back(f.idx);
  Rat out(1);
  for (const auto& [mode, lists] : by_mode) {
    const auto& [la, lb] = lists;
    if (la.size() != lb.size()) return 0;
    std::size_t p = la.size();
    std::vector<std::vector<Rat>> m(p, std::vector<Rat>(p));
    for (std::size_t i = 0; i < p; ++i)
      for (std::size_t j = 0; j < p; ++j)
        m[i][j] = Rat(gram(la[i], lb[j]));
    Rat per = permanent(m);
    if (per == 0) return 0;
    out *= per * Rat(int_pow(Int(mode), static_cast<unsigned long>(p)));
  }
  return out;
}

LatticeVector negated(const LatticeVector& a) {
  LatticeVector out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = -a[i];
  return out;
}

}  // namespace

Rat pair(const Voa& v, const VoaElement& a, const VoaElement& b,
         PairKind kind) {
  // Bucket the left terms by charge.
  std::map<LatticeVector, std::vector<std::pair<const FockMonomial*, const Rat*>>>
      left;
  for (const auto& [k, c] : a.terms) left[k.charge].emplace_back(&k.mono, &c);
  Rat out(0);
  for (const auto& [k, c] : b.terms) {
    LatticeVector want =
        kind == PairKind::HERMITIAN ? k.charge : negated(k.charge);
    auto it = left.find(want);
    if (it == left.end()) continue;
    for (const auto& [mono, coef] : it->second) {
      Rat t = contract(v.lattice().gram(), *mono, k.mono);
      if (t == 0) continue;
      if (kind == PairKind::BILINEAR && (mono->factors.size() & 1)) t = -t;
      out += *coef * c * t;
    }
  }
  return out;
}

VoaElement expand_hproduct(const Voa& v, const HProduct& p) {
  FockPolynomial poly = FockPolynomial::one();
  for (const auto& f : p.factors) {
    if (f.coords.size() != v.rank())
      throw invalid_input("coordinate length does not match rank");
    if (f.part < 0) throw invalid_input("negative generator order");
    poly = fock_mul(poly, complete_series(f.coords, f.part)[f.part]);
  }
  return VoaElement::from_fock(poly, p.charge);
}

Rat pair_genfun(const Voa& v, const HProduct& a, const HProduct& b,
                PairKind kind) {
  const LatticeVector want =
      kind == PairKind::HERMITIAN ? b.charge : negated(b.charge);
  if (a.charge != want) return 0;
  std::size_t tn = a.factors.size(), sn = b.factors.size();
  // Rational inner products (a_t, b_s) through the Gram matrix.
  const IntMatrix& g = v.lattice().gram();
  std::vector<std::vector<Rat>> e(tn, std::vector<Rat>(sn, Rat(0)));
  for (std::size_t t = 0; t < tn; ++t)
    for (std::size_t s = 0; s < sn; ++s) {
      Rat acc(0);
      for (std::size_t i = 0; i < v.rank(); ++i)
        for (std::size_t j = 0; j < v.rank(); ++j)
          acc += a.factors[t].coords[i] * Rat(g(i, j)) * b.factors[s].coords[j];
      e[t][s] = kind == PairKind::HERMITIAN ? -acc : acc;
    }
  // Truncated expansion of prod_{t,s} (1 - w_t x_s)^{e[t][s]}, tracking the
  // exponents of all w_t and x_s up to their targets.
  std::vector<int64_t> target;
  for (const auto& f : a.factors) target.push_back(f.part);
  for (const auto& f : b.factors) target.push_back(f.part);
  std::map<std::vector<int64_t>, Rat> poly;
  poly[std::vector<int64_t>(tn + sn, 0)] = 1;
  for (std::size_t t = 0; t < tn; ++t) {
    for (std::size_t s = 0; s < sn; ++s) {
      int64_t jmax = std::min(a.factors[t].part, b.factors[s].part);
      std::vector<Rat> coef(jmax + 1);
      for (int64_t j = 0; j <= jmax; ++j) {
        coef[j] = rat_binomial(e[t][s], static_cast<unsigned long>(j));
        if (j & 1) coef[j] = -coef[j];
      }
      std::map<std::vector<int64_t>, Rat> next;
      for (const auto& [exp, c] : poly) {
        for (int64_t j = 0; j <= jmax; ++j) {
          if (coef[j] == 0) continue;
          if (exp[t] + j > target[t]) break;
          if (exp[tn + s] + j > target[tn + s]) break;
          std::vector<int64_t> ne = exp;
          ne[t] += j;
          ne[tn + s] += j;
          auto [it, fresh] = next.emplace(std::move(ne), c * coef[j]);
          if (!fresh) it->second += c * coef[j];
        }
      }
      poly = std::move(next);
    }
  }
  auto it = poly.find(target);
  return it == poly.end() ? Rat(0) : it->second;
}

namespace {

struct ChargedPoly {
  LatticeVector charge;
  FockPolynomial poly;
};

ChargedPoly split_element(const BasisElement& e) {
  ChargedPoly out;
  out.charge = e.charge;
  for (const auto& [k, c] : e.element.terms) {
    if (k.charge != e.charge)
      throw invalid_input("basis element mixes charges");
    out.poly.terms[k.mono] = c;
  }
  return out;
}

Rat pair_single_charge(const IntMatrix& gram, const FockPolynomial& a,
                       const FockPolynomial& b, PairKind kind) {
  Rat out(0);
  for (const auto& [ma, ca] : a.terms) {
    for (const auto& [mb, cb] : b.terms) {
      Rat t = contract(gram, ma, mb);
      if (t == 0) continue;
      if (kind == PairKind::BILINEAR && (ma.factors.size() & 1)) t = -t;
      out += ca * cb * t;
    }
  }
  return out;
}

}  // namespace

RatMatrix graded_gram(const Voa& v, const std::vector<BasisElement>& a,
                      const std::vector<BasisElement>& b, PairKind kind,
                      int threads) {
  std::vector<ChargedPoly> pa, pb;
  pa.reserve(a.size());
  pb.reserve(b.size());
  for (const auto& e : a) pa.push_back(split_element(e));
  for (const auto& e : b) pb.push_back(split_element(e));
  // Columns bucketed by the left charge they interact with.
  std::map<LatticeVector, std::vector<std::size_t>> cols;
  for (std::size_t j = 0; j < pb.size(); ++j) {
    LatticeVector want = kind == PairKind::HERMITIAN ? pb[j].charge
                                                     : negated(pb[j].charge);
    cols[want].push_back(j);
  }
  RatMatrix out(a.size(), b.size());
  const IntMatrix& gram = v.lattice().gram();
  auto run_rows = [&](std::size_t lo, std::size_t hi) {
    for (std::size_t i = lo; i < hi; ++i) {
      auto it = cols.find(pa[i].charge);
      if (it == cols.end()) continue;
      for (std::size_t j : it->second)
        out(i, j) = pair_single_charge(gram, pa[i].poly, pb[j].poly, kind);
    }
  };
  if (threads <= 1 || a.size() < 2) {
    run_rows(0, a.size());
  } else {
    std::size_t nt = std::min<std::size_t>(threads, a.size());
    std::vector<std::thread> pool;
    std::size_t chunk = (a.size() + nt - 1) / nt;
    for (std::size_t t = 0; t < nt; ++t) {
      std::size_t lo = t * chunk, hi = std::min(a.size(), lo + chunk);
      if (lo >= hi) break;
      pool.emplace_back(run_rows, lo, hi);
    }
    for (auto& th : pool) th.join();
  }
  return out;
}

RatMatrix graded_gram(const Voa& v, const std::vector<BasisElement>& basis,
                      PairKind kind, int threads) {
  return graded_gram(v, basis, basis, kind, threads);
}

RatMatrix frame_gram(const Voa& v, const DegreeFrame& f, PairKind kind) {
  RatMatrix out(f.keys.size(), f.keys.size());
  const IntMatrix& gram = v.lattice().gram();
  for (std::size_t i = 0; i < f.keys.size(); ++i) {
    for (std::size_t j = 0; j < f.keys.size(); ++j) {
      const VoaKey& ki = f.keys[i];
      const VoaKey& kj = f.keys[j];
      LatticeVector want =
          kind == PairKind::HERMITIAN ? kj.charge : negated(kj.charge);
      if (ki.charge != want) continue;
      Rat t = contract(gram, ki.mono, kj.mono);
      if (t == 0) continue;
      if (kind == PairKind::BILINEAR && (ki.mono.factors.size() & 1)) t = -t;
      out(i, j) = t;
    }
  }
  return out;
}

AbelianInvariants gram_invariants(const RatMatrix& gram) {
  if (gram.rows() != gram.cols()) throw invalid_input("Gram matrix not square");
  IntMatrix m(gram.rows(), gram.cols());
  for (std::size_t i = 0; i < gram.rows(); ++i)
    for (std::size_t j = 0; j < gram.cols(); ++j) {
      if (!is_integer(gram(i, j)))
        throw invalid_input("Gram matrix entry is not an integer");
      m(i, j) = gram(i, j).get_num();
    }
  SnfResult s = snf(m);
  if (s.rank < gram.rows()) throw invalid_input("Gram matrix is singular");
  AbelianInvariants out;
  for (const auto& d : s.divisors)
    if (d > 1) out.push_back(d);
  return out;
}

}  // namespace latvoa
