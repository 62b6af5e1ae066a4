#include "latvoa/vertex.hpp"

#include <algorithm>
#include <cstdint>
#include <functional>

#include "latvoa/error.hpp"
#include "latvoa/pairing.hpp"

namespace latvoa {

namespace {

// Complete generator series of charge vectors, grown on demand.
class SeriesCache {
 public:
  explicit SeriesCache(std::size_t rank) : rank_(rank) {}

  const FockPolynomial& at(const LatticeVector& alpha, int64_t order) {
    auto& entry = cache_[alpha];
    if (static_cast<int64_t>(entry.size()) <= order) {
      std::vector<Rat> coords(rank_);
      for (std::size_t i = 0; i < rank_; ++i) coords[i] = Rat(alpha[i]);
      entry = complete_series(coords, order);
    }
    return entry[order];
  }

 private:
  std::size_t rank_;
  std::map<LatticeVector, std::vector<FockPolynomial>> cache_;
};

int sign_pow(int64_t e) { return (e % 2) ? -1 : 1; }

}  // namespace

VoaElement vertex_mode(const Voa& voa, const VoaElement& u, int64_t k,
                       const VoaElement& w) {
  const EvenLattice& lat = voa.lattice();
  const IntMatrix& g = lat.gram();
  std::size_t d = voa.rank();
  SeriesCache series(d);
  VoaElement out;

  for (const auto& [ku, cu] : u.terms) {
    const auto& fu = ku.mono.factors;
    const LatticeVector& alpha = ku.charge;
    for (const auto& [kw, cw] : w.terms) {
      const auto& fv = kw.mono.factors;
      const LatticeVector& beta = kw.charge;
      if (fv.size() > 62) throw invalid_input("target monomial too long");

      Int ab = lat.inner(alpha, beta);
      int64_t base = -k - 1 - ab.get_si();
      Rat scale = cu * cw * Rat(voa.cocycle().sign(alpha, beta));
      LatticeVector out_charge(d);
      for (std::size_t i = 0; i < d; ++i) out_charge[i] = alpha[i] + beta[i];

      // Zero-mode eigenvalues (gamma_{a_t}, beta) and contraction entries.
      std::vector<Int> zero_eval(fu.size());
      std::vector<std::vector<Int>> g_ub(fu.size(),
                                         std::vector<Int>(fv.size()));
      for (std::size_t t = 0; t < fu.size(); ++t) {
        Int z = 0;
        for (std::size_t j = 0; j < d; ++j) z += g(fu[t].idx, j) * beta[j];
        zero_eval[t] = z;
        for (std::size_t s = 0; s < fv.size(); ++s)
          g_ub[t][s] = g(fu[t].idx, fv[s].idx);
      }
      // (alpha, gamma_{b_s}) for the annihilation exponential.
      std::vector<Int> alpha_g(fv.size());
      for (std::size_t s = 0; s < fv.size(); ++s) {
        Int z = 0;
        for (std::size_t i = 0; i < d; ++i) z += Int(alpha[i]) * g(i, fv[s].idx);
        alpha_g[s] = z;
      }
      // suffix_n[t] = sum of modes of u-factors t..end.
      std::vector<int64_t> suffix_n(fu.size() + 1, 0);
      for (std::size_t t = fu.size(); t-- > 0;)
        suffix_n[t] = suffix_n[t + 1] + fu[t].mode;

      std::vector<FockFactor> creations;
      std::function<void(std::size_t, int64_t, const Rat&, uint64_t)> rec =
          [&](std::size_t t, int64_t gain, const Rat& coef, uint64_t claimed) {
            if (t == fu.size()) {
              // Unclaimed target oscillators: the annihilation exponential
              // may consume any subset of those with (alpha, gamma_b) != 0.
              std::vector<std::size_t> hittable, kept;
              for (std::size_t s = 0; s < fv.size(); ++s) {
                if (claimed & (uint64_t(1) << s)) continue;
                if (alpha_g[s] != 0)
                  hittable.push_back(s);
                else
                  kept.push_back(s);
              }
              for (uint64_t sub = 0;
                   sub < (uint64_t(1) << hittable.size()); ++sub) {
                int64_t m_order = base + gain;
                Rat c2 = coef;
                std::vector<FockFactor> survivors;
                for (std::size_t h = 0; h < hittable.size(); ++h) {
                  std::size_t s = hittable[h];
                  if (sub & (uint64_t(1) << h)) {
                    m_order += fv[s].mode;
                    c2 *= Rat(-alpha_g[s]);
                  } else {
                    survivors.push_back(fv[s]);
                  }
                }
                if (m_order < 0) continue;
                for (std::size_t s : kept) survivors.push_back(fv[s]);
                const FockPolynomial& hm = series.at(alpha, m_order);
                for (const auto& [hmono, hc] : hm.terms) {
                  FockMonomial m;
                  m.factors = creations;
                  m.factors.insert(m.factors.end(), survivors.begin(),
                                   survivors.end());
                  m.factors.insert(m.factors.end(), hmono.factors.begin(),
                                   hmono.factors.end());
                  m.normalize();
                  out.add_term(VoaKey{std::move(m), out_charge},
                               scale * c2 * hc);
                }
              }
              return;
            }
            int64_t nt = fu[t].mode;
            // Zero mode on the target charge.
            if (zero_eval[t] != 0) {
              Rat c2 = coef * Rat(zero_eval[t]);
              if (sign_pow(nt - 1) < 0) c2 = -c2;
              rec(t + 1, gain + nt, c2, claimed);
            }
            // Contraction against one unclaimed target oscillator.
            for (std::size_t s = 0; s < fv.size(); ++s) {
              if (claimed & (uint64_t(1) << s)) continue;
              if (g_ub[t][s] == 0) continue;
              int64_t rs = fv[s].mode;
              Rat c2 = coef *
                       Rat(int_binomial(static_cast<unsigned long>(rs + nt - 1),
                                        static_cast<unsigned long>(nt - 1))) *
                       Rat(rs) * Rat(g_ub[t][s]);
              if (sign_pow(nt - 1) < 0) c2 = -c2;
              rec(t + 1, gain + nt + rs, c2, claimed | (uint64_t(1) << s));
            }
            // Re-emitted creation operator.
            int64_t avail_r = 0;
            for (std::size_t s = 0; s < fv.size(); ++s)
              if (!(claimed & (uint64_t(1) << s))) avail_r += fv[s].mode;
            int64_t jmax = base + gain + suffix_n[t] + avail_r;
            for (int64_t j = nt; j <= jmax; ++j) {
              Rat c2 = coef *
                       Rat(int_binomial(static_cast<unsigned long>(j - 1),
                                        static_cast<unsigned long>(nt - 1)));
              creations.push_back(
                  FockFactor{fu[t].idx, static_cast<int32_t>(j)});
              rec(t + 1, gain + nt - j, c2, claimed);
              creations.pop_back();
            }
          };
      rec(0, 0, Rat(1), 0);
    }
  }
  return out;
}

VirasoroConfig virasoro(const Voa& v) {
  std::size_t d = v.rank();
  RatMatrix gi = inverse(to_rational(v.lattice().gram()));
  VirasoroConfig vc;
  LatticeVector zero(d, 0);
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j < d; ++j) {
      if (gi(i, j) == 0) continue;
      FockMonomial m{{FockFactor{static_cast<int32_t>(i), 1},
                      FockFactor{static_cast<int32_t>(j), 1}}};
      m.normalize();
      vc.omega.add_term(VoaKey{std::move(m), zero}, gi(i, j) / 2);
    }
  }
  vc.central_charge = Rat(d);
  // Least s with s*omega inside the charge-zero block of the weight-2
  // standard form.
  std::vector<FockMonomial> keys;
  for (const auto& cp : colored_partitions(static_cast<int32_t>(d), 2))
    keys.push_back([&] {
      FockMonomial m;
      for (const auto& [c, kpart] : cp.parts)
        m.factors.push_back(FockFactor{c, static_cast<int32_t>(kpart)});
      m.normalize();
      return m;
    }());
  std::sort(keys.begin(), keys.end());
  std::map<FockMonomial, std::size_t> index;
  for (std::size_t i = 0; i < keys.size(); ++i) index[keys[i]] = i;
  RatMatrix rows(keys.size(), keys.size());
  std::size_t r = 0;
  for (const auto& cp : colored_partitions(static_cast<int32_t>(d), 2)) {
    FockPolynomial p = colored_partition_element(static_cast<int32_t>(d), cp);
    for (const auto& [m, c] : p.terms) rows(r, index.at(m)) = c;
    ++r;
  }
  ZModule block = ZModule::from_rows(rows);
  std::vector<Rat> om_coords(keys.size(), Rat(0));
  for (const auto& [key, c] : vc.omega.terms) om_coords[index.at(key.mono)] = c;
  auto rc = block.rational_coordinates(om_coords);
  if (!rc) throw invariant_violation("conformal vector outside the span");
  Int s = 1;
  for (const auto& q : *rc) s = int_lcm(s, q.get_den());
  vc.multiplier = s;
  return vc;
}

VoaElement virasoro_mode(const Voa& v, const VirasoroConfig& vc, int64_t n,
                         const VoaElement& x) {
  return vertex_mode(v, vc.omega, n + 1, x);
}

bool is_quasi_primary(const Voa& v, const VirasoroConfig& vc,
                      const VoaElement& x) {
  return virasoro_mode(v, vc, 1, x).is_zero();
}

RatMatrix mode_matrix(const Voa& v, const VoaElement& u, int64_t k,
                      const DegreeFrame& from, const DegreeFrame& to) {
  RatMatrix m(from.keys.size(), to.keys.size());
  for (std::size_t i = 0; i < from.keys.size(); ++i) {
    VoaElement x;
    x.terms[from.keys[i]] = 1;
    VoaElement y = vertex_mode(v, u, k, x);
    m.set_row(i, coordinatize(to, y));
  }
  return m;
}

Rat trace_form(const Voa& v, const VoaElement& a, const VoaElement& b,
               int64_t n) {
  Int wa, wb;
  if (!v.homogeneous_weight(a, &wa) || !v.homogeneous_weight(b, &wb))
    throw invalid_input("trace form needs homogeneous arguments");
  DegreeFrame f = degree_frame(v, n);
  RatMatrix ma = mode_matrix(v, a, wa.get_si() - 1, f, f);
  RatMatrix mb = mode_matrix(v, b, wb.get_si() - 1, f, f);
  // Composite row action x -> (x * mb) * ma; trace of mb * ma.
  Rat tr(0);
  for (std::size_t i = 0; i < f.keys.size(); ++i)
    for (std::size_t j = 0; j < f.keys.size(); ++j)
      tr += mb(i, j) * ma(j, i);
  return tr;
}

namespace {

Rat adjoint_sum(const Voa& v, const VirasoroConfig& vc, const VoaElement& u,
                const VoaElement& a, const VoaElement& b, int64_t n,
                int64_t m) {
  Rat rhs(0);
  VoaElement cur = u;
  Rat fact(1);
  for (int64_t i = 0;; ++i) {
    if (i > 0) {
      cur = virasoro_mode(v, vc, 1, cur);
      fact *= Rat(i);
    }
    if (cur.is_zero()) break;
    Rat term =
        pair(v, a, vertex_mode(v, cur, 2 * m - n - 2 - i, b),
             PairKind::BILINEAR) /
        fact;
    if (sign_pow(m) < 0) term = -term;
    rhs += term;
    if (i > m + 2) break;  // weight of L(1)^i u is m - i; nothing survives
  }
  return rhs;
}

}  // namespace

bool pair_adjoint_check(const Voa& v, const VirasoroConfig& vc,
                        const VoaElement& u, const VoaElement& a,
                        const VoaElement& b, int64_t n) {
  Int wt;
  if (!v.homogeneous_weight(u, &wt))
    throw invalid_input("adjoint check needs a homogeneous first argument");
  Rat lhs = pair(v, vertex_mode(v, u, n, a), b, PairKind::BILINEAR);
  return lhs == adjoint_sum(v, vc, u, a, b, n, wt.get_si());
}

Rat invariance_sum(const Voa& v, const VirasoroConfig& vc, const VoaElement& u,
                   const VoaElement& w) {
  Int wt;
  if (!v.homogeneous_weight(u, &wt))
    throw invalid_input("invariance sum needs a homogeneous first argument");
  return adjoint_sum(v, vc, u, VoaElement::vacuum(v.rank()), w, -1,
                     wt.get_si());
}

RatMatrix trace_form_matrix(const Voa& v, int64_t m) {
  auto basis = degree_basis(v, m, BasisVariant::STANDARD_H);
  DegreeFrame f = degree_frame(v, m);
  std::vector<RatMatrix> action;
  action.reserve(basis.size());
  for (const auto& b : basis)
    action.push_back(mode_matrix(v, b.element, m - 1, f, f));
  RatMatrix out(basis.size(), basis.size());
  for (std::size_t i = 0; i < basis.size(); ++i) {
    for (std::size_t j = i; j < basis.size(); ++j) {
      Rat tr(0);
      for (std::size_t r = 0; r < f.keys.size(); ++r)
        for (std::size_t c = 0; c < f.keys.size(); ++c)
          tr += action[j](r, c) * action[i](c, r);
      out(i, j) = tr;
      out(j, i) = tr;
    }
  }
  return out;
}

std::vector<GradedZForm> generated_form(const Voa& v,
                                        const std::vector<VoaElement>& gens,
                                        int64_t max_degree, int max_rounds) {
  if (max_degree < 0) throw invalid_input("negative degree bound");
  std::vector<DegreeFrame> frames;
  std::vector<ZModule> mods;
  for (int64_t n = 0; n <= max_degree; ++n) {
    frames.push_back(degree_frame(v, n));
    mods.push_back(ZModule::zero(frames.back().keys.size()));
  }
  std::vector<std::pair<VoaElement, int64_t>> hom_gens;
  for (const auto& g : gens) {
    if (g.is_zero()) continue;
    Int wt;
    if (!v.homogeneous_weight(g, &wt))
      throw invalid_input("generators must be homogeneous");
    if (wt > max_degree)
      throw invalid_input("generator weight exceeds the degree bound");
    hom_gens.emplace_back(g, wt.get_si());
  }
  {
    RatMatrix seed(1, frames[0].keys.size());
    seed(0, 0) = 1;
    mods[0] = ZModule::from_rows(seed);
  }
  for (int round = 0; round < max_rounds; ++round) {
    bool changed = false;
    for (int64_t dn = 0; dn <= max_degree; ++dn) {
      RatMatrix basis = mods[dn].basis_rows();
      for (std::size_t r = 0; r < basis.rows(); ++r) {
        VoaElement x = element_from_coords(frames[dn], basis.row(r));
        for (const auto& [gen, wg] : hom_gens) {
          for (int64_t dt = 0; dt <= max_degree; ++dt) {
            int64_t k = dn + wg - 1 - dt;
            VoaElement y = vertex_mode(v, gen, k, x);
            if (y.is_zero()) continue;
            std::vector<Rat> coords = coordinatize(frames[dt], y);
            if (mods[dt].contains(coords)) continue;
            RatMatrix row(1, coords.size());
            row.set_row(0, coords);
            mods[dt] = sum(mods[dt], ZModule::from_rows(row));
            changed = true;
          }
        }
      }
    }
    if (!changed) {
      std::vector<GradedZForm> out;
      for (int64_t n = 0; n <= max_degree; ++n)
        out.push_back(GradedZForm{n, mods[n]});
      return out;
    }
  }
  throw invariant_violation("generated span did not stabilize");
}

}  // namespace latvoa
