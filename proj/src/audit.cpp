#include "latvoa/audit.hpp"

#include <algorithm>
#include <map>
#include <utility>

#include "latvoa/error.hpp"
#include "latvoa/svp.hpp"

namespace latvoa {

namespace {

bool integral_entries(const RatMatrix& m) {
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      if (!is_integer(m(i, j))) return false;
  return true;
}

bool odd_diagonal(const RatMatrix& m) {
  for (std::size_t i = 0; i < m.rows(); ++i)
    if (m(i, i).get_num() % 2 != 0) return true;
  return false;
}

Int denominator_lcm(const RatMatrix& m, Int scale) {
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      scale = int_lcm(scale, m(i, j).get_den());
  return scale;
}

// Elementary divisors of an orthogonal sum from the per-block divisors.
AbelianInvariants merged_invariants(std::vector<Int> factors) {
  factors.erase(std::remove_if(factors.begin(), factors.end(),
                               [](const Int& d) { return d == 1; }),
                factors.end());
  if (factors.empty()) return {};
  IntMatrix diag(factors.size(), factors.size());
  for (std::size_t i = 0; i < factors.size(); ++i) diag(i, i) = factors[i];
  SnfResult s = snf(diag);
  AbelianInvariants out;
  for (const auto& d : s.divisors)
    if (d != 1) out.push_back(d);
  return out;
}

struct Sector {
  Int charge_norm;
  std::vector<std::size_t> members;  // indices into the degree basis
  RatMatrix gram;
};

// Orthogonal sectors of the degree basis: one per charge under the hermitian
// pairing; opposite charges merge under the bilinear one.
std::vector<Sector> basis_sectors(const Voa& v,
                                  const std::vector<BasisElement>& basis,
                                  PairKind kind) {
  std::vector<std::pair<std::size_t, std::size_t>> groups;
  std::map<LatticeVector, std::size_t> group_of;
  for (std::size_t i = 0; i < basis.size();) {
    std::size_t j = i;
    while (j < basis.size() && basis[j].charge == basis[i].charge) ++j;
    group_of[basis[i].charge] = groups.size();
    groups.emplace_back(i, j);
    i = j;
  }
  std::vector<Sector> sectors;
  std::vector<char> used(groups.size(), 0);
  for (std::size_t g = 0; g < groups.size(); ++g) {
    if (used[g]) continue;
    used[g] = 1;
    const LatticeVector& a = basis[groups[g].first].charge;
    Sector s;
    s.charge_norm = v.lattice().norm(a);
    for (std::size_t i = groups[g].first; i < groups[g].second; ++i)
      s.members.push_back(i);
    if (kind == PairKind::BILINEAR && !is_zero(a)) {
      auto it = group_of.find(negate(a));
      if (it == group_of.end() || used[it->second])
        throw invariant_violation("basis_sectors: unpaired charge sector");
      used[it->second] = 1;
      for (std::size_t i = groups[it->second].first;
           i < groups[it->second].second; ++i)
        s.members.push_back(i);
    }
    sectors.push_back(std::move(s));
  }
  return sectors;
}

Rat min_diagonal(const RatMatrix& m) {
  Rat b = m(0, 0);
  for (std::size_t i = 1; i < m.rows(); ++i) b = std::min(b, Rat(m(i, i)));
  return b;
}

}  // namespace

DegreeAudit audit_degree(const Voa& v, int64_t n, PairKind kind,
                         const Int& min_norm_class, int threads) {
  std::vector<BasisElement> basis =
      degree_basis(v, n, BasisVariant::STANDARD_H);
  std::vector<Sector> sectors = basis_sectors(v, basis, kind);

  DegreeAudit rep;
  rep.degree = n;
  rep.det = Rat(1);
  rep.denominator_scale = Int(1);

  bool invariants_ok = true;
  std::vector<Int> factors;
  std::map<Int, SectorClass> classes;
  for (Sector& s : sectors) {
    std::vector<BasisElement> sub;
    sub.reserve(s.members.size());
    for (std::size_t i : s.members) sub.push_back(basis[i]);
    s.gram = graded_gram(v, sub, kind, threads);

    Rat d = det(s.gram);
    bool integral = integral_entries(s.gram);
    bool s_odd = integral && odd_diagonal(s.gram);
    rep.rank += static_cast<int64_t>(s.gram.rows());
    rep.det *= d;
    rep.odd = rep.odd || s_odd;
    if (!integral)
      rep.denominator_scale = denominator_lcm(s.gram, rep.denominator_scale);
    if (integral && d != 0) {
      AbelianInvariants gi = gram_invariants(s.gram);
      factors.insert(factors.end(), gi.begin(), gi.end());
    } else {
      invariants_ok = false;
    }

    auto [it, fresh] = classes.try_emplace(s.charge_norm);
    SectorClass& c = it->second;
    if (fresh) {
      c.charge_norm = s.charge_norm;
      c.sector_rank = static_cast<int64_t>(s.gram.rows());
      c.gram = s.gram;
      c.det = Rat(1);
    } else if (c.gram != s.gram) {
      c.uniform = false;
    }
    ++c.sectors;
    c.det *= d;
    c.odd = c.odd || s_odd;
  }
  if (invariants_ok) rep.invariants = merged_invariants(std::move(factors));
  for (auto& [norm, c] : classes) rep.classes.push_back(std::move(c));

  if (min_norm_class >= 0) {
    bool seen = false;
    Rat best;
    int64_t count = 0;
    for (const Sector& s : sectors) {
      if (s.charge_norm != min_norm_class || s.gram.rows() == 0) continue;
      // The smallest diagonal entry is an attained norm, so it bounds the
      // minimum and keeps the enumeration exact.
      std::vector<ShortVector> sv = short_vectors(s.gram, min_diagonal(s.gram));
      if (sv.empty()) continue;
      const Rat& m = sv.front().norm;
      int64_t c = 0;
      for (const ShortVector& w : sv) {
        if (w.norm != m) break;
        ++c;
      }
      if (!seen || m < best) {
        seen = true;
        best = m;
        count = c;
      } else if (m == best) {
        count += c;
      }
    }
    if (!seen)
      throw invalid_input("audit_degree: no sector of the requested charge norm");
    rep.min_norm_value = best;
    rep.min_norm_count = count;
  }
  return rep;
}

WeightOneAudit weight_one_audit(const Voa& v, PairKind kind, int threads) {
  std::vector<BasisElement> basis =
      degree_basis(v, 1, BasisVariant::STANDARD_H);
  RatMatrix g = graded_gram(v, basis, kind, threads);

  WeightOneAudit rep;
  rep.rank = static_cast<int64_t>(g.rows());
  rep.det = g.rows() ? det(g) : Rat(1);
  bool integral = integral_entries(g);
  rep.odd = integral && odd_diagonal(g);

  const IntMatrix& lg = v.lattice().gram();
  std::size_t r = v.rank();
  RatMatrix expect(g.rows(), g.cols());
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j) expect(i, j) = Rat(lg(i, j));
  for (std::size_t i = r; i < g.rows(); ++i) expect(i, i) = Rat(1);
  rep.lattice_plus_identity = (g == expect);

  if (integral && rep.det != 0) rep.invariants = gram_invariants(g);
  return rep;
}

WeightTwoZeroSplit weight_two_zero_split(const Voa& v, PairKind kind) {
  std::vector<BasisElement> basis =
      degree_basis(v, 2, BasisVariant::STANDARD_H);
  std::size_t nz = 0;
  while (nz < basis.size() && is_zero(basis[nz].charge)) ++nz;
  if (nz == 0)
    throw invariant_violation("weight_two_zero_split: empty zero-charge block");

  // Local coordinates: the sorted support keys of the block.
  std::map<VoaKey, std::size_t> key_index;
  for (std::size_t i = 0; i < nz; ++i)
    for (const auto& term : basis[i].element.terms)
      key_index.emplace(term.first, 0);
  std::vector<VoaKey> keys;
  keys.reserve(key_index.size());
  for (auto& [k, idx] : key_index) {
    idx = keys.size();
    keys.push_back(k);
  }
  const std::size_t dim = keys.size();

  RatMatrix rows(nz, dim);
  for (std::size_t i = 0; i < nz; ++i)
    for (const auto& term : basis[i].element.terms)
      rows(i, key_index.at(term.first)) = term.second;

  std::vector<VoaElement> unit(dim);
  for (std::size_t i = 0; i < dim; ++i) unit[i].add_term(keys[i], Rat(1));
  RatMatrix kg(dim, dim);
  for (std::size_t i = 0; i < dim; ++i)
    for (std::size_t j = i; j < dim; ++j) {
      kg(i, j) = pair(v, unit[i], unit[j], kind);
      kg(j, i) = kg(i, j);
    }

  RatMatrix bg = rows * kg * rows.transpose();

  WeightTwoZeroSplit rep;
  rep.rank = static_cast<int64_t>(nz);
  rep.det = det(bg);
  rep.odd = integral_entries(bg) && odd_diagonal(bg);

  ZModule mod = ZModule::from_rows(rows);
  if (mod.rank() != nz)
    throw invariant_violation("weight_two_zero_split: dependent basis rows");

  RatMatrix pair_rows(0, dim), single_rows(0, dim);
  for (std::size_t i = 0; i < dim; ++i) {
    std::vector<Rat> u(dim);
    u[i] = Rat(1);
    if (keys[i].mono.factors.size() == 2)
      pair_rows.append_row(u);
    else
      single_rows.append_row(u);
  }
  ZModule pmod = intersect(mod, ZModule::from_rows(pair_rows));
  ZModule smod = intersect(mod, ZModule::from_rows(single_rows));

  auto module_gram = [&](const ZModule& m) {
    RatMatrix b = m.basis_rows();
    return b * kg * b.transpose();
  };
  RatMatrix pg = module_gram(pmod);
  RatMatrix sg = module_gram(smod);
  rep.pair_rank = static_cast<int64_t>(pmod.rank());
  rep.pair_det = pg.rows() ? det(pg) : Rat(1);
  rep.single_rank = static_cast<int64_t>(smod.rank());
  rep.single_det = sg.rows() ? det(sg) : Rat(1);
  rep.glue = quotient_invariants(sum(pmod, smod), mod);

  std::vector<ShortVector> sv = short_vectors(bg, min_diagonal(bg));
  rep.min = sv.front().norm;
  for (const ShortVector& w : sv) {
    if (w.norm != rep.min) break;
    ++rep.min_count;
  }
  return rep;
}

}  // namespace latvoa
