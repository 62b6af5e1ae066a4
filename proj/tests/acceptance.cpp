// Acceptance gate: thirteen structural criteria, each checked with exact
// values (no tolerances) and a wall-clock budget, one pass/fail line per
// criterion.  Exit code is the number of failed criteria.

#include <chrono>
#include <cstdint>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "latvoa/audit.hpp"
#include "latvoa/cvcc.hpp"
#include "latvoa/error.hpp"
#include "latvoa/fock.hpp"
#include "latvoa/pairing.hpp"
#include "latvoa/svp.hpp"
#include "latvoa/symmetry.hpp"
#include "latvoa/vertex.hpp"

using namespace latvoa;
using Clock = std::chrono::steady_clock;

namespace {

double secs(Clock::time_point from) {
  return std::chrono::duration<double>(Clock::now() - from).count();
}

Voa make_voa(const std::string& name) {
  return Voa(resolve_lattice(LatticeSpec{name}));
}

std::vector<GradedZForm> standard_grades(const Voa& v, int64_t max_degree) {
  std::vector<GradedZForm> out;
  for (int64_t n = 0; n <= max_degree; ++n)
    out.push_back(standard_form(v, n));
  return out;
}

FockMonomial mono(std::initializer_list<std::pair<int32_t, int32_t>> fs) {
  FockMonomial m;
  for (const auto& [i, k] : fs) m.factors.push_back(FockFactor{i, k});
  m.normalize();
  return m;
}

// The linear oscillator sum_i a_i b_i(-mode).
FockPolynomial linear_osc(const LatticeVector& a, int32_t mode) {
  FockPolynomial p = FockPolynomial::zero();
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] != 0)
      p += FockPolynomial::monomial(mono({{(int32_t)i, mode}}), Rat(Int(a[i])));
  return p;
}

std::vector<Rat> rat_coords(const LatticeVector& a) {
  std::vector<Rat> c(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) c[i] = Rat(Int(a[i]));
  return c;
}

HProduct hproduct_of(const Voa& v, const BasisElement& b) {
  HProduct p;
  p.charge = b.charge;
  for (const auto& [color, part] : b.cp.parts) {
    HFactor f;
    f.coords.assign(v.rank(), Rat(0));
    f.coords[color] = Rat(1);
    f.part = part;
    p.factors.push_back(std::move(f));
  }
  return p;
}

std::vector<LatticeVector> norm_two_vectors(const Voa& v) {
  std::vector<LatticeVector> out;
  for (const auto& s : short_vectors(v.lattice().gram(), Int(2)))
    if (s.norm == 2) out.push_back(s.coords);
  return out;
}

LatticeVector norm_four_vector(const Voa& v) {
  for (const auto& s : short_vectors(v.lattice().gram(), Int(4)))
    if (s.norm == 4) return s.coords;
  throw invalid_input("no norm-four vector");
}

// Order-3 rotation of the rank-2 hexagonal root lattice.
LiftedIsometry a2_rotation(const Voa& v) {
  IntMatrix s(2, 2);
  s(0, 0) = 0;
  s(1, 0) = 1;
  s(0, 1) = -1;
  s(1, 1) = -1;
  return lift_isometry(v, s, {1, 1});
}

bool eigenvalue_family_ok(const Rat& x) {
  if (x < 0) return false;
  return is_integer(x) || is_integer(x - Rat(1) / 2) ||
         is_integer(x - Rat(1) / 16);
}

bool integral_entries(const RatMatrix& m) {
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      if (!is_integer(m(i, j))) return false;
  return true;
}

Int invariants_index(const AbelianInvariants& inv) {
  Int p(1);
  for (const auto& d : inv) p *= d;
  return p;
}

struct Result {
  bool ok = false;
  std::string detail;
};

// 1. The first series coefficients of the exponential generating series, as
// explicit oscillator polynomials in a formal direction.
Result criterion1() {
  std::vector<FockPolynomial> h = complete_series({Rat(1)}, 3);
  FockPolynomial h0 = FockPolynomial::one();
  FockPolynomial h1 = FockPolynomial::monomial(mono({{0, 1}}));
  FockPolynomial h2 =
      FockPolynomial::monomial(mono({{0, 1}, {0, 1}}), Rat(1) / 2) +
      FockPolynomial::monomial(mono({{0, 2}}), Rat(1) / 2);
  FockPolynomial h3 =
      FockPolynomial::monomial(mono({{0, 1}, {0, 1}, {0, 1}}), Rat(1) / 6) +
      FockPolynomial::monomial(mono({{0, 1}, {0, 2}}), Rat(1) / 2) +
      FockPolynomial::monomial(mono({{0, 3}}), Rat(1) / 3);
  bool ok = h.size() == 4 && h[0] == h0 && h[1] == h1 && h[2] == h2 &&
            h[3] == h3;
  return {ok, "coefficients 0..3 equal the closed oscillator expressions"};
}

// 2. sum_i h_i(a) h_{n-i}(-a) = delta_{n,0} for every basis direction.
Result criterion2() {
  bool ok = true;
  int directions = 0;
  for (const char* name : {"A2", "E8"}) {
    Voa v = make_voa(name);
    for (std::size_t j = 0; j < v.rank(); ++j) {
      std::vector<Rat> u(v.rank(), Rat(0)), w(v.rank(), Rat(0));
      u[j] = Rat(1);
      w[j] = Rat(-1);
      std::vector<FockPolynomial> hp = complete_series(u, 12);
      std::vector<FockPolynomial> hm = complete_series(w, 12);
      for (int64_t n = 0; n <= 12; ++n) {
        FockPolynomial acc = FockPolynomial::zero();
        for (int64_t i = 0; i <= n; ++i) acc += fock_mul(hp[i], hm[n - i]);
        FockPolynomial want =
            n == 0 ? FockPolynomial::one() : FockPolynomial::zero();
        ok = ok && acc == want;
      }
      ++directions;
    }
  }
  std::ostringstream d;
  d << directions << " directions, degrees 0..12";
  return {ok, d.str()};
}

// 3. The contraction pairing and the generating-function pairing agree on
// every basis pair, both forms.
Result criterion3() {
  unsigned long long pairs = 0;
  bool ok = true;
  auto sweep = [&](const char* name, int64_t max_degree) {
    Voa v = make_voa(name);
    for (int64_t n = 0; n <= max_degree; ++n) {
      std::vector<BasisElement> basis =
          degree_basis(v, n, BasisVariant::STANDARD_H);
      std::vector<HProduct> hp;
      hp.reserve(basis.size());
      for (const auto& b : basis) hp.push_back(hproduct_of(v, b));
      for (PairKind kind : {PairKind::HERMITIAN, PairKind::BILINEAR})
        for (std::size_t i = 0; i < basis.size(); ++i)
          for (std::size_t j = 0; j < basis.size(); ++j) {
            Rat lhs = pair(v, basis[i].element, basis[j].element, kind);
            Rat rhs = pair_genfun(v, hp[i], hp[j], kind);
            ok = ok && lhs == rhs;
            ++pairs;
          }
    }
  };
  sweep("A2", 4);
  sweep("E8", 2);
  std::ostringstream d;
  d << pairs << " pair evaluations agree";
  return {ok, d.str()};
}

// 4. Closed inner-product values on norm-two vectors.
Result criterion4() {
  Voa v = make_voa("E8");
  std::vector<LatticeVector> roots = norm_two_vectors(v);
  bool ok = roots.size() == 240;
  LatticeVector zero(v.rank(), 0);

  auto elem = [&](const FockPolynomial& p) {
    return VoaElement::from_fock(p, zero);
  };

  std::vector<VoaElement> s2, a2;
  s2.reserve(roots.size());
  a2.reserve(roots.size());
  for (const auto& r : roots) {
    s2.push_back(elem(complete_series(rat_coords(r), 2)[2]));
    a2.push_back(elem(linear_osc(r, 2)));
  }

  // Norm 3 on the whole orbit.
  for (std::size_t i = 0; i < roots.size(); ++i)
    ok = ok && pair(v, s2[i], s2[i], PairKind::HERMITIAN) == Rat(3);

  // Pairwise closed forms on a leading sample.
  const std::size_t m = 40;
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) {
      Rat ip = Rat(v.lattice().inner(roots[i], roots[j]));
      ok = ok && pair(v, a2[i], a2[j], PairKind::HERMITIAN) == 2 * ip;
      ok = ok &&
           pair(v, s2[i], s2[j], PairKind::HERMITIAN) == ip / 2 + ip * ip / 2;
    }

  // Degree-one product expansion on quadruples.
  const std::size_t q = 6;
  std::vector<VoaElement> prod(q * q);
  for (std::size_t i = 0; i < q; ++i)
    for (std::size_t j = 0; j < q; ++j)
      prod[i * q + j] =
          elem(fock_mul(linear_osc(roots[i], 1), linear_osc(roots[j], 1)));
  for (std::size_t i = 0; i < q; ++i)
    for (std::size_t j = 0; j < q; ++j)
      for (std::size_t k = 0; k < q; ++k)
        for (std::size_t l = 0; l < q; ++l) {
          Rat ac = Rat(v.lattice().inner(roots[i], roots[k]));
          Rat bd = Rat(v.lattice().inner(roots[j], roots[l]));
          Rat ad = Rat(v.lattice().inner(roots[i], roots[l]));
          Rat bc = Rat(v.lattice().inner(roots[j], roots[k]));
          ok = ok && pair(v, prod[i * q + j], prod[k * q + l],
                          PairKind::HERMITIAN) == ac * bd + ad * bc;
        }
  return {ok, "norms 3 on 240 vectors; pairwise and quadruple expansions"};
}

// 5. Degree-one audit of the rank-eight unimodular span.
Result criterion5() {
  Voa v = make_voa("E8");
  WeightOneAudit w = weight_one_audit(v, PairKind::HERMITIAN, 1);
  bool ok = w.rank == 248 && w.det == Rat(1) && w.odd &&
            w.lattice_plus_identity && w.invariants.empty();
  return {ok, "rank 248, determinant 1, odd, lattice block plus identity"};
}

// 6. Degree-two audit: block structure, glue index, minimum by enumeration.
Result criterion6() {
  Voa v = make_voa("E8");
  DegreeAudit d2 = audit_degree(v, 2, PairKind::HERMITIAN, Int(-1), 1);
  bool ok = d2.rank == 4124 && d2.det == Rat(1) && d2.odd &&
            d2.denominator_scale == 1 && d2.invariants.empty() &&
            d2.classes.size() == 3;
  if (ok) {
    const SectorClass& j = d2.classes[0];
    const SectorClass& mid = d2.classes[1];
    const SectorClass& s = d2.classes[2];
    ok = ok && j.charge_norm == 0 && j.sectors == 1 && j.sector_rank == 44 &&
         j.det == Rat(1) && j.odd;
    ok = ok && mid.charge_norm == 2 && mid.sectors == 240 &&
         mid.sector_rank == 8 && mid.uniform &&
         mid.gram == to_rational(v.lattice().gram()) &&
         mid.sectors * mid.sector_rank == 1920;
    ok = ok && s.charge_norm == 4 && s.sectors == 2160 && s.sector_rank == 1 &&
         s.uniform && s.gram == RatMatrix(1, 1, {Rat(1)});
  }
  WeightTwoZeroSplit z = weight_two_zero_split(v, PairKind::HERMITIAN);
  ok = ok && z.rank == 44 && z.det == Rat(1) && z.odd &&
       z.glue == AbelianInvariants(8, Int(2)) &&
       z.pair_det * z.single_det == Rat(65536) && z.min == Rat(3);
  std::ostringstream d;
  d << "blocks 2160x1 / 240x8 / 44; zero-block glue index "
    << invariants_index(z.glue) << ", split determinant "
    << rat_str(z.pair_det * z.single_det) << ", minimum norm "
    << rat_str(z.min) << " (" << z.min_count << " vectors)";
  return {ok, d.str()};
}

// 7. Dual bases pair to the identity; the degree-one dual quotient equals
// the discriminant group.
Result criterion7() {
  bool ok = true;
  Voa a2 = make_voa("A2");
  for (int64_t n = 0; n <= 5; ++n) {
    std::vector<BasisElement> primal =
        degree_basis(a2, n, BasisVariant::SCHUR_PRIMAL);
    for (PairKind kind : {PairKind::HERMITIAN, PairKind::BILINEAR}) {
      BasisVariant dv = kind == PairKind::HERMITIAN
                            ? BasisVariant::SCHUR_DUAL_HERMITIAN
                            : BasisVariant::SCHUR_DUAL_BILINEAR;
      std::vector<BasisElement> dual = degree_basis(a2, n, dv);
      RatMatrix g = graded_gram(a2, primal, dual, kind, 1);
      ok = ok && g == RatMatrix::identity(g.rows());
    }
  }
  struct Want {
    const char* name;
    AbelianInvariants inv;
  };
  const std::vector<Want> wants = {{"A1", {Int(2)}},
                                   {"A2", {Int(3)}},
                                   {"EE8", AbelianInvariants(8, Int(2))},
                                   {"E8", {}}};
  std::ostringstream d;
  d << "dual pairings are identities to degree 5; degree-one quotients";
  for (const Want& w : wants) {
    Voa v = make_voa(w.name);
    GradedZForm r = standard_form(v, 1);
    GradedZForm u = variant_form(v, 1, BasisVariant::SCHUR_DUAL_HERMITIAN);
    bool here = u.module.contains(r.module) &&
                u.module.rank() == r.module.rank() &&
                quotient_invariants(r.module, u.module) == w.inv;
    ok = ok && here;
    d << " " << w.name << (here ? ":match" : ":MISMATCH");
  }
  return {ok, d.str()};
}

// 8. Mode products of basis pairs stay integral; the charge vectors generate
// the span; the rank-eight unimodular Grams are integral.
Result criterion8() {
  bool ok = true;
  unsigned long long modes = 0;
  for (const char* name : {"A1", "A2"}) {
    Voa v = make_voa(name);
    std::vector<std::vector<BasisElement>> bases;
    std::vector<DegreeFrame> frames;
    std::vector<GradedZForm> forms;
    for (int64_t n = 0; n <= 3; ++n) {
      bases.push_back(degree_basis(v, n, BasisVariant::STANDARD_H));
      frames.push_back(degree_frame(v, n));
      forms.push_back(standard_form(v, n));
    }
    for (int64_t a = 0; a <= 3; ++a)
      for (int64_t b = 0; b <= 3; ++b)
        for (const auto& u : bases[a])
          for (const auto& w : bases[b])
            for (int64_t wt = 0; wt <= 3; ++wt) {
              int64_t k = a + b - 1 - wt;
              VoaElement p = vertex_mode(v, u.element, k, w.element);
              ++modes;
              if (p.is_zero()) continue;
              ok = ok && forms[wt]
                             .module
                             .coordinates(coordinatize(frames[wt], p))
                             .has_value();
            }
    // Generation from the charge vectors alone.
    std::vector<VoaElement> gens;
    for (std::size_t i = 0; i < v.rank(); ++i) {
      LatticeVector g(v.rank(), 0);
      g[i] = 1;
      gens.push_back(VoaElement::charge_vector(g));
      g[i] = -1;
      gens.push_back(VoaElement::charge_vector(g));
    }
    std::vector<GradedZForm> gf = generated_form(v, gens, 3);
    for (int64_t n = 0; n <= 3; ++n)
      ok = ok && gf[n].module == forms[n].module;
  }
  Voa e8 = make_voa("E8");
  for (PairKind kind : {PairKind::HERMITIAN, PairKind::BILINEAR})
    for (int64_t n = 0; n <= 2; ++n)
      ok = ok && audit_degree(e8, n, kind, Int(-1), 1).denominator_scale == 1;
  std::ostringstream d;
  d << modes << " mode products checked; generated spans match";
  return {ok, d.str()};
}

// 9. The intersection of the span over a lifted isometry group is invariant
// with finite reported index.
Result criterion9() {
  Voa v = make_voa("A2");
  std::vector<LiftedIsometry> group =
      isometry_group(v, {theta(v), a2_rotation(v)});
  bool ok = true;
  std::ostringstream d;
  d << "group order " << group.size() << "; indexes";
  for (int64_t n = 0; n <= 4; ++n) {
    GradedZForm r = standard_form(v, n);
    DegreeFrame f = degree_frame(v, n);
    std::vector<RatMatrix> mats;
    for (const LiftedIsometry& g : group)
      mats.push_back(isometry_matrix(v, g, f));
    ZModule s = r.module;
    for (const RatMatrix& m : mats) s = intersect(s, image_module(r.module, m));
    for (const RatMatrix& m : mats) ok = ok && image_module(s, m) == s;
    ok = ok && s.rank() == r.module.rank();
    Int index = invariants_index(quotient_invariants(s, r.module));
    d << " " << index;
  }
  return {ok, d.str()};
}

// 10. The product-span containment chain under elementary abelian actions.
Result criterion10() {
  bool ok = true;
  std::ostringstream d;
  auto chain = [&](const Voa& v, const std::vector<LiftedIsometry>& gens,
                   const char* tag) {
    std::vector<LiftedIsometry> group = isometry_group(v, gens);
    const int64_t maxd = 3;
    std::vector<GradedZForm> meet, join;
    for (int64_t n = 0; n <= maxd; ++n) {
      GradedZForm r = standard_form(v, n);
      DegreeFrame f = degree_frame(v, n);
      ZModule lo = r.module, hi = r.module;
      for (const LiftedIsometry& g : group) {
        ZModule img = image_module(r.module, isometry_matrix(v, g, f));
        lo = intersect(lo, img);
        hi = sum(hi, img);
      }
      meet.push_back(GradedZForm{n, lo});
      join.push_back(GradedZForm{n, hi});
    }
    std::vector<GradedZForm> mm = module_product_span(v, meet, meet, maxd);
    std::vector<GradedZForm> mj = module_product_span(v, meet, join, maxd);
    bool here = true;
    for (int64_t n = 0; n <= maxd; ++n) {
      here = here && mm[n].module.contains(meet[n].module);
      here = here && mj[n].module.contains(mm[n].module);
      here = here && join[n].module.contains(mj[n].module);
    }
    ok = ok && here;
    d << tag << " group order " << group.size()
      << (here ? " chain holds; " : " chain BROKEN; ");
  };
  Voa r4 = make_voa("RANK1(4)");
  chain(r4, {theta(r4)}, "RANK1(4)");
  IntMatrix g2(2, 2);
  g2(0, 0) = 2;
  g2(1, 1) = 2;
  Voa aa{EvenLattice(g2)};
  IntMatrix sw(2, 2);
  sw(1, 0) = 1;
  sw(0, 1) = 1;
  chain(aa, {theta(aa), lift_isometry(aa, sw, {1, 1})}, "A1+A1");
  return {ok, d.str() + "degrees 0..3"};
}

// 11. Half central charge vectors: mode relations, bracket samples,
// involution spectra, and span stabilization.
Result criterion11() {
  bool ok = true;
  std::ostringstream d;

  Clock::time_point small_start = Clock::now();
  {
    Voa v = make_voa("RANK1(4)");
    IsingVector iv = cvcc_aa1(v, {1}, 1);
    IsingCheckOptions opt;
    opt.bracket_degree = 3;
    IsingReport rep = ising_check(v, iv.e, opt);
    ok = ok && rep.ok();
    for (int64_t n = 1; n <= 4; ++n) {
      MiyamotoData md = miyamoto(v, iv.e, n);
      for (const auto& [eig, mult] : md.spectrum)
        ok = ok && mult > 0 && eigenvalue_family_ok(eig);
      ok = ok && md.involution * md.involution ==
                     RatMatrix::identity(md.involution.rows());
    }
    ok = ok && stabilization_check(v, iv.e, standard_grades(v, 4), 4).ok();
  }
  double small_time = secs(small_start);
  bool small_in_budget = small_time < 30.0;
  ok = ok && small_in_budget;

  Clock::time_point big_start = Clock::now();
  {
    Voa v = make_voa("E8");
    IsingVector iv = cvcc_aa1(v, norm_four_vector(v), 1);
    IsingCheckOptions opt;
    opt.bracket_degree = 2;
    opt.bracket_samples = 10;
    IsingReport rep = ising_check(v, iv.e, opt);
    ok = ok && rep.ok();
    MiyamotoData m1 = miyamoto(v, iv.e, 1);
    for (const auto& [eig, mult] : m1.spectrum)
      ok = ok && mult > 0 && eigenvalue_family_ok(eig);
    ok = ok && m1.involution * m1.involution ==
                   RatMatrix::identity(m1.involution.rows());
    // Blockwise double application on degree-two elements.
    std::vector<BasisElement> b2 = degree_basis(v, 2, BasisVariant::STANDARD_H);
    for (std::size_t i = 0; i < b2.size(); i += 400) {
      VoaElement once = miyamoto_apply(v, iv.e, b2[i].element);
      ok = ok && miyamoto_apply(v, iv.e, once) == b2[i].element;
    }
    ok = ok && stabilization_check(v, iv.e, standard_grades(v, 2), 2).ok();
  }
  {
    Voa v = make_voa("EE8");
    IsingVector iv =
        cvcc_ee8(v, IntMatrix::identity(8), std::vector<int>(8, 1));
    IsingCheckOptions opt;
    opt.bracket_degree = 2;
    opt.bracket_samples = 4;
    IsingReport rep = ising_check(v, iv.e, opt);
    ok = ok && rep.ok();
    bool sixteenth = false;
    for (int64_t n = 1; n <= 2; ++n) {
      MiyamotoData md = miyamoto(v, iv.e, n);
      for (const auto& [eig, mult] : md.spectrum)
        ok = ok && mult > 0 && eigenvalue_family_ok(eig);
      ok = ok && md.involution * md.involution ==
                     RatMatrix::identity(md.involution.rows());
      sixteenth = sixteenth || md.has_sixteenth;
    }
    ok = ok && sixteenth;
    ok = ok && stabilization_check(v, iv.e, standard_grades(v, 2), 2).ok();
  }
  double big_time = secs(big_start);
  bool big_in_budget = big_time < 600.0;
  ok = ok && big_in_budget;

  d << "rank-1 part " << (small_in_budget ? "" : "OVER BUDGET ") << "in "
    << (int)(small_time + 0.5) << "s; rank-8 parts "
    << (big_in_budget ? "" : "OVER BUDGET ") << "in "
    << (int)(big_time + 0.5) << "s; spectra in {0,1/2,1/16}+Z";
  return {ok, d.str()};
}

// 12. Eigen splits of involutions: randomized conjugated block involutions,
// then the tensor-factor swap family.
Result criterion12() {
  std::mt19937 rng(20260822u);
  auto pick = [&](int lo, int hi) {
    return std::uniform_int_distribution<int>(lo, hi)(rng);
  };
  bool random_ok = true;
  for (int trial = 0; trial < 100; ++trial) {
    int dim = pick(1, 10);
    int swaps = pick(0, dim / 2);
    int rest = dim - 2 * swaps;
    int plus = pick(0, rest);

    IntMatrix diag(dim, dim);
    for (int i = 0; i < rest; ++i) diag(i, i) = i < plus ? 1 : -1;
    for (int s = 0; s < swaps; ++s) {
      int at = rest + 2 * s;
      diag(at, at + 1) = 1;
      diag(at + 1, at) = 1;
    }

    IntMatrix u = IntMatrix::identity(dim), uinv = IntMatrix::identity(dim);
    for (int op = 0; op < 40; ++op) {
      int i = pick(0, dim - 1), j = pick(0, dim - 1);
      if (i == j) continue;
      Int c(pick(-2, 2));
      // Row op on u, inverse column op on uinv.
      for (int t = 0; t < dim; ++t) u(j, t) += c * u(i, t);
      for (int t = 0; t < dim; ++t) uinv(t, i) -= c * uinv(t, j);
    }
    IntMatrix t = u * diag * uinv;
    random_ok = random_ok && u * uinv == IntMatrix::identity(dim) &&
                t * t == IntMatrix::identity(dim);
    CharacterSplit cs = eigen_split(ZModule::full(dim), {to_rational(t)});
    random_ok = random_ok && cs.jordan_rank == swaps &&
                cs.quotient == AbelianInvariants(swaps, Int(2));
  }

  bool swap_claim_ok = true;
  std::ostringstream computed;
  for (int n = 1; n <= 6; ++n) {
    int dim = n * n;
    IntMatrix t(dim, dim);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) t(i * n + j, j * n + i) = 1;
    CharacterSplit cs = eigen_split(ZModule::full(dim), {to_rational(t)});
    // The computed quotient is elementary abelian of rank n(n-1)/2.
    int half = n * (n - 1) / 2;
    bool truth = cs.quotient == AbelianInvariants(half, Int(2)) &&
                 cs.jordan_rank == half;
    swap_claim_ok = swap_claim_ok && truth &&
                    cs.quotient == AbelianInvariants(n, Int(2));
    computed << (n > 1 ? "," : "") << cs.quotient.size();
  }
  bool ok = random_ok && swap_claim_ok;
  std::ostringstream d;
  d << "random involutions " << (random_ok ? "match 2^r on 100 trials" : "FAIL")
    << "; factor-swap quotient ranks computed [" << computed.str()
    << "] for n=1..6 vs stated rank n (agrees only at n=3)";
  return {ok, d.str()};
}

// 13. Graded trace pairings are integer-valued on the standard basis.
Result criterion13() {
  Voa v = make_voa("A1");
  bool ok = true;
  std::ostringstream d;
  d << "ranks";
  for (int64_t m = 0; m <= 2; ++m) {
    RatMatrix tm = trace_form_matrix(v, m);
    ok = ok && integral_entries(tm);
    d << " " << rank(tm) << "/" << tm.rows();
  }
  return {ok, d.str()};
}

struct Criterion {
  int id;
  const char* label;
  double budget;
  std::function<Result()> fn;
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {1, "series coefficients through the cubic term", 1, criterion1},
      {2, "series convolution collapses to the delta", 10, criterion2},
      {3, "contraction pairing matches the generating function", 120,
       criterion3},
      {4, "closed inner-product values on norm-two vectors", 10, criterion4},
      {5, "degree-one audit of the rank-eight unimodular span", 30,
       criterion5},
      {6, "degree-two audit with minimum-norm enumeration", 600, criterion6},
      {7, "dual bases pair to the identity with discriminant quotients", 60,
       criterion7},
      {8, "mode products stay integral and charge vectors generate", 300,
       criterion8},
      {9, "group intersection of the span is invariant, index finite", 60,
       criterion9},
      {10, "product-span containment chain under two-group actions", 120,
       criterion10},
      {11, "half central charge vectors and their involutions", 630,
       criterion11},
      {12, "eigen splits: random involutions and factor swaps", 60,
       criterion12},
      {13, "graded trace pairings are integer-valued", 60, criterion13},
  };

  int failures = 0;
  for (const Criterion& c : criteria) {
    Clock::time_point t0 = Clock::now();
    Result r;
    try {
      r = c.fn();
    } catch (const std::exception& e) {
      r = {false, std::string("exception: ") + e.what()};
    }
    double dt = secs(t0);
    bool pass = r.ok && dt <= c.budget;
    if (r.ok && dt > c.budget) {
      if (!r.detail.empty()) r.detail += "; ";
      r.detail += "over time budget";
    }
    std::printf("criterion %2d %s %7.1fs/%4.0fs  %s%s%s\n", c.id,
                pass ? "PASS" : "FAIL", dt, c.budget, c.label,
                r.detail.empty() ? "" : " -- ", r.detail.c_str());
    std::fflush(stdout);
    if (!pass) ++failures;
  }
  std::printf("\n%d of 13 criteria passed\n", 13 - failures);
  std::printf(
      "not reproduced at this scale: Moonshine-module/Monster-scale integral "
      "forms, Leech-lattice audits,\nand full O+(10,2) orbit computations; "
      "the same machinery runs on the small lattices above\n");
  return failures == 0 ? 0 : 1;
}
