#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "latvoa/cvcc.hpp"
#include "latvoa/error.hpp"
#include "latvoa/svp.hpp"
#include "latvoa/symmetry.hpp"

using namespace latvoa;

namespace {

Voa make_voa(const std::string& name) {
  return Voa(resolve_lattice(LatticeSpec{name}));
}

std::vector<GradedZForm> standard_grades(const Voa& v, int64_t max_degree) {
  std::vector<GradedZForm> out;
  for (int64_t n = 0; n <= max_degree; ++n) out.push_back(standard_form(v, n));
  return out;
}

VoaElement key_element(const DegreeFrame& f, std::size_t i) {
  VoaElement x;
  x.terms[f.keys[i]] = 1;
  return x;
}

// A norm-four vector of the lattice, via exact enumeration.
LatticeVector norm_four_vector(const EvenLattice& l) {
  for (const auto& s : short_vectors(l.gram(), Int(4)))
    if (s.norm == 4) return s.coords;
  throw std::runtime_error("no norm-four vector");
}

bool is_identity(const RatMatrix& m) {
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      if (m(i, j) != Rat(i == j ? 1 : 0)) return false;
  return true;
}

}  // namespace

TEST_CASE("norm-four vector elements have the displayed coefficients") {
  Voa v = make_voa("RANK1(4)");
  IsingVector plus = cvcc_aa1(v, {1}, 1);
  IsingVector minus = cvcc_aa1(v, {1}, -1);
  CHECK(plus.type == IsingType::AA1);
  CHECK(plus.alpha == LatticeVector{1});

  FockMonomial sq{{FockFactor{0, 1}, FockFactor{0, 1}}};
  sq.normalize();
  VoaKey osc{sq, {0}};
  VoaKey up{FockMonomial::one(), {1}};
  VoaKey down{FockMonomial::one(), {-1}};
  CHECK(plus.e.terms.size() == 3);
  CHECK(plus.e.terms.at(osc) == Rat(1) / 16);
  CHECK(plus.e.terms.at(up) == Rat(1) / 4);
  CHECK(plus.e.terms.at(down) == Rat(1) / 4);
  CHECK(minus.e.terms.at(osc) == Rat(1) / 16);
  CHECK(minus.e.terms.at(up) == Rat(-1) / 4);
  CHECK(minus.e.terms.at(down) == Rat(-1) / 4);

  Voa a1 = make_voa("A1");
  CHECK_THROWS_AS(cvcc_aa1(a1, {1}, 1), invalid_input);  // norm two
  CHECK_THROWS_AS(cvcc_aa1(v, {1}, 0), invalid_input);
  CHECK_THROWS_AS(cvcc_aa1(v, {1, 0}, 1), invalid_input);
}

TEST_CASE("doubled-E8 elements assemble from the dual-Gram contraction") {
  Voa v = make_voa("EE8");
  IntMatrix id = IntMatrix::identity(8);
  std::vector<int> trivial(8, 1);
  IsingVector iv = cvcc_ee8(v, id, trivial);
  CHECK(iv.type == IsingType::EE8);

  // Exponential part: one term per norm-four vector, coefficient 1/32.
  VoaElement charges;
  std::size_t n_exp = 0;
  for (const auto& [k, c] : iv.e.terms)
    if (!is_zero(k.charge)) {
      CHECK(c == Rat(1) / 32);
      charges.add_term(VoaKey{k.mono, k.charge}, c);
      ++n_exp;
    }
  CHECK(n_exp == 240);
  // Oscillator part: with E = L the contraction is twice the conformal
  // vector, so the 1/32 multiple equals omega/16.
  VirasoroConfig vc = virasoro(v);
  CHECK(iv.e - charges == (Rat(1) / 16) * vc.omega);

  // A sign character flips exactly the terms with odd first coordinate.
  std::vector<int> twist(8, 1);
  twist[0] = -1;
  IsingVector tw = cvcc_ee8(v, id, twist);
  for (const auto& [k, c] : tw.e.terms) {
    if (is_zero(k.charge)) continue;
    Rat want = Rat(k.charge[0] % 2 != 0 ? -1 : 1) / 32;
    CHECK(c == want);
  }

  Voa e8 = make_voa("E8");
  CHECK_THROWS_AS(cvcc_ee8(e8, id, trivial), invalid_input);  // determinant 1
  CHECK_THROWS_AS(cvcc_ee8(v, id, std::vector<int>(7, 1)), invalid_input);
  std::vector<int> bad(8, 1);
  bad[3] = 0;
  CHECK_THROWS_AS(cvcc_ee8(v, id, bad), invalid_input);
}

TEST_CASE("rank-one vectors satisfy the half central charge relations") {
  Voa v = make_voa("RANK1(4)");
  IsingVector plus = cvcc_aa1(v, {1}, 1);
  IsingVector minus = cvcc_aa1(v, {1}, -1);
  IsingCheckOptions opt;
  opt.bracket_degree = 3;
  IsingReport rp = ising_check(v, plus.e, opt);
  CHECK(rp.ok());
  CHECK(rp.failures.empty());
  CHECK(ising_check(v, minus.e, opt).ok());

  // The two signs are complementary conformal halves of omega.
  VirasoroConfig vc = virasoro(v);
  CHECK(vc.omega == plus.e + minus.e);
  CHECK(vertex_mode(v, plus.e, 1, minus.e).is_zero());
  CHECK(vertex_mode(v, plus.e, 3, minus.e).is_zero());
  CHECK(is_quasi_primary(v, vc, plus.e));
}

TEST_CASE("failed candidates are reported, not thrown") {
  Voa a1 = make_voa("A1");
  VirasoroConfig vc = virasoro(a1);
  IsingCheckOptions opt;
  opt.bracket_degree = 2;
  IsingReport rp = ising_check(a1, vc.omega, opt);
  CHECK_FALSE(rp.ok());
  CHECK_FALSE(rp.modes_ok);
  bool third = false;
  for (const auto& msg : rp.failures)
    if (msg.find("mode 3") != std::string::npos) third = true;
  CHECK(third);               // full central charge gives (1/2) vac
  CHECK_FALSE(rp.bracket_ok);  // central term off by the same factor

  Voa v = make_voa("RANK1(4)");
  VoaElement doubled = Rat(2) * cvcc_aa1(v, {1}, 1).e;
  IsingReport rd = ising_check(v, doubled, opt);
  CHECK_FALSE(rd.modes_ok);
  bool first = false;
  for (const auto& msg : rd.failures)
    if (msg.find("mode 1") != std::string::npos) first = true;
  CHECK(first);
}

TEST_CASE("an E8 norm-four vector carries a half central charge") {
  Voa v = make_voa("E8");
  LatticeVector alpha = norm_four_vector(v.lattice());
  IsingVector iv = cvcc_aa1(v, alpha, 1);
  IsingCheckOptions opt;
  opt.bracket_degree = 2;
  opt.bracket_samples = 10;
  IsingReport rp = ising_check(v, iv.e, opt);
  CHECK(rp.ok());
  CHECK(rp.failures.empty());
}

TEST_CASE("the doubled-E8 vector carries a half central charge") {
  Voa v = make_voa("EE8");
  IsingVector iv = cvcc_ee8(v, IntMatrix::identity(8), std::vector<int>(8, 1));
  IsingCheckOptions opt;
  opt.bracket_degree = 2;
  opt.bracket_samples = 4;
  IsingReport rp = ising_check(v, iv.e, opt);
  CHECK(rp.ok());
  CHECK(rp.failures.empty());
}

TEST_CASE("rank-one involutions stay in the half-integer family") {
  Voa v = make_voa("RANK1(4)");
  IsingVector iv = cvcc_aa1(v, {1}, 1);
  VirasoroConfig vc = virasoro(v);
  for (int64_t n = 1; n <= 4; ++n) {
    MiyamotoData md = miyamoto(v, iv.e, n);
    DegreeFrame f = degree_frame(v, n);
    int64_t total = 0;
    for (const auto& [lam, mult] : md.spectrum) {
      total += mult;
      CHECK((lam.get_den() == 1 || lam.get_den() == 2));
      CHECK(lam >= 0);
    }
    CHECK(total == static_cast<int64_t>(f.keys.size()));
    CHECK_FALSE(md.has_sixteenth);
    CHECK(is_identity(md.involution * md.involution));
    CHECK(md.involution * md.mode_one == md.mode_one * md.involution);
  }
  // The complement of e in omega is killed by the weight-one mode of e and
  // spans the nonzero part of the 0-eigenspace at degree two.
  VoaElement f = vc.omega - iv.e;
  CHECK(vertex_mode(v, iv.e, 1, f).is_zero());
  MiyamotoData md2 = miyamoto(v, iv.e, 2);
  bool has2 = false, has0 = false;
  for (const auto& [lam, mult] : md2.spectrum) {
    if (lam == 2) has2 = true;
    if (lam == 0) has0 = true;
  }
  CHECK(has2);
  CHECK(has0);
}

TEST_CASE("the E8 degree-one piece has a sixteenth sector") {
  Voa v = make_voa("E8");
  LatticeVector alpha = norm_four_vector(v.lattice());
  IsingVector iv = cvcc_aa1(v, alpha, 1);
  MiyamotoData md = miyamoto(v, iv.e, 1);
  int64_t total = 0, sixteenth = 0;
  for (const auto& [lam, mult] : md.spectrum) {
    total += mult;
    if (lam.get_den() == 16) sixteenth += mult;
  }
  CHECK(total == 248);
  CHECK(md.has_sixteenth);
  CHECK_FALSE(is_identity(md.involution));
  CHECK(is_identity(md.involution * md.involution));
  CHECK(md.involution * md.mode_one == md.mode_one * md.involution);

  // The sixteenth multiplicity counts the roots with odd product against
  // the source vector.
  int64_t odd = 0;
  for (const auto& s : short_vectors(v.lattice().gram(), Int(2)))
    if (v.lattice().inner(alpha, s.coords) % 2 != 0) ++odd;
  CHECK(odd > 0);
  CHECK(sixteenth == odd);
}

TEST_CASE("doubled-E8 oscillators form the sixteenth sector at degree one") {
  Voa v = make_voa("EE8");
  IsingVector iv = cvcc_ee8(v, IntMatrix::identity(8), std::vector<int>(8, 1));
  // The charge terms of e land in sectors of minimum weight two, so on the
  // degree-one piece only the contraction part acts: every oscillator is an
  // exact 1/16-eigenvector and the involution is minus the identity.
  DegreeFrame f1 = degree_frame(v, 1);
  VoaElement osc = key_element(f1, 0);
  CHECK(vertex_mode(v, iv.e, 1, osc) == (Rat(1) / 16) * osc);
  MiyamotoData m1 = miyamoto(v, iv.e, 1);
  REQUIRE(m1.spectrum.size() == 1);
  CHECK(m1.spectrum[0].first == Rat(1) / 16);
  CHECK(m1.spectrum[0].second == 8);
  CHECK(m1.has_sixteenth);
  for (std::size_t i = 0; i < 8; ++i)
    for (std::size_t j = 0; j < 8; ++j)
      CHECK(m1.involution(i, j) == Rat(i == j ? -1 : 0));

  MiyamotoData m2 = miyamoto(v, iv.e, 2);
  DegreeFrame f2 = degree_frame(v, 2);
  int64_t total = 0;
  for (const auto& [lam, mult] : m2.spectrum) total += mult;
  CHECK(total == static_cast<int64_t>(f2.keys.size()));
  CHECK(m2.has_sixteenth);
  CHECK(is_identity(m2.involution * m2.involution));
  CHECK(m2.involution * m2.mode_one == m2.mode_one * m2.involution);
}

TEST_CASE("involution application agrees with the matrix and multiplies") {
  Voa v = make_voa("RANK1(4)");
  IsingVector iv = cvcc_aa1(v, {1}, 1);
  std::mt19937_64 rng(7);
  for (int64_t n = 2; n <= 3; ++n) {
    DegreeFrame f = degree_frame(v, n);
    MiyamotoData md = miyamoto(v, iv.e, n);
    std::uniform_int_distribution<int> dist(-3, 3);
    std::vector<Rat> coords(f.keys.size());
    for (auto& c : coords) c = dist(rng);
    VoaElement x = element_from_coords(f, coords);
    std::vector<Rat> image(f.keys.size(), Rat(0));
    for (std::size_t j = 0; j < f.keys.size(); ++j)
      for (std::size_t i = 0; i < f.keys.size(); ++i)
        image[j] += coords[i] * md.involution(i, j);
    CHECK(miyamoto_apply(v, iv.e, x) == element_from_coords(f, image));
  }
  // t(e) multiplies through every mode product.
  auto automorphic = [&](const VoaElement& a, const VoaElement& b, int64_t k) {
    VoaElement prod = vertex_mode(v, a, k, b);
    VoaElement lhs = prod.is_zero() ? prod : miyamoto_apply(v, iv.e, prod);
    VoaElement rhs = vertex_mode(v, miyamoto_apply(v, iv.e, a), k,
                                 miyamoto_apply(v, iv.e, b));
    CHECK(lhs == rhs);
  };
  VoaElement up = VoaElement::charge_vector({1});
  VoaElement down = VoaElement::charge_vector({-1});
  DegreeFrame f1 = degree_frame(v, 1);
  VoaElement osc = key_element(f1, 0);
  for (int64_t k = 0; k <= 2; ++k) automorphic(up, down, k);
  automorphic(osc, up, 0);
  automorphic(osc, up, 1);
  automorphic(up, up, -1);

  Voa e8 = make_voa("E8");
  LatticeVector alpha = norm_four_vector(e8.lattice());
  IsingVector ie = cvcc_aa1(e8, alpha, 1);
  auto roots = short_vectors(e8.lattice().gram(), Int(2));
  LatticeVector b1 = roots[0].coords;
  LatticeVector b2;
  for (const auto& s : roots)
    if (e8.lattice().inner(b1, s.coords) == -1) {
      b2 = s.coords;
      break;
    }
  for (int64_t k = 0; k <= 1; ++k) {
    VoaElement x = VoaElement::charge_vector(b1);
    VoaElement y = VoaElement::charge_vector(b2);
    VoaElement prod = vertex_mode(e8, x, k, y);
    VoaElement lhs = prod.is_zero() ? prod : miyamoto_apply(e8, ie.e, prod);
    VoaElement rhs = vertex_mode(e8, miyamoto_apply(e8, ie.e, x), k,
                                 miyamoto_apply(e8, ie.e, y));
    CHECK(lhs == rhs);
  }
}

TEST_CASE("involutions preserve rational spans of the standard form") {
  Voa v = make_voa("RANK1(4)");
  IsingVector iv = cvcc_aa1(v, {1}, 1);
  StabilizationReport rep =
      stabilization_check(v, iv.e, standard_grades(v, 4), 4);
  CHECK(rep.ok());
  CHECK(rep.degrees.size() == 5);
  for (const auto& d : rep.degrees) CHECK(d.span_preserved);
  CHECK(rep.degrees[0].form_over_meet.empty());
  CHECK(rep.degrees[1].form_over_meet.empty());

  Voa e8 = make_voa("E8");
  IsingVector ie = cvcc_aa1(e8, norm_four_vector(e8.lattice()), 1);
  StabilizationReport re =
      stabilization_check(e8, ie.e, standard_grades(e8, 1), 1);
  CHECK(re.ok());

  Voa ee = make_voa("EE8");
  IsingVector id = cvcc_ee8(ee, IntMatrix::identity(8), std::vector<int>(8, 1));
  StabilizationReport rd =
      stabilization_check(ee, id.e, standard_grades(ee, 2), 2);
  CHECK(rd.ok());

  // A weight-two module whose rational span misses the candidate is refused.
  DegreeFrame f2 = degree_frame(v, 2);
  FockMonomial deep{{FockFactor{0, 2}}};
  deep.normalize();
  VoaElement g2;
  g2.terms[VoaKey{deep, {0}}] = 1;
  RatMatrix one_row(1, f2.keys.size());
  one_row.set_row(0, coordinatize(f2, g2));
  std::vector<GradedZForm> narrow{GradedZForm{2, ZModule::from_rows(one_row)}};
  CHECK_THROWS_AS(stabilization_check(v, iv.e, narrow, 2), invalid_input);

  StabilizationReport empty;
  CHECK_FALSE(empty.ok());
}

TEST_CASE("isometry conjugation carries involutions to involutions") {
  Voa v = make_voa("RANK1(4)");
  IsingVector plus = cvcc_aa1(v, {1}, 1);
  IsingVector minus = cvcc_aa1(v, {1}, -1);
  LiftedIsometry s = lift_isometry(v, IntMatrix::identity(1), {-1});
  CHECK(apply_isometry(v, s, plus.e) == minus.e);
  LiftedIsometry th = theta(v);
  CHECK(apply_isometry(v, th, plus.e) == plus.e);
  for (int64_t n = 2; n <= 3; ++n) {
    DegreeFrame f = degree_frame(v, n);
    RatMatrix ms = isometry_matrix(v, s, f);
    RatMatrix tp = miyamoto(v, plus.e, n).involution;
    RatMatrix tm = miyamoto(v, minus.e, n).involution;
    CHECK(tm == inverse(ms) * tp * ms);
    RatMatrix mth = isometry_matrix(v, th, f);
    CHECK(tp * mth == mth * tp);  // theta fixes e, so the actions commute
  }
  Voa e8 = make_voa("E8");
  IsingVector ie = cvcc_aa1(e8, norm_four_vector(e8.lattice()), 1);
  DegreeFrame f1 = degree_frame(e8, 1);
  RatMatrix t1 = miyamoto(e8, ie.e, 1).involution;
  RatMatrix mth = isometry_matrix(e8, theta(e8), f1);
  CHECK(t1 * mth == mth * t1);
}
