#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "latvoa/error.hpp"
#include "latvoa/fock.hpp"

using namespace latvoa;

namespace {

FockMonomial mono(std::vector<FockFactor> fs) {
  FockMonomial m{std::move(fs)};
  m.normalize();
  return m;
}

Rat coeff(const FockPolynomial& p, const FockMonomial& m) {
  auto it = p.terms.find(m);
  return it == p.terms.end() ? Rat(0) : it->second;
}

}  // namespace

TEST_CASE("complete series low orders, rank 1") {
  auto h = complete_series({Rat(1)}, 3);
  CHECK(h[0] == FockPolynomial::one());

  CHECK(h[1].terms.size() == 1);
  CHECK(coeff(h[1], mono({{0, 1}})) == Rat(1));

  CHECK(h[2].terms.size() == 2);
  CHECK(coeff(h[2], mono({{0, 2}})) == Rat(1) / 2);
  CHECK(coeff(h[2], mono({{0, 1}, {0, 1}})) == Rat(1) / 2);

  CHECK(h[3].terms.size() == 3);
  CHECK(coeff(h[3], mono({{0, 3}})) == Rat(1) / 3);
  CHECK(coeff(h[3], mono({{0, 1}, {0, 2}})) == Rat(1) / 2);
  CHECK(coeff(h[3], mono({{0, 1}, {0, 1}, {0, 1}})) == Rat(1) / 6);
}

TEST_CASE("series of opposite vectors are inverse to each other") {
  const int64_t n_max = 12;
  auto hp = complete_series({Rat(1)}, n_max);
  auto hm = complete_series({Rat(-1)}, n_max);
  for (int64_t n = 0; n <= n_max; ++n) {
    FockPolynomial acc;
    for (int64_t i = 0; i <= n; ++i) acc += fock_mul(hp[i], hm[n - i]);
    if (n == 0)
      CHECK(acc == FockPolynomial::one());
    else
      CHECK(acc.is_zero());
  }
  // Rank 2 with mixed coordinates.
  auto hp2 = complete_series({Rat(1), Rat(-2)}, 8);
  auto hm2 = complete_series({Rat(-1), Rat(2)}, 8);
  for (int64_t n = 0; n <= 8; ++n) {
    FockPolynomial acc;
    for (int64_t i = 0; i <= n; ++i) acc += fock_mul(hp2[i], hm2[n - i]);
    CHECK(acc.is_zero() == (n != 0));
  }
}

TEST_CASE("products of series elements") {
  auto h = complete_series({Rat(1)}, 3);
  FockPolynomial p = fock_mul(h[1], h[2]);
  CHECK(p.terms.size() == 2);
  CHECK(coeff(p, mono({{0, 1}, {0, 2}})) == Rat(1) / 2);
  CHECK(coeff(p, mono({{0, 1}, {0, 1}, {0, 1}})) == Rat(1) / 2);
}

TEST_CASE("series linearity in the vector at order 1 and homogeneity") {
  auto h1 = complete_series({Rat(1), Rat(0)}, 4);
  auto h2 = complete_series({Rat(0), Rat(1)}, 4);
  auto hs = complete_series({Rat(1), Rat(1)}, 4);
  auto hd = complete_series({Rat(2), Rat(0)}, 4);
  CHECK(hs[1] == h1[1] + h2[1]);
  CHECK(hd[1] == Rat(2) * h1[1]);
  for (int64_t n = 0; n <= 4; ++n) {
    int64_t d = -1;
    CHECK(hs[n].is_homogeneous(&d));
    CHECK(d == (hs[n].is_zero() ? 0 : n));
  }
}

TEST_CASE("rational coordinates") {
  auto h = complete_series({Rat(1) / 2}, 2);
  CHECK(coeff(h[1], mono({{0, 1}})) == Rat(1) / 2);
  CHECK(coeff(h[2], mono({{0, 2}})) == Rat(1) / 4);
  CHECK(coeff(h[2], mono({{0, 1}, {0, 1}})) == Rat(1) / 8);
}

TEST_CASE("schur elements by determinant") {
  // lambda = (n) is the series element itself.
  auto h = complete_series({Rat(1)}, 4);
  CHECK(schur_element({Rat(1)}, {3}) == h[3]);

  // lambda = (1,1): h1^2 - h2 = 1/2 g(-1)^2 - 1/2 g(-2).
  FockPolynomial s11 = schur_element({Rat(1)}, {1, 1});
  CHECK(s11.terms.size() == 2);
  CHECK(coeff(s11, mono({{0, 1}, {0, 1}})) == Rat(1) / 2);
  CHECK(coeff(s11, mono({{0, 2}})) == Rat(-1) / 2);

  // lambda = (2,1): h2*h1 - h3.
  FockPolynomial s21 = schur_element({Rat(1)}, {2, 1});
  CHECK(s21 == fock_mul(h[2], h[1]) - h[3]);

  // Empty partition and zero-padded input.
  CHECK(schur_element({Rat(1)}, {}) == FockPolynomial::one());
  CHECK(schur_element({Rat(1)}, {2, 1, 0, 0}) == s21);
  CHECK_THROWS_AS(schur_element({Rat(1)}, {1, 2}), invalid_input);
}

TEST_CASE("partition enumeration counts") {
  CHECK(partitions(0).size() == 1);
  CHECK(partitions(1).size() == 1);
  CHECK(partitions(2).size() == 2);
  CHECK(partitions(5).size() == 7);
  CHECK(partitions(6).size() == 11);
  for (const auto& lam : partitions(6)) {
    int64_t s = 0;
    for (std::size_t i = 0; i < lam.size(); ++i) {
      s += lam[i];
      if (i) CHECK(lam[i] <= lam[i - 1]);
    }
    CHECK(s == 6);
  }
}

TEST_CASE("colored partition enumeration counts") {
  // Generating function prod (1-q^k)^{-2}: 1, 2, 5, 10, 20, 36.
  CHECK(colored_partitions(2, 0).size() == 1);
  CHECK(colored_partitions(2, 1).size() == 2);
  CHECK(colored_partitions(2, 2).size() == 5);
  CHECK(colored_partitions(2, 3).size() == 10);
  CHECK(colored_partitions(2, 4).size() == 20);
  CHECK(colored_partitions(2, 5).size() == 36);
  CHECK(colored_partitions(1, 6).size() == 11);
  auto cps = colored_partitions(3, 4);
  for (std::size_t i = 1; i < cps.size(); ++i) CHECK(cps[i - 1] < cps[i]);
  for (const auto& cp : cps) CHECK(cp.total() == 4);
}

TEST_CASE("colored partition elements") {
  ColoredPartition cp{{{0, 2}, {1, 1}}};
  FockPolynomial p = colored_partition_element(2, cp);
  // h2(g0)*h1(g1) = (1/2 g0(-2) + 1/2 g0(-1)^2) * g1(-1).
  CHECK(p.terms.size() == 2);
  CHECK(coeff(p, mono({{0, 2}, {1, 1}})) == Rat(1) / 2);
  CHECK(coeff(p, mono({{0, 1}, {0, 1}, {1, 1}})) == Rat(1) / 2);
  int64_t d = -1;
  CHECK(p.is_homogeneous(&d));
  CHECK(d == 3);
}

TEST_CASE("linear substitution in factors") {
  // s = [[0,1],[1,0]] swaps the two directions.
  IntMatrix s(2, 2);
  s(0, 1) = 1;
  s(1, 0) = 1;
  FockPolynomial p = FockPolynomial::monomial(mono({{0, 1}, {1, 2}}), Rat(3));
  FockPolynomial q = fock_apply_linear(p, s);
  CHECK(q.terms.size() == 1);
  CHECK(coeff(q, mono({{1, 1}, {0, 2}})) == Rat(3));

  // Negation gives (-1)^{#factors}.
  IntMatrix neg = IntMatrix::identity(2);
  neg(0, 0) = -1;
  neg(1, 1) = -1;
  FockPolynomial r = fock_apply_linear(p, neg);
  CHECK(coeff(r, mono({{0, 1}, {1, 2}})) == Rat(3));

  // Shear: g0 -> g0 + g1 expands a square into three terms.
  IntMatrix sh = IntMatrix::identity(2);
  sh(1, 0) = 1;
  FockPolynomial sq = FockPolynomial::monomial(mono({{0, 1}, {0, 1}}));
  FockPolynomial img = fock_apply_linear(sq, sh);
  CHECK(coeff(img, mono({{0, 1}, {0, 1}})) == Rat(1));
  CHECK(coeff(img, mono({{0, 1}, {1, 1}})) == Rat(2));
  CHECK(coeff(img, mono({{1, 1}, {1, 1}})) == Rat(1));
}

TEST_CASE("polynomial arithmetic basics") {
  FockPolynomial a = FockPolynomial::monomial(mono({{0, 1}}), Rat(2));
  FockPolynomial b = FockPolynomial::monomial(mono({{0, 1}}), Rat(-2));
  CHECK((a + b).is_zero());
  CHECK((a - a).is_zero());
  FockPolynomial c = a;
  c *= Rat(0);
  CHECK(c.is_zero());
  CHECK(fock_mul(a, FockPolynomial::zero()).is_zero());
  CHECK(fock_mul(a, FockPolynomial::one()) == a);
  CHECK(a.str() == "2*g0(-1)");
}
