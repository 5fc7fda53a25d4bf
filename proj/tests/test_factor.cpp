#include <doctest.h>

#include <random>

#include "gradecm/factor.hpp"

using namespace gradecm;

namespace {

Poly expand(const Factorization& fz, const RingPtr& R) {
  Poly acc(R, fz.unit);
  for (const auto& f : fz.factors) acc = acc * f.f.pow(static_cast<unsigned>(f.multiplicity));
  return acc;
}

Poly random_poly(std::mt19937_64& rng, const RingPtr& R, int terms, int maxexp) {
  std::uniform_int_distribution<long> c(-3, 3);
  std::uniform_int_distribution<int> e(0, maxexp);
  std::vector<Term> t;
  for (int k = 0; k < terms; ++k) {
    Monomial m;
    for (int i = 0; i < R->nvars(); ++i) {
      m.e[i] = static_cast<std::uint16_t>(e(rng));
      m.deg += m.e[i];
    }
    t.push_back({m, Scalar(R->field(), c(rng))});
  }
  return Poly::from_terms(R, t);
}

}  // namespace

TEST_CASE("univariate mod p") {
  // t^4 - 1 over F_5 splits into linear factors.
  auto f = univariate::factor_mod_p({4, 0, 0, 0, 1}, 5);
  CHECK(f.size() == 4);
  // t^2 + 1 is irreducible over F_3, and (t+1)^2 over F_2.
  CHECK(univariate::factor_mod_p({1, 0, 1}, 3).size() == 1);
  auto g = univariate::factor_mod_p({1, 0, 1}, 2);
  REQUIRE(g.size() == 1);
  CHECK(g[0].second == 2);
}

TEST_CASE("univariate over Z") {
  bool cert = true;
  // x^4 + 4 = (x^2 - 2x + 2)(x^2 + 2x + 2)
  auto f = univariate::factor_over_z({4, 0, 0, 0, 1}, cert);
  CHECK(f.size() == 2);
  // x^4 + 1 is irreducible over Q although it splits mod every prime.
  CHECK(univariate::factor_over_z({1, 0, 0, 0, 1}, cert).size() == 1);
  CHECK(cert);
}

TEST_CASE("multivariate factorization") {
  auto R = PolyRing::make(Field::rationals(), {"x", "y", "z"});
  auto fz = factor(parse_poly(R, "x^2 - y^2"));
  CHECK(fz.factors.size() == 2);
  CHECK(is_irreducible(parse_poly(R, "x^2 + y^2")));
  CHECK_FALSE(is_irreducible(parse_poly(R, "x*y")));
  CHECK(is_irreducible(parse_poly(R, "y^2 - x*z")));
  auto sq = factor(parse_poly(R, "x^3*y + 2*x^2*y^2 + x*y^3"));
  CHECK(expand(sq, R) == parse_poly(R, "x^3*y + 2*x^2*y^2 + x*y^3"));
  bool has_square = false;
  for (const auto& f : sq.factors) has_square |= f.multiplicity == 2 && f.f == parse_poly(R, "x + y");
  CHECK(has_square);

  auto F2 = PolyRing::make(Field::prime(2), {"x", "y"});
  auto fr = factor(parse_poly(F2, "x^2 + y^2"));
  REQUIRE(fr.factors.size() == 1);
  CHECK(fr.factors[0].multiplicity == 2);
}

TEST_CASE("products of random factors are recovered") {
  std::mt19937_64 rng(17);
  for (Field F : {Field::rationals(), Field::prime(3), Field::prime(32003)}) {
    auto R = PolyRing::make(F, {"x", "y", "z"});
    for (int trial = 0; trial < 20; ++trial) {
      Poly a = random_poly(rng, R, 3, 1), b = random_poly(rng, R, 3, 1);
      if (a.is_constant() || b.is_constant()) continue;
      Poly f = a * b;
      auto fz = factor(f);
      REQUIRE(fz.certified);
      REQUIRE(expand(fz, R) == f);
      for (const auto& g : fz.factors) REQUIRE(g.f.leading_coeff().is_one());
      // Each factor of a and b divides some product of the returned factors,
      // so the count is at least the number of nonconstant inputs.
      std::size_t total = 0;
      for (const auto& g : fz.factors) total += static_cast<std::size_t>(g.multiplicity);
      REQUIRE(total >= 2);
      for (const auto& g : fz.factors) {
        auto again = factor(g.f);
        REQUIRE(again.factors.size() == 1);
        REQUIRE(again.factors[0].multiplicity == 1);
      }
    }
  }
}
