#include <doctest.h>

#include <random>

#include "gradecm/polyring.hpp"

using namespace gradecm;

namespace {

RingPtr qq(std::vector<std::string> vars, MonomialOrder o = MonomialOrder::degrevlex()) {
  return PolyRing::make(Field::rationals(), std::move(vars), o);
}

Monomial random_monomial(std::mt19937_64& rng, int n, int maxexp = 4) {
  std::uniform_int_distribution<int> d(0, maxexp);
  Monomial m;
  for (int i = 0; i < n; ++i) {
    m.e[i] = static_cast<std::uint16_t>(d(rng));
    m.deg += m.e[i];
  }
  return m;
}

Poly random_poly(std::mt19937_64& rng, const RingPtr& R, int maxexp) {
  std::uniform_int_distribution<long> c(-5, 5);
  std::vector<Term> t;
  for (int k = 0; k < 4; ++k) {
    Monomial m = random_monomial(rng, R->nvars(), maxexp);
    t.push_back({m, Scalar(R->field(), c(rng))});
  }
  return Poly::from_terms(R, t);
}

}  // namespace

TEST_CASE("basic arithmetic") {
  auto R = qq({"x", "y"});
  Poly x = Poly::var(R, 0), y = Poly::var(R, 1);
  CHECK((x + y) * (x - y) == parse_poly(R, "x^2 - y^2"));
  Poly f = parse_poly(R, "3/2*x^2*y - x + 7");
  CHECK(f + Poly(R) == f);
  CHECK(f - f == Poly(R));
  CHECK(f.scaled(Scalar(R->field(), 2)) == parse_poly(R, "3*x^2*y - 2*x + 14"));
}

TEST_CASE("lex leading term") {
  auto R = qq({"x", "y"}, MonomialOrder::lex());
  Poly f = parse_poly(R, "x + y^5");
  CHECK(f.leading_monomial() == Monomial::var(0));
  auto D = qq({"x", "y"});
  CHECK(parse_poly(D, "x + y^5").leading_monomial() == Monomial::var(1, 5));
}

TEST_CASE("ambient mismatch") {
  auto R = qq({"x", "y"});
  auto S = qq({"x", "z"});
  CHECK_THROWS_AS(Poly::var(R, 0) + Poly::var(S, 0), AmbientMismatch);
}

TEST_CASE("substitution") {
  auto R = PolyRing::make(Field::prime(2), {"x", "y"});
  Poly x2 = parse_poly(R, "x^2");
  CHECK(substitute(x2, {{0, parse_poly(R, "y^2")}}, R) == parse_poly(R, "y^4"));

  auto Q = qq({"x", "y"});
  Poly x = Poly::var(Q, 0), y = Poly::var(Q, 1);
  CHECK(substitute(x + y, {x, y}) == x + y);
  CHECK(substitute(x * y, {x + y, x - y}) == parse_poly(Q, "x^2 - y^2"));
  CHECK_THROWS_AS(substitute(x * y, {{0, y}}, Q), SubstitutionDomainError);
}

TEST_CASE("parser") {
  auto R = qq({"x", "y", "z"});
  CHECK(parse_poly(R, "(x+y)^2") == parse_poly(R, "x^2 + 2*x*y + y^2"));
  CHECK(parse_poly(R, "-x*(y - 1/2)") == parse_poly(R, "1/2*x - x*y"));
  CHECK(parse_poly(R, "0.5*z") == parse_poly(R, "z/2"));
  CHECK_THROWS(parse_poly(R, "x + w"));
  CHECK_THROWS(parse_poly(R, "x + (y"));
}

TEST_CASE("monomial orders are multiplicative with 1 minimal") {
  std::mt19937_64 rng(7);
  for (MonomialOrder o : {MonomialOrder::lex(), MonomialOrder::degrevlex(), MonomialOrder::elimination(2)}) {
    for (int i = 0; i < 500; ++i) {
      Monomial a = random_monomial(rng, 4), b = random_monomial(rng, 4), m = random_monomial(rng, 4);
      int c = o.compare(a, b, 4);
      REQUIRE(c == -o.compare(b, a, 4));
      REQUIRE(o.compare(m * a, m * b, 4) == c);
      REQUIRE(o.compare(a, Monomial::one(), 4) >= 0);
      if (c == 0) REQUIRE(a == b);
    }
  }
}

TEST_CASE("substitution is a ring homomorphism") {
  std::mt19937_64 rng(11);
  auto R = qq({"x", "y", "z"});
  for (int i = 0; i < 50; ++i) {
    Poly f = random_poly(rng, R, 2), g = random_poly(rng, R, 2);
    std::vector<Poly> img{random_poly(rng, R, 1), random_poly(rng, R, 1), random_poly(rng, R, 1)};
    REQUIRE(substitute(f * g, img) == substitute(f, img) * substitute(g, img));
    REQUIRE(substitute(f + g, img) == substitute(f, img) + substitute(g, img));
  }
}

TEST_CASE("module elements") {
  auto R = qq({"x", "y"});
  Poly x = Poly::var(R, 0), y = Poly::var(R, 1);
  Poly v = x * Poly::unit_vector(R, 1) + y * Poly::unit_vector(R, 2);
  CHECK(v.component(1) == x);
  CHECK(v.component(2) == y);
  CHECK(v.max_component() == 2);
  CHECK(v.shift_components(1).component(3) == y);
}
