#include <doctest.h>

#include <random>

#include "dense_oracle.hpp"
#include "gradecm/constructors.hpp"

using namespace gradecm;

namespace {

RingHandle ring(std::vector<std::string> vars, std::vector<std::string> rel = {}, Field k = Field::rationals()) {
  return PresentedRing::parse(PolyRing::make(k, std::move(vars)), rel);
}

Poly P(const RingHandle& R, const char* s) { return R->parse_element(s); }

// Multiplication by f is injective on (S/J)_t for t <= tmax (f, J homogeneous).
bool oracle_nzd(const RingHandle& S, const Poly& f, const std::vector<Poly>& J, int tmax) {
  std::vector<Poly> mult{f.shift_components(1)};
  for (int t = 0; t <= tmax; ++t)
    if (dense::subquotient_dim(S->ambient(), nullptr, 0, &mult, 1, f.total_degree(), 1, J, t) > 0) return false;
  return true;
}

int poly_height(const Ideal& a) { return a.ring()->nvars() - dim_from_gb(a.gb()); }

Poly random_poly(const RingPtr& A, std::mt19937& rng, int terms, int maxdeg) {
  std::uniform_int_distribution<int> e(0, maxdeg), c(-3, 3);
  Poly f(A);
  for (int k = 0; k < terms; ++k) {
    Monomial m;
    for (int i = 0; i < A->nvars(); ++i) {
      m.e[i] = static_cast<std::uint16_t>(e(rng));
      m.deg += m.e[i];
    }
    f += Poly::monomial(A, m, Scalar(A->field(), c(rng)));
  }
  return f;
}

}  // namespace

TEST_CASE("trivial extension") {
  auto k = ring({});
  auto kk = trivial_extension(PresentedModule::free(k));
  CHECK(kk->nvars() == 1);
  CHECK(Ideal::zero(kk) == Ideal::parse(kk, {}));
  CHECK(kk->relations().size() == 1);
  CHECK(kk->relations()[0] == P(kk, "z1^2"));

  auto X = ring({"x"});
  auto XX = trivial_extension(PresentedModule::free(X));
  CHECK(XX->relations().size() == 1);
  CHECK(XX->relations()[0] == P(XX, "z1^2"));

  auto S = ring({"x", "y"});
  auto T = trivial_extension(PresentedModule::quotient(Ideal::parse(S, {"x"})));
  CHECK(krull_dim(T) == 2);
  CHECK(Ideal::zero(T).contains(P(T, "x*z1")));
  // Oracle: y is regular, x kills z1 modulo y, so depth is 1.
  std::vector<Poly> J{P(T, "z1^2"), P(T, "x*z1")};
  CHECK(oracle_nzd(T, P(T, "y"), J, 5));
  CHECK_FALSE(oracle_nzd(T, P(T, "x"), J, 5));
  J.push_back(P(T, "y"));
  CHECK_FALSE(oracle_nzd(T, P(T, "x"), J, 5));
  auto g = koszul_grade(Ideal::parse(T, {"x", "y"}), PresentedModule::free(T));
  CHECK(g.value == 1);
  CHECK(koszul_grade(Ideal::parse(S, {"x", "y"}), PresentedModule::free(S)).value == 2);
}

TEST_CASE("limit ring levels") {
  LimitRing L(ring({}));
  CHECK(L.level(3).get() == L.level(3).get());
  CHECK(L.level(3)->nvars() == 3);
  CHECK(L.min_level({"X1*X3+X10"}) == 10);
  CHECK(L.min_level({"1"}) == 0);
  Poly f = P(L.level(2), "X1*X2+X2^2");
  CHECK(L.include(f, 4).to_string() == f.to_string());
  CHECK_THROWS(L.ideal(2, {"X3"}));

  auto c = L.check({"X1", "X3"}, 3);
  CHECK(c.level == 3);
  CHECK(c.grade == 2);
  CHECK(c.height == 2);
  CHECK(c.stable());
  // Oracle in the polynomial ring: height from dimension, grade from Ext.
  auto a = L.ideal(3, {"X1", "X3"});
  CHECK(poly_height(a) == 2);
  CHECK(ext_grade(a, PresentedModule::free(a.ring())).value == 2);
  CHECK(L.check({"X1"}, 1).grade == 1);

  LimitRing U(ring({"u"}, {"u^2"}));
  auto d = U.check({"u", "X1"}, 1);
  CHECK(d.level == 1);
  CHECK(d.stable());
  CHECK(d.grade == 1);
  CHECK(d.height == 1);
  auto R1 = U.level(1);
  std::vector<Poly> J{P(R1, "u^2")};
  CHECK(oracle_nzd(R1, P(R1, "X1"), J, 5));
  J.push_back(P(R1, "X1"));
  CHECK_FALSE(oracle_nzd(R1, P(R1, "u"), J, 5));
}

TEST_CASE("perfect closure levels") {
  PerfectClosure C(2, {"x", "z"});
  auto f = C.parse("x^(1/2)*z^(3/4) + x - 3*z^2");
  CHECK(C.min_level(f) == 2);
  CHECK_THROWS_AS(C.at_level(f, 1), LevelTooLow);
  CHECK(C.at_level(f, 2).to_string() == P(C.level(2), "x^2*z^3+x^4+z^8").to_string());
  CHECK_THROWS_AS(C.min_level(C.parse("x^(1/3)")), std::invalid_argument);
  CHECK_THROWS_AS(C.parse("x^(1/2"), std::invalid_argument);
  CHECK_THROWS_AS(C.parse("w"), std::invalid_argument);

  auto a = C.check({"x^(1/2)"}, 0);
  CHECK(a.level == 1);
  CHECK(a.grade == 1);
  CHECK(a.height == 1);
  CHECK(a.stable());
  auto b = C.check({"x"}, 0);
  CHECK(b.grade == 1);
  CHECK(b.grade_next == 1);
  auto c = C.check({"x^(1/2)", "z^(1/4)"}, 2);
  CHECK(c.grade == 2);
  CHECK(c.stable());
  CHECK(poly_height(C.ideal(2, {"x^(1/2)", "z^(1/4)"})) == 2);

  // The level map is a ring embedding compatible with rescaling.
  std::mt19937 rng(7);
  const RingPtr& A = C.level(0)->ambient();
  for (int t = 0; t < 50; ++t) {
    Poly g = random_poly(A, rng, 3, 3), h = random_poly(A, rng, 3, 3);
    CHECK(C.raise(g * h) == C.raise(g) * C.raise(h));
    CHECK(C.raise(g + h) == C.raise(g) + C.raise(h));
    CHECK(C.raise(g).is_zero() == g.is_zero());
  }
  CHECK(C.at_level(f, 3) == C.raise(C.at_level(f, 2)));

  PerfectClosure D(3, {"x"});
  CHECK(D.check({"x^(2/3)"}, 0).level == 1);
  CHECK(D.at_level(D.parse("x^(2/9)"), 2) == P(D.level(2), "x^2"));
}

TEST_CASE("invariant rings") {
  auto S = PolyRing::make(Field::rationals(), {"x", "y"});
  auto V = invariant_ring(S, GroupAction::veronese(2, 2));
  REQUIRE(V.generators.size() == 3);
  CHECK(V.generators[0] == parse_poly(S, "x^2"));
  CHECK(V.generators[1] == parse_poly(S, "x*y"));
  CHECK(V.generators[2] == parse_poly(S, "y^2"));
  CHECK(Ideal::zero(V.presentation) == Ideal::parse(V.presentation, {"t1^2-t0*t2"}));
  CHECK(V.verify_generation());

  auto Sym = invariant_ring(S, GroupAction::permutations({{1, 0}}));
  CHECK(Sym.group_order == 2);
  CHECK(Sym.generators.size() == 2);
  CHECK(Sym.presentation->relations().empty());
  CHECK(Sym.verify_generation());

  auto Tr = invariant_ring(S, GroupAction::trivial());
  CHECK(Tr.generators.size() == 2);
  CHECK(Tr.presentation->relations().empty());

  CHECK_THROWS_AS(invariant_ring(PolyRing::make(Field::prime(2), {"x", "y"}), GroupAction::veronese(2, 2)),
                  BadCharacteristic);
  CHECK_THROWS_AS(invariant_ring(PolyRing::make(Field::prime(3), {"x", "y", "z"}),
                                 GroupAction::permutations({{1, 0, 2}, {1, 2, 0}})),
                  BadCharacteristic);
  CHECK(invariant_ring(PolyRing::make(Field::prime(3), {"x", "y"}), GroupAction::permutations({{1, 0}})).group_order ==
        2);

  auto V3 = invariant_ring(S, GroupAction::veronese(2, 3));
  CHECK(V3.generators.size() == 4);
  CHECK(krull_dim(V3.presentation) == 2);
  CHECK(V3.verify_generation());

  // Presentation oracle: the kernel in t-degree d has dimension
  // #monomials minus the rank of their images, computed densely.
  for (const auto* P : {&V, &V3}) {
    const RingPtr& T = P->presentation->ambient();
    for (int d = 1; d <= 3; ++d) {
      dense::Echelon img, ker;
      auto ms = dense::monomials(T->nvars(), d);
      for (const auto& m : ms) img.add(P->embed(Poly::monomial(T, m, Scalar(T->field(), 1))));
      for (const auto& g : dense::span_in_degree(T, P->presentation->relations(), d)) ker.add(g);
      CHECK(ker.rank() == ms.size() - img.rank());
    }
    for (const auto& g : P->presentation->relations()) CHECK(P->embed(g).is_zero());
  }

  // Reynolds is a retraction onto the invariants and is linear over them.
  std::mt19937 rng(11);
  for (const auto* P : {&V, &Sym, &V3}) {
    for (const auto& g : P->generators) CHECK(P->reynolds(g) == g);
    for (int t = 0; t < 30; ++t) {
      Poly f = random_poly(S, rng, 4, 3);
      Poly r = P->reynolds(f);
      CHECK(P->is_invariant(r));
      CHECK(P->reynolds(r) == r);
      if (!r.is_zero()) CHECK(P->in_subalgebra(r));
      const Poly& g = P->generators[t % P->generators.size()];
      CHECK(P->reynolds(g * f) == g * r);
    }
  }
}

TEST_CASE("invariant transfer") {
  auto S = PolyRing::make(Field::rationals(), {"x", "y"});
  auto V = invariant_ring(S, GroupAction::veronese(2, 2));
  auto m = Ideal::parse(V.presentation, {"t0", "t1", "t2"});
  auto r = invariant_transfer_check(V, m);
  CHECK(r.ok());
  CHECK(r.grade_invariant == 2);
  CHECK(r.height_invariant == 2);
  // Oracle for the extended side in k[x,y].
  auto e = V.extend(m);
  CHECK(poly_height(e) == 2);
  CHECK(ext_grade(e, PresentedModule::free(e.ring())).value == 2);

  auto r0 = invariant_transfer_check(V, Ideal::parse(V.presentation, {"t0"}));
  CHECK(r0.ok());
  CHECK(r0.grade_invariant == 1);
  CHECK(poly_height(V.extend(Ideal::parse(V.presentation, {"t0"}))) == 1);
  auto rz = invariant_transfer_check(V, Ideal::zero(V.presentation));
  CHECK(rz.ok());
  CHECK(rz.grade_extended == 0);

  // Heights agree on primes of the invariant ring.
  for (const auto& p : minimal_primes(Ideal::parse(V.presentation, {"t1", "t0"})))
    CHECK(invariant_transfer_check(V, p.ideal).ok());
}

TEST_CASE("valuation model") {
  ValuationModel v2(2);
  CHECK(v2.compare({1, 0}, {0, 1}) < 0);
  CHECK(v2.compare({5, 0}, {-3, 1}) < 0);
  CHECK(v2.is_positive({-1, 1}));
  CHECK_FALSE(v2.is_positive({1, -1}));
  CHECK(v2.level({1, 0}) == 1);
  CHECK(v2.height_principal({1, 0}) == 2);
  CHECK(v2.kgrade_principal({1, 0}) == 1);
  CHECK(v2.height_principal({0, 1}) == 1);
  CHECK(v2.prime_contains(2, {1, 0}));
  CHECK_FALSE(v2.prime_contains(1, {1, 0}));
  CHECK(v2.prime_contains(1, {0, 1}));
  CHECK(v2.weakly_associated_heights({0, 1}) == std::vector<int>{1, 2});
  CHECK_FALSE(v2.evaluate().fg);

  for (int r = 0; r <= 3; ++r) {
    auto c = ValuationModel(r).evaluate();
    CHECK(c.all_equal());
    CHECK(c.primes == (r <= 1));
  }
  CHECK(ValuationModel(0).sample_values().empty());
  CHECK(ValuationModel(1).sample_values().size() == 1);
  CHECK_THROWS(ValuationModel(-1));
}
