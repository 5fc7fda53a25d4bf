#include <doctest.h>

#include <random>

#include "dense_oracle.hpp"
#include "gradecm/grade.hpp"

using namespace gradecm;

namespace {

RingHandle ring(std::vector<std::string> vars, std::vector<std::string> rel = {}, Field k = Field::rationals()) {
  return PresentedRing::parse(PolyRing::make(k, std::move(vars)), rel);
}

// F[x_1..x_n]/(x_1, x_2^2, ..., x_n^n) with its maximal ideal.
RingHandle truncation(int n) {
  std::vector<std::string> vars, rel;
  for (int i = 1; i <= n; ++i) {
    vars.push_back("x" + std::to_string(i));
    rel.push_back("x" + std::to_string(i) + "^" + std::to_string(i));
  }
  return ring(vars, rel, Field::prime(2));
}

PresentedModule free1(const RingHandle& R) { return PresentedModule::free(R); }

// Multiplication by f is injective on (S/J)_t for t <= tmax (f, J homogeneous).
bool oracle_nzd(const RingHandle& S, const Poly& f, const std::vector<Poly>& J, int tmax) {
  std::vector<Poly> mult{f.shift_components(1)};
  for (int t = 0; t <= tmax; ++t)
    if (dense::subquotient_dim(S->ambient(), nullptr, 0, &mult, 1, f.total_degree(), 1, J, t) > 0) return false;
  return true;
}

Poly P(const RingHandle& R, const char* s) { return R->parse_element(s); }

}  // namespace

TEST_CASE("koszul grade examples") {
  auto S = ring({"x", "y"});
  auto g = koszul_grade(Ideal::parse(S, {"x", "y"}), free1(S));
  CHECK(g.value == 2);
  CHECK(g.first_nonvanishing == 2);
  CHECK(koszul_grade(Ideal::unit(S), free1(S)).value == kInfinity);
  CHECK(koszul_grade(Ideal::zero(S), free1(S)).value == 0);
  for (int n = 3; n <= 5; ++n) {
    auto R = truncation(n);
    CHECK(koszul_grade(Ideal::maximal_graded(R), free1(R)).value == 0);
  }
  auto c = cech_grade(Ideal::parse(S, {"x"}), free1(S));
  CHECK(c.notion == GradeNotion::CechAlias);
  CHECK(c.value == 1);
}

TEST_CASE("ext grade examples") {
  auto S = ring({"x", "y"});
  CHECK(ext_grade(Ideal::parse(S, {"x"}), free1(S)).value == 1);
  CHECK(ext_grade(Ideal::zero(S), free1(S)).value == 0);
  CHECK(ext_grade(Ideal::parse(S, {"x", "y"}), free1(S)).value == 2);
  CHECK(ext_grade(Ideal::unit(S), free1(S)).value == kInfinity);
  auto R = truncation(3);
  CHECK(ext_grade(Ideal::maximal_graded(R), free1(R)).value == 0);
}

TEST_CASE("classical grade") {
  auto S = ring({"x", "y"});
  auto g = classical_grade(Ideal::parse(S, {"x", "y"}), free1(S));
  CHECK(g.value == 2);
  CHECK(g.exact);
  CHECK(g.sequence == std::vector<Poly>{P(S, "x"), P(S, "y")});

  auto R = truncation(3);
  auto z = classical_grade(Ideal::maximal_graded(R), free1(R));
  CHECK(z.value == 0);
  CHECK(z.sequence.empty());

  auto h = classical_grade(Ideal::parse(S, {"x^2+y^2", "x*y"}), free1(S));
  CHECK(h.value == 2);
  REQUIRE(h.sequence.size() == 2);
  // Each step checked degree by degree: f1 on S, f2 on S/(f1).
  CHECK(oracle_nzd(S, h.sequence[0], {}, 5));
  CHECK(oracle_nzd(S, h.sequence[1], {h.sequence[0]}, 5));
}

TEST_CASE("regularity tests") {
  auto S = ring({"x", "y"});
  CHECK(is_nonzerodivisor(P(S, "x"), free1(S)));
  CHECK_FALSE(is_nonzerodivisor(P(S, "0"), free1(S)));
  auto M = PresentedModule::quotient(Ideal::parse(S, {"x*y"}));
  CHECK_FALSE(is_nonzerodivisor(P(S, "x"), M));
  CHECK(is_nonzerodivisor(P(S, "x+y"), M));
  CHECK(oracle_nzd(S, P(S, "x+y"), {P(S, "x*y")}, 5));
  CHECK_FALSE(oracle_nzd(S, P(S, "x"), {P(S, "x*y")}, 5));
  CHECK(is_weak_regular_sequence({P(S, "x"), P(S, "y")}, free1(S)));
  CHECK_FALSE(is_weak_regular_sequence({P(S, "x"), P(S, "x*y")}, free1(S)));
}

TEST_CASE("polynomial grade witness") {
  auto S = ring({"x", "y"});
  auto w = polynomial_grade_witness(Ideal::parse(S, {"x", "y"}), free1(S));
  CHECK(w.value == 2);
  REQUIRE(w.sequence.size() == 2);
  REQUIRE(w.witness_ring);
  CHECK(w.witness_ring->nvars() == 6);
  CHECK(w.sequence[0].to_string() == "x*_t1 + y*_t2");
  CHECK(w.sequence[1].to_string() == "x*_t3 + y*_t4");
  // Colon check in R[t]: (y1) : y2 = (y1).
  Ideal y1(w.witness_ring, {w.sequence[0]});
  CHECK(colon(y1, w.sequence[1]) == y1);

  auto z = polynomial_grade_witness(Ideal::zero(S), free1(S));
  CHECK(z.value == 0);
  CHECK(z.sequence.empty());
  auto R = truncation(3);
  auto t = polynomial_grade_witness(Ideal::maximal_graded(R), free1(R));
  CHECK(t.value == 0);
  CHECK(t.sequence.empty());
}

TEST_CASE("truncated local cohomology grade") {
  auto S = ring({"x", "y"});
  auto h = hgrade_truncated(Ideal::parse(S, {"x"}), free1(S), 3);
  CHECK(h.value == 1);
  CHECK(h.stabilization_level == 1);
  CHECK_FALSE(h.truncated);
  CHECK(h.levels == std::vector<int>{1, 1, 1});

  auto M = PresentedModule::quotient(Ideal::parse(S, {"x"}));
  CHECK(hgrade_truncated(Ideal::parse(S, {"x", "y"}), M, 3).value == 1);
  CHECK(hgrade_truncated(Ideal::unit(S), free1(S), 2).value == kInfinity);
  CHECK(hgrade_truncated(Ideal::parse(S, {"x"}), free1(S), 1).truncated);
  CHECK_THROWS_AS(hgrade_truncated(Ideal::parse(S, {"x"}), free1(S), 0), std::invalid_argument);
}

TEST_CASE("depth at a prime") {
  auto R = ring({"x", "y", "z"}, {"x*y", "x*z"});
  CHECK(depth_at_prime({Ideal::parse(R, {"x", "y", "z"}), true}, free1(R)) == 1);
  auto S = ring({"x", "y"});
  CHECK(depth_at_prime({Ideal::parse(S, {"x", "y"}), true}, free1(S)) == 2);
  CHECK(depth_at_prime({Ideal::parse(S, {"x"}), true}, free1(S)) == 1);
  auto M = PresentedModule::quotient(Ideal::parse(S, {"x"}));
  CHECK_THROWS_AS(depth_at_prime({Ideal::parse(S, {"y"}), true}, M), OutsideSupport);
  CHECK(depth_at_prime({Ideal::parse(S, {"x", "y"}), true}, M) == 1);
  // (y, z) is a minimal prime, so R_p has dimension 0.
  CHECK(depth_at_prime({Ideal::parse(R, {"y", "z"}), true}, free1(R)) == 0);
}

TEST_CASE("weak proregularity") {
  auto S = ring({"x", "y"});
  auto r = weak_proregular_check({P(S, "x"), P(S, "y")}, 1, 4, {free1(S)});
  CHECK(r.verdict == ProregularVerdict::Holds);
  CHECK(r.levels == std::vector<int>{1});
  auto S1 = ring({"x"});
  CHECK(weak_proregular_check({P(S1, "x")}, 1, 4, {free1(S1)}).verdict == ProregularVerdict::Holds);

  auto T = truncation(3);
  auto t = weak_proregular_check({P(T, "x2")}, 1, 4, {free1(T)});
  CHECK(t.verdict == ProregularVerdict::Holds);
  CHECK(t.levels == std::vector<int>{3});
  auto t2 = weak_proregular_check({P(T, "x2")}, 2, 4, {free1(T)});
  CHECK(t2.levels == std::vector<int>{4});
  auto t3 = weak_proregular_check({P(T, "x3")}, 1, 2, {free1(T)});
  CHECK(t3.verdict == ProregularVerdict::FailsAtBound);
  auto t4 = weak_proregular_check({P(T, "x3")}, 1, 2, {free1(T), PresentedModule::quotient(Ideal::parse(T, {"x2"}))});
  CHECK(t4.verdict == ProregularVerdict::FailsAtBound);
  // Over a polynomial ring every test module settles, but the bound can cut a module off.
  auto q = PresentedModule::quotient(Ideal::parse(S, {"x^3"}));
  auto mixed = weak_proregular_check({P(S, "x")}, 1, 2, {free1(S), q});
  CHECK(mixed.verdict == ProregularVerdict::HoldsForROnly);
  CHECK(weak_proregular_check({P(S, "x")}, 1, 4, {free1(S), q}).verdict == ProregularVerdict::Holds);
}

TEST_CASE("strong parameter certificate") {
  auto S = ring({"x", "y"});
  auto c = strong_parameter_certificate({P(S, "x"), P(S, "y")}, S);
  CHECK(c.certified);
  REQUIRE(c.prefixes.size() == 2);
  CHECK(c.prefixes[0].grade == 1);
  CHECK(c.prefixes[1].grade == 2);

  auto R = ring({"x", "y", "z"}, {"x*y", "x*z"});
  auto y = strong_parameter_certificate({P(R, "y")}, R);
  CHECK_FALSE(y.certified);
  CHECK(y.prefixes[0].grade == 0);

  CHECK(strong_parameter_certificate({}, S).certified);
  CHECK_THROWS_AS(strong_parameter_certificate({P(S, "1")}, S), std::invalid_argument);
}

TEST_CASE("grade properties on random instances") {
  std::mt19937_64 rng(21);
  std::uniform_int_distribution<int> e(0, 2), ng(1, 3), nrel(0, 2), coin(0, 1);
  const std::vector<std::string> vars{"x", "y", "z"};
  auto A = PolyRing::make(Field::rationals(), vars);
  auto random_gen = [&]() {
    Monomial m, u;
    for (int i = 0; i < 3; ++i) {
      m.e[i] = static_cast<std::uint16_t>(e(rng));
      m.deg += m.e[i];
      u.e[i] = static_cast<std::uint16_t>(e(rng));
      u.deg += u.e[i];
    }
    Poly g = Poly::monomial(A, m, Scalar(A->field(), 1));
    if (coin(rng) && u.deg == m.deg && !(m == u)) g += Poly::monomial(A, u, Scalar(A->field(), 1));
    return g;
  };
  int tested = 0;
  for (int trial = 0; trial < 30; ++trial) {
    std::vector<Poly> rel;
    for (int k = nrel(rng); k > 0; --k) {
      Poly g = random_gen();
      if (g.total_degree() >= 2) rel.push_back(g);
    }
    RingHandle R = PresentedRing::make(A, rel);
    if (R->is_zero_ring()) continue;
    std::vector<Poly> gens;
    for (int k = ng(rng); k > 0; --k) {
      Poly g = random_gen();
      if (g.total_degree() >= 1) gens.push_back(g);
    }
    Ideal a(R, gens);
    if (a.is_unit() || a.is_zero()) continue;
    PresentedModule M = free1(R);
    int kg = koszul_grade(a, M).value;
    CHECK(kg == ext_grade(a, M).value);
    CHECK(classical_grade(a, M).value <= kg);
    CHECK(kg <= height(a));
    // Monotone: a subset of a + (x).
    Ideal b = a.with(P(R, "x"));
    if (!b.is_unit()) CHECK(koszul_grade(b, M).value >= kg);
    // Dividing out a regular element of a drops the grade by one.
    for (const auto& f : a.gens()) {
      if (!is_nonzerodivisor(f, M)) continue;
      CHECK(koszul_grade(a, M.mod_ideal(Ideal(R, {f}))).value == kg - 1);
      break;
    }
    // Grade is bounded by the dimension of the module.
    if (!M.mod_ideal(Ideal::maximal_graded(R)).is_zero())
      CHECK(ext_grade(Ideal::maximal_graded(R), M).value <= module_dim(M));
    ++tested;
  }
  CHECK(tested >= 15);
}

TEST_CASE("grade as a minimum of depths") {
  // K.grade(a, M) = min over primes p containing a and Ann M of depth M_p; the
  // minimum is attained at a minimal prime of a + Ann M.
  auto R = ring({"x", "y", "z"}, {"x*y", "x*z"});
  for (auto gens : std::vector<std::vector<std::string>>{{"y"}, {"x", "y", "z"}, {"y", "z"}, {"x+y"}, {"z", "x-y"}}) {
    Ideal a = Ideal::parse(R, gens);
    int kg = koszul_grade(a, free1(R)).value;
    int best = kInfinity;
    for (const auto& p : minimal_primes(a)) best = std::min(best, depth_at_prime(p, free1(R)));
    CHECK(kg == best);
  }
}

TEST_CASE("change of rings") {
  // For N a module over R/xR, the grade over R equals the grade over R/xR.
  auto S = ring({"x", "y", "z"});
  auto Q = PresentedRing::parse(S->ambient(), {"x"});
  for (auto gens : std::vector<std::vector<std::string>>{{"y"}, {"y", "z"}, {"x", "y"}, {"y*z"}}) {
    PresentedModule N_R = PresentedModule::quotient(Ideal::parse(S, {"x", "y*z^2"}));
    PresentedModule N_Q = PresentedModule::quotient(Ideal::parse(Q, {"y*z^2"}));
    CHECK(koszul_grade(Ideal::parse(S, gens), N_R).value == koszul_grade(Ideal::parse(Q, gens), N_Q).value);
  }
}
