#include <doctest.h>

#include <random>
#include <set>

#include "dense_oracle.hpp"
#include "gradecm/ringpres.hpp"

using namespace gradecm;

namespace {

RingHandle ring(std::vector<std::string> vars, std::vector<std::string> rel = {}) {
  return PresentedRing::parse(PolyRing::make(Field::rationals(), std::move(vars)), rel);
}

std::set<std::string> keys(const std::vector<PrimeWitness>& ps) {
  std::set<std::string> out;
  for (const auto& p : ps) out.insert(p.ideal.key());
  return out;
}

std::set<std::string> keys(const RingHandle& R, std::vector<std::vector<std::string>> ideals) {
  std::set<std::string> out;
  for (auto& g : ideals) out.insert(Ideal::parse(R, g).key());
  return out;
}

}  // namespace

TEST_CASE("krull dimension") {
  CHECK(krull_dim(ring({"x", "y", "z"}, {"x*y", "x*z"})) == 2);
  CHECK(krull_dim(ring({"x", "y"})) == 2);
  CHECK(krull_dim(ring({"x"}, {"x^2"})) == 0);
  CHECK_THROWS_AS(krull_dim(ring({"x"}, {"x", "x-1"})), ZeroRing);
}

TEST_CASE("ideal membership and arithmetic") {
  auto R = ring({"x", "y"}, {"x^2"});
  Ideal a = Ideal::parse(R, {"x*y"});
  CHECK(a.contains(parse_poly(R->ambient(), "x*y^3")));
  CHECK(a.contains(parse_poly(R->ambient(), "x^2")));
  CHECK_FALSE(a.contains(parse_poly(R->ambient(), "y")));
  CHECK((a * a).gens().empty());
  Ideal b = Ideal::parse(R, {"x"});
  CHECK(colon(Ideal::zero(R), parse_poly(R->ambient(), "x")) == b);
  CHECK(intersect(Ideal::parse(R, {"y"}), b) == a);
  CHECK(Ideal::unit(R).is_unit());
  CHECK(mu_hat(Ideal::parse(R, {"x*y", "y", "x^2*y+y"})) == 1);
}

TEST_CASE("minimal primes: examples") {
  auto S = ring({"x", "y", "z"});
  CHECK(keys(minimal_primes(Ideal::parse(S, {"x*y", "x*z"}))) == keys(S, {{"x"}, {"y", "z"}}));
  CHECK(keys(minimal_primes(Ideal::parse(S, {"x^2"}))) == keys(S, {{"x"}}));
  CHECK(keys(minimal_primes(Ideal::parse(S, {"x*z", "y*z"}))) == keys(S, {{"z"}, {"x", "y"}}));
  CHECK_THROWS_AS(minimal_primes(Ideal::unit(S)), UnitIdeal);

  // Non-monomial: the twisted cubic is prime; a union of two conics splits.
  auto T = ring({"x", "y", "z", "w"});
  auto cubic = minimal_primes(Ideal::parse(T, {"x*z-y^2", "y*w-z^2", "x*w-y*z"}));
  REQUIRE(cubic.size() == 1);
  CHECK(cubic[0].certified);
  auto two = minimal_primes(Ideal::parse(S, {"x^2-y^2"}));
  CHECK(keys(two) == keys(S, {{"x-y"}, {"x+y"}}));
  auto irr = minimal_primes(Ideal::parse(S, {"x^2+y^2"}));
  CHECK(irr.size() == 1);
  CHECK(irr[0].certified);
  // Reduced and irreducible over QQ, split by a coordinate: (x^2-2, y) is prime.
  auto p = minimal_primes(Ideal::parse(S, {"x^2-2", "y*(y-1)"}));
  CHECK(keys(p) == keys(S, {{"x^2-2", "y"}, {"x^2-2", "y-1"}}));
}

TEST_CASE("minimal primes over a quotient ring") {
  auto R = ring({"x", "y", "z"}, {"x*y", "x*z"});
  // The preimage is (y, xz), so (x, y) is minimal over (y) as well as (y, z).
  auto ps = minimal_primes(Ideal::parse(R, {"y"}));
  CHECK(keys(ps) == keys(R, {{"x", "y"}, {"y", "z"}}));
  CHECK(prime_height(Ideal::parse(R, {"y", "z"})) == 0);
  CHECK(prime_height(Ideal::parse(R, {"x", "y"})) == 1);
  CHECK(height(Ideal::parse(R, {"y"})) == 0);
  CHECK(keys(minimal_primes(R)) == keys(R, {{"x"}, {"y", "z"}}));
}

TEST_CASE("heights") {
  auto R = ring({"x", "y", "z"}, {"x*y", "x*z"});
  CHECK(height(Ideal::parse(R, {"y", "z"})) == 0);
  CHECK(height(Ideal::parse(R, {"x", "y", "z"})) == 2);
  CHECK(height(Ideal::unit(R)) == kInfinity);
  auto S = ring({"x", "y"});
  CHECK(height(Ideal::parse(S, {"x"})) == 1);
  CHECK(height(Ideal::parse(S, {"x", "y"})) == 2);
  CHECK(height(Ideal::zero(S)) == 0);

  PresentedModule M = PresentedModule::quotient(Ideal::parse(S, {"x"}));
  CHECK(module_height(Ideal::parse(S, {"x"}), M) == 0);
  CHECK(module_height(Ideal::parse(S, {"y"}), M) == 1);
  CHECK(module_height(Ideal::parse(S, {"x"}), PresentedModule::free(S)) == 1);
  CHECK(module_height(Ideal::parse(S, {"x-1"}), M) == kInfinity);
}

TEST_CASE("annihilators") {
  auto S = ring({"x", "y"});
  CHECK(annihilator(PresentedModule::quotient(Ideal::parse(S, {"x"}))) == Ideal::parse(S, {"x"}));
  CHECK(annihilator(PresentedModule::free(S)).is_zero());

  // coker of the columns (x, 0) and (y, x); compare degree pieces with
  // dense linear algebra.
  const RingPtr& A = S->ambient();
  PresentedModule M = PresentedModule::free(S, 2);
  M.relations = {parse_poly(A, "x").shift_components(1),
                 parse_poly(A, "y").shift_components(1) + parse_poly(A, "x").shift_components(2)};
  Ideal ann = annihilator(M);
  for (int d = 0; d <= 4; ++d) {
    // Oracle: h in Ann_d iff h*e_1 and h*e_2 lie in N_d.
    std::vector<Poly> W = dense::span_in_degree(A, M.relations, d);
    std::vector<Poly> ann_d;
    for (const auto& m : dense::monomials(2, d)) ann_d.push_back(Poly::monomial(A, m, Scalar(A->field(), 1)));
    // Kernel of S_d -> (S^2/N)_d (+) (S^2/N)_d, h -> (h e1, h e2).
    dense::Echelon both;
    std::vector<Poly> W2;
    for (const auto& w : W) {
      W2.push_back(w);
      W2.push_back(w.shift_components(2));
    }
    for (const auto& w : W2) both.add(w);
    std::size_t base = both.rank();
    for (const auto& h : ann_d) both.add(h.shift_components(1) + h.shift_components(4));
    long expected = static_cast<long>(ann_d.size()) - static_cast<long>(both.rank() - base);
    dense::Echelon lib;
    for (const auto& g : ann.gb().elems)
      for (const auto& v : dense::span_in_degree(A, {g}, d)) lib.add(v);
    CHECK(static_cast<long>(lib.rank()) == expected);
  }
}

TEST_CASE("associated primes") {
  auto S = ring({"x", "y"});
  auto ass = associated_primes(PresentedModule::quotient(Ideal::parse(S, {"x^2", "x*y"})));
  CHECK(keys(ass) == keys(S, {{"x"}, {"x", "y"}}));
  // Each is the annihilator of an element of the module.
  Ideal a = Ideal::parse(S, {"x^2", "x*y"});
  CHECK(colon(a, parse_poly(S->ambient(), "y")) == Ideal::parse(S, {"x"}));
  CHECK(colon(a, parse_poly(S->ambient(), "x")) == Ideal::parse(S, {"x", "y"}));

  CHECK(keys(associated_primes(PresentedModule::quotient(Ideal::parse(S, {"x"})))) == keys(S, {{"x"}}));

  auto R = ring({"x", "y", "z"}, {"x*y", "x*z"});
  auto ay = associated_primes(PresentedModule::quotient(Ideal::parse(R, {"y"})));
  for (const auto& p : minimal_primes(Ideal::parse(R, {"y"}))) {
    bool found = false;
    for (const auto& q : ay) found = found || q.ideal == p.ideal;
    CHECK(found);
  }
  // R/(y) = k[x,y,z]/(y, xz): Ass = {(x,y), (y,z)}.
  CHECK(keys(ay) == keys(R, {{"x", "y"}, {"y", "z"}}));
}

TEST_CASE("properties on random monomial and binomial ideals") {
  std::mt19937_64 rng(7);
  auto S = ring({"x", "y", "z"});
  const RingPtr& A = S->ambient();
  std::uniform_int_distribution<int> e(0, 2), ng(1, 3), coin(0, 1);
  for (int trial = 0; trial < 40; ++trial) {
    std::vector<Poly> gens;
    int k = ng(rng);
    for (int j = 0; j < k; ++j) {
      Monomial m, u;
      for (int i = 0; i < 3; ++i) {
        m.e[i] = static_cast<std::uint16_t>(e(rng));
        m.deg += m.e[i];
        u.e[i] = static_cast<std::uint16_t>(e(rng));
        u.deg += u.e[i];
      }
      Poly g = Poly::monomial(A, m, Scalar(A->field(), 1));
      if (coin(rng) && !(m == u)) g -= Poly::monomial(A, u, Scalar(A->field(), 1));
      if (!g.is_constant()) gens.push_back(g);
    }
    if (gens.empty()) continue;
    Ideal a(S, gens);
    if (a.is_unit()) continue;
    auto mins = minimal_primes(a);
    REQUIRE_FALSE(mins.empty());
    const int n = static_cast<int>(a.gens().size());
    for (std::size_t i = 0; i < mins.size(); ++i) {
      const Ideal& p = mins[i].ideal;
      // Contains a; principal ideal theorem; incomparable.
      CHECK(p.contains(a));
      int h = prime_height(p);
      CHECK_MESSAGE(h <= n, a.to_string(), " prime ", p.to_string());
      CHECK(h + dim_from_gb(p.gb()) <= krull_dim(S));
      for (std::size_t j = 0; j < mins.size(); ++j)
        if (i != j) CHECK_FALSE(p.contains(mins[j].ideal));
      for (const auto& g : a.gens()) CHECK(radical_contains(p, g));
    }
    // Height is monotone under inclusion.
    int ht = height(a);
    Ideal bigger = a.with(A->nvars() ? Poly::var(A, 0) : Poly(A, 1));
    if (!bigger.is_unit()) CHECK(height(bigger) >= ht);
  }
}
