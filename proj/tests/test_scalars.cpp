#include <doctest.h>

#include <random>

#include "gradecm/scalars.hpp"

using namespace gradecm;

TEST_CASE("rational arithmetic is exact") {
  Field Q = Field::rationals();
  Scalar a = Scalar::parse(Q, "1/2"), b = Scalar::parse(Q, "1/3");
  CHECK(a + b == Scalar::parse(Q, "5/6"));
  CHECK((a + b).to_string() == "5/6");
  CHECK(Scalar::parse(Q, "-1.25") == Scalar(Q, mpq_class(-5, 4)));
}

TEST_CASE("prime field inverse") {
  Field F5 = Field::prime(5);
  CHECK(Scalar(F5, 2).inverse() == Scalar(F5, 3));
  CHECK(Scalar::parse(F5, "7 mod 5") == Scalar(F5, 2));
  CHECK_THROWS_AS(Scalar::parse(F5, "7 mod 7"), FieldMismatch);
  CHECK(Scalar::parse(F5, "1/2") == Scalar(F5, 3));
}

TEST_CASE("zero has no inverse") {
  CHECK_THROWS_AS(Scalar(Field::rationals(), 0).inverse(), DivisionByZero);
  CHECK_THROWS_AS(Scalar(Field::prime(7), 14).inverse(), DivisionByZero);
}

TEST_CASE("field construction rejects non-primes") {
  CHECK_THROWS_AS(Field::prime(6), UnsupportedField);
  CHECK_THROWS_AS(Field::prime(1ull << 31), UnsupportedField);
  CHECK(Field::prime(2147483647ull).characteristic() == 2147483647u);
}

TEST_CASE("mixing fields throws") {
  CHECK_THROWS_AS(Scalar(Field::prime(5), 1) + Scalar(Field::prime(7), 1), FieldMismatch);
}

namespace {

void check_axioms(const Field& F, std::mt19937_64& rng) {
  std::uniform_int_distribution<long> num(-1000, 1000), den(1, 50);
  auto draw = [&] {
    return F.is_rational() ? Scalar(F, mpq_class(num(rng), den(rng))) : Scalar(F, num(rng));
  };
  for (int i = 0; i < 1000; ++i) {
    Scalar a = draw(), b = draw(), c = draw();
    REQUIRE((a + b) + c == a + (b + c));
    REQUIRE((a * b) * c == a * (b * c));
    REQUIRE(a * (b + c) == a * b + a * c);
    REQUIRE(a + b == b + a);
    REQUIRE(a - a == Scalar(F, 0));
    if (!a.is_zero()) REQUIRE((a * a.inverse()).is_one());
  }
}

}  // namespace

TEST_CASE("field axioms on random triples") {
  std::mt19937_64 rng(20261018);
  check_axioms(Field::rationals(), rng);
  check_axioms(Field::prime(5), rng);
  check_axioms(Field::prime(2147483647ull), rng);
}
