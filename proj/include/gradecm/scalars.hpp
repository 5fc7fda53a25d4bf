#pragma once

// Exact coefficient fields: the rationals and prime fields F_p.

#include <cstdint>
#include <stdexcept>
#include <string>

#include <gmpxx.h>

namespace gradecm {

class DivisionByZero : public std::domain_error {
 public:
  DivisionByZero() : std::domain_error("division by zero") {}
};

class FieldMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class UnsupportedField : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A coefficient field: QQ when characteristic() == 0, otherwise F_p.
class Field {
 public:
  constexpr Field() = default;

  static Field rationals() { return Field(); }
  /// Throws UnsupportedField unless p is a prime below 2^31.
  static Field prime(std::uint64_t p);

  std::uint32_t characteristic() const { return p_; }
  bool is_rational() const { return p_ == 0; }
  std::string name() const;

  friend bool operator==(const Field&, const Field&) = default;

 private:
  explicit constexpr Field(std::uint32_t p) : p_(p) {}
  std::uint32_t p_ = 0;
};

bool is_prime(std::uint64_t n);

/// An element of a Field. Carries its characteristic so that arithmetic
/// between elements of different fields is rejected.
class Scalar {
 public:
  Scalar() = default;
  Scalar(const Field& f, long v);
  Scalar(const Field& f, const mpq_class& q);
  static Scalar parse(const Field& f, const std::string& text);

  Field field() const;
  std::uint32_t characteristic() const { return p_; }

  bool is_zero() const { return p_ ? r_ == 0 : sgn(q_) == 0; }
  bool is_one() const { return p_ ? r_ == 1 : q_ == 1; }
  bool is_minus_one() const { return p_ ? r_ == p_ - 1 : q_ == -1; }

  Scalar inverse() const;

  Scalar& operator+=(const Scalar& o);
  Scalar& operator-=(const Scalar& o);
  Scalar& operator*=(const Scalar& o);
  Scalar& operator/=(const Scalar& o) { return *this *= o.inverse(); }
  Scalar operator-() const;

  friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
  friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
  friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
  friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }
  friend bool operator==(const Scalar& a, const Scalar& b);

  /// Rational value (char 0) or canonical residue in [0, p).
  const mpq_class& rational() const { return q_; }
  std::uint32_t residue() const { return r_; }
  /// Residue in (-p/2, p/2] for printing.
  long symmetric_residue() const;

  /// Integer-valued with |v| small enough to print without a fraction bar.
  bool is_integer() const { return p_ ? true : q_.get_den() == 1; }
  std::string to_string() const;

 private:
  void check_same(const Scalar& o) const {
    if (o.p_ != p_) throw FieldMismatch("scalars from different fields");
  }
  mpq_class q_;
  std::uint32_t p_ = 0;
  std::uint32_t r_ = 0;
};

}  // namespace gradecm
