#include "gradecm/scalars.hpp"

#include <cctype>

namespace gradecm {

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

Field Field::prime(std::uint64_t p) {
  if (p >= (1ull << 31)) throw UnsupportedField("prime field modulus must be below 2^31");
  if (!is_prime(p)) throw UnsupportedField("GF(" + std::to_string(p) + ") is not a prime field");
  return Field(static_cast<std::uint32_t>(p));
}

std::string Field::name() const { return p_ ? "GF(" + std::to_string(p_) + ")" : "QQ"; }

namespace {

std::uint32_t reduce_mod(const mpz_class& z, std::uint32_t p) {
  mpz_class r = z % p;
  if (r < 0) r += p;
  return static_cast<std::uint32_t>(r.get_ui());
}

std::uint32_t pow_mod(std::uint64_t b, std::uint64_t e, std::uint32_t p) {
  std::uint64_t r = 1;
  b %= p;
  while (e) {
    if (e & 1) r = r * b % p;
    b = b * b % p;
    e >>= 1;
  }
  return static_cast<std::uint32_t>(r);
}

}  // namespace

Scalar::Scalar(const Field& f, long v) : p_(f.characteristic()) {
  if (p_) {
    long r = v % static_cast<long>(p_);
    if (r < 0) r += p_;
    r_ = static_cast<std::uint32_t>(r);
  } else {
    q_ = v;
  }
}

Scalar::Scalar(const Field& f, const mpq_class& q) : p_(f.characteristic()) {
  if (p_) {
    std::uint32_t den = reduce_mod(q.get_den(), p_);
    if (den == 0) throw DivisionByZero();
    std::uint32_t num = reduce_mod(q.get_num(), p_);
    r_ = static_cast<std::uint32_t>(static_cast<std::uint64_t>(num) * pow_mod(den, p_ - 2, p_) % p_);
  } else {
    q_ = q;
    q_.canonicalize();
  }
}

Scalar Scalar::parse(const Field& f, const std::string& text) {
  // Accepts "a", "a/b", "a.b" and "a mod p"; p must match the field.
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s += c;
  auto pos = s.find("mod");
  if (pos != std::string::npos) {
    unsigned long p = std::stoul(s.substr(pos + 3));
    if (p != f.characteristic())
      throw FieldMismatch("literal modulus " + std::to_string(p) + " does not match " + f.name());
    s = s.substr(0, pos);
  }
  mpq_class q;
  auto dot = s.find('.');
  if (dot != std::string::npos) {
    std::string whole = s.substr(0, dot), frac = s.substr(dot + 1);
    bool neg = !whole.empty() && whole[0] == '-';
    if (neg) whole.erase(0, 1);
    mpz_class den = 1;
    for (std::size_t i = 0; i < frac.size(); ++i) den *= 10;
    mpz_class num((whole.empty() ? "0" : whole) + frac);
    q = mpq_class(num, den);
    if (neg) q = -q;
  } else {
    if (q.set_str(s, 10) != 0) throw std::invalid_argument("bad scalar literal '" + text + "'");
    if (q.get_den() == 0) throw DivisionByZero();
  }
  q.canonicalize();
  return Scalar(f, q);
}

Field Scalar::field() const { return p_ ? Field::prime(p_) : Field::rationals(); }

Scalar Scalar::inverse() const {
  if (is_zero()) throw DivisionByZero();
  Scalar r = *this;
  if (p_)
    r.r_ = pow_mod(r_, p_ - 2, p_);
  else
    r.q_ = 1 / q_;
  return r;
}

Scalar& Scalar::operator+=(const Scalar& o) {
  check_same(o);
  if (p_) {
    std::uint64_t s = static_cast<std::uint64_t>(r_) + o.r_;
    r_ = static_cast<std::uint32_t>(s >= p_ ? s - p_ : s);
  } else {
    q_ += o.q_;
  }
  return *this;
}

Scalar& Scalar::operator-=(const Scalar& o) {
  check_same(o);
  if (p_)
    r_ = r_ >= o.r_ ? r_ - o.r_ : static_cast<std::uint32_t>(static_cast<std::uint64_t>(r_) + p_ - o.r_);
  else
    q_ -= o.q_;
  return *this;
}

Scalar& Scalar::operator*=(const Scalar& o) {
  check_same(o);
  if (p_)
    r_ = static_cast<std::uint32_t>(static_cast<std::uint64_t>(r_) * o.r_ % p_);
  else
    q_ *= o.q_;
  return *this;
}

Scalar Scalar::operator-() const {
  Scalar r = *this;
  if (p_)
    r.r_ = r_ ? p_ - r_ : 0;
  else
    r.q_ = -q_;
  return r;
}

bool operator==(const Scalar& a, const Scalar& b) {
  if (a.p_ != b.p_) return false;
  return a.p_ ? a.r_ == b.r_ : a.q_ == b.q_;
}

long Scalar::symmetric_residue() const {
  long v = r_;
  if (v > static_cast<long>(p_ / 2)) v -= p_;
  return v;
}

std::string Scalar::to_string() const {
  if (p_) return std::to_string(symmetric_residue());
  return q_.get_str();
}

}  // namespace gradecm
