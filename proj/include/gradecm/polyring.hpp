#pragma once

// Sparse multivariate polynomials over an exact field.
//
// A Poly doubles as an element of a finite free module: every monomial
// carries a component index, 0 for ring elements and 1..r for the basis
// vectors e_1..e_r of a free module. Ring elements multiply module
// elements; the ordering of module terms is term-over-position unless the
// ring's order asks for position-over-term.

#include <array>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "gradecm/scalars.hpp"

namespace gradecm {

inline constexpr int kMaxVars = 24;

class AmbientMismatch : public std::invalid_argument {
 public:
  AmbientMismatch() : std::invalid_argument("polynomials live in different rings") {}
};

class SubstitutionDomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct Monomial {
  std::array<std::uint16_t, kMaxVars> e{};
  std::int32_t deg = 0;
  std::uint32_t comp = 0;

  static Monomial one() { return {}; }
  static Monomial var(int i, int power = 1);
  static Monomial unit_vector(std::uint32_t comp) {
    Monomial m;
    m.comp = comp;
    return m;
  }

  bool is_one() const { return deg == 0 && comp == 0; }
  friend bool operator==(const Monomial& a, const Monomial& b) {
    return a.deg == b.deg && a.comp == b.comp && a.e == b.e;
  }
};

/// Product of a ring monomial with a ring or module monomial. Throws
/// std::overflow_error when an exponent leaves the 16-bit range.
Monomial operator*(const Monomial& a, const Monomial& b);
/// True iff a | b (same component, or a is a ring monomial dividing b's exponents
/// when `ignore_comp`).
bool divides(const Monomial& a, const Monomial& b);
/// b / a as a ring monomial times a's component-free part; requires divides(a, b).
Monomial quotient(const Monomial& b, const Monomial& a);
/// Least common multiple; components must agree.
Monomial lcm(const Monomial& a, const Monomial& b);
bool coprime(const Monomial& a, const Monomial& b, int nvars);
/// Bitmask of the variables present (first 32 variables).
std::uint32_t support_mask(const Monomial& m, int nvars);

enum class OrderKind { Lex, DegRevLex, Elimination };

/// Lex, degrevlex, or an elimination order (first `block` variables, each
/// block degrevlex, the first block dominating). Module terms compare
/// term-over-position by default; smaller component index ranks higher.
struct MonomialOrder {
  OrderKind kind = OrderKind::DegRevLex;
  int block = 0;
  bool position_first = false;

  static MonomialOrder lex() { return {OrderKind::Lex, 0, false}; }
  static MonomialOrder degrevlex() { return {OrderKind::DegRevLex, 0, false}; }
  static MonomialOrder elimination(int k) { return {OrderKind::Elimination, k, false}; }
  MonomialOrder with_position_first() const {
    MonomialOrder o = *this;
    o.position_first = true;
    return o;
  }

  /// -1, 0, 1 as a is smaller, equal, larger than b.
  int compare(const Monomial& a, const Monomial& b, int nvars) const;
  friend bool operator==(const MonomialOrder&, const MonomialOrder&) = default;
};

class PolyRing;
using RingPtr = std::shared_ptr<const PolyRing>;

class PolyRing {
 public:
  PolyRing(Field field, std::vector<std::string> vars, MonomialOrder order = MonomialOrder::degrevlex());

  static RingPtr make(Field field, std::vector<std::string> vars,
                      MonomialOrder order = MonomialOrder::degrevlex()) {
    return std::make_shared<const PolyRing>(field, std::move(vars), order);
  }

  const Field& field() const { return field_; }
  int nvars() const { return static_cast<int>(vars_.size()); }
  const std::vector<std::string>& vars() const { return vars_; }
  const std::string& var_name(int i) const { return vars_.at(i); }
  int var_index(const std::string& name) const;  // -1 when absent
  const MonomialOrder& order() const { return order_; }

  int compare(const Monomial& a, const Monomial& b) const { return order_.compare(a, b, nvars()); }

  RingPtr with_order(MonomialOrder order) const;
  /// Same field, `extra` appended to the variable list.
  RingPtr extended(const std::vector<std::string>& extra, MonomialOrder order) const;

  bool same_as(const PolyRing& o) const {
    return this == &o || (field_ == o.field_ && vars_ == o.vars_ && order_ == o.order_);
  }

 private:
  Field field_;
  std::vector<std::string> vars_;
  MonomialOrder order_;
};

struct Term {
  Monomial m;
  Scalar c;
};

class Poly {
 public:
  Poly() = default;
  explicit Poly(RingPtr ring) : ring_(std::move(ring)) {}
  Poly(RingPtr ring, const Scalar& c);
  Poly(RingPtr ring, long c);
  static Poly var(RingPtr ring, int i, int power = 1);
  static Poly monomial(RingPtr ring, const Monomial& m, const Scalar& c);
  /// Unit vector e_comp (1-based) of a free module.
  static Poly unit_vector(RingPtr ring, std::uint32_t comp);
  /// Build from unsorted terms; combines duplicates and drops zeros.
  static Poly from_terms(RingPtr ring, std::vector<Term> terms);

  const RingPtr& ring() const { return ring_; }
  const std::vector<Term>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].m.is_one()); }
  bool is_unit() const { return terms_.size() == 1 && terms_[0].m.is_one(); }

  const Term& leading_term() const;
  const Monomial& leading_monomial() const { return leading_term().m; }
  const Scalar& leading_coeff() const { return leading_term().c; }
  int total_degree() const;
  int degree_in(int var) const;
  bool is_homogeneous() const;
  bool is_monomial() const { return terms_.size() == 1; }
  std::uint32_t max_component() const;
  /// Coefficient of a monomial (zero when absent).
  Scalar coeff(const Monomial& m) const;
  Scalar constant_coeff() const { return coeff(Monomial::one()); }

  Poly monic() const;
  Poly& operator+=(const Poly& o);
  Poly& operator-=(const Poly& o);
  Poly operator-() const;
  Poly scaled(const Scalar& c) const;
  Poly times_term(const Monomial& m, const Scalar& c) const;
  Poly pow(unsigned n) const;

  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator*(const Poly& a, const Poly& b);
  friend bool operator==(const Poly& a, const Poly& b);
  friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

  /// Reinterpret in another ring with the same variables (different order);
  /// re-sorts terms.
  Poly in_ring(RingPtr target) const;
  /// Map variable i of this ring to variable var_map[i] of `target`.
  Poly map_vars(RingPtr target, const std::vector<int>& var_map) const;
  /// Restrict a module element to component `comp` as a ring element.
  Poly component(std::uint32_t comp) const;
  /// Shift all components by `delta` (ring elements become module elements at comp delta).
  Poly shift_components(std::int64_t delta) const;

  std::string to_string() const;

  // Raw access for algorithms that maintain the sorted-terms invariant.
  std::vector<Term>& mutable_terms() { return terms_; }
  void sort_terms();

 private:
  void check_ring(const Poly& o) const;
  RingPtr ring_;
  std::vector<Term> terms_;
};

/// Ring homomorphism given by images of the variables. Every variable that
/// occurs in f must have an image.
Poly substitute(const Poly& f, const std::map<int, Poly>& images, RingPtr target);
Poly substitute(const Poly& f, const std::vector<Poly>& images);

/// Parse `x^2*y - 3/2*z` style text. Throws std::invalid_argument.
Poly parse_poly(RingPtr ring, const std::string& text);

std::string monomial_to_string(const PolyRing& ring, const Monomial& m);

}  // namespace gradecm
