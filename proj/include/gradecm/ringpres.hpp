#pragma once

// Presented rings R = S/I over a polynomial ring S, their ideals and
// finitely presented modules; dimension, heights, minimal and associated
// primes.

#include <climits>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "gradecm/groebner.hpp"

namespace gradecm {

/// Value used for an infinite grade or height.
inline constexpr int kInfinity = INT_MAX;

class ZeroRing : public std::domain_error {
 public:
  ZeroRing() : std::domain_error("the zero ring has no dimension") {}
};

class UnitIdeal : public std::domain_error {
 public:
  UnitIdeal() : std::domain_error("the unit ideal has no minimal primes") {}
};

class PresentedRing;
using RingHandle = std::shared_ptr<const PresentedRing>;

class PresentedRing {
 public:
  /// S/(relations). `ambient` should carry a degree-compatible order.
  static RingHandle make(RingPtr ambient, std::vector<Poly> relations = {});
  static RingHandle parse(RingPtr ambient, const std::vector<std::string>& relations);

  const RingPtr& ambient() const { return ambient_; }
  const Field& field() const { return ambient_->field(); }
  int nvars() const { return ambient_->nvars(); }
  /// Reduced Groebner basis of I.
  const GroebnerBasis& gb() const { return gb_; }
  const std::vector<Poly>& relations() const { return gb_.elems; }
  bool is_zero_ring() const { return gb_.is_unit(); }
  bool is_polynomial_ring() const { return gb_.elems.empty(); }

  /// Canonical representative of f modulo I.
  Poly reduce(const Poly& f) const { return normal_form(f, gb_); }
  bool equal(const Poly& f, const Poly& g) const { return reduce(f - g).is_zero(); }

  /// Krull dimension; throws ZeroRing.
  int dim() const;

  Poly var(int i) const { return Poly::var(ambient_, i); }
  Poly parse_element(const std::string& text) const { return parse_poly(ambient_, text); }

  std::string to_string() const;

 private:
  PresentedRing(RingPtr ambient, GroebnerBasis gb);
  RingPtr ambient_;
  GroebnerBasis gb_;
  int dim_ = -1;
};

/// A finitely generated ideal of a presented ring, stored through
/// preimages in S together with a Groebner basis of I + (gens).
class Ideal {
 public:
  Ideal() = default;
  Ideal(RingHandle ring, std::vector<Poly> gens);
  static Ideal parse(RingHandle ring, const std::vector<std::string>& gens);
  static Ideal zero(RingHandle ring) { return Ideal(std::move(ring), {}); }
  static Ideal unit(RingHandle ring);
  /// The ideal generated by all variables.
  static Ideal maximal_graded(RingHandle ring);

  const RingHandle& ring() const { return ring_; }
  /// Generators reduced modulo I, zeros dropped.
  const std::vector<Poly>& gens() const { return gens_; }
  /// Groebner basis of the preimage I + (gens) in S.
  const GroebnerBasis& gb() const { return gb_; }

  bool contains(const Poly& f) const { return reduces_to_zero(f, gb_); }
  bool contains(const Ideal& o) const;
  bool operator==(const Ideal& o) const { return contains(o) && o.contains(*this); }
  bool is_unit() const { return gb_.is_unit(); }
  bool is_zero() const { return gens_.empty(); }
  bool is_homogeneous() const;

  Ideal operator+(const Ideal& o) const;
  Ideal operator*(const Ideal& o) const;
  Ideal pow(int n) const;
  Ideal with(const Poly& f) const;

  /// Deterministic key: the reduced basis of the preimage, printed.
  std::string key() const;
  std::string to_string() const;

 private:
  RingHandle ring_;
  std::vector<Poly> gens_;
  GroebnerBasis gb_;
};

Ideal colon(const Ideal& a, const Poly& f);
Ideal colon(const Ideal& a, const Ideal& b);
Ideal intersect(const Ideal& a, const Ideal& b);
struct IdealSaturation {
  Ideal ideal;
  int steps = 0;
};
IdealSaturation saturate(const Ideal& a, const Poly& f);
bool radical_contains(const Ideal& a, const Poly& f);
/// Generator count after dropping generators lying in the ideal of the others.
int mu_hat(const Ideal& a);

/// M = R^rank / (columns), presented over S by the columns together with I * R^rank.
struct PresentedModule {
  RingHandle ring;
  std::uint32_t rank = 0;
  std::vector<Poly> relations;  // module elements with components 1..rank

  static PresentedModule free(RingHandle ring, std::uint32_t rank = 1);
  /// The cyclic module R/a.
  static PresentedModule quotient(const Ideal& a);

  /// Relations over S: the columns plus I e_j for each basis vector.
  std::vector<Poly> full_relations() const;
  const GroebnerBasis& relation_gb() const;
  bool is_zero() const;
  /// Same module over the ring S/(I + a); relations are kept.
  PresentedModule base_change(const RingHandle& target) const;
  /// M / aM.
  PresentedModule mod_ideal(const Ideal& a) const;

 private:
  mutable std::shared_ptr<const GroebnerBasis> gb_cache_;
};

struct PrimeWitness {
  Ideal ideal;
  bool certified = true;
};

/// dim S/J from the leading terms of a Groebner basis of J; -1 for the unit ideal.
int dim_from_gb(const GroebnerBasis& gb);
/// Variables of a maximal-size independent set modulo the leading terms.
std::vector<int> max_independent_set(const GroebnerBasis& gb);

int krull_dim(const RingHandle& R);
std::vector<PrimeWitness> minimal_primes(const Ideal& a);
/// Minimal primes of the ring itself (of the zero ideal).
std::vector<PrimeWitness> minimal_primes(const RingHandle& R);
/// Height of a prime of R.
int prime_height(const Ideal& p);
/// Height of an ideal; kInfinity for the unit ideal.
int height(const Ideal& a);
/// Height of a + Ann M in R/Ann M; kInfinity when M = aM.
int module_height(const Ideal& a, const PresentedModule& M);
Ideal annihilator(const PresentedModule& M);
/// Ass(M) by the Ext criterion over the ambient polynomial ring.
std::vector<PrimeWitness> associated_primes(const PresentedModule& M);
/// Dimension of R/Ann M; -1 for the zero module.
int module_dim(const PresentedModule& M);

/// Drop primes that contain another listed prime, and duplicates.
std::vector<PrimeWitness> minimalize(std::vector<PrimeWitness> primes);

void clear_prime_cache();

}  // namespace gradecm
