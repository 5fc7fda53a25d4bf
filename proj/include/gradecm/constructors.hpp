#pragma once

// Example rings: idealizations, the polynomial ring in countably many
// variables through its finite levels, the perfect closure of F_p[x] through
// its p^l-th root levels, invariant subrings of finite group actions and a
// combinatorial model of a valuation domain of finite rank.

#include <gmpxx.h>

#include <map>
#include <mutex>
#include <stdexcept>
#include <string>
#include <vector>

#include "gradecm/grade.hpp"

namespace gradecm {

class BadCharacteristic : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class LevelTooLow : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// R x| M: R with variables z_1..z_b appended for the generators of M,
/// subject to z_i z_j = 0 and the relations of M written in the z's.
RingHandle trivial_extension(const PresentedModule& M, const std::string& prefix = "z");

/// Grade and height of one ideal at two consecutive levels.
struct LevelCheck {
  int level = 0;
  int grade = 0;
  int height = 0;
  int grade_next = 0;
  int height_next = 0;
  bool stable() const { return grade == grade_next && height == height_next; }
};

/// R[X_1, X_2, ...] realized level by level as R[X_1..X_m].
class LimitRing {
 public:
  explicit LimitRing(RingHandle base, std::string prefix = "X");

  const RingHandle& base() const { return base_; }
  /// R[X_1..X_m]; repeated calls return the same handle.
  RingHandle level(int m) const;
  /// Image of an element of level k in level m >= k.
  Poly include(const Poly& f, int m) const;
  /// Smallest level whose variables cover every X_i named in `gens`.
  int min_level(const std::vector<std::string>& gens) const;
  Ideal ideal(int m, const std::vector<std::string>& gens) const;
  /// Grade and height at level m (at least min_level) and again at m + 1.
  LevelCheck check(const std::vector<std::string>& gens, int m) const;

 private:
  RingHandle base_;
  std::string prefix_;
  mutable std::mutex mu_;
  mutable std::map<int, RingHandle> levels_;
};

/// A polynomial whose exponents are nonnegative rationals, as a list of
/// (coefficient, exponent vector) terms.
struct FracPoly {
  std::vector<std::pair<long, std::vector<mpq_class>>> terms;
};

/// F_p[x_1..x_d]^{1/p^infinity} through the levels F_p[y_1..y_d] with
/// x_i = y_i^{p^l}. Level rings reuse the names x_i for the y_i.
class PerfectClosure {
 public:
  PerfectClosure(std::uint32_t p, std::vector<std::string> vars);

  std::uint32_t characteristic() const { return p_; }
  /// Every level is the same ring; only the identification with x changes.
  RingHandle level(int l) const;
  /// Parses sums of products like `x^(1/2)*z^(3/4) + x`; throws std::invalid_argument.
  FracPoly parse(const std::string& text) const;
  /// Smallest l with every denominator dividing p^l.
  int min_level(const FracPoly& f) const;
  /// Throws LevelTooLow when some denominator does not divide p^l.
  Poly at_level(const FracPoly& f, int l) const;
  /// The embedding of level l into level l + 1: y_i -> y_i^p.
  Poly raise(const Poly& f) const;
  Ideal ideal(int l, const std::vector<std::string>& gens) const;
  LevelCheck check(const std::vector<std::string>& gens, int l) const;

 private:
  std::uint32_t p_;
  std::vector<std::string> vars_;
  RingHandle ring_;
};

/// A finite group acting on k[x_1..x_n]: either the cyclic group Z/n acting
/// diagonally through integer weights, or the group generated by variable
/// permutations.
struct GroupAction {
  enum class Kind { Diagonal, Permutation };
  Kind kind = Kind::Permutation;
  std::vector<int> weights;
  int modulus = 1;
  std::vector<std::vector<int>> perm_generators;

  static GroupAction diagonal(std::vector<int> weights, int modulus);
  static GroupAction permutations(std::vector<std::vector<int>> generators);
  static GroupAction trivial() { return {}; }
  /// The n-th Veronese action: weights all 1 modulo n.
  static GroupAction veronese(int nvars, int n) { return diagonal(std::vector<int>(nvars, 1), n); }
};

struct InvariantRing {
  RingPtr base;  // k[x_1..x_n]
  RingHandle base_ring;
  GroupAction action;
  std::size_t group_order = 1;
  std::vector<std::vector<int>> elements;  // permutation case: all group elements
  std::vector<Poly> generators;            // g_1..g_s in the base ring
  RingHandle presentation;                 // k[t_0..t_{s-1}] / ker

  /// (1/|G|) sum over g of g.f.
  Poly reynolds(const Poly& f) const;
  bool is_invariant(const Poly& f) const;
  /// t_j -> g_j.
  Poly embed(const Poly& f) const;
  /// aR for an ideal a of the presentation.
  Ideal extend(const Ideal& a) const;
  /// f lies in k[g_1..g_s].
  bool in_subalgebra(const Poly& f) const;
  /// Every invariant of degree <= |G| + extra lies in k[g_1..g_s].
  bool verify_generation(int extra = 2) const;

  GroebnerBasis elimination;  // of (t_j - g_j) in k[x, t], x eliminated first
  RingPtr elim_ring;
};

/// Throws BadCharacteristic when |G| is zero in the field.
InvariantRing invariant_ring(const RingPtr& base, const GroupAction& action);

struct TransferReport {
  int grade_invariant = 0;
  int grade_extended = 0;
  int height_invariant = 0;
  int height_extended = 0;
  bool ok() const { return grade_invariant == grade_extended && height_invariant == height_extended; }
};

/// Grade and height of a in the invariant ring against those of aR.
TransferReport invariant_transfer_check(const InvariantRing& P, const Ideal& a);

/// A valuation domain with value group Z^r, ordered by the last nonzero
/// coordinate first. Its primes p_0 = 0 < p_1 < ... < p_r = m form a chain
/// with ht(p_i) = i; finitely generated ideals are principal and keyed by
/// the value of a generator.
class ValuationModel {
 public:
  using Value = std::vector<long>;

  explicit ValuationModel(int rank);
  int rank() const { return r_; }

  int compare(const Value& a, const Value& b) const;
  bool is_positive(const Value& v) const;
  /// k with v in H_k but not H_{k-1}, where H_k is the first k coordinates; 0 for v = 0.
  int level(const Value& v) const;
  /// An element of positive value v lies in p_i iff i >= r - level(v) + 1.
  bool prime_contains(int i, const Value& v) const;
  int height_principal(const Value& v) const;
  /// K.grade of a nonzero proper ideal is 1, of the zero ideal 0.
  int kgrade_principal(const Value& v) const;
  int kgrade_prime(int i) const { return i == 0 ? 0 : 1; }
  /// Heights of the weakly associated primes of R/xR for v(x) = v.
  std::vector<int> weakly_associated_heights(const Value& v) const;
  /// Positive values with coordinates in [-box, box].
  std::vector<Value> sample_values(int box = 1) const;

  struct Conditions {
    bool ideals = false;
    bool primes = false;
    bool glaz = false;
    bool fg = false;
    bool dim_at_most_one = false;
    bool wb = false;
    bool max = false;
    std::vector<bool> as_list() const { return {ideals, primes, glaz, fg, dim_at_most_one, wb, max}; }
    bool all_equal() const;
  };
  Conditions evaluate() const;

 private:
  int r_;
};

}  // namespace gradecm
