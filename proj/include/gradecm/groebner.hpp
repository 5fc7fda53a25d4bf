#pragma once

// Buchberger engine for ideals and for submodules of free modules.

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <vector>

#include "gradecm/polyring.hpp"

namespace gradecm {

class BudgetExceeded : public std::runtime_error {
 public:
  BudgetExceeded() : std::runtime_error("Groebner step budget exceeded") {}
};

class ZeroColonDivisor : public std::invalid_argument {
 public:
  ZeroColonDivisor() : std::invalid_argument("colon by the zero element") {}
};

/// Reduction-step budget used when GbOptions::budget is left at 0.
void set_default_budget(std::size_t steps);
std::size_t default_budget();

struct GbOptions {
  std::size_t budget = 0;  // 0: use default_budget()
  /// Record, for each basis element, its expression in the input generators.
  bool track = false;
};

/// A Groebner basis in the order of `ring`. When built with tracking,
/// `reps[k]` is a module element with component i+1 holding the coefficient
/// of input generator i, so that elems[k] = sum_i reps[k]_i * input_i.
struct GroebnerBasis {
  RingPtr ring;
  std::vector<Poly> elems;
  std::vector<Poly> reps;
  std::size_t ninputs = 0;
  bool reduced = false;

  bool is_unit() const;  // contains a nonzero constant ring element
  bool tracked() const { return !reps.empty() || elems.empty(); }
};

GroebnerBasis groebner_basis(const std::vector<Poly>& gens, const GbOptions& opts = {});
/// Buchberger run seeded with an existing basis; pairs among `gb` are not
/// revisited. Tracking is not available here.
GroebnerBasis extend_groebner(const GroebnerBasis& gb, const std::vector<Poly>& more,
                              const GbOptions& opts = {});

/// Fully reduced remainder of f modulo gb.
Poly normal_form(const Poly& f, const GroebnerBasis& gb);
bool reduces_to_zero(const Poly& f, const GroebnerBasis& gb);

struct Division {
  Poly remainder;
  std::vector<Poly> quotients;  // one ring element per basis element
};
Division divide(const Poly& f, const GroebnerBasis& gb);

/// S-polynomial of two elements with equal leading component.
Poly s_polynomial(const Poly& f, const Poly& g);

/// Generators of the syzygy module of `gens`: each result s is a module
/// element with sum_i s_{i+1} * gens[i] = 0. Built from the S-pair
/// relations of a tracked Buchberger run (Schreyer) plus the relations
/// expressing the inputs through the basis. With `minimize` the result is
/// passed through prune_generators.
std::vector<Poly> syzygies(const std::vector<Poly>& gens, bool minimize = true,
                           const GbOptions& opts = {});

/// Express f as sum_i c_i * gens[i]; nullopt when f is not in the span.
std::optional<std::vector<Poly>> lift(const Poly& f, const std::vector<Poly>& gens);

/// Drop zero and duplicate generators and those lying in the span of the
/// others (scanned by increasing degree), which yields a minimal generating
/// set for graded input.
std::vector<Poly> prune_generators(const std::vector<Poly>& gens);

/// Exact quotient f / g; throws std::domain_error if g does not divide f.
Poly divide_exact(const Poly& f, const Poly& g);

// Ideal operations on generator lists of a single polynomial ring.
std::vector<Poly> ideal_intersection(const std::vector<Poly>& a, const std::vector<Poly>& b);
std::vector<Poly> ideal_quotient(const std::vector<Poly>& a, const Poly& f);
/// Module colon (N :_S v) = { h : h*v in N } for a module element v.
std::vector<Poly> module_colon(const std::vector<Poly>& submodule, const Poly& v);

struct Saturation {
  std::vector<Poly> gens;
  int steps = 0;  // k with (a : f^k) = (a : f^{k+1})
};
Saturation saturate(const std::vector<Poly>& a, const Poly& f);
bool in_radical(const Poly& f, const std::vector<Poly>& a);

bool same_span(const std::vector<Poly>& a, const std::vector<Poly>& b);
bool span_contains(const GroebnerBasis& gb, const std::vector<Poly>& gens);

}  // namespace gradecm
