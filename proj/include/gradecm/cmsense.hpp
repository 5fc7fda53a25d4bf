#pragma once

// Cohen-Macaulayness in the sense of a class of ideals, decided over finite
// test families: finitely generated ideals, primes, maximal ideals, the
// Glaz sense, weak Bourbaki (height) unmixedness and the parameter-sequence
// surrogate, plus an audit of the implications between them.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "gradecm/grade.hpp"

namespace gradecm {

enum class Sense { FgIdeals, Primes, Max, Glaz, WB, WBH, HMSurrogate };
std::string to_string(Sense s);
/// Accepts fg, primes, max, glaz, wb, wbh, hm.
Sense parse_sense(const std::string& s);

enum class Verdict { Pass, Fail, Conditional };
std::string to_string(Verdict v);

enum class FamilyTag { User, GeneratedDegree, PrimesOfRing, MaximalSample };
std::string to_string(FamilyTag t);

/// Proper ideals of one ring, deduplicated by their reduced Groebner basis.
struct TestFamily {
  RingHandle ring;
  std::vector<Ideal> ideals;
  std::vector<FamilyTag> tags;  // one per ideal

  /// Adds a proper ideal not already present; returns whether it was added.
  bool add(const Ideal& a, FamilyTag tag);
  std::size_t size() const { return ideals.size(); }
};

struct FamilyOptions {
  int max_gens = 3;
  int max_degree = 2;
  /// Ideals kept in the deterministic sample.
  std::size_t cap = 40;
  unsigned seed = 2024;
};

/// Ideals generated by at most max_gens homogeneous elements of degree at
/// most max_degree with coefficients in {0, 1, -1}: every single element of
/// the pool, then a seeded sample of pairs and triples up to `cap`.
TestFamily generated_family(const RingHandle& R, const FamilyOptions& opt = {});
/// Minimal primes of the family members and of the ring, plus the ideal of the variables.
std::vector<PrimeWitness> family_primes(const TestFamily& fam);

struct Counterexample {
  Ideal ideal;
  int height = 0;
  int grade = 0;
  std::string detail;
};

struct CMReport {
  Sense sense = Sense::FgIdeals;
  Verdict verdict = Verdict::Pass;
  std::optional<Counterexample> counterexample;
  int tested = 0;
  int skipped = 0;
  /// The weak Bourbaki filter compares against an upper bound for mu.
  bool mu_upper_bound = false;
};

/// ht(a) = K.grade(a, R) for every a in the family.
CMReport check_sense_fg(const RingHandle& R, const TestFamily& fam);
/// ht(p) = K.grade(p, R) for every listed prime.
CMReport check_sense_primes(const RingHandle& R, const std::vector<PrimeWitness>& primes);
/// The same test over maximal ideals: the ideal of the variables plus `extra`.
CMReport check_sense_max(const RingHandle& R, const std::vector<PrimeWitness>& extra = {});
/// ht(p) = depth R_p for every listed prime.
CMReport check_sense_glaz(const RingHandle& R, const std::vector<PrimeWitness>& primes);
/// For family ideals with ht(a) >= mu_hat(a): Min(a) = Ass(R/a), or, for the
/// height variant, all associated primes of R/a have the same height.
CMReport check_wb_unmixed(const RingHandle& R, const TestFamily& fam, bool height_variant = false);
/// Sequences from a pool of linear forms, up to the Krull dimension.
std::vector<std::vector<Poly>> default_sequences(const RingHandle& R, std::size_t cap = 24);
/// Every sequence certified as a strong parameter sequence is weakly regular.
CMReport check_hm_surrogate(const RingHandle& R, const std::vector<std::vector<Poly>>& sequences);

struct AuditReport {
  std::map<Sense, CMReport> reports;
  std::vector<std::string> violations;
  bool consistent() const { return violations.empty(); }
};

/// Evaluates every sense on shared families and records any violated
/// implication: primes => glaz => fg => hm, and fg with primes => wb.
AuditReport implication_audit(const RingHandle& R, const TestFamily& fam, const std::vector<PrimeWitness>& primes,
                              const std::vector<std::vector<Poly>>& sequences);
AuditReport implication_audit(const RingHandle& R);

}  // namespace gradecm
