#pragma once

// Grade of an ideal on a module in its Koszul, Ext, classical, polynomial
// and truncated local-cohomology forms; depth at a prime; Koszul
// transition checks for weak proregularity and the parameter-sequence
// certificate built on them.

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "gradecm/homology.hpp"
#include "gradecm/ringpres.hpp"

namespace gradecm {

class OutsideSupport : public std::domain_error {
 public:
  OutsideSupport() : std::domain_error("prime does not contain the annihilator of the module") {}
};

class WitnessSearchFailed : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

enum class GradeNotion { Koszul, Ext, Classical, PolynomialWitness, HGradeTruncated, CechAlias };

std::string to_string(GradeNotion n);

struct GradeReport {
  GradeNotion notion = GradeNotion::Koszul;
  int value = 0;  // kInfinity for +inf
  /// Koszul/Ext: index of the first nonvanishing module, with a cohomology witness.
  std::optional<int> first_nonvanishing;
  std::optional<Poly> cohomology_witness;
  /// Classical and polynomial grade: the regular sequence found.
  std::vector<Poly> sequence;
  /// Polynomial grade: the ring R[t_1..t_k] the sequence lives in.
  RingHandle witness_ring;
  /// Truncated local-cohomology grade: values for n = 1..n_max and the
  /// first n from which they are constant.
  std::vector<int> levels;
  int stabilization_level = 0;
  bool truncated = false;
  /// Classical grade is a lower bound; exact once it meets the Koszul grade.
  bool exact = true;
};

/// inf{ i : H^i(Hom(K(a), M)) != 0 } on the stored generators of a.
GradeReport koszul_grade(const Ideal& a, const PresentedModule& M);
/// Same value reported under the Cech notion (equal by the comparison
/// theorem for finitely generated ideals); no separate complex is built.
GradeReport cech_grade(const Ideal& a, const PresentedModule& M);
/// inf{ i : Ext^i(R/a, M) != 0 }.
GradeReport ext_grade(const Ideal& a, const PresentedModule& M);

/// Longest weak M-regular sequence found in a candidate pool drawn from a.
GradeReport classical_grade(const Ideal& a, const PresentedModule& M, int depth_bound = 4);
/// A generic weak regular sequence of length K.grade in M[t].
GradeReport polynomial_grade_witness(const Ideal& a, const PresentedModule& M);
/// inf{ i : Ext^i(R/a^n, M) != 0 } for n = 1..n_max.
GradeReport hgrade_truncated(const Ideal& a, const PresentedModule& M, int n_max = 3);

/// Depth of M_p, via annihilators of Ext^i_S(S/p', M) over the ambient ring.
int depth_at_prime(const PrimeWitness& p, const PresentedModule& M);

/// f is a nonzerodivisor on M.
bool is_nonzerodivisor(const Poly& f, const PresentedModule& M);
/// Each element is a nonzerodivisor modulo the previous ones (M = xM allowed).
bool is_weak_regular_sequence(const std::vector<Poly>& x, const PresentedModule& M);

enum class ProregularVerdict { Holds, FailsAtBound, HoldsForROnly };
std::string to_string(ProregularVerdict v);

struct ProregularReport {
  ProregularVerdict verdict = ProregularVerdict::Holds;
  /// Per test module: the m that kills every transition, or -1.
  std::vector<int> levels;
};

/// The transition H_i(K(x^m; M)) -> H_i(K(x^n; M)), e_J -> x_J^{m-n} e_J,
/// is zero for some m in [n, m_max], for every i >= 1 and test module.
ProregularReport weak_proregular_check(const std::vector<Poly>& x, int n, int m_max,
                                       const std::vector<PresentedModule>& test_modules);

struct PrefixVerdict {
  int length = 0;
  int grade = 0;
  bool proregular = false;
  bool ok = false;
};

struct ParameterCertificate {
  std::vector<PrefixVerdict> prefixes;
  bool certified = false;
};

/// Every prefix x_1..x_i has Koszul grade i on R and is weakly proregular.
ParameterCertificate strong_parameter_certificate(const std::vector<Poly>& x, const RingHandle& R, int m_max = 4);

}  // namespace gradecm
