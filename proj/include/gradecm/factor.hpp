#pragma once

// Polynomial factorization over QQ and F_p. Univariate: squarefree
// decomposition, then Cantor-Zassenhaus mod p and Zassenhaus with Hensel
// lifting over the integers. Multivariate: Kronecker substitution followed
// by recombination of the univariate factors through trial division.

#include <cstdint>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "gradecm/polyring.hpp"

namespace gradecm {

struct Factor {
  Poly f;  // monic in the ring order
  int multiplicity = 1;
};

struct Factorization {
  Scalar unit;
  std::vector<Factor> factors;
  /// False when recombination hit its candidate cap; the listed factors then
  /// multiply to f but the last one may be reducible.
  bool certified = true;
};

/// Throws std::invalid_argument on the zero polynomial or module elements.
Factorization factor(const Poly& f);
bool is_irreducible(const Poly& f);

/// Maximum number of recombination candidates tried per factorization.
inline constexpr std::size_t kRecombinationCap = 1u << 16;

namespace univariate {

/// Coefficients from the constant term upwards, no trailing zeros.
using ZPoly = std::vector<mpz_class>;
using FpPoly = std::vector<std::uint64_t>;

/// Irreducible factors of a nonzero polynomial mod p, monic, with
/// multiplicities; the leading coefficient is dropped.
std::vector<std::pair<FpPoly, int>> factor_mod_p(const FpPoly& f, std::uint64_t p);

/// Irreducible factors over Z of a primitive polynomial of positive degree,
/// each primitive with positive leading coefficient. Sets `certified` false
/// when the recombination cap was reached.
std::vector<std::pair<ZPoly, int>> factor_over_z(const ZPoly& f, bool& certified);

}  // namespace univariate

}  // namespace gradecm
