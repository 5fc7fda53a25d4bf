#pragma once

// Complexes of finite free modules over a presented ring, Koszul complexes,
// cohomology nonvanishing tests, free resolutions and Ext modules. All
// computations are lifted to the ambient polynomial ring.

#include <cstdint>
#include <optional>
#include <vector>

#include "gradecm/ringpres.hpp"

namespace gradecm {

class NotAComplex : public std::logic_error {
 public:
  NotAComplex() : std::logic_error("consecutive differentials do not compose to zero") {}
};

/// A map R^cols -> R^rows stored column by column; column j is a module
/// element with components 1..rows.
struct Matrix {
  RingPtr ring;
  std::uint32_t rows = 0;
  std::vector<Poly> cols;

  std::uint32_t ncols() const { return static_cast<std::uint32_t>(cols.size()); }
  Poly entry(std::uint32_t i, std::uint32_t j) const { return cols[j].component(i + 1); }
  Matrix transpose() const;
  /// Image of a module element with components 1..ncols.
  Poly apply(const Poly& v) const;
  Matrix operator*(const Matrix& o) const;
  bool is_zero_mod(const GroebnerBasis& relations) const;
  static Matrix zero(RingPtr ring, std::uint32_t rows, std::uint32_t cols);
};

/// Homological indexing: C_0 <- C_1 <- ... <- C_n with d[i] : C_{i+1} -> C_i.
struct FreeComplex {
  RingHandle ring;
  std::vector<std::uint32_t> ranks;
  std::vector<Matrix> d;

  int length() const { return static_cast<int>(ranks.size()) - 1; }
  /// Throws NotAComplex unless d[i] d[i+1] = 0 over R.
  void check() const;
};

/// Index subsets of {0..r-1} of size i in the order used for the basis of
/// C_i of a Koszul complex (lexicographic on sorted elements), as bitmasks.
std::vector<std::uint32_t> koszul_basis(std::uint32_t r, std::uint32_t i);

/// Exterior-algebra Koszul complex on x: rank of C_i is binom(r, i), and
/// d(e_J) = sum_k (-1)^k x_{j_k} e_{J - j_k}. Empty x gives 0 -> R -> 0.
FreeComplex koszul_complex(const RingHandle& R, const std::vector<Poly>& x);

/// H = ker(out (x) M) / im(in (x) M) for maps M^a -> M^b -> M^c.
struct Subquotient {
  RingHandle ring;
  std::uint32_t block = 0;      // b
  std::uint32_t beta = 0;       // rank of M's cover
  std::vector<Poly> kernel;     // generators in S^(b*beta)
  std::vector<Poly> image;      // im(in) + N^b, generating the denominator
  GroebnerBasis image_gb;
};

Subquotient subquotient(const Matrix* in, const Matrix* out, std::uint32_t b, const PresentedModule& M);

struct CohomologyVerdict {
  int index = 0;
  bool nonvanishing = false;
  std::optional<Poly> witness;
};

/// Decide whether a subquotient is nonzero; the witness is the kernel
/// generator of smallest degree that does not reduce into the image.
CohomologyVerdict nonvanishing(const Subquotient& h, int index);

/// H^i(Hom(C, M)) = ker(d[i]^T) / im(d[i-1]^T) on M^{rank C_i}.
CohomologyVerdict cohomology_nonvanishing(const FreeComplex& C, const PresentedModule& M, int i);
/// H_i(C (x) M) = ker(d[i-1]) / im(d[i]).
CohomologyVerdict homology_nonvanishing(const FreeComplex& C, const PresentedModule& M, int i);

/// The subquotient module itself, presented as R^k / relations.
PresentedModule as_module(const Subquotient& h);

/// Free resolution F_0 <- F_1 <- ... of M over its ring, up to `length`
/// steps (default: number of ambient variables). Each step keeps a pruned
/// generating set of syzygies; the complex stops early at a zero module.
FreeComplex free_resolution(const PresentedModule& M, int length = -1);

/// Ext^i_R(N, M) as a presented module.
PresentedModule ext_module(int i, const PresentedModule& N, const PresentedModule& M);
/// Ext^i_R(N, M) from a given resolution of N.
PresentedModule ext_module(const FreeComplex& resolution, int i, const PresentedModule& M);
/// Nonvanishing of Ext^i_R(N, M) computed from a given resolution of N.
CohomologyVerdict ext_nonvanishing(const FreeComplex& resolution, const PresentedModule& M, int i);

/// Image of a subquotient element in terms of the block structure: the
/// vector of M-coordinates for block j.
std::vector<Poly> split_blocks(const Poly& v, std::uint32_t blocks, std::uint32_t beta);
Poly join_blocks(const std::vector<Poly>& parts, std::uint32_t beta);

}  // namespace gradecm
