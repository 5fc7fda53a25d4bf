#pragma once

// Degree-by-degree linear algebra over the base field for homogeneous
// data. Uses nothing from the Groebner engine: vectors are polynomials and
// rank is computed by elimination on leading monomials.

#include <map>
#include <vector>

#include "gradecm/polyring.hpp"

namespace dense {

using gradecm::Monomial;
using gradecm::Poly;
using gradecm::RingPtr;

inline void monomials_rec(int n, int d, int i, Monomial& cur, std::vector<Monomial>& out) {
  if (i == n - 1) {
    cur.e[i] = static_cast<std::uint16_t>(d);
    Monomial m = cur;
    m.deg = 0;
    for (int k = 0; k < n; ++k) m.deg += m.e[k];
    out.push_back(m);
    cur.e[i] = 0;
    return;
  }
  for (int a = d; a >= 0; --a) {
    cur.e[i] = static_cast<std::uint16_t>(a);
    monomials_rec(n, d - a, i + 1, cur, out);
  }
  cur.e[i] = 0;
}

/// All monomials of degree d in n variables.
inline std::vector<Monomial> monomials(int n, int d) {
  std::vector<Monomial> out;
  if (d < 0) return out;
  if (n == 0) {
    if (d == 0) out.push_back(Monomial::one());
    return out;
  }
  Monomial cur;
  monomials_rec(n, d, 0, cur, out);
  return out;
}

/// Echelon form keyed by pivot monomial.
class Echelon {
 public:
  /// Returns true when v was independent of the vectors already added.
  bool add(Poly v) {
    reduce(v);
    if (v.is_zero()) return false;
    v = v.monic();
    rows_.emplace(key(v.leading_monomial()), v);
    return true;
  }
  bool contains(Poly v) const {
    reduce(v);
    return v.is_zero();
  }
  std::size_t rank() const { return rows_.size(); }

 private:
  static std::vector<std::uint32_t> key(const Monomial& m) {
    std::vector<std::uint32_t> k(m.e.begin(), m.e.end());
    k.push_back(m.comp);
    return k;
  }
  void reduce(Poly& v) const {
    // Eliminate every term that hits a pivot, scanning from the top.
    std::size_t pos = 0;
    while (pos < v.size()) {
      const auto& t = v.terms()[pos];
      auto it = rows_.find(key(t.m));
      if (it == rows_.end()) {
        ++pos;
        continue;
      }
      v -= it->second.scaled(t.c);
    }
  }
  std::map<std::vector<std::uint32_t>, Poly> rows_;
};

inline std::size_t rank(const std::vector<Poly>& vs) {
  Echelon e;
  for (const auto& v : vs) e.add(v);
  return e.rank();
}

/// Degree of a homogeneous element (components carry degree 0).
inline int degree(const Poly& g) { return g.total_degree(); }

/// Spanning set of the degree-d part of the submodule generated by
/// homogeneous `gens`.
inline std::vector<Poly> span_in_degree(const RingPtr& S, const std::vector<Poly>& gens, int d) {
  std::vector<Poly> out;
  const gradecm::Scalar one(S->field(), 1);
  for (const auto& g : gens) {
    if (g.is_zero()) continue;
    for (const auto& m : monomials(S->nvars(), d - degree(g))) out.push_back(g.times_term(m, one));
  }
  return out;
}

/// Basis of the degree-d part of S^b.
inline std::vector<Poly> free_basis(const RingPtr& S, std::uint32_t b, int d) {
  std::vector<Poly> out;
  const gradecm::Scalar one(S->field(), 1);
  for (std::uint32_t j = 1; j <= b; ++j)
    for (const auto& m : monomials(S->nvars(), d)) {
      Monomial u = m;
      u.comp = j;
      out.push_back(Poly::monomial(S, u, one));
    }
  return out;
}

/// Image of a module element under the map whose columns are `cols`.
inline Poly apply(const std::vector<Poly>& cols, const Poly& v) {
  Poly out(v.ring());
  for (std::size_t j = 0; j < cols.size(); ++j) {
    Poly c = v.component(static_cast<std::uint32_t>(j + 1));
    if (!c.is_zero()) out += c * cols[j];
  }
  return out;
}

/// Ideal generators J placed in each of the components 1..c.
inline std::vector<Poly> spread(const std::vector<Poly>& J, std::uint32_t c) {
  std::vector<Poly> out;
  for (std::uint32_t k = 1; k <= c; ++k)
    for (const auto& g : J) out.push_back(g.shift_components(k));
  return out;
}

/// dim_k of the degree-t part of ker(out) / im(in) on (S/J)^b, where
/// `out` : (S/J)^b -> (S/J)^c raises degree by deg_out and `in` :
/// (S/J)^a -> (S/J)^b raises degree by deg_in (nullptr for zero maps).
inline long subquotient_dim(const RingPtr& S, const std::vector<Poly>* in, int deg_in, const std::vector<Poly>* out,
                            std::uint32_t c, int deg_out, std::uint32_t b, const std::vector<Poly>& J, int t) {
  std::vector<Poly> V = free_basis(S, b, t);
  long kdim = static_cast<long>(V.size());
  if (out) {
    std::vector<Poly> W = span_in_degree(S, spread(J, c), t + deg_out);
    Echelon e;
    for (const auto& w : W) e.add(w);
    std::size_t rw = e.rank();
    for (const auto& v : V) e.add(apply(*out, v));
    kdim -= static_cast<long>(e.rank() - rw);
  }
  Echelon img;
  for (const auto& w : span_in_degree(S, spread(J, b), t)) img.add(w);
  if (in) {
    std::uint32_t a = static_cast<std::uint32_t>(in->size());
    for (const auto& v : free_basis(S, a, t - deg_in)) img.add(apply(*in, v));
  }
  return kdim - static_cast<long>(img.rank());
}

}  // namespace dense
