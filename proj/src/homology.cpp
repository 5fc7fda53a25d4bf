#include "gradecm/homology.hpp"

#include <algorithm>
#include <bit>

namespace gradecm {

namespace {

// Column of a matrix placed in slot k of each beta-block: e_i -> e_{i*beta+k+1}.
Poly expand(const Poly& col, std::uint32_t beta, std::uint32_t k) {
  std::vector<Term> t = col.terms();
  for (auto& x : t) x.m.comp = (x.m.comp - 1) * beta + k + 1;
  return Poly::from_terms(col.ring(), std::move(t));
}

// Keep the components 1..m.
Poly truncate(const Poly& v, std::uint32_t m) {
  std::vector<Term> t;
  for (const auto& x : v.terms())
    if (x.m.comp >= 1 && x.m.comp <= m) t.push_back(x);
  return Poly::from_terms(v.ring(), std::move(t));
}

// Relations of M placed into each of `blocks` copies of its cover.
std::vector<Poly> block_relations(const std::vector<Poly>& rel, std::uint32_t blocks, std::uint32_t beta) {
  std::vector<Poly> out;
  for (std::uint32_t j = 0; j < blocks; ++j)
    for (const auto& r : rel) out.push_back(r.shift_components(static_cast<std::int64_t>(j) * beta));
  return out;
}

// Generators of { v in S^m : sum v_i cols_i in span(extra) }.
std::vector<Poly> kernel_of(const std::vector<Poly>& cols, const std::vector<Poly>& extra, std::uint32_t m) {
  std::vector<Poly> gens = cols;
  gens.insert(gens.end(), extra.begin(), extra.end());
  std::vector<Poly> out;
  for (const auto& s : syzygies(gens, false)) {
    Poly p = truncate(s, m);
    if (!p.is_zero()) out.push_back(std::move(p));
  }
  return out;
}

// Minimal-by-degree subset of gens generating the same module modulo extra.
std::vector<Poly> prune_mod(const std::vector<Poly>& gens, const std::vector<Poly>& extra) {
  std::vector<Poly> cand;
  for (const auto& g : gens)
    if (!g.is_zero()) cand.push_back(g.monic());
  if (cand.empty()) return cand;
  const PolyRing& R = *cand.front().ring();
  std::stable_sort(cand.begin(), cand.end(), [&](const Poly& a, const Poly& b) {
    int da = a.total_degree(), db = b.total_degree();
    if (da != db) return da < db;
    if (a.size() != b.size()) return a.size() < b.size();
    return R.compare(a.leading_monomial(), b.leading_monomial()) < 0;
  });
  GroebnerBasis gb = groebner_basis(extra);
  std::vector<Poly> kept;
  for (const auto& c : cand) {
    if (reduces_to_zero(c, gb)) continue;
    kept.push_back(c);
    gb = extend_groebner(gb, {c});
  }
  return kept;
}

std::vector<Poly> ideal_times_basis(const RingHandle& R, std::uint32_t rank) {
  std::vector<Poly> out;
  for (const auto& g : R->relations())
    for (std::uint32_t j = 1; j <= rank; ++j) out.push_back(g.shift_components(j));
  return out;
}

}  // namespace

// ------------------------------------------------------------------ Matrix

Matrix Matrix::zero(RingPtr ring, std::uint32_t rows, std::uint32_t cols) {
  Matrix m{ring, rows, {}};
  m.cols.assign(cols, Poly(ring));
  return m;
}

Matrix Matrix::transpose() const {
  Matrix t = zero(ring, ncols(), rows);
  for (std::uint32_t j = 0; j < ncols(); ++j)
    for (const auto& x : cols[j].terms()) {
      Term y = x;
      y.m.comp = j + 1;
      t.cols[x.m.comp - 1] += Poly::monomial(ring, y.m, y.c);
    }
  return t;
}

Poly Matrix::apply(const Poly& v) const {
  Poly out(ring);
  for (std::uint32_t j = 0; j < ncols(); ++j) {
    Poly c = v.component(j + 1);
    if (!c.is_zero()) out += c * cols[j];
  }
  return out;
}

Matrix Matrix::operator*(const Matrix& o) const {
  Matrix m{ring, rows, {}};
  for (const auto& c : o.cols) m.cols.push_back(apply(c));
  return m;
}

bool Matrix::is_zero_mod(const GroebnerBasis& relations) const {
  return std::all_of(cols.begin(), cols.end(), [&](const Poly& c) { return reduces_to_zero(c, relations); });
}

void FreeComplex::check() const {
  for (std::size_t i = 0; i + 1 < d.size(); ++i)
    if (!(d[i] * d[i + 1]).is_zero_mod(ring->gb())) throw NotAComplex();
}

// ----------------------------------------------------------------- Koszul

std::vector<std::uint32_t> koszul_basis(std::uint32_t r, std::uint32_t i) {
  std::vector<std::uint32_t> v;
  for (std::uint32_t s = 0; s < (1u << r); ++s)
    if (static_cast<std::uint32_t>(std::popcount(s)) == i) v.push_back(s);
  // Lexicographic on the sorted element lists: the set holding the lowest
  // differing element comes first.
  std::sort(v.begin(), v.end(), [](std::uint32_t a, std::uint32_t b) {
    std::uint32_t diff = a ^ b;
    return (a & diff & (~diff + 1)) != 0;
  });
  return v;
}

FreeComplex koszul_complex(const RingHandle& R, const std::vector<Poly>& x) {
  const auto r = static_cast<std::uint32_t>(x.size());
  const RingPtr& A = R->ambient();
  std::vector<std::vector<std::uint32_t>> by_size;
  for (std::uint32_t i = 0; i <= r; ++i) by_size.push_back(koszul_basis(r, i));
  FreeComplex C;
  C.ring = R;
  for (std::uint32_t i = 0; i <= r; ++i) C.ranks.push_back(static_cast<std::uint32_t>(by_size[i].size()));
  for (std::uint32_t i = 0; i < r; ++i) {
    Matrix m = Matrix::zero(A, C.ranks[i], C.ranks[i + 1]);
    const auto& lower = by_size[i];
    for (std::uint32_t c = 0; c < by_size[i + 1].size(); ++c) {
      std::uint32_t J = by_size[i + 1][c];
      int k = 0;
      for (std::uint32_t j = 0; j < r; ++j) {
        if (!(J & (1u << j))) continue;
        std::uint32_t rest = J & ~(1u << j);
        auto row = static_cast<std::uint32_t>(std::find(lower.begin(), lower.end(), rest) - lower.begin());
        Poly term = R->reduce(x[j]).shift_components(row + 1);
        m.cols[c] += (k % 2 == 0) ? term : -term;
        ++k;
      }
    }
    C.d.push_back(std::move(m));
  }
  return C;
}

// ------------------------------------------------------------ subquotients

Subquotient subquotient(const Matrix* in, const Matrix* out, std::uint32_t b, const PresentedModule& M) {
  Subquotient h;
  h.ring = M.ring;
  h.block = b;
  h.beta = M.rank;
  const std::uint32_t beta = M.rank;
  const std::uint32_t m = b * beta;
  const RingPtr& A = M.ring->ambient();
  std::vector<Poly> N = M.full_relations();

  if (m == 0) {
    h.image_gb = groebner_basis({});
    h.image_gb.ring = A;
    return h;
  }
  if (!out || out->ncols() == 0 || out->rows == 0) {
    for (std::uint32_t c = 1; c <= m; ++c) h.kernel.push_back(Poly::unit_vector(A, c));
  } else {
    std::vector<Poly> cols;
    for (std::uint32_t j = 0; j < b; ++j)
      for (std::uint32_t k = 0; k < beta; ++k) cols.push_back(expand(out->cols[j], beta, k));
    std::vector<Poly> extra = block_relations(N, out->rows, beta);
    // Unknowns occupy components 1..m; syzygies live in S^(m + |extra|).
    h.kernel = prune_generators(kernel_of(cols, extra, m));
  }
  if (in)
    for (const auto& col : in->cols)
      for (std::uint32_t k = 0; k < beta; ++k) {
        Poly v = expand(col, beta, k);
        if (!v.is_zero()) h.image.push_back(std::move(v));
      }
  for (auto& r : block_relations(N, b, beta)) h.image.push_back(std::move(r));
  h.image_gb = groebner_basis(h.image);
  h.image_gb.ring = A;
  return h;
}

CohomologyVerdict nonvanishing(const Subquotient& h, int index) {
  CohomologyVerdict v;
  v.index = index;
  std::vector<const Poly*> order;
  for (const auto& k : h.kernel) order.push_back(&k);
  std::stable_sort(order.begin(), order.end(),
                   [](const Poly* a, const Poly* b) { return a->total_degree() < b->total_degree(); });
  for (const Poly* k : order)
    if (!reduces_to_zero(*k, h.image_gb)) {
      v.nonvanishing = true;
      v.witness = *k;
      break;
    }
  return v;
}

CohomologyVerdict cohomology_nonvanishing(const FreeComplex& C, const PresentedModule& M, int i) {
  if (i < 0 || i > C.length()) return {i, false, std::nullopt};
  std::optional<Matrix> in, out;
  if (i >= 1) in = C.d[i - 1].transpose();
  if (i < static_cast<int>(C.d.size())) out = C.d[i].transpose();
  Subquotient h = subquotient(in ? &*in : nullptr, out ? &*out : nullptr, C.ranks[i], M);
  return nonvanishing(h, i);
}

CohomologyVerdict homology_nonvanishing(const FreeComplex& C, const PresentedModule& M, int i) {
  if (i < 0 || i > C.length()) return {i, false, std::nullopt};
  const Matrix* out = i >= 1 ? &C.d[i - 1] : nullptr;
  const Matrix* in = i < static_cast<int>(C.d.size()) ? &C.d[i] : nullptr;
  return nonvanishing(subquotient(in, out, C.ranks[i], M), i);
}

PresentedModule as_module(const Subquotient& h) {
  const auto k = static_cast<std::uint32_t>(h.kernel.size());
  PresentedModule P = PresentedModule::free(h.ring, k);
  if (k == 0) return P;
  P.relations = prune_mod(kernel_of(h.kernel, h.image, k), ideal_times_basis(h.ring, k));
  return P;
}

// -------------------------------------------------------------- resolution

FreeComplex free_resolution(const PresentedModule& M, int length) {
  const RingHandle& R = M.ring;
  const RingPtr& A = R->ambient();
  if (length < 0) length = R->nvars();
  FreeComplex F;
  F.ring = R;
  F.ranks.push_back(M.rank);
  if (M.rank == 0 || length == 0) return F;

  std::vector<Poly> cols;
  for (const auto& r : M.relations) cols.push_back(R->reduce(r));
  cols = prune_mod(cols, ideal_times_basis(R, M.rank));
  std::uint32_t rows = M.rank;
  while (!cols.empty()) {
    Matrix d{A, rows, cols};
    F.d.push_back(d);
    const auto n = static_cast<std::uint32_t>(cols.size());
    F.ranks.push_back(n);
    if (F.length() >= length) break;
    std::vector<Poly> next = kernel_of(cols, ideal_times_basis(R, rows), n);
    for (auto& v : next) v = R->reduce(v);
    cols = prune_mod(next, ideal_times_basis(R, n));
    rows = n;
  }
  return F;
}

PresentedModule ext_module(const FreeComplex& resolution, int i, const PresentedModule& M) {
  if (i < 0 || i > resolution.length()) return PresentedModule::free(M.ring, 0);
  std::optional<Matrix> in, out;
  if (i >= 1) in = resolution.d[i - 1].transpose();
  if (i < static_cast<int>(resolution.d.size())) out = resolution.d[i].transpose();
  return as_module(subquotient(in ? &*in : nullptr, out ? &*out : nullptr, resolution.ranks[i], M));
}

PresentedModule ext_module(int i, const PresentedModule& N, const PresentedModule& M) {
  return ext_module(free_resolution(N, i + 1), i, M);
}

CohomologyVerdict ext_nonvanishing(const FreeComplex& resolution, const PresentedModule& M, int i) {
  return cohomology_nonvanishing(resolution, M, i);
}

std::vector<Poly> split_blocks(const Poly& v, std::uint32_t blocks, std::uint32_t beta) {
  std::vector<std::vector<Term>> parts(blocks);
  for (const auto& t : v.terms()) {
    if (t.m.comp == 0) continue;
    std::uint32_t j = (t.m.comp - 1) / beta;
    if (j >= blocks) continue;
    Term u = t;
    u.m.comp = t.m.comp - j * beta;
    parts[j].push_back(u);
  }
  std::vector<Poly> out;
  for (auto& p : parts) out.push_back(Poly::from_terms(v.ring(), std::move(p)));
  return out;
}

Poly join_blocks(const std::vector<Poly>& parts, std::uint32_t beta) {
  Poly out;
  for (std::size_t j = 0; j < parts.size(); ++j) {
    Poly s = parts[j].shift_components(static_cast<std::int64_t>(j) * beta);
    out = out.ring() ? out + s : s;
  }
  return out;
}

}  // namespace gradecm
