#include "gradecm/ringpres.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <mutex>
#include <random>

#include "gradecm/factor.hpp"
#include "gradecm/homology.hpp"

namespace gradecm {

namespace {

std::mutex g_cache_mutex;

}  // namespace

// ------------------------------------------------------------ PresentedRing

PresentedRing::PresentedRing(RingPtr ambient, GroebnerBasis gb) : ambient_(std::move(ambient)), gb_(std::move(gb)) {
  if (!gb_.ring) gb_.ring = ambient_;
  dim_ = dim_from_gb(gb_);
}

RingHandle PresentedRing::make(RingPtr ambient, std::vector<Poly> relations) {
  std::erase_if(relations, [](const Poly& f) { return f.is_zero(); });
  GroebnerBasis gb = groebner_basis(relations);
  gb.ring = ambient;
  return RingHandle(new PresentedRing(std::move(ambient), std::move(gb)));
}

RingHandle PresentedRing::parse(RingPtr ambient, const std::vector<std::string>& relations) {
  std::vector<Poly> rel;
  for (const auto& r : relations) rel.push_back(parse_poly(ambient, r));
  return make(std::move(ambient), std::move(rel));
}

int PresentedRing::dim() const {
  if (dim_ < 0) throw ZeroRing();
  return dim_;
}

std::string PresentedRing::to_string() const {
  std::string s = field().name() + "[";
  for (int i = 0; i < nvars(); ++i) s += (i ? "," : "") + ambient_->var_name(i);
  s += "]";
  if (!gb_.elems.empty()) {
    s += "/(";
    for (std::size_t i = 0; i < gb_.elems.size(); ++i) s += (i ? ", " : "") + gb_.elems[i].to_string();
    s += ")";
  }
  return s;
}

// -------------------------------------------------------------------- Ideal

Ideal::Ideal(RingHandle ring, std::vector<Poly> gens) : ring_(std::move(ring)) {
  for (auto& g : gens) {
    Poly r = ring_->reduce(g);
    if (!r.is_zero()) gens_.push_back(std::move(r));
  }
  gb_ = extend_groebner(ring_->gb(), gens_);
  if (!gb_.ring) gb_.ring = ring_->ambient();
}

Ideal Ideal::parse(RingHandle ring, const std::vector<std::string>& gens) {
  std::vector<Poly> g;
  for (const auto& s : gens) g.push_back(ring->parse_element(s));
  return Ideal(std::move(ring), std::move(g));
}

Ideal Ideal::unit(RingHandle ring) {
  Poly one(ring->ambient(), 1);
  return Ideal(std::move(ring), {one});
}

Ideal Ideal::maximal_graded(RingHandle ring) {
  std::vector<Poly> v;
  for (int i = 0; i < ring->nvars(); ++i) v.push_back(ring->var(i));
  return Ideal(std::move(ring), std::move(v));
}

bool Ideal::contains(const Ideal& o) const {
  for (const auto& g : o.gens_)
    if (!contains(g)) return false;
  return true;
}

bool Ideal::is_homogeneous() const {
  return std::all_of(gens_.begin(), gens_.end(), [](const Poly& g) { return g.is_homogeneous(); });
}

Ideal Ideal::operator+(const Ideal& o) const {
  std::vector<Poly> g = gens_;
  g.insert(g.end(), o.gens_.begin(), o.gens_.end());
  return Ideal(ring_, std::move(g));
}

Ideal Ideal::operator*(const Ideal& o) const {
  std::vector<Poly> g;
  for (const auto& a : gens_)
    for (const auto& b : o.gens_) g.push_back(ring_->reduce(a * b));
  return Ideal(ring_, prune_generators(g));
}

Ideal Ideal::pow(int n) const {
  Ideal r = unit(ring_);
  for (int i = 0; i < n; ++i) r = r * *this;
  return r;
}

Ideal Ideal::with(const Poly& f) const {
  std::vector<Poly> g = gens_;
  g.push_back(f);
  return Ideal(ring_, std::move(g));
}

std::string Ideal::key() const {
  std::string s;
  for (const auto& g : gb_.elems) s += g.to_string() + ";";
  return s;
}

std::string Ideal::to_string() const {
  std::string s = "(";
  for (std::size_t i = 0; i < gens_.size(); ++i) s += (i ? ", " : "") + gens_[i].to_string();
  return s + ")";
}

Ideal colon(const Ideal& a, const Poly& f) {
  Poly r = a.ring()->reduce(f);
  if (r.is_zero()) throw ZeroColonDivisor();
  return Ideal(a.ring(), ideal_quotient(a.gb().elems, r));
}

Ideal colon(const Ideal& a, const Ideal& b) {
  Ideal r = Ideal::unit(a.ring());
  for (const auto& g : b.gens()) r = intersect(r, colon(a, g));
  return r;
}

Ideal intersect(const Ideal& a, const Ideal& b) {
  if (a.is_unit()) return b;
  if (b.is_unit()) return a;
  return Ideal(a.ring(), ideal_intersection(a.gb().elems, b.gb().elems));
}

IdealSaturation saturate(const Ideal& a, const Poly& f) {
  Poly r = a.ring()->reduce(f);
  if (r.is_zero()) throw ZeroColonDivisor();
  auto s = saturate(a.gb().elems, r);
  return {Ideal(a.ring(), s.gens), s.steps};
}

bool radical_contains(const Ideal& a, const Poly& f) { return in_radical(f, a.gb().elems); }

int mu_hat(const Ideal& a) {
  std::vector<Poly> g = a.gens();
  for (std::size_t i = g.size(); i-- > 0;) {
    std::vector<Poly> others = a.ring()->relations();
    for (std::size_t j = 0; j < g.size(); ++j)
      if (j != i) others.push_back(g[j]);
    if (reduces_to_zero(g[i], groebner_basis(others))) g.erase(g.begin() + static_cast<long>(i));
  }
  return static_cast<int>(g.size());
}

// --------------------------------------------------------- PresentedModule

PresentedModule PresentedModule::free(RingHandle ring, std::uint32_t rank) {
  PresentedModule M;
  M.ring = std::move(ring);
  M.rank = rank;
  return M;
}

PresentedModule PresentedModule::quotient(const Ideal& a) {
  PresentedModule M = free(a.ring(), 1);
  for (const auto& g : a.gens()) M.relations.push_back(g.shift_components(1));
  return M;
}

std::vector<Poly> PresentedModule::full_relations() const {
  std::vector<Poly> out;
  for (const auto& r : relations)
    if (!r.is_zero()) out.push_back(r);
  for (const auto& g : ring->relations())
    for (std::uint32_t j = 1; j <= rank; ++j) out.push_back(g.shift_components(j));
  return out;
}

const GroebnerBasis& PresentedModule::relation_gb() const {
  {
    std::lock_guard<std::mutex> lock(g_cache_mutex);
    if (gb_cache_) return *gb_cache_;
  }
  auto gb = std::make_shared<const GroebnerBasis>(groebner_basis(full_relations()));
  std::lock_guard<std::mutex> lock(g_cache_mutex);
  if (!gb_cache_) gb_cache_ = gb;
  return *gb_cache_;
}

bool PresentedModule::is_zero() const {
  if (rank == 0) return true;
  const GroebnerBasis& gb = relation_gb();
  for (std::uint32_t j = 1; j <= rank; ++j)
    if (!reduces_to_zero(Poly::unit_vector(ring->ambient(), j), gb)) return false;
  return true;
}

PresentedModule PresentedModule::base_change(const RingHandle& target) const {
  PresentedModule M = free(target, rank);
  M.relations = relations;
  return M;
}

PresentedModule PresentedModule::mod_ideal(const Ideal& a) const {
  PresentedModule M = free(ring, rank);
  M.relations = relations;
  for (const auto& g : a.gens())
    for (std::uint32_t j = 1; j <= rank; ++j) M.relations.push_back(g.shift_components(j));
  return M;
}

// ---------------------------------------------------------------- dimension

namespace {

std::vector<std::uint32_t> leading_masks(const GroebnerBasis& gb, int n) {
  std::vector<std::uint32_t> masks;
  for (const auto& g : gb.elems) masks.push_back(support_mask(g.leading_monomial(), n));
  return masks;
}

// Largest U with no leading monomial supported inside U.
std::uint32_t best_independent(const std::vector<std::uint32_t>& masks, int n) {
  for (int k = n; k >= 0; --k) {
    if (k == 0) return 0;
    // Gosper's hack over k-subsets in increasing numeric order.
    std::uint64_t s = (1ull << k) - 1;
    while (s < (1ull << n)) {
      auto u = static_cast<std::uint32_t>(s);
      bool ok = true;
      for (auto m : masks)
        if ((m & ~u) == 0) {
          ok = false;
          break;
        }
      if (ok) return u;
      std::uint64_t c = s & (~s + 1), r = s + c;
      s = (((r ^ s) >> 2) / c) | r;
    }
  }
  return 0;
}

}  // namespace

int dim_from_gb(const GroebnerBasis& gb) {
  if (gb.is_unit()) return -1;
  if (!gb.ring) return -1;
  const int n = gb.ring->nvars();
  if (gb.elems.empty()) return n;
  return std::popcount(best_independent(leading_masks(gb, n), n));
}

std::vector<int> max_independent_set(const GroebnerBasis& gb) {
  std::vector<int> out;
  if (gb.is_unit() || !gb.ring) return out;
  const int n = gb.ring->nvars();
  std::uint32_t u = gb.elems.empty() ? ((n >= 32) ? ~0u : ((1u << n) - 1)) : best_independent(leading_masks(gb, n), n);
  for (int i = 0; i < n; ++i)
    if (u & (1u << i)) out.push_back(i);
  return out;
}

int krull_dim(const RingHandle& R) { return R->dim(); }

// ----------------------------------------------------------- minimal primes

namespace {

using PrimeList = std::vector<PrimeWitness>;

std::map<std::string, std::vector<std::pair<std::vector<Poly>, bool>>> g_prime_cache;

RingHandle polynomial_handle(const RingPtr& S) { return PresentedRing::make(S); }

bool all_monomial(const std::vector<Poly>& gb) {
  return std::all_of(gb.begin(), gb.end(), [](const Poly& g) { return g.is_monomial(); });
}

// Minimal vertex covers of the hypergraph of supports: the minimal primes
// of the radical of a monomial ideal.
PrimeList monomial_primes(const RingHandle& S, const std::vector<Poly>& gb) {
  const int n = S->nvars();
  std::vector<std::uint32_t> edges;
  for (const auto& g : gb) edges.push_back(support_mask(g.leading_monomial(), n));
  std::vector<std::uint32_t> covers;
  // Branch on the first uncovered edge.
  std::vector<std::uint32_t> stack{0};
  while (!stack.empty()) {
    std::uint32_t c = stack.back();
    stack.pop_back();
    auto it = std::find_if(edges.begin(), edges.end(), [&](std::uint32_t e) { return (e & c) == 0; });
    if (it == edges.end()) {
      covers.push_back(c);
      continue;
    }
    for (int i = 0; i < n; ++i)
      if (*it & (1u << i)) stack.push_back(c | (1u << i));
  }
  std::sort(covers.begin(), covers.end());
  covers.erase(std::unique(covers.begin(), covers.end()), covers.end());
  PrimeList out;
  for (auto c : covers) {
    bool minimal = true;
    for (auto d : covers)
      if (d != c && (d & c) == d) minimal = false;
    if (!minimal) continue;
    std::vector<Poly> vars;
    for (int i = 0; i < n; ++i)
      if (c & (1u << i)) vars.push_back(S->var(i));
    out.push_back({Ideal(S, vars), true});
  }
  return out;
}

struct BlockView {
  RingPtr T;              // variables X' (eliminated block), then U, then extras
  std::vector<int> to_T;  // S variable -> T variable
  std::vector<int> to_S;  // T variable -> S variable (-1 for extras)
  int nblock = 0;
};

BlockView block_ring(const RingPtr& S, const std::vector<int>& elim, const std::vector<std::string>& extra) {
  BlockView v;
  const int n = S->nvars();
  std::vector<bool> in_elim(n, false);
  for (int i : elim) in_elim[i] = true;
  std::vector<std::string> names;
  v.to_T.assign(n, -1);
  for (int i = 0; i < n; ++i)
    if (in_elim[i]) {
      v.to_T[i] = static_cast<int>(names.size());
      v.to_S.push_back(i);
      names.push_back(S->var_name(i));
    }
  v.nblock = static_cast<int>(names.size());
  for (int i = 0; i < n; ++i)
    if (!in_elim[i]) {
      v.to_T[i] = static_cast<int>(names.size());
      v.to_S.push_back(i);
      names.push_back(S->var_name(i));
    }
  for (const auto& e : extra) {
    v.to_S.push_back(-1);
    names.push_back(e);
  }
  v.T = PolyRing::make(S->field(), names, MonomialOrder::elimination(v.nblock));
  return v;
}

bool free_of_block(const Poly& g, int nblock) {
  for (const auto& t : g.terms())
    for (int i = 0; i < nblock; ++i)
      if (t.m.e[i]) return false;
  return true;
}

// Coefficient in k[U] of the leading X'-monomial of g (block order).
Poly block_leading_coeff(const Poly& g, int nblock) {
  const Monomial& lm = g.leading_monomial();
  std::vector<Term> out;
  for (const auto& t : g.terms()) {
    bool same = true;
    for (int i = 0; i < nblock && same; ++i) same = t.m.e[i] == lm.e[i];
    if (!same) continue;
    Term u = t;
    for (int i = 0; i < nblock; ++i) {
      u.m.deg -= u.m.e[i];
      u.m.e[i] = 0;
    }
    out.push_back(u);
  }
  return Poly::from_terms(g.ring(), std::move(out));
}

// Number of X'-monomials outside the ideal generated by the X'-parts of the
// leading monomials; -1 when that ideal is not zero-dimensional.
long standard_count(const std::vector<Poly>& gb, int nblock) {
  std::vector<Monomial> lead;
  std::vector<int> bound(nblock, -1);
  for (const auto& g : gb) {
    Monomial m = g.leading_monomial();
    for (int i = nblock; i < kMaxVars; ++i) {
      m.deg -= m.e[i];
      m.e[i] = 0;
    }
    lead.push_back(m);
    int nz = -1, cnt = 0;
    for (int i = 0; i < nblock; ++i)
      if (m.e[i]) {
        nz = i;
        ++cnt;
      }
    if (cnt == 1 && (bound[nz] < 0 || m.e[nz] < bound[nz])) bound[nz] = m.e[nz];
  }
  for (int b : bound)
    if (b < 0) return -1;
  long count = 0;
  Monomial cur;
  std::vector<int> e(nblock, 0);
  for (;;) {
    Monomial m;
    for (int i = 0; i < nblock; ++i) {
      m.e[i] = static_cast<std::uint16_t>(e[i]);
      m.deg += e[i];
    }
    bool standard = true;
    for (const auto& l : lead)
      if (divides(l, m)) {
        standard = false;
        break;
      }
    if (standard) ++count;
    int k = 0;
    while (k < nblock && ++e[k] >= bound[k]) e[k++] = 0;
    if (k == nblock) break;
  }
  return count;
}

PrimeList min_primes_rec(const RingHandle& S, const Ideal& J, int depth);

PrimeList combine(PrimeList a, const PrimeList& b) {
  a.insert(a.end(), b.begin(), b.end());
  return minimalize(std::move(a));
}

// Primes of J with J already split as far as factoring GB elements goes.
PrimeList kU_method(const RingHandle& S, const Ideal& J, int depth) {
  const RingPtr& A = S->ambient();
  const auto& G = J.gb().elems;
  if (std::all_of(G.begin(), G.end(), [](const Poly& g) { return g.total_degree() <= 1; }))
    return {{J, true}};
  std::vector<int> U = max_independent_set(J.gb());
  std::vector<int> X;
  for (int i = 0; i < A->nvars(); ++i)
    if (!std::binary_search(U.begin(), U.end(), i)) X.push_back(i);

  BlockView bv = block_ring(A, X, {});
  std::vector<Poly> mapped;
  for (const auto& g : G) mapped.push_back(g.map_vars(bv.T, bv.to_T));
  GroebnerBasis gbT = groebner_basis(mapped);
  const int nb = bv.nblock;

  // Product of the distinct nonconstant leading coefficients in k[U].
  std::vector<Poly> lcs;
  for (const auto& g : gbT.elems) {
    Poly c = block_leading_coeff(g, nb).monic();
    if (c.is_constant()) continue;
    Poly cs = c.map_vars(A, bv.to_S);
    if (std::find(lcs.begin(), lcs.end(), cs) == lcs.end()) lcs.push_back(cs);
  }
  Poly h(A, 1);
  for (const auto& c : lcs) h = h * c;

  PrimeList result;
  Ideal Jsat = J;
  if (!h.is_constant()) {
    Jsat = saturate(J, h).ideal;
    result = min_primes_rec(S, J.with(h), depth + 1);
  }

  // Work on Jsat, whose extension to k(U)[X'] is zero-dimensional.
  std::vector<Poly> satT;
  for (const auto& g : Jsat.gb().elems) satT.push_back(g.map_vars(bv.T, bv.to_T));
  GroebnerBasis satgb = groebner_basis(satT);
  long vdim = standard_count(satgb.elems, nb);

  BlockView ev = block_ring(A, X, {"_t"});
  const int tvar = ev.T->nvars() - 1;
  std::mt19937 rng(1234u + static_cast<unsigned>(depth));
  bool certified = false;
  bool probable = false;
  for (int attempt = 0; attempt < 6 && !certified && !probable; ++attempt) {
    // Generic linear form in the X' variables.
    std::uniform_int_distribution<int> coef(1, 3 + 4 * attempt);
    Poly ell(A);
    for (std::size_t k = 0; k < X.size(); ++k) {
      long c = (X.size() == 1 || (attempt == 0 && k == 0)) ? 1 : coef(rng);
      ell += Poly::var(A, X[k]).scaled(Scalar(A->field(), c));
    }
    std::vector<Poly> eg;
    for (const auto& g : Jsat.gb().elems) eg.push_back(g.map_vars(ev.T, ev.to_T));
    eg.push_back(Poly::var(ev.T, tvar) - ell.map_vars(ev.T, ev.to_T));
    GroebnerBasis egb = groebner_basis(eg);
    std::optional<Poly> elim;
    for (const auto& g : egb.elems) {
      if (!free_of_block(g, nb) || g.degree_in(tvar) <= 0) continue;
      if (!elim || g.degree_in(tvar) < elim->degree_in(tvar)) elim = g;
    }
    if (!elim) break;
    auto fz = factor(*elim);
    std::vector<Factor> tf;
    for (const auto& f : fz.factors)
      if (f.f.degree_in(tvar) > 0) tf.push_back(f);
    // Map a factor phi(U, t) to phi(U, ell) in S.
    auto back = [&](const Poly& phi) {
      std::map<int, Poly> img;
      for (int i = 0; i < ev.T->nvars(); ++i) {
        if (i == tvar)
          img.emplace(i, ell);
        else
          img.emplace(i, Poly::var(A, ev.to_S[i]));
      }
      return substitute(phi, img, A);
    };
    if (tf.size() >= 2) {
      PrimeList parts;
      for (const auto& f : tf) parts = combine(parts, min_primes_rec(S, Jsat.with(back(f.f)), depth + 1));
      for (auto& p : parts) p.certified = p.certified && fz.certified;
      return combine(result, parts);
    }
    if (tf.size() == 1 && tf[0].multiplicity > 1) {
      PrimeList parts = min_primes_rec(S, Jsat.with(back(tf[0].f)), depth + 1);
      for (auto& p : parts) p.certified = p.certified && fz.certified;
      return combine(result, parts);
    }
    if (tf.size() == 1 && vdim >= 0 && tf[0].f.degree_in(tvar) == vdim) {
      certified = fz.certified;
      probable = !fz.certified;
      break;
    }
    // Not separating: make the ideal radical along each X' variable.
    if (attempt >= 1) {
      for (int x : X) {
        std::vector<int> others;
        for (int y : X)
          if (y != x) others.push_back(y);
        BlockView xv = block_ring(A, others, {});
        std::vector<Poly> xg;
        for (const auto& g : Jsat.gb().elems) xg.push_back(g.map_vars(xv.T, xv.to_T));
        GroebnerBasis xgb = groebner_basis(xg);
        std::optional<Poly> px;
        const int xi = xv.to_T[x];
        for (const auto& g : xgb.elems)
          if (free_of_block(g, xv.nblock) && g.degree_in(xi) > 0 && (!px || g.degree_in(xi) < px->degree_in(xi)))
            px = g;
        if (!px) continue;
        auto pf = factor(*px);
        Poly r(xv.T, 1);
        for (const auto& f : pf.factors)
          if (f.f.degree_in(xi) > 0) r = r * f.f;
        Poly rs = r.map_vars(A, xv.to_S);
        if (!Jsat.contains(rs)) return combine(result, min_primes_rec(S, Jsat.with(rs), depth + 1));
      }
    }
  }
  return combine(result, {{Jsat, certified}});
}

PrimeList min_primes_rec(const RingHandle& S, const Ideal& J, int depth) {
  if (J.is_unit()) return {};
  if (depth > 64) throw std::runtime_error("minimal prime recursion too deep");
  std::string key = S->to_string() + "|" + std::to_string(static_cast<int>(S->ambient()->order().kind)) + "|" + J.key();
  {
    std::lock_guard<std::mutex> lock(g_cache_mutex);
    auto it = g_prime_cache.find(key);
    if (it != g_prime_cache.end()) {
      PrimeList out;
      for (const auto& [gens, cert] : it->second) out.push_back({Ideal(S, gens), cert});
      return out;
    }
  }
  PrimeList out;
  const auto& G = J.gb().elems;
  if (G.empty()) {
    out.push_back({J, true});
  } else if (all_monomial(G)) {
    out = monomial_primes(S, G);
  } else {
    bool done = false;
    std::vector<const Poly*> order;
    for (const auto& g : G) order.push_back(&g);
    std::stable_sort(order.begin(), order.end(), [](const Poly* a, const Poly* b) { return a->size() < b->size(); });
    for (const Poly* g : order) {
      auto fz = factor(*g);
      if (fz.factors.size() >= 2) {
        for (const auto& f : fz.factors) out = combine(out, min_primes_rec(S, J.with(f.f), depth + 1));
        if (!fz.certified)
          for (auto& p : out) p.certified = false;
        done = true;
        break;
      }
      if (fz.factors.size() == 1 && fz.factors[0].multiplicity > 1) {
        out = min_primes_rec(S, J.with(fz.factors[0].f), depth + 1);
        done = true;
        break;
      }
    }
    if (!done) out = kU_method(S, J, depth);
  }
  std::lock_guard<std::mutex> lock(g_cache_mutex);
  auto& slot = g_prime_cache[key];
  slot.clear();
  for (const auto& p : out) slot.push_back({p.ideal.gb().elems, p.certified});
  return out;
}

}  // namespace

void clear_prime_cache() {
  std::lock_guard<std::mutex> lock(g_cache_mutex);
  g_prime_cache.clear();
}

std::vector<PrimeWitness> minimalize(std::vector<PrimeWitness> primes) {
  std::vector<PrimeWitness> out;
  for (std::size_t i = 0; i < primes.size(); ++i) {
    bool drop = false;
    for (std::size_t j = 0; j < primes.size() && !drop; ++j) {
      if (i == j) continue;
      bool j_in_i = primes[i].ideal.contains(primes[j].ideal);
      if (!j_in_i) continue;
      bool i_in_j = primes[j].ideal.contains(primes[i].ideal);
      // Strictly larger, or equal and a copy appears earlier.
      if (!i_in_j || j < i) drop = true;
    }
    if (!drop) out.push_back(primes[i]);
  }
  std::sort(out.begin(), out.end(),
            [](const PrimeWitness& a, const PrimeWitness& b) { return a.ideal.key() < b.ideal.key(); });
  return out;
}

std::vector<PrimeWitness> minimal_primes(const Ideal& a) {
  if (a.is_unit()) throw UnitIdeal();
  RingHandle S = polynomial_handle(a.ring()->ambient());
  PrimeList ps = min_primes_rec(S, Ideal(S, a.gb().elems), 0);
  std::vector<PrimeWitness> out;
  for (auto& p : ps) out.push_back({Ideal(a.ring(), p.ideal.gb().elems), p.certified});
  return minimalize(std::move(out));
}

std::vector<PrimeWitness> minimal_primes(const RingHandle& R) {
  if (R->is_zero_ring()) throw ZeroRing();
  return minimal_primes(Ideal::zero(R));
}

int prime_height(const Ideal& p) {
  const int dp = dim_from_gb(p.gb());
  int best = 0;
  for (const auto& q : minimal_primes(p.ring()))
    if (p.contains(q.ideal)) best = std::max(best, dim_from_gb(q.ideal.gb()) - dp);
  return best;
}

int height(const Ideal& a) {
  if (a.is_unit()) return kInfinity;
  int best = kInfinity;
  for (const auto& p : minimal_primes(a)) best = std::min(best, prime_height(p.ideal));
  return best;
}

Ideal annihilator(const PresentedModule& M) {
  const RingHandle& R = M.ring;
  if (M.rank == 0) return Ideal::unit(R);
  std::vector<Poly> rel = M.full_relations();
  if (M.rank == 1) {
    std::vector<Poly> g;
    for (const auto& r : rel) g.push_back(r.component(1));
    return Ideal(R, g);
  }
  std::vector<Poly> acc;
  bool first = true;
  for (std::uint32_t j = 1; j <= M.rank; ++j) {
    std::vector<Poly> c = module_colon(rel, Poly::unit_vector(R->ambient(), j));
    acc = first ? c : ideal_intersection(acc, c);
    first = false;
  }
  return Ideal(R, acc);
}

int module_dim(const PresentedModule& M) {
  if (M.is_zero()) return -1;
  return dim_from_gb(annihilator(M).gb());
}

int module_height(const Ideal& a, const PresentedModule& M) {
  Ideal ann = annihilator(M);
  if ((a + ann).is_unit()) return kInfinity;
  RingHandle R2 = PresentedRing::make(a.ring()->ambient(), ann.gb().elems);
  return height(Ideal(R2, a.gens()));
}

std::vector<PrimeWitness> associated_primes(const PresentedModule& M) {
  if (M.is_zero()) return {};
  const RingPtr& A = M.ring->ambient();
  RingHandle S = polynomial_handle(A);
  PresentedModule MS = PresentedModule::free(S, M.rank);
  MS.relations = M.full_relations();
  const int n = A->nvars();
  FreeComplex res = free_resolution(MS, n);
  PresentedModule SS = PresentedModule::free(S, 1);
  std::vector<PrimeWitness> found;
  for (int i = 0; i <= std::min(n, res.length()); ++i) {
    PresentedModule E = ext_module(res, i, SS);
    if (E.is_zero()) continue;
    Ideal ann = annihilator(E);
    for (const auto& p : minimal_primes(ann))
      if (n - dim_from_gb(p.ideal.gb()) == i) found.push_back({Ideal(M.ring, p.ideal.gb().elems), p.certified});
  }
  std::sort(found.begin(), found.end(),
            [](const PrimeWitness& a, const PrimeWitness& b) { return a.ideal.key() < b.ideal.key(); });
  std::vector<PrimeWitness> out;
  for (auto& p : found)
    if (out.empty() || !(out.back().ideal == p.ideal)) out.push_back(std::move(p));
  return out;
}

}  // namespace gradecm
