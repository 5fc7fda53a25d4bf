#include "gradecm/groebner.hpp"

#include <algorithm>
#include <atomic>
#include <limits>

namespace gradecm {

namespace {

std::atomic<std::size_t> g_default_budget{1'000'000};

// p[pos..] -= c * m * g, keeping p[0..pos) untouched. Terms of c*m*g are
// all <= p[pos] when the caller reduces the term at pos.
void sub_mul(std::vector<Term>& p, std::size_t pos, const Monomial& m, const Scalar& c,
             const std::vector<Term>& g, const PolyRing& R) {
  std::vector<Term> out;
  out.reserve(p.size() + g.size());
  for (std::size_t i = 0; i < pos; ++i) out.push_back(std::move(p[i]));
  std::size_t i = pos, j = 0;
  while (i < p.size() && j < g.size()) {
    Monomial gm = m * g[j].m;
    int cmp = R.compare(p[i].m, gm);
    if (cmp > 0) {
      out.push_back(std::move(p[i++]));
    } else if (cmp < 0) {
      out.push_back({gm, -(c * g[j].c)});
      ++j;
    } else {
      Scalar s = p[i].c - c * g[j].c;
      if (!s.is_zero()) out.push_back({gm, std::move(s)});
      ++i;
      ++j;
    }
  }
  for (; i < p.size(); ++i) out.push_back(std::move(p[i]));
  for (; j < g.size(); ++j) out.push_back({m * g[j].m, -(c * g[j].c)});
  p = std::move(out);
}

struct Elem {
  Poly p;
  Monomial lm;
  std::uint32_t mask = 0;
  int sugar = 0;
  bool redundant = false;
  Poly rep;
};

struct Pair {
  std::size_t i, j;
  Monomial lcm;
  int sugar;
};

class Engine {
 public:
  Engine(RingPtr ring, bool track, std::size_t budget)
      : ring_(std::move(ring)), R_(*ring_), track_(track), budget_(budget ? budget : default_budget()) {}

  void seed(const Poly& g) {
    Elem e;
    e.p = g.monic();
    e.lm = e.p.leading_monomial();
    e.mask = support_mask(e.lm, R_.nvars());
    e.sugar = e.p.total_degree();
    elems_.push_back(std::move(e));
  }

  void add_input(const Poly& f, Poly rep) {
    if (f.is_zero()) return;
    Poly p = f;
    int sugar = f.total_degree();
    reduce_from(p, rep, 0);
    if (p.is_zero()) return;
    insert(std::move(p), std::move(rep), sugar);
  }

  void run() {
    while (!pairs_.empty()) {
      std::size_t best = 0;
      for (std::size_t k = 1; k < pairs_.size(); ++k) {
        const Pair& a = pairs_[k];
        const Pair& b = pairs_[best];
        if (a.sugar < b.sugar || (a.sugar == b.sugar && R_.compare(a.lcm, b.lcm) < 0)) best = k;
      }
      Pair pr = pairs_[best];
      pairs_[best] = pairs_.back();
      pairs_.pop_back();
      const Elem& a = elems_[pr.i];
      const Elem& b = elems_[pr.j];
      Scalar one(R_.field(), 1);
      Monomial ma = quotient(pr.lcm, a.lm), mb = quotient(pr.lcm, b.lm);
      Poly s = a.p.times_term(ma, one) - b.p.times_term(mb, one);
      Poly rep(ring_);
      if (track_) rep = a.rep.times_term(ma, one) - b.rep.times_term(mb, one);
      reduce_from(s, rep, 0);
      if (!s.is_zero()) insert(std::move(s), std::move(rep), pr.sugar);
    }
  }

  GroebnerBasis finish(std::size_t ninputs) {
    GroebnerBasis gb;
    gb.ring = ring_;
    gb.ninputs = ninputs;
    std::vector<Elem> kept;
    for (auto& e : elems_)
      if (!e.redundant) kept.push_back(std::move(e));
    std::sort(kept.begin(), kept.end(),
              [&](const Elem& a, const Elem& b) { return R_.compare(a.lm, b.lm) < 0; });
    elems_ = std::move(kept);
    for (auto& e : elems_) e.redundant = false;
    // Tail-reduce each element by the others.
    for (std::size_t k = 0; k < elems_.size(); ++k) {
      elems_[k].redundant = true;
      Poly p = std::move(elems_[k].p);
      Poly rep = std::move(elems_[k].rep);
      reduce_from(p, rep, 1);
      elems_[k].p = std::move(p);
      elems_[k].rep = std::move(rep);
      elems_[k].redundant = false;
    }
    for (auto& e : elems_) {
      gb.elems.push_back(std::move(e.p));
      if (track_) gb.reps.push_back(std::move(e.rep));
    }
    gb.reduced = true;
    return gb;
  }

  std::size_t steps() const { return steps_; }

 private:
  const Elem* find_reducer(const Monomial& m) const {
    std::uint32_t mm = support_mask(m, R_.nvars());
    const Elem* best = nullptr;
    for (const auto& e : elems_) {
      if (e.redundant || (e.mask & ~mm) || !divides(e.lm, m)) continue;
      if (!best || e.p.size() < best->p.size()) best = &e;
    }
    return best;
  }

  void step() {
    if (++steps_ > budget_) throw BudgetExceeded();
  }

  // Full reduction starting at term index `start`.
  void reduce_from(Poly& p, Poly& rep, std::size_t start) {
    auto& t = p.mutable_terms();
    std::size_t pos = start;
    while (pos < t.size()) {
      const Elem* g = find_reducer(t[pos].m);
      if (!g) {
        ++pos;
        continue;
      }
      step();
      Monomial q = quotient(t[pos].m, g->lm);
      Scalar c = t[pos].c;
      sub_mul(t, pos, q, c, g->p.terms(), R_);
      if (track_) rep -= g->rep.times_term(q, c);
    }
  }

  void insert(Poly p, Poly rep, int sugar) {
    Scalar inv = p.leading_coeff().inverse();
    Elem h;
    h.p = p.scaled(inv);
    if (track_) h.rep = rep.scaled(inv);
    h.lm = h.p.leading_monomial();
    h.mask = support_mask(h.lm, R_.nvars());
    h.sugar = std::max(sugar, h.p.total_degree());
    const std::size_t hi = elems_.size();
    const bool ideal = h.lm.comp == 0;
    auto is_coprime = [&](const Monomial& a) { return ideal && coprime(a, h.lm, R_.nvars()); };

    // Gebauer-Moeller update.
    std::vector<Pair> C, D;
    for (std::size_t g = 0; g < hi; ++g) {
      const Elem& e = elems_[g];
      if (e.redundant || e.lm.comp != h.lm.comp) continue;
      Monomial l = lcm(e.lm, h.lm);
      int s = std::max(e.sugar + (l.deg - e.lm.deg), h.sugar + (l.deg - h.lm.deg));
      C.push_back({g, hi, l, s});
    }
    for (std::size_t k = 0; k < C.size(); ++k) {
      const Pair& p1 = C[k];
      bool keep = is_coprime(elems_[p1.i].lm);
      if (!keep) {
        keep = true;
        for (std::size_t l = k + 1; l < C.size() && keep; ++l)
          if (divides(C[l].lcm, p1.lcm)) keep = false;
        for (std::size_t l = 0; l < D.size() && keep; ++l)
          if (divides(D[l].lcm, p1.lcm)) keep = false;
      }
      if (keep) D.push_back(p1);
    }
    std::vector<Pair> E;
    for (const auto& d : D)
      if (!is_coprime(elems_[d.i].lm)) E.push_back(d);

    std::vector<Pair> B;
    B.reserve(pairs_.size() + E.size());
    for (const auto& pr : pairs_) {
      if (pr.lcm.comp == h.lm.comp && divides(h.lm, pr.lcm)) {
        Monomial l1 = lcm(elems_[pr.i].lm, h.lm), l2 = lcm(elems_[pr.j].lm, h.lm);
        if (!(l1 == pr.lcm) && !(l2 == pr.lcm)) continue;
      }
      B.push_back(pr);
    }
    for (auto& e : E) B.push_back(e);
    pairs_ = std::move(B);

    for (std::size_t g = 0; g < hi; ++g)
      if (!elems_[g].redundant && divides(h.lm, elems_[g].lm)) elems_[g].redundant = true;
    elems_.push_back(std::move(h));
  }

  RingPtr ring_;
  const PolyRing& R_;
  bool track_;
  std::size_t budget_;
  std::size_t steps_ = 0;
  std::vector<Elem> elems_;
  std::vector<Pair> pairs_;
};

RingPtr common_ring(const std::vector<Poly>& gens) {
  RingPtr r;
  for (const auto& g : gens) {
    if (!g.ring()) continue;
    if (!r)
      r = g.ring();
    else if (!r->same_as(*g.ring()))
      throw AmbientMismatch();
  }
  return r;
}

}  // namespace

void set_default_budget(std::size_t steps) { g_default_budget = steps; }
std::size_t default_budget() { return g_default_budget; }

bool GroebnerBasis::is_unit() const {
  for (const auto& g : elems)
    if (g.size() == 1 && g.leading_monomial().is_one()) return true;
  return false;
}

GroebnerBasis groebner_basis(const std::vector<Poly>& gens, const GbOptions& opts) {
  RingPtr ring = common_ring(gens);
  if (!ring) {
    GroebnerBasis gb;
    gb.ninputs = gens.size();
    gb.reduced = true;
    return gb;
  }
  Engine eng(ring, opts.track, opts.budget);
  for (std::size_t i = 0; i < gens.size(); ++i) {
    Poly rep(ring);
    if (opts.track) rep = Poly::unit_vector(ring, static_cast<std::uint32_t>(i + 1));
    eng.add_input(gens[i], std::move(rep));
  }
  eng.run();
  return eng.finish(gens.size());
}

GroebnerBasis extend_groebner(const GroebnerBasis& gb, const std::vector<Poly>& more,
                              const GbOptions& opts) {
  std::vector<Poly> all = gb.elems;
  all.insert(all.end(), more.begin(), more.end());
  RingPtr ring = common_ring(all);
  if (!ring) return gb;
  Engine eng(ring, false, opts.budget);
  for (const auto& g : gb.elems) eng.seed(g);
  for (const auto& f : more) eng.add_input(f, Poly(ring));
  eng.run();
  return eng.finish(0);
}

Division divide(const Poly& f, const GroebnerBasis& gb) {
  Division d;
  d.quotients.assign(gb.elems.size(), Poly(f.ring()));
  Poly p = f;
  if (gb.elems.empty() || p.is_zero()) {
    d.remainder = p;
    return d;
  }
  const PolyRing& R = *gb.ring;
  const int n = R.nvars();
  std::vector<std::uint32_t> masks;
  for (const auto& g : gb.elems) masks.push_back(support_mask(g.leading_monomial(), n));
  auto& t = p.mutable_terms();
  std::size_t pos = 0;
  while (pos < t.size()) {
    std::uint32_t mm = support_mask(t[pos].m, n);
    std::size_t k = 0;
    for (; k < gb.elems.size(); ++k)
      if (!(masks[k] & ~mm) && divides(gb.elems[k].leading_monomial(), t[pos].m)) break;
    if (k == gb.elems.size()) {
      ++pos;
      continue;
    }
    const Poly& g = gb.elems[k];
    Monomial q = quotient(t[pos].m, g.leading_monomial());
    Scalar c = t[pos].c / g.leading_coeff();
    d.quotients[k] += Poly::monomial(f.ring(), q, c);
    sub_mul(t, pos, q, c, g.terms(), R);
  }
  d.remainder = std::move(p);
  return d;
}

Poly normal_form(const Poly& f, const GroebnerBasis& gb) {
  if (gb.elems.empty() || f.is_zero()) return f;
  const PolyRing& R = *gb.ring;
  const int n = R.nvars();
  Poly p = f;
  auto& t = p.mutable_terms();
  std::size_t pos = 0;
  while (pos < t.size()) {
    std::uint32_t mm = support_mask(t[pos].m, n);
    const Poly* g = nullptr;
    for (const auto& e : gb.elems) {
      const Monomial& lm = e.leading_monomial();
      if ((support_mask(lm, n) & ~mm) || !divides(lm, t[pos].m)) continue;
      g = &e;
      break;
    }
    if (!g) {
      ++pos;
      continue;
    }
    Monomial q = quotient(t[pos].m, g->leading_monomial());
    Scalar c = t[pos].c / g->leading_coeff();
    sub_mul(t, pos, q, c, g->terms(), R);
  }
  return p;
}

bool reduces_to_zero(const Poly& f, const GroebnerBasis& gb) { return normal_form(f, gb).is_zero(); }

Poly s_polynomial(const Poly& f, const Poly& g) {
  const Monomial& a = f.leading_monomial();
  const Monomial& b = g.leading_monomial();
  if (a.comp != b.comp) throw std::invalid_argument("S-polynomial of different leading components");
  Monomial l = lcm(a, b);
  return f.times_term(quotient(l, a), f.leading_coeff().inverse()) -
         g.times_term(quotient(l, b), g.leading_coeff().inverse());
}

std::vector<Poly> syzygies(const std::vector<Poly>& gens, bool minimize, const GbOptions& opts) {
  RingPtr ring = common_ring(gens);
  std::vector<Poly> out;
  if (!ring) return out;
  GbOptions o = opts;
  o.track = true;
  GroebnerBasis gb = groebner_basis(gens, o);
  const auto& G = gb.elems;
  const std::size_t n = G.size();
  Scalar one(ring->field(), 1);

  auto combine = [&](const std::vector<Poly>& q) {
    Poly s(ring);
    for (std::size_t j = 0; j < q.size(); ++j)
      if (!q[j].is_zero()) s += q[j] * gb.reps[j];
    return s;
  };

  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t l = k + 1; l < n; ++l) {
      const Monomial& a = G[k].leading_monomial();
      const Monomial& b = G[l].leading_monomial();
      if (a.comp != b.comp) continue;
      Monomial t = lcm(a, b);
      bool skip = false;
      for (std::size_t m = 0; m < n && !skip; ++m) {
        if (m == k || m == l) continue;
        const Monomial& c = G[m].leading_monomial();
        if (c.comp != a.comp || !divides(c, t)) continue;
        if (!(lcm(a, c) == t) && !(lcm(b, c) == t)) skip = true;
      }
      if (skip) continue;
      Monomial ma = quotient(t, a), mb = quotient(t, b);
      Poly s = G[k].times_term(ma, one) - G[l].times_term(mb, one);
      Division d = divide(s, gb);
      if (!d.remainder.is_zero()) throw std::logic_error("S-polynomial of a Groebner basis does not reduce to zero");
      Poly syz = gb.reps[k].times_term(ma, one) - gb.reps[l].times_term(mb, one) - combine(d.quotients);
      if (!syz.is_zero()) out.push_back(std::move(syz));
    }
  }
  for (std::size_t i = 0; i < gens.size(); ++i) {
    Poly e = Poly::unit_vector(ring, static_cast<std::uint32_t>(i + 1));
    if (gens[i].is_zero()) {
      out.push_back(std::move(e));
      continue;
    }
    Division d = divide(gens[i], gb);
    Poly syz = e - combine(d.quotients);
    if (!syz.is_zero()) out.push_back(std::move(syz));
  }
  if (minimize) return prune_generators(out);
  for (auto& s : out) s = s.monic();
  std::sort(out.begin(), out.end(), [&](const Poly& a, const Poly& b) {
    return ring->compare(a.leading_monomial(), b.leading_monomial()) < 0;
  });
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::optional<std::vector<Poly>> lift(const Poly& f, const std::vector<Poly>& gens) {
  RingPtr ring = f.ring();
  std::vector<Poly> coeffs(gens.size(), Poly(ring));
  if (f.is_zero()) return coeffs;
  GbOptions o;
  o.track = true;
  GroebnerBasis gb = groebner_basis(gens, o);
  Division d = divide(f, gb);
  if (!d.remainder.is_zero()) return std::nullopt;
  for (std::size_t j = 0; j < d.quotients.size(); ++j) {
    if (d.quotients[j].is_zero()) continue;
    for (std::size_t i = 0; i < gens.size(); ++i) {
      Poly c = gb.reps[j].component(static_cast<std::uint32_t>(i + 1));
      if (!c.is_zero()) coeffs[i] += d.quotients[j] * c;
    }
  }
  return coeffs;
}

std::vector<Poly> prune_generators(const std::vector<Poly>& gens) {
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
  std::vector<Poly> kept;
  GroebnerBasis gb;
  for (const auto& c : cand) {
    if (!kept.empty() && reduces_to_zero(c, gb)) continue;
    kept.push_back(c);
    gb = kept.size() == 1 ? groebner_basis(kept) : extend_groebner(gb, {c});
  }
  return kept;
}

Poly divide_exact(const Poly& f, const Poly& g) {
  if (g.is_zero()) throw DivisionByZero();
  Poly r = f, q(f.ring());
  const Term& lg = g.leading_term();
  Scalar inv = lg.c.inverse();
  while (!r.is_zero()) {
    const Term& lt = r.leading_term();
    if (!divides(lg.m, lt.m)) throw std::domain_error("inexact polynomial division");
    Monomial m = quotient(lt.m, lg.m);
    Scalar c = lt.c * inv;
    q += Poly::monomial(f.ring(), m, c);
    sub_mul(r.mutable_terms(), 0, m, c, g.terms(), *f.ring());
  }
  return q;
}

std::vector<Poly> ideal_intersection(const std::vector<Poly>& a, const std::vector<Poly>& b) {
  RingPtr ring = common_ring(a);
  RingPtr rb = common_ring(b);
  if (!ring || !rb) return {};
  if (!ring->same_as(*rb)) throw AmbientMismatch();
  const int n = ring->nvars();
  std::vector<std::string> names{"_t"};
  for (const auto& v : ring->vars()) names.push_back(v);
  RingPtr T = PolyRing::make(ring->field(), names, MonomialOrder::elimination(1));
  std::vector<int> up(n), down(n + 1, -1);
  for (int i = 0; i < n; ++i) {
    up[i] = i + 1;
    down[i + 1] = i;
  }
  Poly t = Poly::var(T, 0);
  Poly one_minus_t = Poly(T, 1) - t;
  std::vector<Poly> gens;
  for (const auto& f : a)
    if (!f.is_zero()) gens.push_back(t * f.map_vars(T, up));
  for (const auto& f : b)
    if (!f.is_zero()) gens.push_back(one_minus_t * f.map_vars(T, up));
  GroebnerBasis gb = groebner_basis(gens);
  std::vector<Poly> out;
  for (const auto& g : gb.elems)
    if (g.degree_in(0) == 0) out.push_back(g.map_vars(ring, down));
  return out;
}

std::vector<Poly> ideal_quotient(const std::vector<Poly>& a, const Poly& f) {
  if (f.is_zero()) throw ZeroColonDivisor();
  std::vector<Poly> inter = ideal_intersection(a, {f});
  std::vector<Poly> out;
  for (const auto& g : inter) out.push_back(divide_exact(g, f));
  return out;
}

std::vector<Poly> module_colon(const std::vector<Poly>& submodule, const Poly& v) {
  if (v.is_zero()) throw ZeroColonDivisor();
  std::vector<Poly> gens{v};
  for (const auto& g : submodule)
    if (!g.is_zero()) gens.push_back(g);
  std::vector<Poly> out;
  for (const auto& s : syzygies(gens, false)) {
    Poly c = s.component(1);
    if (!c.is_zero()) out.push_back(std::move(c));
  }
  return groebner_basis(out).elems;
}

Saturation saturate(const std::vector<Poly>& a, const Poly& f) {
  Saturation s;
  std::vector<Poly> cur = groebner_basis(a).elems;
  for (;;) {
    std::vector<Poly> next = groebner_basis(ideal_quotient(cur, f)).elems;
    if (next == cur) break;
    cur = std::move(next);
    ++s.steps;
  }
  s.gens = std::move(cur);
  return s;
}

bool in_radical(const Poly& f, const std::vector<Poly>& a) {
  if (f.is_zero()) return true;
  RingPtr ring = f.ring();
  RingPtr T = ring->extended({"_t"}, MonomialOrder::degrevlex());
  const int n = ring->nvars();
  std::vector<int> id(n);
  for (int i = 0; i < n; ++i) id[i] = i;
  std::vector<Poly> gens;
  for (const auto& g : a)
    if (!g.is_zero()) gens.push_back(g.map_vars(T, id));
  gens.push_back(Poly(T, 1) - Poly::var(T, n) * f.map_vars(T, id));
  return groebner_basis(gens).is_unit();
}

bool span_contains(const GroebnerBasis& gb, const std::vector<Poly>& gens) {
  for (const auto& g : gens)
    if (!reduces_to_zero(g, gb)) return false;
  return true;
}

bool same_span(const std::vector<Poly>& a, const std::vector<Poly>& b) {
  return span_contains(groebner_basis(a), b) && span_contains(groebner_basis(b), a);
}

}  // namespace gradecm
