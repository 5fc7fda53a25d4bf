#include "gradecm/constructors.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <regex>
#include <set>

namespace gradecm {

namespace {

std::vector<int> identity_map(int n) {
  std::vector<int> m(n);
  std::iota(m.begin(), m.end(), 0);
  return m;
}

std::string fresh_name(const PolyRing& A, const std::string& base) {
  std::string s = base;
  while (A.var_index(s) >= 0) s += "_";
  return s;
}

void monomials_of_degree(int n, int d, int i, Monomial& cur, std::vector<Monomial>& out) {
  if (n == 0) return;
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
    monomials_of_degree(n, d - a, i + 1, cur, out);
  }
  cur.e[i] = 0;
}

std::vector<Monomial> monomials(int n, int d) {
  std::vector<Monomial> out;
  Monomial cur;
  monomials_of_degree(n, d, 0, cur, out);
  return out;
}

LevelCheck level_check(int level, const Ideal& a, const Ideal& b) {
  LevelCheck c;
  c.level = level;
  c.grade = koszul_grade(a, PresentedModule::free(a.ring())).value;
  c.height = height(a);
  c.grade_next = koszul_grade(b, PresentedModule::free(b.ring())).value;
  c.height_next = height(b);
  return c;
}

}  // namespace

RingHandle trivial_extension(const PresentedModule& M, const std::string& prefix) {
  const RingHandle& R = M.ring;
  const RingPtr& S = R->ambient();
  const int n = S->nvars();
  std::vector<std::string> names;
  for (std::uint32_t i = 1; i <= M.rank; ++i) names.push_back(fresh_name(*S, prefix + std::to_string(i)));
  RingPtr T = S->extended(names, MonomialOrder::degrevlex());
  const auto id = identity_map(n);
  std::vector<Poly> rel;
  for (const auto& g : R->relations()) rel.push_back(g.map_vars(T, id));
  for (std::uint32_t i = 0; i < M.rank; ++i)
    for (std::uint32_t j = i; j < M.rank; ++j) rel.push_back(Poly::var(T, n + i) * Poly::var(T, n + j));
  for (const auto& c : M.relations) {
    Poly f(T);
    for (std::uint32_t i = 0; i < M.rank; ++i) f += c.component(i + 1).map_vars(T, id) * Poly::var(T, n + i);
    if (!f.is_zero()) rel.push_back(f);
  }
  return PresentedRing::make(T, rel);
}

LimitRing::LimitRing(RingHandle base, std::string prefix) : base_(std::move(base)), prefix_(std::move(prefix)) {}

RingHandle LimitRing::level(int m) const {
  if (m < 0) throw std::invalid_argument("negative level");
  std::lock_guard<std::mutex> lock(mu_);
  auto it = levels_.find(m);
  if (it != levels_.end()) return it->second;
  const RingPtr& S = base_->ambient();
  std::vector<std::string> names;
  for (int i = 1; i <= m; ++i) names.push_back(prefix_ + std::to_string(i));
  RingPtr T = S->extended(names, MonomialOrder::degrevlex());
  std::vector<Poly> rel;
  for (const auto& g : base_->relations()) rel.push_back(g.map_vars(T, identity_map(S->nvars())));
  RingHandle h = PresentedRing::make(T, rel);
  levels_.emplace(m, h);
  return h;
}

Poly LimitRing::include(const Poly& f, int m) const {
  RingHandle L = level(m);
  if (f.ring()->nvars() > L->nvars()) throw std::invalid_argument("element lives above the target level");
  return f.map_vars(L->ambient(), identity_map(f.ring()->nvars()));
}

int LimitRing::min_level(const std::vector<std::string>& gens) const {
  const std::regex re("(^|[^A-Za-z0-9_])" + prefix_ + "([0-9]+)(?![A-Za-z0-9_])");
  int m = 0;
  for (const auto& g : gens)
    for (auto it = std::sregex_iterator(g.begin(), g.end(), re); it != std::sregex_iterator(); ++it)
      m = std::max(m, std::stoi((*it)[2].str()));
  return m;
}

Ideal LimitRing::ideal(int m, const std::vector<std::string>& gens) const {
  if (min_level(gens) > m) throw std::invalid_argument("generators need level " + std::to_string(min_level(gens)));
  return Ideal::parse(level(m), gens);
}

LevelCheck LimitRing::check(const std::vector<std::string>& gens, int m) const {
  m = std::max(m, min_level(gens));
  return level_check(m, ideal(m, gens), ideal(m + 1, gens));
}

PerfectClosure::PerfectClosure(std::uint32_t p, std::vector<std::string> vars)
    : p_(p), vars_(std::move(vars)), ring_(PresentedRing::make(PolyRing::make(Field::prime(p), vars_))) {}

RingHandle PerfectClosure::level(int l) const {
  if (l < 0) throw std::invalid_argument("negative level");
  return ring_;
}

FracPoly PerfectClosure::parse(const std::string& text) const {
  std::size_t i = 0;
  auto fail = [&](const std::string& what) {
    throw std::invalid_argument(what + " at offset " + std::to_string(i) + " in '" + text + "'");
  };
  auto skip = [&] {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
  };
  auto integer = [&]() -> long {
    skip();
    std::size_t s = i;
    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
    if (s == i) fail("expected an integer");
    return std::stol(text.substr(s, i - s));
  };
  FracPoly out;
  const std::size_t d = vars_.size();
  bool first = true;
  for (;;) {
    skip();
    if (i >= text.size()) {
      if (first) fail("empty polynomial");
      break;
    }
    long sign = 1;
    if (text[i] == '+' || text[i] == '-') {
      sign = text[i] == '-' ? -1 : 1;
      ++i;
    } else if (!first) {
      fail("expected + or -");
    }
    first = false;
    long coef = sign;
    std::vector<mpq_class> e(d, 0);
    for (bool more = true; more;) {
      skip();
      if (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
        coef *= integer();
      } else {
        std::size_t s = i;
        while (i < text.size() && (std::isalnum(static_cast<unsigned char>(text[i])) || text[i] == '_')) ++i;
        if (s == i) fail("expected a factor");
        auto it = std::find(vars_.begin(), vars_.end(), text.substr(s, i - s));
        if (it == vars_.end()) fail("unknown variable '" + text.substr(s, i - s) + "'");
        mpq_class x = 1;
        skip();
        if (i < text.size() && text[i] == '^') {
          ++i;
          skip();
          if (i < text.size() && text[i] == '(') {
            ++i;
            long num = integer();
            long den = 1;
            skip();
            if (i < text.size() && text[i] == '/') {
              ++i;
              den = integer();
              if (den == 0) fail("zero denominator");
            }
            skip();
            if (i >= text.size() || text[i] != ')') fail("expected )");
            ++i;
            x = mpq_class(num, den);
            x.canonicalize();
          } else {
            x = integer();
          }
        }
        e[it - vars_.begin()] += x;
      }
      skip();
      more = i < text.size() && text[i] == '*';
      if (more) ++i;
    }
    out.terms.emplace_back(coef, e);
  }
  return out;
}

int PerfectClosure::min_level(const FracPoly& f) const {
  int l = 0;
  for (const auto& [c, e] : f.terms)
    for (const auto& x : e) {
      mpz_class den = x.get_den();
      int k = 0;
      while (den % p_ == 0) {
        den /= p_;
        ++k;
      }
      if (den != 1) throw std::invalid_argument("exponent denominator is not a power of " + std::to_string(p_));
      l = std::max(l, k);
    }
  return l;
}

Poly PerfectClosure::at_level(const FracPoly& f, int l) const {
  if (min_level(f) > l) throw LevelTooLow("exponents need level " + std::to_string(min_level(f)));
  const RingPtr& A = ring_->ambient();
  mpz_class scale = 1;
  for (int k = 0; k < l; ++k) scale *= p_;
  std::vector<Term> terms;
  for (const auto& [c, e] : f.terms) {
    Monomial m;
    for (std::size_t i = 0; i < e.size(); ++i) {
      mpq_class x = e[i] * scale;
      if (x.get_den() != 1 || x.get_num() > 65535) throw std::overflow_error("exponent out of range");
      m.e[i] = static_cast<std::uint16_t>(x.get_num().get_ui());
      m.deg += m.e[i];
    }
    terms.push_back({m, Scalar(A->field(), c)});
  }
  return Poly::from_terms(A, std::move(terms));
}

Poly PerfectClosure::raise(const Poly& f) const {
  std::vector<Term> terms;
  for (const auto& t : f.terms()) {
    Monomial m = t.m;
    m.deg = 0;
    for (std::size_t i = 0; i < vars_.size(); ++i) {
      m.e[i] = static_cast<std::uint16_t>(m.e[i] * p_);
      m.deg += m.e[i];
    }
    terms.push_back({m, t.c});
  }
  return Poly::from_terms(f.ring(), std::move(terms));
}

Ideal PerfectClosure::ideal(int l, const std::vector<std::string>& gens) const {
  std::vector<Poly> g;
  for (const auto& s : gens) g.push_back(at_level(parse(s), l));
  return Ideal(ring_, g);
}

LevelCheck PerfectClosure::check(const std::vector<std::string>& gens, int l) const {
  for (const auto& s : gens) l = std::max(l, min_level(parse(s)));
  return level_check(l, ideal(l, gens), ideal(l + 1, gens));
}

GroupAction GroupAction::diagonal(std::vector<int> weights, int modulus) {
  if (modulus < 1) throw std::invalid_argument("modulus must be positive");
  GroupAction g;
  g.kind = Kind::Diagonal;
  g.weights = std::move(weights);
  g.modulus = modulus;
  return g;
}

GroupAction GroupAction::permutations(std::vector<std::vector<int>> generators) {
  GroupAction g;
  g.kind = Kind::Permutation;
  g.perm_generators = std::move(generators);
  return g;
}

namespace {

bool diagonal_invariant(const GroupAction& a, const Monomial& m) {
  long s = 0;
  for (std::size_t i = 0; i < a.weights.size(); ++i) s += static_cast<long>(a.weights[i]) * m.e[i];
  return ((s % a.modulus) + a.modulus) % a.modulus == 0;
}

std::vector<std::vector<int>> permutation_group(const std::vector<std::vector<int>>& gens, int n) {
  for (const auto& g : gens) {
    std::vector<int> s = g;
    std::sort(s.begin(), s.end());
    if (static_cast<int>(g.size()) != n || s != identity_map(n))
      throw std::invalid_argument("not a permutation of the variables");
  }
  std::set<std::vector<int>> seen{identity_map(n)};
  std::vector<std::vector<int>> todo{identity_map(n)};
  while (!todo.empty()) {
    auto p = todo.back();
    todo.pop_back();
    for (const auto& g : gens) {
      std::vector<int> q(n);
      for (int i = 0; i < n; ++i) q[i] = g[p[i]];
      if (seen.insert(q).second) todo.push_back(q);
    }
  }
  return {seen.begin(), seen.end()};
}

bool only_t(const Poly& f, int n) {
  for (const auto& t : f.terms())
    for (int i = 0; i < n; ++i)
      if (t.m.e[i]) return false;
  return true;
}

void rebuild_elimination(InvariantRing& P) {
  const int n = P.base->nvars();
  std::vector<std::string> names = P.base->vars();
  for (std::size_t j = 0; j < P.generators.size(); ++j) names.push_back("t" + std::to_string(j));
  P.elim_ring = PolyRing::make(P.base->field(), names, MonomialOrder::elimination(n));
  std::vector<Poly> g;
  for (std::size_t j = 0; j < P.generators.size(); ++j)
    g.push_back(Poly::var(P.elim_ring, n + static_cast<int>(j)) - P.generators[j].map_vars(P.elim_ring, identity_map(n)));
  P.elimination = groebner_basis(g);
}

}  // namespace

Poly InvariantRing::reynolds(const Poly& f) const {
  if (action.kind == GroupAction::Kind::Diagonal) {
    std::vector<Term> keep;
    for (const auto& t : f.terms())
      if (diagonal_invariant(action, t.m)) keep.push_back(t);
    return Poly::from_terms(f.ring(), std::move(keep));
  }
  Poly sum(f.ring());
  for (const auto& g : elements) sum += f.map_vars(f.ring(), g);
  return sum.scaled(Scalar(f.ring()->field(), static_cast<long>(elements.size())).inverse());
}

bool InvariantRing::is_invariant(const Poly& f) const { return reynolds(f) == f; }

Poly InvariantRing::embed(const Poly& f) const {
  if (generators.empty()) return Poly(base, f.constant_coeff());
  return substitute(f, generators);
}

Ideal InvariantRing::extend(const Ideal& a) const {
  std::vector<Poly> g;
  for (const auto& f : a.gens()) g.push_back(embed(f));
  return Ideal(base_ring, g);
}

bool InvariantRing::in_subalgebra(const Poly& f) const {
  const int n = base->nvars();
  return only_t(normal_form(f.map_vars(elim_ring, identity_map(n)), elimination), n);
}

bool InvariantRing::verify_generation(int extra) const {
  const int n = base->nvars();
  const Scalar one(base->field(), 1);
  for (int d = 1; d <= static_cast<int>(group_order) + extra; ++d)
    for (const auto& m : monomials(n, d)) {
      Poly r = reynolds(Poly::monomial(base, m, one));
      if (!r.is_zero() && !in_subalgebra(r)) return false;
    }
  return true;
}

InvariantRing invariant_ring(const RingPtr& base, const GroupAction& action) {
  InvariantRing P;
  P.base = base;
  P.base_ring = PresentedRing::make(base);
  P.action = action;
  const int n = base->nvars();
  if (action.kind == GroupAction::Kind::Diagonal) {
    if (static_cast<int>(action.weights.size()) != n) throw std::invalid_argument("one weight per variable");
    P.group_order = static_cast<std::size_t>(action.modulus);
  } else {
    P.elements = permutation_group(action.perm_generators, n);
    P.group_order = P.elements.size();
  }
  const std::uint32_t p = base->field().characteristic();
  if (p != 0 && P.group_order % p == 0)
    throw BadCharacteristic("group order " + std::to_string(P.group_order) + " vanishes in " + base->field().name());

  rebuild_elimination(P);
  const Scalar one(base->field(), 1);
  for (int d = 1; d <= static_cast<int>(P.group_order); ++d)
    for (const auto& m : monomials(n, d)) {
      Poly r = P.reynolds(Poly::monomial(base, m, one));
      if (r.is_zero()) continue;
      r = r.monic();
      if (P.in_subalgebra(r)) continue;
      P.generators.push_back(r);
      rebuild_elimination(P);
    }

  std::vector<std::string> tnames;
  for (std::size_t j = 0; j < P.generators.size(); ++j) tnames.push_back("t" + std::to_string(j));
  RingPtr T = PolyRing::make(base->field(), tnames);
  std::vector<int> back(P.elim_ring->nvars(), -1);
  for (std::size_t j = 0; j < P.generators.size(); ++j) back[n + j] = static_cast<int>(j);
  std::vector<Poly> ker;
  for (const auto& g : P.elimination.elems)
    if (only_t(g, n)) ker.push_back(g.map_vars(T, back));
  P.presentation = PresentedRing::make(T, ker);
  return P;
}

TransferReport invariant_transfer_check(const InvariantRing& P, const Ideal& a) {
  TransferReport r;
  Ideal b = P.extend(a);
  r.grade_invariant = koszul_grade(a, PresentedModule::free(a.ring())).value;
  r.grade_extended = koszul_grade(b, PresentedModule::free(b.ring())).value;
  r.height_invariant = height(a);
  r.height_extended = height(b);
  return r;
}

ValuationModel::ValuationModel(int rank) : r_(rank) {
  if (rank < 0) throw std::invalid_argument("negative rank");
}

int ValuationModel::compare(const Value& a, const Value& b) const {
  for (int i = r_ - 1; i >= 0; --i)
    if (a[i] != b[i]) return a[i] < b[i] ? -1 : 1;
  return 0;
}

bool ValuationModel::is_positive(const Value& v) const { return compare(v, Value(r_, 0)) > 0; }

int ValuationModel::level(const Value& v) const {
  for (int i = r_; i >= 1; --i)
    if (v[i - 1] != 0) return i;
  return 0;
}

bool ValuationModel::prime_contains(int i, const Value& v) const {
  if (!is_positive(v)) return false;
  return i >= r_ - level(v) + 1;
}

int ValuationModel::height_principal(const Value& v) const {
  if (!is_positive(v)) return kInfinity;
  return r_ - level(v) + 1;
}

int ValuationModel::kgrade_principal(const Value& v) const { return is_positive(v) ? 1 : kInfinity; }

std::vector<int> ValuationModel::weakly_associated_heights(const Value& v) const {
  // (xR : y) for y outside xR is generated by an element of value v - v(y),
  // which ranges over the positive values not exceeding v.
  std::vector<int> h;
  for (int k = 1; k <= level(v); ++k) h.push_back(r_ - k + 1);
  std::sort(h.begin(), h.end());
  return h;
}

std::vector<ValuationModel::Value> ValuationModel::sample_values(int box) const {
  std::vector<Value> out;
  Value v(r_, -box);
  if (r_ == 0) return out;
  for (;;) {
    if (is_positive(v)) out.push_back(v);
    int i = 0;
    while (i < r_ && ++v[i] > box) v[i++] = -box;
    if (i == r_) break;
  }
  return out;
}

bool ValuationModel::Conditions::all_equal() const {
  auto l = as_list();
  return std::all_of(l.begin(), l.end(), [&](bool b) { return b == l.front(); });
}

ValuationModel::Conditions ValuationModel::evaluate() const {
  Conditions c;
  const auto values = sample_values();
  c.primes = true;
  for (int i = 0; i <= r_; ++i) c.primes = c.primes && i == kgrade_prime(i);
  // R_{p_i} is a valuation domain of rank i.
  c.glaz = true;
  for (int i = 0; i <= r_; ++i) c.glaz = c.glaz && i == ValuationModel(i).kgrade_prime(i);
  c.max = r_ == kgrade_prime(r_);
  c.fg = true;
  for (const auto& v : values) c.fg = c.fg && height_principal(v) == kgrade_principal(v);
  c.ideals = c.fg && c.primes;
  c.dim_at_most_one = r_ <= 1;
  c.wb = true;
  for (const auto& v : values) c.wb = c.wb && weakly_associated_heights(v) == std::vector<int>{height_principal(v)};
  return c;
}

}  // namespace gradecm
