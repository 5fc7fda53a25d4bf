#include "gradecm/polyring.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace gradecm {

Monomial Monomial::var(int i, int power) {
  Monomial m;
  m.e[i] = static_cast<std::uint16_t>(power);
  m.deg = power;
  return m;
}

Monomial operator*(const Monomial& a, const Monomial& b) {
  Monomial r;
  for (int i = 0; i < kMaxVars; ++i) {
    unsigned s = unsigned(a.e[i]) + b.e[i];
    if (s > 0xFFFFu) throw std::overflow_error("monomial exponent overflow");
    r.e[i] = static_cast<std::uint16_t>(s);
  }
  r.deg = a.deg + b.deg;
  if (a.comp && b.comp) throw std::logic_error("product of two module monomials");
  r.comp = a.comp + b.comp;
  return r;
}

bool divides(const Monomial& a, const Monomial& b) {
  if (a.comp != b.comp && a.comp != 0) return false;
  if (a.deg > b.deg) return false;
  for (int i = 0; i < kMaxVars; ++i)
    if (a.e[i] > b.e[i]) return false;
  return true;
}

Monomial quotient(const Monomial& b, const Monomial& a) {
  Monomial r;
  for (int i = 0; i < kMaxVars; ++i) r.e[i] = static_cast<std::uint16_t>(b.e[i] - a.e[i]);
  r.deg = b.deg - a.deg;
  r.comp = a.comp ? 0 : b.comp;
  return r;
}

Monomial lcm(const Monomial& a, const Monomial& b) {
  Monomial r;
  r.deg = 0;
  for (int i = 0; i < kMaxVars; ++i) {
    r.e[i] = std::max(a.e[i], b.e[i]);
    r.deg += r.e[i];
  }
  r.comp = a.comp;
  return r;
}

bool coprime(const Monomial& a, const Monomial& b, int nvars) {
  for (int i = 0; i < nvars; ++i)
    if (a.e[i] && b.e[i]) return false;
  return true;
}

std::uint32_t support_mask(const Monomial& m, int nvars) {
  std::uint32_t mask = 0;
  for (int i = 0; i < nvars && i < 32; ++i)
    if (m.e[i]) mask |= (1u << i);
  return mask;
}

namespace {

int cmp_degrevlex(const Monomial& a, const Monomial& b, int lo, int hi) {
  int da = 0, db = 0;
  for (int i = lo; i < hi; ++i) {
    da += a.e[i];
    db += b.e[i];
  }
  if (da != db) return da < db ? -1 : 1;
  for (int i = hi - 1; i >= lo; --i)
    if (a.e[i] != b.e[i]) return a.e[i] > b.e[i] ? -1 : 1;
  return 0;
}

}  // namespace

int MonomialOrder::compare(const Monomial& a, const Monomial& b, int nvars) const {
  auto pos = [&]() -> int {
    if (a.comp == b.comp) return 0;
    return a.comp < b.comp ? 1 : -1;
  };
  if (position_first) {
    int p = pos();
    if (p) return p;
  }
  int c = 0;
  switch (kind) {
    case OrderKind::Lex:
      for (int i = 0; i < nvars && !c; ++i)
        if (a.e[i] != b.e[i]) c = a.e[i] < b.e[i] ? -1 : 1;
      break;
    case OrderKind::DegRevLex:
      if (a.deg != b.deg) {
        c = a.deg < b.deg ? -1 : 1;
      } else {
        for (int i = nvars - 1; i >= 0 && !c; --i)
          if (a.e[i] != b.e[i]) c = a.e[i] > b.e[i] ? -1 : 1;
      }
      break;
    case OrderKind::Elimination:
      c = cmp_degrevlex(a, b, 0, block);
      if (!c) c = cmp_degrevlex(a, b, block, nvars);
      break;
  }
  if (c) return c;
  return position_first ? 0 : pos();
}

PolyRing::PolyRing(Field field, std::vector<std::string> vars, MonomialOrder order)
    : field_(field), vars_(std::move(vars)), order_(order) {
  if (static_cast<int>(vars_.size()) > kMaxVars)
    throw std::invalid_argument("too many variables (max " + std::to_string(kMaxVars) + ")");
  if (order_.kind == OrderKind::Elimination && (order_.block < 0 || order_.block > nvars()))
    throw std::invalid_argument("elimination block out of range");
}

int PolyRing::var_index(const std::string& name) const {
  for (int i = 0; i < nvars(); ++i)
    if (vars_[i] == name) return i;
  return -1;
}

RingPtr PolyRing::with_order(MonomialOrder order) const { return make(field_, vars_, order); }

RingPtr PolyRing::extended(const std::vector<std::string>& extra, MonomialOrder order) const {
  auto v = vars_;
  v.insert(v.end(), extra.begin(), extra.end());
  return make(field_, std::move(v), order);
}

// ---------------------------------------------------------------------------

Poly::Poly(RingPtr ring, const Scalar& c) : ring_(std::move(ring)) {
  if (!c.is_zero()) terms_.push_back({Monomial::one(), c});
}

Poly::Poly(RingPtr ring, long c) : Poly(ring, Scalar(ring->field(), c)) {}

Poly Poly::var(RingPtr ring, int i, int power) {
  if (i < 0 || i >= ring->nvars()) throw std::out_of_range("variable index");
  Poly p(ring);
  p.terms_.push_back({Monomial::var(i, power), Scalar(ring->field(), 1)});
  return p;
}

Poly Poly::monomial(RingPtr ring, const Monomial& m, const Scalar& c) {
  Poly p(std::move(ring));
  if (!c.is_zero()) p.terms_.push_back({m, c});
  return p;
}

Poly Poly::unit_vector(RingPtr ring, std::uint32_t comp) {
  Scalar one(ring->field(), 1);
  return monomial(std::move(ring), Monomial::unit_vector(comp), one);
}

void Poly::sort_terms() {
  const PolyRing& R = *ring_;
  std::sort(terms_.begin(), terms_.end(),
            [&](const Term& a, const Term& b) { return R.compare(a.m, b.m) > 0; });
}

Poly Poly::from_terms(RingPtr ring, std::vector<Term> terms) {
  Poly p(std::move(ring));
  p.terms_ = std::move(terms);
  p.sort_terms();
  std::vector<Term> out;
  out.reserve(p.terms_.size());
  for (auto& t : p.terms_) {
    if (!out.empty() && out.back().m == t.m)
      out.back().c += t.c;
    else
      out.push_back(std::move(t));
  }
  std::erase_if(out, [](const Term& t) { return t.c.is_zero(); });
  p.terms_ = std::move(out);
  return p;
}

const Term& Poly::leading_term() const {
  if (terms_.empty()) throw std::logic_error("leading term of zero polynomial");
  return terms_.front();
}

int Poly::total_degree() const {
  int d = -1;
  for (const auto& t : terms_) d = std::max(d, t.m.deg);
  return d;
}

int Poly::degree_in(int var) const {
  int d = -1;
  for (const auto& t : terms_) d = std::max(d, int(t.m.e[var]));
  return d;
}

bool Poly::is_homogeneous() const {
  for (const auto& t : terms_)
    if (t.m.deg != terms_.front().m.deg) return false;
  return true;
}

std::uint32_t Poly::max_component() const {
  std::uint32_t c = 0;
  for (const auto& t : terms_) c = std::max(c, t.m.comp);
  return c;
}

Scalar Poly::coeff(const Monomial& m) const {
  for (const auto& t : terms_)
    if (t.m == m) return t.c;
  return Scalar(ring_->field(), 0);
}

void Poly::check_ring(const Poly& o) const {
  if (ring_ == o.ring_) return;
  if (!ring_ || !o.ring_ || !ring_->same_as(*o.ring_)) throw AmbientMismatch();
}

Poly Poly::monic() const {
  if (terms_.empty()) return *this;
  return scaled(leading_coeff().inverse());
}

Poly& Poly::operator+=(const Poly& o) {
  check_ring(o);
  if (o.terms_.empty()) return *this;
  if (terms_.empty()) {
    terms_ = o.terms_;
    return *this;
  }
  const PolyRing& R = *ring_;
  std::vector<Term> out;
  out.reserve(terms_.size() + o.terms_.size());
  std::size_t i = 0, j = 0;
  while (i < terms_.size() && j < o.terms_.size()) {
    int c = R.compare(terms_[i].m, o.terms_[j].m);
    if (c > 0) {
      out.push_back(std::move(terms_[i++]));
    } else if (c < 0) {
      out.push_back(o.terms_[j++]);
    } else {
      Scalar s = terms_[i].c + o.terms_[j].c;
      if (!s.is_zero()) out.push_back({terms_[i].m, s});
      ++i;
      ++j;
    }
  }
  for (; i < terms_.size(); ++i) out.push_back(std::move(terms_[i]));
  for (; j < o.terms_.size(); ++j) out.push_back(o.terms_[j]);
  terms_ = std::move(out);
  return *this;
}

Poly& Poly::operator-=(const Poly& o) { return *this += -o; }

Poly Poly::operator-() const {
  Poly r = *this;
  for (auto& t : r.terms_) t.c = -t.c;
  return r;
}

Poly Poly::scaled(const Scalar& c) const {
  Poly r(ring_);
  if (c.is_zero()) return r;
  r.terms_ = terms_;
  for (auto& t : r.terms_) t.c *= c;
  return r;
}

Poly Poly::times_term(const Monomial& m, const Scalar& c) const {
  Poly r(ring_);
  if (c.is_zero()) return r;
  r.terms_.reserve(terms_.size());
  for (const auto& t : terms_) r.terms_.push_back({m * t.m, t.c * c});
  // Multiplying by a ring monomial preserves the order of terms.
  if (m.comp) r.sort_terms();
  return r;
}

Poly operator*(const Poly& a, const Poly& b) {
  a.check_ring(b);
  if (a.terms_.empty() || b.terms_.empty()) return Poly(a.ring_ ? a.ring_ : b.ring_);
  const Poly& small = a.terms_.size() <= b.terms_.size() ? a : b;
  const Poly& big = &small == &a ? b : a;
  if (small.terms_.size() == 1) return big.times_term(small.terms_[0].m, small.terms_[0].c);
  std::vector<Term> all;
  all.reserve(a.terms_.size() * b.terms_.size());
  for (const auto& s : a.terms_)
    for (const auto& t : b.terms_) all.push_back({s.m * t.m, s.c * t.c});
  return Poly::from_terms(a.ring_, std::move(all));
}

Poly Poly::pow(unsigned n) const {
  Poly r(ring_, 1);
  Poly b = *this;
  while (n) {
    if (n & 1) r = r * b;
    n >>= 1;
    if (n) b = b * b;
  }
  return r;
}

bool operator==(const Poly& a, const Poly& b) {
  if (a.terms_.size() != b.terms_.size()) return false;
  for (std::size_t i = 0; i < a.terms_.size(); ++i)
    if (!(a.terms_[i].m == b.terms_[i].m) || !(a.terms_[i].c == b.terms_[i].c)) return false;
  return true;
}

Poly Poly::in_ring(RingPtr target) const {
  if (target->nvars() != ring_->nvars()) throw AmbientMismatch();
  Poly r(target);
  r.terms_ = terms_;
  r.sort_terms();
  return r;
}

Poly Poly::map_vars(RingPtr target, const std::vector<int>& var_map) const {
  std::vector<Term> out;
  out.reserve(terms_.size());
  for (const auto& t : terms_) {
    Monomial m;
    m.comp = t.m.comp;
    m.deg = t.m.deg;
    for (int i = 0; i < ring_->nvars(); ++i) {
      if (!t.m.e[i]) continue;
      int j = var_map.at(i);
      if (j < 0 || j >= target->nvars()) throw SubstitutionDomainError("variable has no image");
      m.e[j] = static_cast<std::uint16_t>(m.e[j] + t.m.e[i]);
    }
    out.push_back({m, t.c});
  }
  return from_terms(std::move(target), std::move(out));
}

Poly Poly::component(std::uint32_t comp) const {
  Poly r(ring_);
  for (const auto& t : terms_)
    if (t.m.comp == comp) {
      Term u = t;
      u.m.comp = 0;
      r.terms_.push_back(u);
    }
  r.sort_terms();
  return r;
}

Poly Poly::shift_components(std::int64_t delta) const {
  Poly r(ring_);
  r.terms_ = terms_;
  for (auto& t : r.terms_) t.m.comp = static_cast<std::uint32_t>(std::int64_t(t.m.comp) + delta);
  r.sort_terms();
  return r;
}

std::string monomial_to_string(const PolyRing& ring, const Monomial& m) {
  std::string s;
  for (int i = 0; i < ring.nvars(); ++i) {
    if (!m.e[i]) continue;
    if (!s.empty()) s += "*";
    s += ring.var_name(i);
    if (m.e[i] > 1) s += "^" + std::to_string(m.e[i]);
  }
  return s;
}

std::string Poly::to_string() const {
  if (terms_.empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& t : terms_) {
    std::string mon = monomial_to_string(*ring_, t.m);
    if (t.m.comp) mon += std::string(mon.empty() ? "" : "*") + "e" + std::to_string(t.m.comp);
    std::string c = t.c.to_string();
    bool neg = !c.empty() && c[0] == '-';
    if (neg) c.erase(0, 1);
    if (first)
      out += neg ? "-" : "";
    else
      out += neg ? " - " : " + ";
    first = false;
    if (mon.empty())
      out += c;
    else if (c == "1")
      out += mon;
    else
      out += c + "*" + mon;
  }
  return out;
}

// ---------------------------------------------------------------------------

Poly substitute(const Poly& f, const std::map<int, Poly>& images, RingPtr target) {
  Poly result(target);
  std::map<std::pair<int, int>, Poly> power_cache;
  auto power = [&](int v, int k) -> const Poly& {
    auto key = std::make_pair(v, k);
    auto it = power_cache.find(key);
    if (it != power_cache.end()) return it->second;
    auto img = images.find(v);
    if (img == images.end())
      throw SubstitutionDomainError("variable " + f.ring()->var_name(v) + " has no image");
    return power_cache.emplace(key, img->second.pow(k)).first->second;
  };
  for (const auto& t : f.terms()) {
    Poly term(target, t.c);
    for (int i = 0; i < f.ring()->nvars(); ++i)
      if (t.m.e[i]) term = term * power(i, t.m.e[i]);
    if (t.m.comp) term = term * Poly::unit_vector(target, t.m.comp);
    result += term;
  }
  return result;
}

Poly substitute(const Poly& f, const std::vector<Poly>& images) {
  if (images.size() != static_cast<std::size_t>(f.ring()->nvars()))
    throw SubstitutionDomainError("substitution must give an image for every variable");
  std::map<int, Poly> m;
  for (std::size_t i = 0; i < images.size(); ++i) m.emplace(int(i), images[i]);
  RingPtr target = images.empty() ? f.ring() : images.front().ring();
  return substitute(f, m, target);
}

// ---------------------------------------------------------------------------

namespace {

class PolyParser {
 public:
  PolyParser(RingPtr ring, const std::string& text) : ring_(std::move(ring)), s_(text) {}

  Poly parse() {
    Poly p = expr();
    skip();
    if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
    return p;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) {
    throw std::invalid_argument("polynomial parse error at column " + std::to_string(pos_ + 1) + ": " + msg);
  }
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool eat(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  Poly expr() {
    skip();
    bool neg = eat('-');
    if (!neg) eat('+');
    Poly acc = term();
    if (neg) acc = -acc;
    while (true) {
      if (eat('+'))
        acc += term();
      else if (eat('-'))
        acc -= term();
      else
        break;
    }
    return acc;
  }

  Poly term() {
    Poly acc = factor();
    while (true) {
      if (eat('*')) {
        acc = acc * factor();
      } else if (eat('/')) {
        Poly d = factor();
        if (!d.is_constant() || d.is_zero()) fail("division by a non-constant or zero");
        acc = acc.scaled(d.constant_coeff().inverse());
      } else {
        break;
      }
    }
    return acc;
  }

  Poly factor() {
    Poly base = atom();
    if (eat('^')) {
      skip();
      std::size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      if (start == pos_) fail("expected exponent");
      base = base.pow(static_cast<unsigned>(std::stoul(s_.substr(start, pos_ - start))));
    }
    return base;
  }

  Poly atom() {
    skip();
    if (pos_ >= s_.size()) fail("unexpected end of input");
    char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      Poly p = expr();
      if (!eat(')')) fail("expected ')'");
      return p;
    }
    if (c == '-') {
      ++pos_;
      return -factor();
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (pos_ < s_.size() && (std::isdigit(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '.')) ++pos_;
      std::string lit = s_.substr(start, pos_ - start);
      std::size_t save = pos_;
      skip();
      if (s_.compare(pos_, 3, "mod") == 0) {
        pos_ += 3;
        skip();
        std::size_t ms = pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        if (ms == pos_) fail("expected modulus after 'mod'");
        lit += " mod " + s_.substr(ms, pos_ - ms);
      } else {
        pos_ = save;
      }
      return Poly(ring_, Scalar::parse(ring_->field(), lit));
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = pos_;
      while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) ++pos_;
      std::string name = s_.substr(start, pos_ - start);
      int idx = ring_->var_index(name);
      if (idx < 0) {
        pos_ = start;
        fail("unknown variable '" + name + "'");
      }
      return Poly::var(ring_, idx);
    }
    fail("unexpected '" + std::string(1, c) + "'");
  }

  RingPtr ring_;
  std::string s_;
  std::size_t pos_ = 0;
};

}  // namespace

Poly parse_poly(RingPtr ring, const std::string& text) { return PolyParser(std::move(ring), text).parse(); }

}  // namespace gradecm
