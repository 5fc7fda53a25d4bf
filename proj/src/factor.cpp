#include "gradecm/factor.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <random>
#include <stdexcept>

namespace gradecm {

namespace univariate {

namespace {

// ---------------------------------------------------------------- F_p[t]

void trim(FpPoly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

int deg(const FpPoly& a) { return static_cast<int>(a.size()) - 1; }

std::uint64_t pow_mod(std::uint64_t b, std::uint64_t e, std::uint64_t p) {
  std::uint64_t r = 1;
  b %= p;
  while (e) {
    if (e & 1) r = r * b % p;
    b = b * b % p;
    e >>= 1;
  }
  return r;
}

std::uint64_t inv_mod(std::uint64_t a, std::uint64_t p) { return pow_mod(a, p - 2, p); }

FpPoly sub(const FpPoly& a, const FpPoly& b, std::uint64_t p) {
  FpPoly r(std::max(a.size(), b.size()), 0);
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i];
  for (std::size_t i = 0; i < b.size(); ++i) r[i] = (r[i] + p - b[i]) % p;
  trim(r);
  return r;
}

FpPoly mul(const FpPoly& a, const FpPoly& b, std::uint64_t p) {
  if (a.empty() || b.empty()) return {};
  FpPoly r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!a[i]) continue;
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = (r[i + j] + a[i] * b[j]) % p;
  }
  trim(r);
  return r;
}

// a = q*b + r
void divmod(const FpPoly& a, const FpPoly& b, std::uint64_t p, FpPoly* q, FpPoly* r) {
  if (b.empty()) throw DivisionByZero();
  FpPoly rem = a;
  FpPoly quo;
  if (deg(a) >= deg(b)) quo.assign(a.size() - b.size() + 1, 0);
  std::uint64_t inv = inv_mod(b.back(), p);
  for (int i = deg(rem); i >= deg(b); --i) {
    std::uint64_t c = rem[i] * inv % p;
    if (!c) continue;
    int s = i - deg(b);
    quo[s] = c;
    for (std::size_t j = 0; j < b.size(); ++j) rem[s + j] = (rem[s + j] + p - c * b[j] % p) % p;
  }
  trim(rem);
  trim(quo);
  if (q) *q = std::move(quo);
  if (r) *r = std::move(rem);
}

FpPoly mod(const FpPoly& a, const FpPoly& b, std::uint64_t p) {
  FpPoly r;
  divmod(a, b, p, nullptr, &r);
  return r;
}

FpPoly quo(const FpPoly& a, const FpPoly& b, std::uint64_t p) {
  FpPoly q;
  divmod(a, b, p, &q, nullptr);
  return q;
}

FpPoly monic(FpPoly a, std::uint64_t p) {
  if (a.empty()) return a;
  std::uint64_t inv = inv_mod(a.back(), p);
  for (auto& c : a) c = c * inv % p;
  return a;
}

FpPoly gcd(FpPoly a, FpPoly b, std::uint64_t p) {
  while (!b.empty()) {
    FpPoly r = mod(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  return monic(a, p);
}

// s*a + t*b = gcd (monic).
FpPoly ext_gcd(const FpPoly& a, const FpPoly& b, std::uint64_t p, FpPoly& s, FpPoly& t) {
  FpPoly r0 = a, r1 = b, s0{1}, s1{}, t0{}, t1{1};
  while (!r1.empty()) {
    FpPoly q, r;
    divmod(r0, r1, p, &q, &r);
    FpPoly s2 = sub(s0, mul(q, s1, p), p), t2 = sub(t0, mul(q, t1, p), p);
    r0 = std::move(r1);
    r1 = std::move(r);
    s0 = std::move(s1);
    s1 = std::move(s2);
    t0 = std::move(t1);
    t1 = std::move(t2);
  }
  std::uint64_t inv = inv_mod(r0.back(), p);
  for (auto& c : s0) c = c * inv % p;
  for (auto& c : t0) c = c * inv % p;
  s = s0;
  t = t0;
  return monic(r0, p);
}

FpPoly powmod(FpPoly b, std::uint64_t e, const FpPoly& m, std::uint64_t p) {
  FpPoly r{1};
  b = mod(b, m, p);
  while (e) {
    if (e & 1) r = mod(mul(r, b, p), m, p);
    e >>= 1;
    if (e) b = mod(mul(b, b, p), m, p);
  }
  return r;
}

FpPoly derivative(const FpPoly& a, std::uint64_t p) {
  FpPoly r;
  for (std::size_t i = 1; i < a.size(); ++i) r.push_back(a[i] * (i % p) % p);
  trim(r);
  return r;
}

bool is_one(const FpPoly& a) { return a.size() == 1 && a[0] == 1; }

// Inverse Frobenius on F_p[t]: valid when only exponents divisible by p occur.
FpPoly pth_root(const FpPoly& a, std::uint64_t p) {
  FpPoly r;
  for (std::size_t i = 0; i < a.size(); i += p) r.push_back(a[i]);
  trim(r);
  return r;
}

std::vector<std::pair<FpPoly, int>> squarefree(const FpPoly& f, std::uint64_t p) {
  std::vector<std::pair<FpPoly, int>> out;
  FpPoly fd = derivative(f, p);
  if (fd.empty()) {
    for (auto& [h, m] : squarefree(pth_root(f, p), p)) out.push_back({h, m * static_cast<int>(p)});
    return out;
  }
  FpPoly c = gcd(f, fd, p);
  FpPoly w = quo(f, c, p);
  int i = 1;
  while (!is_one(w) && deg(w) > 0) {
    FpPoly y = gcd(w, c, p);
    FpPoly z = quo(w, y, p);
    if (deg(z) > 0) out.push_back({monic(z, p), i});
    ++i;
    w = y;
    c = quo(c, y, p);
  }
  if (deg(c) > 0) {
    for (auto& [h, m] : squarefree(pth_root(c, p), p)) out.push_back({h, m * static_cast<int>(p)});
  }
  return out;
}

void equal_degree(const FpPoly& g, int d, std::uint64_t p, std::mt19937_64& rng,
                  std::vector<FpPoly>& out) {
  if (deg(g) == d) {
    out.push_back(g);
    return;
  }
  std::uniform_int_distribution<std::uint64_t> coef(0, p - 1);
  for (;;) {
    FpPoly a(deg(g), 0);
    for (auto& c : a) c = coef(rng);
    trim(a);
    if (deg(a) < 1) continue;
    FpPoly b;
    if (p == 2) {
      // Trace map a + a^2 + ... + a^(2^(d-1)).
      FpPoly term = a;
      b = a;
      for (int i = 1; i < d; ++i) {
        term = mod(mul(term, term, p), g, p);
        b = sub(b, sub(FpPoly{}, term, p), p);
      }
    } else {
      // Norm a * a^p * ... * a^(p^(d-1)) raised to (p-1)/2.
      FpPoly term = a, norm = a;
      for (int i = 1; i < d; ++i) {
        term = powmod(term, p, g, p);
        norm = mod(mul(norm, term, p), g, p);
      }
      b = sub(powmod(norm, (p - 1) / 2, g, p), FpPoly{1}, p);
    }
    FpPoly c = gcd(g, b, p);
    if (deg(c) > 0 && deg(c) < deg(g)) {
      equal_degree(c, d, p, rng, out);
      equal_degree(quo(g, c, p), d, p, rng, out);
      return;
    }
  }
}

// Irreducible factors of a monic squarefree polynomial.
std::vector<FpPoly> split_squarefree(FpPoly f, std::uint64_t p) {
  std::vector<FpPoly> out;
  std::mt19937_64 rng(0x9e3779b97f4a7c15ull ^ p);
  FpPoly x{0, 1};
  FpPoly h = x;
  for (int d = 1; deg(f) >= 2 * d; ++d) {
    h = powmod(h, p, f, p);
    FpPoly g = gcd(f, sub(h, x, p), p);
    if (deg(g) > 0) {
      equal_degree(g, d, p, rng, out);
      f = quo(f, g, p);
      h = mod(h, f, p);
    }
  }
  if (deg(f) > 0) out.push_back(monic(f, p));
  return out;
}

// ---------------------------------------------------------------- Z[t]

void trim(ZPoly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

int deg(const ZPoly& a) { return static_cast<int>(a.size()) - 1; }

ZPoly mul(const ZPoly& a, const ZPoly& b) {
  if (a.empty() || b.empty()) return {};
  ZPoly r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  }
  trim(r);
  return r;
}

mpz_class content(const ZPoly& a) {
  mpz_class g = 0;
  for (const auto& c : a) g = gcd(g, c);
  return g;
}

ZPoly primitive(ZPoly a) {
  if (a.empty()) return a;
  mpz_class c = content(a);
  if (a.back() < 0) c = -c;
  for (auto& x : a) x /= c;
  return a;
}

// Exact division over Z, nullopt if b does not divide a.
std::optional<ZPoly> divide_z(const ZPoly& a, const ZPoly& b) {
  if (b.empty()) throw DivisionByZero();
  if (deg(a) < deg(b)) {
    if (a.empty()) return ZPoly{};
    return std::nullopt;
  }
  if (b[0] != 0 && a[0] != 0 && a[0] % b[0] != 0) return std::nullopt;
  ZPoly rem = a, q(a.size() - b.size() + 1, 0);
  for (int i = deg(rem); i >= deg(b); --i) {
    if (rem[i] == 0) continue;
    if (rem[i] % b.back() != 0) return std::nullopt;
    mpz_class c = rem[i] / b.back();
    int s = i - deg(b);
    q[s] = c;
    for (std::size_t j = 0; j < b.size(); ++j) rem[s + j] -= c * b[j];
  }
  trim(rem);
  if (!rem.empty()) return std::nullopt;
  trim(q);
  return q;
}

ZPoly derivative(const ZPoly& a) {
  ZPoly r;
  for (std::size_t i = 1; i < a.size(); ++i) r.push_back(a[i] * static_cast<unsigned long>(i));
  trim(r);
  return r;
}

// Primitive gcd over Z, computed with monic Euclid over QQ.
ZPoly gcd_z(const ZPoly& a, const ZPoly& b) {
  using QPoly = std::vector<mpq_class>;
  auto toq = [](const ZPoly& z) {
    QPoly q;
    for (const auto& c : z) q.emplace_back(c);
    return q;
  };
  auto qtrim = [](QPoly& q) {
    while (!q.empty() && q.back() == 0) q.pop_back();
  };
  QPoly r0 = toq(a), r1 = toq(b);
  while (!r1.empty()) {
    QPoly r = r0;
    int db = static_cast<int>(r1.size()) - 1;
    for (int i = static_cast<int>(r.size()) - 1; i >= db; --i) {
      if (r[i] == 0) continue;
      mpq_class c = r[i] / r1.back();
      for (int j = 0; j <= db; ++j) r[i - db + j] -= c * r1[j];
    }
    qtrim(r);
    r0 = std::move(r1);
    r1 = std::move(r);
  }
  mpz_class den = 1;
  for (const auto& c : r0) den = lcm(den, c.get_den());
  ZPoly z;
  for (const auto& c : r0) z.push_back(mpz_class(c * den));
  return primitive(z);
}

std::vector<std::pair<ZPoly, int>> squarefree_z(const ZPoly& f) {
  std::vector<std::pair<ZPoly, int>> out;
  ZPoly c = gcd_z(f, derivative(f));
  ZPoly w = *divide_z(f, c);
  int i = 1;
  while (deg(w) > 0) {
    ZPoly y = gcd_z(w, c);
    ZPoly z = *divide_z(w, y);
    if (deg(z) > 0) out.push_back({primitive(z), i});
    ++i;
    w = y;
    c = *divide_z(c, y);
  }
  return out;
}

FpPoly reduce(const ZPoly& a, std::uint64_t p) {
  FpPoly r;
  for (const auto& c : a) {
    mpz_class m = c % p;
    if (m < 0) m += p;
    r.push_back(m.get_ui());
  }
  trim(r);
  return r;
}

ZPoly lift_coeffs(const FpPoly& a) {
  ZPoly r;
  for (auto c : a) r.emplace_back(static_cast<unsigned long>(c));
  return r;
}

// Arithmetic in (Z/m)[t], coefficients kept in [0, m).
ZPoly zmod(ZPoly a, const mpz_class& m) {
  for (auto& c : a) {
    c %= m;
    if (c < 0) c += m;
  }
  trim(a);
  return a;
}

ZPoly zsub(const ZPoly& a, const ZPoly& b) {
  ZPoly r(std::max(a.size(), b.size()), 0);
  for (std::size_t i = 0; i < a.size(); ++i) r[i] += a[i];
  for (std::size_t i = 0; i < b.size(); ++i) r[i] -= b[i];
  trim(r);
  return r;
}

ZPoly zadd(const ZPoly& a, const ZPoly& b) {
  ZPoly r(std::max(a.size(), b.size()), 0);
  for (std::size_t i = 0; i < a.size(); ++i) r[i] += a[i];
  for (std::size_t i = 0; i < b.size(); ++i) r[i] += b[i];
  trim(r);
  return r;
}

// Division by a monic polynomial in (Z/m)[t].
void zdivmod_monic(const ZPoly& a, const ZPoly& b, const mpz_class& m, ZPoly& q, ZPoly& r) {
  r = zmod(a, m);
  q.clear();
  if (deg(r) < deg(b)) return;
  q.assign(r.size() - b.size() + 1, 0);
  for (int i = deg(r); i >= deg(b); --i) {
    mpz_class c = r[i] % m;
    if (c < 0) c += m;
    if (c == 0) continue;
    int s = i - deg(b);
    q[s] = c;
    for (std::size_t j = 0; j < b.size(); ++j) {
      r[s + j] -= c * b[j];
      r[s + j] %= m;
    }
  }
  r = zmod(r, m);
  q = zmod(q, m);
}

// One quadratic Hensel step f = g*h mod m -> mod m^2 (h monic).
void hensel_step(const ZPoly& f, ZPoly& g, ZPoly& h, ZPoly& s, ZPoly& t, const mpz_class& m2) {
  ZPoly e = zmod(zsub(f, mul(g, h)), m2);
  ZPoly q, r;
  zdivmod_monic(mul(s, e), h, m2, q, r);
  ZPoly gs = zmod(zadd(zadd(g, mul(t, e)), mul(q, g)), m2);
  ZPoly hs = zmod(zadd(h, r), m2);
  ZPoly b = zmod(zsub(zadd(mul(s, gs), mul(t, hs)), ZPoly{1}), m2);
  ZPoly c, d;
  zdivmod_monic(mul(s, b), hs, m2, c, d);
  s = zmod(zsub(s, d), m2);
  t = zmod(zsub(zsub(t, mul(t, b)), mul(c, gs)), m2);
  g = std::move(gs);
  h = std::move(hs);
}

// Lift monic factors u_i (mod p) of f/lc(f) to monic factors mod p^k.
void hensel_lift(const ZPoly& f, const std::vector<FpPoly>& u, std::uint64_t p, const mpz_class& pk,
                 std::vector<ZPoly>& out) {
  if (u.size() == 1) {
    // f mod pk times the inverse of its leading coefficient.
    mpz_class lc = f.back(), inv;
    mpz_invert(inv.get_mpz_t(), lc.get_mpz_t(), pk.get_mpz_t());
    ZPoly r = f;
    for (auto& c : r) c *= inv;
    out.push_back(zmod(r, pk));
    return;
  }
  std::size_t half = u.size() / 2;
  std::vector<FpPoly> left(u.begin(), u.begin() + half), right(u.begin() + half, u.end());
  FpPoly g0 = reduce(ZPoly{f.back()}, p), h0{1};
  for (const auto& x : left) g0 = mul(g0, x, p);
  for (const auto& x : right) h0 = mul(h0, x, p);
  FpPoly s0, t0;
  ext_gcd(g0, h0, p, s0, t0);
  ZPoly g = lift_coeffs(g0), h = lift_coeffs(h0), s = lift_coeffs(s0), t = lift_coeffs(t0);
  mpz_class m = p;
  while (m < pk) {
    m = m * m;
    hensel_step(f, g, h, s, t, m);
  }
  g = zmod(g, pk);
  h = zmod(h, pk);
  hensel_lift(g, left, p, pk, out);
  hensel_lift(h, right, p, pk, out);
}

ZPoly symmetric(ZPoly a, const mpz_class& m) {
  mpz_class half = m / 2;
  for (auto& c : a) {
    c %= m;
    if (c < 0) c += m;
    if (c > half) c -= m;
  }
  trim(a);
  return a;
}

// Zassenhaus on a primitive squarefree polynomial with positive leading coefficient.
std::vector<ZPoly> zassenhaus(ZPoly f, bool& certified) {
  if (deg(f) <= 1) return {f};
  const int n = deg(f);
  // Choose, among a few admissible primes, one giving the fewest modular factors.
  std::uint64_t best_p = 0;
  std::vector<FpPoly> best;
  int tried = 0;
  for (std::uint64_t p = 3; tried < 5 && p < 100000; p += 2) {
    if (!is_prime(p)) continue;
    if (f.back() % p == 0) continue;
    FpPoly fp = reduce(f, p);
    if (deg(gcd(fp, derivative(fp, p), p)) > 0) continue;
    auto facs = split_squarefree(monic(fp, p), p);
    ++tried;
    if (best_p == 0 || facs.size() < best.size()) {
      best_p = p;
      best = std::move(facs);
    }
    if (best.size() == 1) return {f};
  }
  if (best_p == 0) throw std::runtime_error("no admissible prime for Zassenhaus");
  const std::uint64_t p = best_p;

  // Coefficient bound for lc(f) * (any factor): sqrt(n+1) * 2^n * |f|_inf * |lc|.
  mpz_class norm = 0;
  for (const auto& c : f) norm = std::max<mpz_class>(norm, abs(c));
  mpz_class bound = norm * abs(f.back()) * (mpz_class(1) << n) * (n + 2);
  mpz_class pk = p;
  while (pk <= 2 * bound) pk *= p;

  std::vector<ZPoly> lifted;
  hensel_lift(f, best, p, pk, lifted);

  std::vector<ZPoly> out;
  std::vector<ZPoly> pool = lifted;
  ZPoly rest = f;
  std::size_t tried_candidates = 0;
  for (std::size_t s = 1; 2 * s <= pool.size(); ++s) {
    bool found;
    do {
      found = false;
      if (2 * s > pool.size()) break;
      std::vector<std::size_t> idx(s);
      for (std::size_t i = 0; i < s; ++i) idx[i] = i;
      for (;;) {
        if (++tried_candidates > kRecombinationCap) {
          certified = false;
          out.push_back(rest);
          return out;
        }
        ZPoly cand{rest.back()};
        for (auto i : idx) cand = zmod(mul(cand, pool[i]), pk);
        cand = primitive(symmetric(cand, pk));
        if (deg(cand) > 0) {
          if (auto q = divide_z(rest, cand)) {
            out.push_back(cand);
            rest = primitive(*q);
            for (std::size_t k = s; k-- > 0;) pool.erase(pool.begin() + static_cast<long>(idx[k]));
            found = true;
            break;
          }
        }
        // Next combination.
        std::size_t k = s;
        while (k > 0 && idx[k - 1] == pool.size() - s + k - 1) --k;
        if (k == 0) break;
        ++idx[k - 1];
        for (std::size_t j = k; j < s; ++j) idx[j] = idx[j - 1] + 1;
      }
    } while (found);
  }
  if (deg(rest) > 0) out.push_back(rest);
  return out;
}

}  // namespace

std::vector<std::pair<FpPoly, int>> factor_mod_p(const FpPoly& f0, std::uint64_t p) {
  FpPoly f = f0;
  trim(f);
  if (f.empty()) throw std::invalid_argument("factoring the zero polynomial");
  std::vector<std::pair<FpPoly, int>> out;
  if (deg(f) == 0) return out;
  for (auto& [sq, m] : squarefree(monic(f, p), p))
    for (auto& g : split_squarefree(sq, p)) out.push_back({g, m});
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::pair<ZPoly, int>> factor_over_z(const ZPoly& f, bool& certified) {
  std::vector<std::pair<ZPoly, int>> out;
  for (auto& [sq, m] : squarefree_z(primitive(f)))
    for (auto& g : zassenhaus(sq, certified)) out.push_back({primitive(g), m});
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    if (a.first.size() != b.first.size()) return a.first.size() < b.first.size();
    if (a.first != b.first) return a.first < b.first;
    return a.second < b.second;
  });
  return out;
}

}  // namespace univariate

namespace {

using univariate::FpPoly;
using univariate::ZPoly;

std::optional<Poly> try_divide(const Poly& f, const Poly& g) {
  Poly r = f, q(f.ring());
  const Term& lg = g.leading_term();
  Scalar inv = lg.c.inverse();
  while (!r.is_zero()) {
    const Term& lt = r.leading_term();
    if (!divides(lg.m, lt.m)) return std::nullopt;
    Poly t = Poly::monomial(f.ring(), quotient(lt.m, lg.m), lt.c * inv);
    q += t;
    r -= t * g;
  }
  return q;
}

// Kronecker substitution x_i -> t^(w_i) with w_i = prod_{j<i} (deg_j f + 1).
struct Kronecker {
  std::vector<std::uint64_t> weight;
  std::vector<int> vars;

  std::uint64_t exponent(const Monomial& m) const {
    std::uint64_t e = 0;
    for (std::size_t k = 0; k < vars.size(); ++k) e += weight[k] * m.e[vars[k]];
    return e;
  }
  Monomial invert(std::uint64_t e) const {
    Monomial m;
    for (std::size_t k = vars.size(); k-- > 0;) {
      std::uint64_t d = e / weight[k];
      e -= d * weight[k];
      m.e[vars[k]] = static_cast<std::uint16_t>(d);
      m.deg += static_cast<std::int32_t>(d);
    }
    return m;
  }
};

// Factor a polynomial with no monomial content. Returns irreducible factors
// (monic) with multiplicities.
std::vector<Factor> factor_content_free(const Poly& f, bool& certified) {
  const PolyRing& R = *f.ring();
  const int n = R.nvars();
  Kronecker K;
  std::uint64_t w = 1;
  for (int i = 0; i < n; ++i) {
    int d = f.degree_in(i);
    if (d <= 0) continue;
    K.vars.push_back(i);
    K.weight.push_back(w);
    w *= static_cast<std::uint64_t>(d + 1);
    if (w > (1u << 20)) throw std::invalid_argument("polynomial too large for Kronecker substitution");
  }
  if (K.vars.empty()) return {};

  // Univariate image factors as a multiset of coefficient vectors in the field.
  std::vector<std::vector<Scalar>> pool;
  const Field F = R.field();
  const std::uint64_t p = F.characteristic();
  std::uint64_t top = 0;
  for (const auto& t : f.terms()) top = std::max(top, K.exponent(t.m));
  if (p) {
    FpPoly img(top + 1, 0);
    for (const auto& t : f.terms()) img[K.exponent(t.m)] = t.c.residue();
    for (auto& [g, m] : univariate::factor_mod_p(img, p)) {
      std::vector<Scalar> v;
      for (auto c : g) v.emplace_back(F, static_cast<long>(c));
      for (int k = 0; k < m; ++k) pool.push_back(v);
    }
  } else {
    mpz_class den = 1;
    for (const auto& t : f.terms()) den = lcm(den, t.c.rational().get_den());
    ZPoly img(top + 1, 0);
    for (const auto& t : f.terms()) img[K.exponent(t.m)] = mpz_class(t.c.rational() * den);
    for (auto& [g, m] : univariate::factor_over_z(img, certified)) {
      std::vector<Scalar> v;
      for (const auto& c : g) v.emplace_back(F, mpq_class(c));
      for (int k = 0; k < m; ++k) pool.push_back(v);
    }
  }

  auto image_product = [&](const std::vector<std::size_t>& idx) {
    std::vector<Scalar> acc{Scalar(F, 1)};
    for (auto i : idx) {
      const auto& g = pool[i];
      std::vector<Scalar> r(acc.size() + g.size() - 1, Scalar(F, 0));
      for (std::size_t a = 0; a < acc.size(); ++a)
        for (std::size_t b = 0; b < g.size(); ++b) r[a + b] += acc[a] * g[b];
      acc = std::move(r);
    }
    std::vector<Term> terms;
    for (std::size_t e = 0; e < acc.size(); ++e)
      if (!acc[e].is_zero()) terms.push_back({K.invert(e), acc[e]});
    return Poly::from_terms(f.ring(), std::move(terms));
  };

  std::vector<Factor> out;
  Poly rest = f;
  std::size_t tried = 0;
  // A reducible remainder has a factor whose image uses at most half the pool.
  for (std::size_t s = 1; 2 * s <= pool.size() && !rest.is_constant(); ++s) {
    bool found;
    do {
      found = false;
      if (2 * s > pool.size()) break;
      std::vector<std::size_t> idx(s);
      for (std::size_t i = 0; i < s; ++i) idx[i] = i;
      for (;;) {
        if (++tried > kRecombinationCap) {
          certified = false;
          out.push_back({rest.monic(), 1});
          return out;
        }
        Poly cand = image_product(idx);
        bool ok = !cand.is_constant();
        for (int v = 0; ok && v < n; ++v)
          if (cand.degree_in(v) > rest.degree_in(v)) ok = false;
        std::optional<Poly> q;
        if (ok) q = try_divide(rest, cand);
        if (q) {
          cand = cand.monic();
          int mult = 0;
          while (q) {
            rest = *q;
            ++mult;
            q = try_divide(rest, cand);
          }
          out.push_back({cand, mult});
          // Remove the subset `mult` times: first occurrences of each chosen coefficient vector.
          std::vector<std::vector<Scalar>> chosen;
          for (auto i : idx) chosen.push_back(pool[i]);
          for (int k = 0; k < mult; ++k)
            for (const auto& c : chosen) {
              auto it = std::find(pool.begin(), pool.end(), c);
              if (it != pool.end()) pool.erase(it);
            }
          found = true;
          break;
        }
        std::size_t k = s;
        while (k > 0 && idx[k - 1] == pool.size() - s + k - 1) --k;
        if (k == 0) break;
        ++idx[k - 1];
        for (std::size_t j = k; j < s; ++j) idx[j] = idx[j - 1] + 1;
      }
    } while (found && !rest.is_constant());
  }
  if (!rest.is_constant()) out.push_back({rest.monic(), 1});
  return out;
}

}  // namespace

Factorization factor(const Poly& f) {
  if (f.is_zero()) throw std::invalid_argument("factoring the zero polynomial");
  if (f.max_component() != 0) throw std::invalid_argument("factoring a module element");
  Factorization out;
  out.unit = f.leading_coeff();
  RingPtr R = f.ring();
  const int n = R->nvars();
  // Monomial content.
  Monomial mc = f.terms().front().m;
  for (const auto& t : f.terms())
    for (int i = 0; i < n; ++i) mc.e[i] = std::min(mc.e[i], t.m.e[i]);
  mc.deg = 0;
  for (int i = 0; i < n; ++i) mc.deg += mc.e[i];
  Poly g = f.monic();
  if (mc.deg > 0) {
    for (int i = 0; i < n; ++i)
      if (mc.e[i]) out.factors.push_back({Poly::var(R, i), mc.e[i]});
    std::vector<Term> terms;
    for (const auto& t : g.terms()) terms.push_back({quotient(t.m, mc), t.c});
    g = Poly::from_terms(R, std::move(terms));
  }
  if (!g.is_constant())
    for (auto& fac : factor_content_free(g, out.certified)) out.factors.push_back(std::move(fac));
  std::sort(out.factors.begin(), out.factors.end(), [](const Factor& a, const Factor& b) {
    if (a.f.total_degree() != b.f.total_degree()) return a.f.total_degree() < b.f.total_degree();
    return a.f.to_string() < b.f.to_string();
  });
  return out;
}

bool is_irreducible(const Poly& f) {
  if (f.is_constant()) return false;
  auto fac = factor(f);
  return fac.factors.size() == 1 && fac.factors[0].multiplicity == 1;
}

}  // namespace gradecm
