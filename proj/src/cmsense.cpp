#include "gradecm/cmsense.hpp"

#include <algorithm>
#include <random>
#include <set>

namespace gradecm {

std::string to_string(Sense s) {
  switch (s) {
    case Sense::FgIdeals: return "fg";
    case Sense::Primes: return "primes";
    case Sense::Max: return "max";
    case Sense::Glaz: return "glaz";
    case Sense::WB: return "wb";
    case Sense::WBH: return "wbh";
    case Sense::HMSurrogate: return "hm";
  }
  return "?";
}

Sense parse_sense(const std::string& s) {
  for (Sense v : {Sense::FgIdeals, Sense::Primes, Sense::Max, Sense::Glaz, Sense::WB, Sense::WBH, Sense::HMSurrogate})
    if (to_string(v) == s) return v;
  throw std::invalid_argument("unknown sense '" + s + "'");
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::Pass: return "pass";
    case Verdict::Fail: return "fail";
    case Verdict::Conditional: return "conditional";
  }
  return "?";
}

std::string to_string(FamilyTag t) {
  switch (t) {
    case FamilyTag::User: return "user";
    case FamilyTag::GeneratedDegree: return "generated-degree";
    case FamilyTag::PrimesOfRing: return "primes-of-ring";
    case FamilyTag::MaximalSample: return "maximal-sample";
  }
  return "?";
}

bool TestFamily::add(const Ideal& a, FamilyTag tag) {
  if (a.is_unit()) return false;
  if (!ring) ring = a.ring();
  const std::string k = a.key();
  for (const auto& b : ideals)
    if (b.key() == k) return false;
  ideals.push_back(a);
  tags.push_back(tag);
  return true;
}

namespace {

void monomials_of_degree(int n, int d, int i, Monomial& cur, std::vector<Monomial>& out) {
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

// Homogeneous elements of degree 1..max_degree with coefficients in {0, +-1}:
// all linear forms, and for higher degrees monomials and signed binomials.
std::vector<Poly> element_pool(const RingHandle& R, int max_degree) {
  const RingPtr& A = R->ambient();
  const int n = R->nvars();
  const Scalar one(A->field(), 1), minus(A->field(), -1);
  std::vector<Poly> pool;
  std::set<std::string> seen;
  auto push = [&](const Poly& f) {
    Poly g = R->reduce(f);
    if (g.is_zero()) return;
    g = g.monic();
    if (seen.insert(g.to_string()).second) pool.push_back(g);
  };
  if (n == 0) return pool;
  // Linear forms with first nonzero coefficient +1.
  std::vector<int> c(n, 0);
  std::vector<Poly> linear;
  for (;;) {
    int i = 0;
    while (i < n && ++c[i] > 1) c[i++] = -1;
    if (i == n) break;
    int first = 0;
    for (int j = 0; j < n && !first; ++j) first = c[j];
    if (first != 1) continue;
    Poly f(A);
    for (int j = 0; j < n; ++j)
      if (c[j]) f += Poly::var(A, j).scaled(Scalar(A->field(), c[j]));
    linear.push_back(f);
  }
  std::stable_sort(linear.begin(), linear.end(), [](const Poly& a, const Poly& b) { return a.size() < b.size(); });
  for (const auto& f : linear) push(f);
  for (int d = 2; d <= max_degree; ++d) {
    std::vector<Monomial> ms;
    Monomial cur;
    monomials_of_degree(n, d, 0, cur, ms);
    for (const auto& m : ms) push(Poly::monomial(A, m, one));
    for (std::size_t i = 0; i < ms.size(); ++i)
      for (std::size_t j = i + 1; j < ms.size(); ++j) {
        push(Poly::monomial(A, ms[i], one) + Poly::monomial(A, ms[j], one));
        push(Poly::monomial(A, ms[i], one) + Poly::monomial(A, ms[j], minus));
      }
  }
  return pool;
}

struct HeightInfo {
  int value = 0;
  bool certified = true;
};

HeightInfo height_info(const Ideal& a) {
  if (a.is_unit()) return {kInfinity, true};
  HeightInfo h{kInfinity, true};
  for (const auto& p : minimal_primes(a)) {
    h.value = std::min(h.value, prime_height(p.ideal));
    h.certified = h.certified && p.certified;
  }
  return h;
}

bool ring_primes_certified(const RingHandle& R) {
  for (const auto& p : minimal_primes(R))
    if (!p.certified) return false;
  return true;
}

void record(CMReport& r, bool mismatch, bool certified, const Ideal& a, int ht, int grade, std::string detail = {}) {
  ++r.tested;
  if (mismatch) {
    if (certified) {
      if (r.verdict != Verdict::Fail || !r.counterexample)
        r.counterexample = Counterexample{a, ht, grade, std::move(detail)};
      r.verdict = Verdict::Fail;
    } else if (r.verdict == Verdict::Pass) {
      r.verdict = Verdict::Conditional;
      r.counterexample = Counterexample{a, ht, grade, std::move(detail)};
    }
  } else if (!certified && r.verdict == Verdict::Pass) {
    r.verdict = Verdict::Conditional;
  }
}

std::vector<const Ideal*> sorted_by_key(const std::vector<Ideal>& v) {
  std::vector<const Ideal*> out;
  for (const auto& a : v) out.push_back(&a);
  std::stable_sort(out.begin(), out.end(), [](const Ideal* a, const Ideal* b) { return a->key() < b->key(); });
  return out;
}

CMReport check_prime_list(const RingHandle& R, const std::vector<PrimeWitness>& primes, Sense sense) {
  CMReport r;
  r.sense = sense;
  const bool base_cert = ring_primes_certified(R);
  PresentedModule RR = PresentedModule::free(R);
  for (const auto& p : primes) {
    int ht = prime_height(p.ideal);
    int g = sense == Sense::Glaz ? depth_at_prime(p, RR) : koszul_grade(p.ideal, RR).value;
    record(r, ht != g, p.certified && base_cert, p.ideal, ht, g, sense == Sense::Glaz ? "depth" : "koszul grade");
  }
  return r;
}

}  // namespace

TestFamily generated_family(const RingHandle& R, const FamilyOptions& opt) {
  TestFamily fam;
  fam.ring = R;
  std::vector<Poly> pool = element_pool(R, opt.max_degree);
  for (const auto& f : pool) {
    if (fam.size() >= opt.cap) return fam;
    fam.add(Ideal(R, {f}), FamilyTag::GeneratedDegree);
  }
  if (pool.size() < 2 || opt.max_gens < 2) return fam;
  std::mt19937 rng(opt.seed);
  std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
  std::uniform_int_distribution<int> size(2, std::max(2, opt.max_gens));
  // Bounded number of draws so that small pools terminate.
  for (std::size_t draws = 0; fam.size() < opt.cap && draws < 40 * opt.cap; ++draws) {
    int k = size(rng);
    std::vector<Poly> g;
    std::set<std::size_t> used;
    while (static_cast<int>(g.size()) < k) {
      std::size_t i = pick(rng);
      if (used.insert(i).second) g.push_back(pool[i]);
      if (used.size() == pool.size()) break;
    }
    fam.add(Ideal(R, g), FamilyTag::GeneratedDegree);
  }
  return fam;
}

std::vector<PrimeWitness> family_primes(const TestFamily& fam) {
  const RingHandle& R = fam.ring;
  std::vector<PrimeWitness> out;
  std::set<std::string> seen;
  auto push = [&](const PrimeWitness& p) {
    if (seen.insert(p.ideal.key()).second) out.push_back(p);
  };
  for (const auto& p : minimal_primes(R)) push(p);
  for (const auto& a : fam.ideals)
    for (const auto& p : minimal_primes(a)) push(p);
  Ideal m = Ideal::maximal_graded(R);
  if (!m.is_unit()) push({m, true});
  std::stable_sort(out.begin(), out.end(),
                   [](const PrimeWitness& a, const PrimeWitness& b) { return a.ideal.key() < b.ideal.key(); });
  return out;
}

CMReport check_sense_fg(const RingHandle& R, const TestFamily& fam) {
  CMReport r;
  r.sense = Sense::FgIdeals;
  PresentedModule RR = PresentedModule::free(R);
  const bool base_cert = ring_primes_certified(R);
  for (const Ideal* a : sorted_by_key(fam.ideals)) {
    HeightInfo h = height_info(*a);
    int g = koszul_grade(*a, RR).value;
    record(r, h.value != g, h.certified && base_cert, *a, h.value, g, "koszul grade");
  }
  return r;
}

CMReport check_sense_primes(const RingHandle& R, const std::vector<PrimeWitness>& primes) {
  return check_prime_list(R, primes, Sense::Primes);
}

CMReport check_sense_max(const RingHandle& R, const std::vector<PrimeWitness>& extra) {
  std::vector<PrimeWitness> maxes;
  Ideal m = Ideal::maximal_graded(R);
  if (!m.is_unit()) maxes.push_back({m, true});
  maxes.insert(maxes.end(), extra.begin(), extra.end());
  return check_prime_list(R, maxes, Sense::Max);
}

CMReport check_sense_glaz(const RingHandle& R, const std::vector<PrimeWitness>& primes) {
  return check_prime_list(R, primes, Sense::Glaz);
}

CMReport check_wb_unmixed(const RingHandle& R, const TestFamily& fam, bool height_variant) {
  CMReport r;
  r.sense = height_variant ? Sense::WBH : Sense::WB;
  r.mu_upper_bound = true;
  const bool base_cert = ring_primes_certified(R);
  for (const Ideal* a : sorted_by_key(fam.ideals)) {
    HeightInfo h = height_info(*a);
    if (h.value < mu_hat(*a)) {
      ++r.skipped;
      continue;
    }
    auto ass = associated_primes(PresentedModule::quotient(*a));
    bool cert = h.certified && base_cert;
    for (const auto& p : ass) cert = cert && p.certified;
    bool ok = true;
    std::string detail;
    if (height_variant) {
      std::set<int> hs;
      for (const auto& p : ass) hs.insert(prime_height(p.ideal));
      ok = hs.size() <= 1;
      if (!ok) detail = "associated primes of different heights";
    } else {
      auto mins = minimal_primes(*a);
      std::set<std::string> km, ka;
      for (const auto& p : mins) km.insert(p.ideal.key());
      for (const auto& p : ass) ka.insert(p.ideal.key());
      ok = km == ka;
      if (!ok) detail = "embedded associated prime";
    }
    int g = ok ? 0 : koszul_grade(*a, PresentedModule::free(R)).value;
    record(r, !ok, cert, *a, h.value, g, detail);
  }
  return r;
}

std::vector<std::vector<Poly>> default_sequences(const RingHandle& R, std::size_t cap) {
  std::vector<std::vector<Poly>> out;
  if (R->is_zero_ring()) return out;
  const int d = std::min(R->dim(), 3);
  std::vector<Poly> pool = element_pool(R, 1);
  if (pool.size() > 8) pool.resize(8);
  // Ordered sequences of distinct pool elements, by length.
  std::vector<std::size_t> idx;
  std::function<void(int)> rec = [&](int len) {
    if (out.size() >= cap) return;
    if (static_cast<int>(idx.size()) == len) {
      std::vector<Poly> s;
      for (auto i : idx) s.push_back(pool[i]);
      out.push_back(std::move(s));
      return;
    }
    for (std::size_t i = 0; i < pool.size(); ++i) {
      if (std::find(idx.begin(), idx.end(), i) != idx.end()) continue;
      idx.push_back(i);
      rec(len);
      idx.pop_back();
      if (out.size() >= cap) return;
    }
  };
  out.push_back({});
  for (int len = 1; len <= d; ++len) rec(len);
  return out;
}

CMReport check_hm_surrogate(const RingHandle& R, const std::vector<std::vector<Poly>>& sequences) {
  CMReport r;
  r.sense = Sense::HMSurrogate;
  PresentedModule RR = PresentedModule::free(R);
  for (const auto& s : sequences) {
    Ideal a(R, s);
    if (a.is_unit()) {
      ++r.skipped;
      continue;
    }
    if (!strong_parameter_certificate(s, R).certified) {
      ++r.skipped;
      continue;
    }
    bool regular = is_weak_regular_sequence(s, RR);
    int g = regular ? 0 : koszul_grade(a, RR).value;
    record(r, !regular, true, a, static_cast<int>(s.size()), g, "certified sequence is not regular");
  }
  return r;
}

AuditReport implication_audit(const RingHandle& R, const TestFamily& fam, const std::vector<PrimeWitness>& primes,
                              const std::vector<std::vector<Poly>>& sequences) {
  AuditReport a;
  a.reports[Sense::Primes] = check_sense_primes(R, primes);
  a.reports[Sense::Glaz] = check_sense_glaz(R, primes);
  a.reports[Sense::FgIdeals] = check_sense_fg(R, fam);
  a.reports[Sense::Max] = check_sense_max(R);
  a.reports[Sense::WB] = check_wb_unmixed(R, fam, false);
  a.reports[Sense::WBH] = check_wb_unmixed(R, fam, true);
  a.reports[Sense::HMSurrogate] = check_hm_surrogate(R, sequences);
  auto pass = [&](Sense s) { return a.reports[s].verdict == Verdict::Pass; };
  auto fail = [&](Sense s) { return a.reports[s].verdict == Verdict::Fail; };
  auto implies = [&](Sense p, Sense q) {
    if (pass(p) && fail(q)) a.violations.push_back(to_string(p) + " passes but " + to_string(q) + " fails");
  };
  implies(Sense::Primes, Sense::Glaz);
  implies(Sense::Glaz, Sense::FgIdeals);
  implies(Sense::FgIdeals, Sense::HMSurrogate);
  implies(Sense::Primes, Sense::Max);
  if (pass(Sense::FgIdeals) && pass(Sense::Primes) && fail(Sense::WB))
    a.violations.push_back("fg and primes pass but wb fails");
  return a;
}

AuditReport implication_audit(const RingHandle& R) {
  TestFamily fam = generated_family(R);
  return implication_audit(R, fam, family_primes(fam), default_sequences(R));
}

}  // namespace gradecm
