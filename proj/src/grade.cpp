#include "gradecm/grade.hpp"

#include <algorithm>
#include <functional>
#include <set>

namespace gradecm {

std::string to_string(GradeNotion n) {
  switch (n) {
    case GradeNotion::Koszul: return "koszul";
    case GradeNotion::Ext: return "ext";
    case GradeNotion::Classical: return "classical";
    case GradeNotion::PolynomialWitness: return "pgrade";
    case GradeNotion::HGradeTruncated: return "hgrade";
    case GradeNotion::CechAlias: return "cech-alias";
  }
  return "?";
}

std::string to_string(ProregularVerdict v) {
  switch (v) {
    case ProregularVerdict::Holds: return "holds";
    case ProregularVerdict::FailsAtBound: return "fails-at-bound";
    case ProregularVerdict::HoldsForROnly: return "holds-for-R-only";
  }
  return "?";
}

GradeReport koszul_grade(const Ideal& a, const PresentedModule& M) {
  GradeReport r;
  r.notion = GradeNotion::Koszul;
  r.value = kInfinity;
  if (M.is_zero()) return r;
  FreeComplex K = koszul_complex(a.ring(), a.gens());
  for (int i = 0; i <= K.length(); ++i) {
    CohomologyVerdict v = cohomology_nonvanishing(K, M, i);
    if (v.nonvanishing) {
      r.value = i;
      r.first_nonvanishing = i;
      r.cohomology_witness = v.witness;
      return r;
    }
  }
  return r;
}

GradeReport cech_grade(const Ideal& a, const PresentedModule& M) {
  GradeReport r = koszul_grade(a, M);
  r.notion = GradeNotion::CechAlias;
  return r;
}

GradeReport ext_grade(const Ideal& a, const PresentedModule& M) {
  GradeReport r;
  r.notion = GradeNotion::Ext;
  r.value = kInfinity;
  if (a.is_unit() || M.is_zero() || M.mod_ideal(a).is_zero()) return r;
  PresentedModule N = PresentedModule::quotient(a);
  auto scan = [&](const FreeComplex& F, int from, int to) {
    for (int i = from; i <= std::min(to, F.length()); ++i) {
      CohomologyVerdict v = ext_nonvanishing(F, M, i);
      if (v.nonvanishing) {
        r.value = i;
        r.first_nonvanishing = i;
        r.cohomology_witness = v.witness;
        return true;
      }
    }
    return false;
  };
  // Most grades are small: look at Ext^0 and Ext^1 before resolving further.
  FreeComplex F = free_resolution(N, 2);
  if (scan(F, 0, 1)) return r;
  const int n = a.ring()->nvars();
  if (F.length() < 2) throw std::logic_error("Ext vanishes although M != aM");
  F = free_resolution(N, n + 1);
  if (scan(F, 2, n)) return r;
  throw std::logic_error("Ext vanishes up to the number of variables although M != aM");
}

bool is_nonzerodivisor(const Poly& f, const PresentedModule& M) {
  if (M.is_zero()) return true;
  Matrix mult{M.ring->ambient(), 1, {M.ring->reduce(f).shift_components(1)}};
  return !nonvanishing(subquotient(nullptr, &mult, 1, M), 0).nonvanishing;
}

bool is_weak_regular_sequence(const std::vector<Poly>& x, const PresentedModule& M) {
  PresentedModule cur = M;
  for (const auto& f : x) {
    if (!is_nonzerodivisor(f, cur)) return false;
    cur = cur.mod_ideal(Ideal(M.ring, {f}));
  }
  return true;
}

namespace {

// Elements of a tried by the classical grade search: generators, signed
// sums of equal-degree generators, and variable multiples of degree <= 2.
std::vector<Poly> candidate_pool(const Ideal& a, std::size_t cap) {
  const RingHandle& R = a.ring();
  const RingPtr& A = R->ambient();
  std::vector<Poly> pool;
  std::set<std::string> seen;
  auto push = [&](Poly f) {
    f = R->reduce(f);
    if (f.is_zero() || pool.size() >= cap) return;
    f = f.monic();
    if (seen.insert(f.to_string()).second) pool.push_back(std::move(f));
  };
  const auto& g = a.gens();
  for (const auto& f : g) push(f);
  const std::size_t k = std::min<std::size_t>(g.size(), 5);
  std::vector<int> c(k, 0);
  for (;;) {
    std::size_t i = 0;
    while (i < k && ++c[i] > 1) c[i++] = -1;
    if (i == k) break;
    int nz = 0, first = 0, deg = -1;
    bool homogeneous_mix = true;
    Poly f(A);
    for (std::size_t j = 0; j < k; ++j) {
      if (!c[j]) continue;
      if (!nz) first = c[j];
      ++nz;
      if (deg >= 0 && g[j].total_degree() != deg) homogeneous_mix = false;
      deg = g[j].total_degree();
      f += g[j].scaled(Scalar(A->field(), c[j]));
    }
    if (nz >= 2 && first > 0 && homogeneous_mix) push(f);
  }
  for (const auto& f : g)
    if (f.total_degree() <= 1)
      for (int v = 0; v < R->nvars(); ++v) push(Poly::var(A, v) * f);
  return pool;
}

}  // namespace

GradeReport classical_grade(const Ideal& a, const PresentedModule& M, int depth_bound) {
  GradeReport r;
  r.notion = GradeNotion::Classical;
  const int kg = koszul_grade(a, M).value;
  if (kg == kInfinity) {
    r.value = kInfinity;
    return r;
  }
  const int bound = std::min(depth_bound, kg);
  const std::vector<Poly> pool = candidate_pool(a, 64);
  std::vector<Poly> best, cur;
  std::size_t tests = 0;
  constexpr std::size_t kTestCap = 2000;
  std::function<void(const PresentedModule&, std::size_t)> dfs = [&](const PresentedModule& Mc, std::size_t start) {
    if (cur.size() > best.size()) best = cur;
    if (static_cast<int>(best.size()) >= bound || tests >= kTestCap) return;
    for (std::size_t i = start; i < pool.size(); ++i) {
      if (static_cast<int>(best.size()) >= bound || tests >= kTestCap) return;
      ++tests;
      if (!is_nonzerodivisor(pool[i], Mc)) continue;
      cur.push_back(pool[i]);
      dfs(Mc.mod_ideal(Ideal(M.ring, {pool[i]})), 0);
      cur.pop_back();
    }
  };
  dfs(M, 0);
  r.value = static_cast<int>(best.size());
  r.sequence = best;
  r.exact = r.value == kg;
  return r;
}

GradeReport polynomial_grade_witness(const Ideal& a, const PresentedModule& M) {
  GradeReport r;
  r.notion = GradeNotion::PolynomialWitness;
  const int l = koszul_grade(a, M).value;
  r.value = l;
  if (l == kInfinity || l == 0) return r;
  const RingHandle& R = a.ring();
  const RingPtr& A = R->ambient();
  const auto& g = a.gens();
  const int ng = static_cast<int>(g.size());
  std::vector<std::string> t;
  for (int k = 0; k < l * ng; ++k) t.push_back("_t" + std::to_string(k + 1));
  if (A->nvars() + static_cast<int>(t.size()) > kMaxVars)
    throw WitnessSearchFailed("too many generic coefficients for the variable limit");
  RingPtr T = A->extended(t, MonomialOrder::degrevlex());
  std::vector<int> id(A->nvars());
  for (int i = 0; i < A->nvars(); ++i) id[i] = i;
  std::vector<Poly> rel;
  for (const auto& f : R->relations()) rel.push_back(f.map_vars(T, id));
  RingHandle RT = PresentedRing::make(T, rel);
  PresentedModule MT = PresentedModule::free(RT, M.rank);
  for (const auto& f : M.relations) MT.relations.push_back(f.map_vars(T, id));
  std::vector<Poly> y;
  for (int k = 0; k < l; ++k) {
    Poly s(T);
    for (int j = 0; j < ng; ++j) s += Poly::var(T, A->nvars() + k * ng + j) * g[j].map_vars(T, id);
    y.push_back(s);
  }
  if (!is_weak_regular_sequence(y, MT)) throw WitnessSearchFailed("generic sequence is not regular");
  r.sequence = y;
  r.witness_ring = RT;
  return r;
}

GradeReport hgrade_truncated(const Ideal& a, const PresentedModule& M, int n_max) {
  if (n_max < 1) throw std::invalid_argument("n_max must be at least 1");
  GradeReport r;
  r.notion = GradeNotion::HGradeTruncated;
  Ideal power = a;
  for (int n = 1; n <= n_max; ++n) {
    if (n > 1) power = power * a;
    r.levels.push_back(ext_grade(power, M).value);
  }
  r.value = r.levels.back();
  int level = n_max;
  while (level > 1 && r.levels[level - 2] == r.value) --level;
  r.stabilization_level = level;
  r.truncated = n_max < 2 || r.levels[n_max - 2] != r.levels[n_max - 1];
  return r;
}

int depth_at_prime(const PrimeWitness& p, const PresentedModule& M) {
  if (!p.ideal.contains(annihilator(M))) throw OutsideSupport();
  const RingPtr& A = M.ring->ambient();
  RingHandle S = PresentedRing::make(A);
  Ideal P(S, p.ideal.gb().elems);
  PresentedModule MS = PresentedModule::free(S, M.rank);
  MS.relations = M.full_relations();
  const int n = A->nvars();
  FreeComplex F = free_resolution(PresentedModule::quotient(P), n + 1);
  for (int i = 0; i <= std::min(n, F.length()); ++i) {
    PresentedModule E = ext_module(F, i, MS);
    if (E.is_zero()) continue;
    if (P.contains(annihilator(E))) return i;
  }
  return kInfinity;
}

namespace {

// The transition map at homological degree i kills H_i(K(x^m; M)) in H_i(K(x^n; M)).
bool transition_zero(const RingHandle& R, const std::vector<Poly>& x, int n, int m, int i, const PresentedModule& M) {
  const auto r = static_cast<std::uint32_t>(x.size());
  std::vector<Poly> xm, xn;
  for (const auto& f : x) {
    xm.push_back(R->reduce(f.pow(m)));
    xn.push_back(R->reduce(f.pow(n)));
  }
  FreeComplex Km = koszul_complex(R, xm), Kn = koszul_complex(R, xn);
  const std::uint32_t b = Km.ranks[i];
  auto in_of = [&](const FreeComplex& K) { return i < static_cast<int>(K.d.size()) ? &K.d[i] : nullptr; };
  Subquotient Hm = subquotient(in_of(Km), &Km.d[i - 1], b, M);
  Subquotient Hn = subquotient(in_of(Kn), &Kn.d[i - 1], b, M);
  const std::vector<std::uint32_t> basis = koszul_basis(r, static_cast<std::uint32_t>(i));
  const RingPtr& A = R->ambient();
  for (const auto& h : Hm.kernel) {
    std::vector<Poly> parts = split_blocks(h, b, M.rank);
    for (std::uint32_t c = 0; c < b; ++c) {
      Poly w(A, 1);
      for (std::uint32_t j = 0; j < r; ++j)
        if (basis[c] & (1u << j)) w = w * x[j];
      parts[c] = parts[c] * w.pow(static_cast<unsigned>(m - n));
    }
    if (!reduces_to_zero(join_blocks(parts, M.rank), Hn.image_gb)) return false;
  }
  return true;
}

bool is_ring_itself(const PresentedModule& M) { return M.rank == 1 && M.relations.empty(); }

}  // namespace

ProregularReport weak_proregular_check(const std::vector<Poly>& x, int n, int m_max,
                                       const std::vector<PresentedModule>& test_modules) {
  if (n < 1 || m_max < n) throw std::invalid_argument("need 1 <= n <= m_max");
  ProregularReport rep;
  bool ring_holds = false, ring_tested = false, all = true;
  for (const auto& M : test_modules) {
    int found = -1;
    for (int m = n; m <= m_max && found < 0; ++m) {
      bool zero = true;
      for (int i = 1; i <= static_cast<int>(x.size()) && zero; ++i) zero = transition_zero(M.ring, x, n, m, i, M);
      if (zero) found = m;
    }
    rep.levels.push_back(found);
    if (found < 0) all = false;
    if (is_ring_itself(M)) {
      ring_tested = true;
      ring_holds = found >= 0;
    }
  }
  if (all)
    rep.verdict = ProregularVerdict::Holds;
  else if (ring_tested && ring_holds)
    rep.verdict = ProregularVerdict::HoldsForROnly;
  else
    rep.verdict = ProregularVerdict::FailsAtBound;
  return rep;
}

ParameterCertificate strong_parameter_certificate(const std::vector<Poly>& x, const RingHandle& R, int m_max) {
  if (Ideal(R, x).is_unit()) throw std::invalid_argument("sequence generates the unit ideal");
  ParameterCertificate cert;
  cert.certified = true;
  PresentedModule RR = PresentedModule::free(R);
  for (std::size_t i = 1; i <= x.size(); ++i) {
    std::vector<Poly> prefix(x.begin(), x.begin() + static_cast<long>(i));
    PrefixVerdict v;
    v.length = static_cast<int>(i);
    v.grade = koszul_grade(Ideal(R, prefix), RR).value;
    v.proregular = weak_proregular_check(prefix, 1, m_max, {RR}).verdict == ProregularVerdict::Holds;
    v.ok = v.grade == v.length && v.proregular;
    cert.certified = cert.certified && v.ok;
    cert.prefixes.push_back(v);
  }
  return cert;
}

}  // namespace gradecm
