#include "support.hh"

#include <algorithm>
#include <set>
#include <sstream>

#include "defekt/census.hh"
#include "report.hh"

namespace defekt::testing {

mpq_class random_scalar(const Q&, SplitMix64& rng) {
  long num = static_cast<long>(rng.uniform(11)) - 5;
  long den = rng.uniform(4) == 0 ? static_cast<long>(rng.uniform(3)) + 2 : 1;
  mpq_class v(num, den);
  v.canonicalize();
  return v;
}

GF::Element random_scalar(const GF& k, SplitMix64& rng) { return rng.uniform(k.cardinality()); }

template <class F>
Poly<F> random_poly(const std::shared_ptr<const F>& k, int nvars, unsigned max_deg, int terms, SplitMix64& rng) {
  auto pool = monomials_up_to_degree(nvars, max_deg);
  std::vector<typename Poly<F>::Term> t;
  for (int i = 0; i < terms; ++i) t.push_back({pool[rng.uniform(pool.size())], random_scalar(*k, rng)});
  return Poly<F>::from_terms(k, nvars, std::move(t));
}

template <class F>
Poly<F> random_form(const std::shared_ptr<const F>& k, int nvars, unsigned d, int terms, SplitMix64& rng) {
  auto pool = monomials_of_degree(nvars, d);
  std::vector<typename Poly<F>::Term> t;
  for (int i = 0; i < terms; ++i) t.push_back({pool[rng.uniform(pool.size())], random_scalar(*k, rng)});
  return Poly<F>::from_terms(k, nvars, std::move(t));
}

template <class F>
std::vector<typename F::Element> random_invertible(const F& k, int n, SplitMix64& rng) {
  for (;;) {
    Matrix<F> M(k, n, n);
    std::vector<typename F::Element> A;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        A.push_back(random_scalar(k, rng));
        M.at(i, j) = A.back();
      }
    if (M.rank() == static_cast<std::size_t>(n)) return A;
  }
}

template Poly<Q> random_poly(const std::shared_ptr<const Q>&, int, unsigned, int, SplitMix64&);
template Poly<GF> random_poly(const std::shared_ptr<const GF>&, int, unsigned, int, SplitMix64&);
template Poly<Q> random_form(const std::shared_ptr<const Q>&, int, unsigned, int, SplitMix64&);
template Poly<GF> random_form(const std::shared_ptr<const GF>&, int, unsigned, int, SplitMix64&);
template std::vector<mpq_class> random_invertible(const Q&, int, SplitMix64&);
template std::vector<GF::Element> random_invertible(const GF&, int, SplitMix64&);

namespace {

template <class F>
bool euler_holds(const Poly<F>& f) {
  Poly<F> lhs(f.field_ptr(), f.nvars());
  for (int i = 0; i < f.nvars(); ++i)
    lhs += Poly<F>::variable(f.field_ptr(), f.nvars(), i) * partial_derivative(f, i);
  return lhs == f.scaled(f.field().from_int(f.degree()));
}

template <class F>
bool product_rule_holds(const Poly<F>& f, const Poly<F>& g, int i) {
  return partial_derivative(f * g, i) == f * partial_derivative(g, i) + g * partial_derivative(f, i);
}

template <class F>
bool same_basis(const GroebnerBasis<F>& a, const GroebnerBasis<F>& b) {
  return a.generators() == b.generators();
}

std::string show(const PointClass& c) {
  return c.tag() + " tau=" + (c.tau ? std::to_string(*c.tau) : std::string("-"));
}

}  // namespace

PropertyRun prop_euler(std::uint64_t seed, int cases) {
  PropertyRun run{"Euler relation"};
  SplitMix64 rng(seed);
  const std::uint64_t primes[] = {5, 7, 101, 32003};
  for (int c = 0; c < cases; ++c) {
    int n = 2 + static_cast<int>(rng.uniform(4));
    unsigned d = 1 + static_cast<unsigned>(rng.uniform(6));
    int terms = 1 + static_cast<int>(rng.uniform(8));
    bool ok;
    if (c % 2 == 0) {
      auto f = random_form(qq(), n, d, terms, rng);
      if (f.is_zero()) f = Poly<Q>::monomial(qq(), n, Monomial::var(0, d), 1);
      ok = euler_holds(f);
    } else {
      std::uint64_t p = primes[rng.uniform(4)];
      if (d % p == 0) ++d;
      auto f = random_form(gf(p), n, d, terms, rng);
      if (f.is_zero()) f = Poly<GF>::monomial(gf(p), n, Monomial::var(0, d), 1);
      ok = euler_holds(f);
    }
    ++run.cases;
    if (!ok) run.fail("case " + std::to_string(c));
  }
  return run;
}

PropertyRun prop_product_rule(std::uint64_t seed, int cases) {
  PropertyRun run{"product rule"};
  SplitMix64 rng(seed);
  for (int c = 0; c < cases; ++c) {
    int n = 1 + static_cast<int>(rng.uniform(5));
    int i = static_cast<int>(rng.uniform(n));
    bool ok;
    if (c % 2 == 0) {
      ok = product_rule_holds(random_poly(qq(), n, 4, 6, rng), random_poly(qq(), n, 4, 6, rng), i);
    } else {
      auto k = gf(c % 4 == 1 ? 3 : 7, c % 3 == 0 ? 2 : 1);
      ok = product_rule_holds(random_poly(k, n, 5, 6, rng), random_poly(k, n, 5, 6, rng), i);
    }
    ++run.cases;
    if (!ok) run.fail("case " + std::to_string(c));
  }
  return run;
}

PropertyRun prop_gb_permutation(std::uint64_t seed, int cases) {
  PropertyRun run{"reduced GB permutation invariance"};
  SplitMix64 rng(seed);
  auto shuffled = [&](auto gens) {
    for (std::size_t i = gens.size(); i > 1; --i) std::swap(gens[i - 1], gens[rng.uniform(i)]);
    return gens;
  };
  for (int c = 0; c < cases; ++c) {
    int n = 2 + static_cast<int>(rng.uniform(2));
    int m = 2 + static_cast<int>(rng.uniform(3));
    auto order = c % 5 == 4 ? MonomialOrder::lex() : MonomialOrder::grevlex();
    bool ok = true;
    std::string why;
    if (c % 2 == 0) {
      auto k = gf(c % 4 == 0 ? 32003 : 7);
      std::vector<Poly<GF>> gens;
      for (int i = 0; i < m; ++i) gens.push_back(random_poly(k, n, 3, 4, rng));
      auto a = buchberger(gens, order);
      auto b = buchberger(shuffled(gens), order);
      ok = same_basis(a, b);
    } else {
      // Homogeneous input over Q, so the modular route must agree as well.
      std::vector<Poly<Q>> gens;
      for (int i = 0; i < m; ++i) gens.push_back(random_form(qq(), n, 1 + static_cast<unsigned>(rng.uniform(3)), 3, rng));
      auto a = buchberger(gens, order);
      auto b = buchberger(shuffled(gens), order);
      ok = same_basis(a, b);
      if (ok && order == MonomialOrder::grevlex()) {
        ok = same_basis(a, modular_groebner(shuffled(gens)));
        if (!ok) why = " (modular)";
      }
    }
    ++run.cases;
    if (!ok) run.fail("case " + std::to_string(c) + why);
  }
  return run;
}

// Plane quartics / cubic surfaces over small fields with a singular point
// forced at (1:0:...:0). The locus length, the sum of local Tjurina numbers
// weighted by residue degree, and the chart quotient dimension must agree.
PropertyRun prop_tjurina_additivity(std::uint64_t seed, int cases) {
  PropertyRun run{"local-global Tjurina additivity"};
  SplitMix64 rng(seed);
  const std::uint64_t primes[] = {5, 7, 11};
  for (int attempt = 0; run.cases < cases && attempt < 20 * cases; ++attempt) {
    bool surface = attempt % 4 == 3;
    int nv = surface ? 4 : 3;
    unsigned d = surface ? 3 : 4;
    auto k = gf(primes[rng.uniform(3)]);
    std::vector<Poly<GF>::Term> t;
    for (auto& m : monomials_of_degree(nv, d)) {
      if (m[0] >= d - 1) continue;
      t.push_back({m, random_scalar(*k, rng)});
    }
    auto F = Poly<GF>::from_terms(k, nv, t);
    if (F.degree() != static_cast<int>(d)) {
      ++run.skipped;
      continue;
    }
    SingularLocus<GF> loc;
    TjurinaResult glob;
    try {
      loc = singular_locus(F);
      if (loc.dimension != LocusDimension::zero) {
        ++run.skipped;
        continue;
      }
      glob = global_tjurina(F);
    } catch (const Error& e) {
      if (e.code() == ErrorCode::NoChartFound) {
        ++run.skipped;
        continue;
      }
      run.fail(format_poly(F) + ": " + e.what());
      ++run.cases;
      continue;
    }
    std::uint64_t sum = 0;
    for (auto& x : loc.points) sum += x.degree * x.cls.tau.value_or(0);
    ++run.cases;
    if (loc.unresolved_length || sum != *loc.tau || glob.tau != *loc.tau) {
      std::ostringstream why;
      why << format_poly(F) << " over " << k->literal() << ": sum " << sum << ", locus " << *loc.tau
          << ", chart " << glob.tau;
      run.fail(why.str());
    }
  }
  return run;
}

namespace {

struct Germ {
  const char* text;
  int nvars;
  unsigned determinacy;  // perturbations start above this degree
};

const Germ kGerms[] = {
    {"x1^2+x2^2+x3^2", 3, 2},       {"x1^3+x2^2+x3^2", 3, 3},     {"x1^4+x2^2+x3^2", 3, 4},
    {"x1^5+x2^2+x3^2", 3, 5},       {"x1^6+x2^2+x3^2", 3, 6},     {"x1^3+x2^3+x3^3", 3, 3},
    {"x1^4+x2^4+x3^4", 3, 4},       {"x1^2*x2+x2^3+x3^2", 3, 5},  {"x1^2+x2^2", 2, 2},
    {"x1^4+x2^2", 2, 4},            {"x1^3+x2^3", 2, 3},          {"x1^2*x2+x2^4", 2, 5},
    {"x1^2+x2^2+x3^2+x4^2", 4, 2},  {"x1^3+x2^2+x3^2+x4^2", 4, 3},
};

template <class F>
bool invariant_once(const std::shared_ptr<const F>& k, const Germ& g, SplitMix64& rng, std::string& why) {
  auto f = parse_poly(g.text, k, g.nvars, 1);
  f += random_form(k, g.nvars, g.determinacy + 1, 2, rng);
  f += random_form(k, g.nvars, g.determinacy + 2, 2, rng);
  std::vector<typename F::Element> origin(g.nvars, k->zero());
  auto before = classify_point(f, origin);
  auto A = random_invertible(*k, g.nvars, rng);
  std::vector<typename F::Element> c(g.nvars), minus_c(g.nvars);
  for (int i = 0; i < g.nvars; ++i) {
    c[i] = random_scalar(*k, rng);
    minus_c[i] = k->neg(c[i]);
  }
  // h(z) = f(A (z - c)) is singular at z = c with the same germ.
  auto h = translate(linear_change(f, A), minus_c);
  auto after = classify_point(h, c);
  bool ok = after.tag() == before.tag() && after.tau == before.tau && after.multiplicity == before.multiplicity;
  if (!ok) why = format_poly(f) + ": " + show(before) + " vs " + show(after);
  return ok;
}

}  // namespace

PropertyRun prop_classification_invariance(std::uint64_t seed, int cases) {
  PropertyRun run{"classification invariance under linear change"};
  SplitMix64 rng(seed);
  const int ngerms = static_cast<int>(std::size(kGerms));
  for (int c = 0; c < cases; ++c) {
    const Germ& g = kGerms[c % ngerms];
    std::string why;
    bool ok;
    try {
      if (c % 3 == 2) ok = invariant_once(qq(), g, rng, why);
      else ok = invariant_once(gf(c % 3 == 0 ? 101 : 32003), g, rng, why);
    } catch (const Error& e) {
      ok = false;
      why = std::string(g.text) + ": " + e.what();
    }
    ++run.cases;
    if (!ok) run.fail(why);
  }
  return run;
}

// Random sets of distinct rational points in P^n: the evaluation rank of
// S_e is non-decreasing, strictly increasing until it reaches #points, and
// full from e = #points - 1 on.
PropertyRun prop_evaluation_rank(std::uint64_t seed, int cases) {
  PropertyRun run{"evaluation rank monotonicity and saturation"};
  SplitMix64 rng(seed);
  for (int c = 0; c < cases; ++c) {
    auto k = gf(c % 2 ? 101 : 13);
    int n = 2 + static_cast<int>(rng.uniform(3));
    std::size_t s = 1 + rng.uniform(8);
    std::set<std::vector<GF::Element>> seen;
    std::vector<SingularPoint<GF>> pts;
    // Occasionally put all points on a line to hit the slow-growth case.
    bool collinear = rng.uniform(4) == 0;
    while (pts.size() < s) {
      std::vector<GF::Element> x(n + 1);
      for (auto& v : x) v = random_scalar(*k, rng);
      if (collinear)
        for (int i = 2; i <= n; ++i) x[i] = 0;
      int j = 0;
      while (j <= n && x[j] == 0) ++j;
      if (j > n) continue;
      auto inv = k->inv(x[j]);
      for (auto& v : x) v = k->mul(v, inv);
      if (!seen.insert(x).second) continue;
      SingularPoint<GF> sp;
      sp.coords = x;
      sp.embedding = FieldEmbedding<GF>(k);
      sp.chart = j;
      pts.push_back(std::move(sp));
    }
    s = pts.size();
    std::uint64_t prev = 0;
    std::string why;
    for (unsigned e = 0; e <= s && why.empty(); ++e) {
      auto r = evaluation_rank(pts, n + 1, e);
      if (r.rank < prev) why = "rank dropped at e=" + std::to_string(e);
      else if (prev < s && e > 0 && r.rank == prev) why = "rank stalled below #points at e=" + std::to_string(e);
      else if (e + 1 >= s && r.rank != s) why = "not saturated at e=" + std::to_string(e);
      prev = r.rank;
    }
    ++run.cases;
    if (!why.empty()) run.fail(std::to_string(s) + " points in P^" + std::to_string(n) + ": " + why);
  }
  return run;
}

PropertyRun prop_jacobian_palindrome(int cases) {
  PropertyRun run{"Jacobian ring palindromicity"};
  for (int N = 1; run.cases < cases; ++N) {
    for (int m = 1; m <= 20 && run.cases < cases; ++m) {
      auto pieces = primitive_pieces(N, m);
      auto series = jacobian_ring_series(N, m);
      bool ok = pieces.size() == static_cast<std::size_t>(N) && std::equal(pieces.begin(), pieces.end(), pieces.rbegin());
      // The whole ring is Gorenstein with socle degree (N+1)(m-2).
      if (m >= 2) {
        ok = ok && series.size() == static_cast<std::size_t>((N + 1) * (m - 2) + 1) &&
             std::equal(series.begin(), series.end(), series.rbegin());
      }
      ++run.cases;
      if (!ok) run.fail("N=" + std::to_string(N) + " m=" + std::to_string(m));
    }
  }
  return run;
}

// Seeded density reports serialize byte-identically across reruns and worker
// counts; smooth <= certified in each.
PropertyRun prop_census_determinism(std::uint64_t seed, int cases) {
  PropertyRun run{"seeded census determinism"};
  SplitMix64 rng(seed);
  for (int c = 0; c < cases; ++c) {
    DensityOptions opt;
    opt.samples = 12;
    opt.seed = rng();
    opt.jobs = 1;
    int n = 2, d = c % 2 ? 3 : 2;
    std::uint64_t q = c % 3 ? 3 : 5;
    auto a = report::to_json(density_experiment(n, q, d, opt)).dump();
    auto again = density_experiment(n, q, d, opt);
    opt.jobs = 3;
    auto b = report::to_json(density_experiment(n, q, d, opt)).dump();
    std::string why;
    if (a != report::to_json(again).dump()) why = "rerun differs";
    else if (a != b) why = "worker count changes the report";
    else if (again.tallies.smooth > again.tallies.certified) why = "smooth exceeds certified";
    ++run.cases;
    if (!why.empty()) run.fail("seed " + std::to_string(opt.seed) + ": " + why);
  }
  return run;
}

std::vector<PropertyRun> all_properties(std::uint64_t seed) {
  return {prop_euler(seed),
          prop_product_rule(seed + 1),
          prop_gb_permutation(seed + 2),
          prop_tjurina_additivity(seed + 3),
          prop_classification_invariance(seed + 4),
          prop_evaluation_rank(seed + 5),
          prop_jacobian_palindrome(),
          prop_census_determinism(seed + 6)};
}

}  // namespace defekt::testing
