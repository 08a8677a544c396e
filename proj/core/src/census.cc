#include "defekt/census.hh"

#include <algorithm>
#include <cmath>
#include <thread>

#include "defekt/defect.hh"

namespace defekt {

namespace {

mpz_class zpow(std::uint64_t q, unsigned long e) {
  mpz_class r;
  mpz_ui_pow_ui(r.get_mpz_t(), q, e);
  return r;
}

// q^-e as a rational, e may be negative.
mpq_class qpow(std::uint64_t q, long e) {
  if (e >= 0) return mpq_class(zpow(q, static_cast<unsigned long>(e)));
  mpq_class r(mpz_class(1), zpow(q, static_cast<unsigned long>(-e)));
  r.canonicalize();
  return r;
}

std::uint64_t checked_power(std::uint64_t q, unsigned long e, std::uint64_t budget, const char* what) {
  mpz_class total = zpow(q, e);
  if (total > mpz_class(std::to_string(budget)))
    fail(ErrorCode::BudgetExceeded, std::string(what) + ": " + total.get_str() + " cases exceed the budget of " +
                                        std::to_string(budget));
  return total.get_ui();
}

// Rank of a small symmetric matrix over F_q (destroys `a`).
std::size_t small_rank(const GaloisField& k, std::vector<std::uint64_t>& a, int n) {
  std::size_t rank = 0;
  for (int c = 0, r = 0; c < n && r < n; ++c) {
    int piv = r;
    while (piv < n && a[piv * n + c] == 0) ++piv;
    if (piv == n) continue;
    for (int j = 0; j < n; ++j) std::swap(a[piv * n + j], a[r * n + j]);
    auto inv = k.inv(a[r * n + c]);
    for (int i = r + 1; i < n; ++i) {
      if (a[i * n + c] == 0) continue;
      auto f = k.mul(a[i * n + c], inv);
      for (int j = c; j < n; ++j) a[i * n + j] = k.sub(a[i * n + j], k.mul(f, a[r * n + j]));
    }
    ++r;
    ++rank;
  }
  return rank;
}

// Hessian-type matrix of the quadratic form with upper-triangular
// coefficient tuple `c` (order (0,0),(0,1),...,(0,n-1),(1,1),...).
void quad_matrix(const GaloisField& k, const std::vector<std::uint64_t>& c, int n, std::vector<std::uint64_t>& a) {
  a.assign(static_cast<std::size_t>(n * n), 0);
  std::size_t idx = 0;
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j, ++idx) {
      if (i == j) a[i * n + i] = k.add(c[idx], c[idx]);
      else a[i * n + j] = a[j * n + i] = c[idx];
    }
}

void next_tuple(std::vector<std::uint64_t>& c, std::uint64_t q) {
  for (auto& x : c) {
    if (++x < q) return;
    x = 0;
  }
}

}  // namespace

std::uint64_t check_odd_prime_power(std::uint64_t q) {
  if (q < 2) fail(ErrorCode::InvalidField, "q must be a prime power");
  if (q % 2 == 0) fail(ErrorCode::EvenCharacteristic, "q must be odd");
  std::uint64_t p = 3;
  while (q % p) p += 2;
  std::uint64_t m = q;
  while (m % p == 0) m /= p;
  if (m != 1) fail(ErrorCode::InvalidField, std::to_string(q) + " is not a prime power");
  return p;
}

mpz_class quad_count_formula(int n, std::uint64_t q) {
  check_odd_prime_power(q);
  if (n < 0) fail(ErrorCode::InvalidArgument, "n must be non-negative");
  if (n % 2 == 1) return zpow(q, static_cast<unsigned long>(n)) * quad_count_formula(n - 1, q);
  // q^{n(n+1)/2} (q^{-n-1}; q^2)_{n/2}
  mpq_class v(zpow(q, static_cast<unsigned long>(n) * (n + 1) / 2));
  for (int i = 0; i < n / 2; ++i) v *= 1 - qpow(q, -n - 1 + 2 * i);
  v.canonicalize();
  if (v.get_den() != 1) fail(ErrorCode::InvalidArgument, "closed form is not integral");
  return v.get_num();
}

QuadCensus quad_census_formula(int n, std::uint64_t q) {
  QuadCensus c;
  c.n = n;
  c.q = q;
  c.route = "closed-form";
  c.count = quad_count_formula(n, q);
  return c;
}

QuadCensus quad_count_brute(int n, std::uint64_t q) {
  const std::uint64_t p = check_odd_prime_power(q);
  if (n < 1) fail(ErrorCode::InvalidArgument, "n must be at least 1");
  const unsigned long N = static_cast<unsigned long>(n) * (n + 1) / 2;
  const std::uint64_t total = checked_power(q, N, 100000000, "quadratic form census");
  unsigned e = 0;
  for (std::uint64_t m = q; m > 1; m /= p) ++e;
  auto k = GaloisField::get(p, e);
  QuadCensus c;
  c.n = n;
  c.q = q;
  c.route = "brute-force";
  c.histogram.assign(n + 1, 0);
  std::vector<std::uint64_t> coeffs(N, 0), a;
  for (std::uint64_t t = 0; t < total; ++t) {
    quad_matrix(*k, coeffs, n, a);
    ++c.histogram[small_rank(*k, a, n)];
    next_tuple(coeffs, q);
  }
  std::uint64_t good = c.histogram[n] + (n >= 1 ? c.histogram[n - 1] : 0);
  c.count = mpz_class(std::to_string(good));
  return c;
}

bool quad_sandwich(int n, std::uint64_t q, const mpz_class& count) {
  mpq_class top(zpow(q, static_cast<unsigned long>(n) * (n + 1) / 2));
  mpq_class c(count);
  return top * (1 - qpow(q, -2)) <= c && c <= top * (1 - qpow(q, -3));
}

JetCensus jet_census(int n, std::uint64_t r) {
  const std::uint64_t p = check_odd_prime_power(r);
  if (n < 1) fail(ErrorCode::InvalidArgument, "n must be at least 1");
  const unsigned long Nq = static_cast<unsigned long>(n) * (n + 1) / 2;
  const unsigned long N = 1 + n + Nq;
  JetCensus jc;
  jc.n = n;
  jc.r = r;
  jc.total = checked_power(r, N, 100000000, "jet census");
  unsigned e = 0;
  for (std::uint64_t m = r; m > 1; m /= p) ++e;
  auto k = GaloisField::get(p, e);
  jc.counts.assign(5, 0);
  // coefficient tuple: f0, f1 (n entries), f2 (Nq entries)
  std::vector<std::uint64_t> c(N, 0), quad(Nq), a;
  for (std::uint64_t t = 0; t < jc.total; ++t) {
    if (c[0] != 0) {
      ++jc.counts[0];
    } else if (std::any_of(c.begin() + 1, c.begin() + 1 + n, [](auto x) { return x != 0; })) {
      ++jc.counts[1];
    } else {
      std::copy(c.begin() + 1 + n, c.end(), quad.begin());
      quad_matrix(*k, quad, n, a);
      auto rank = static_cast<int>(small_rank(*k, a, n));
      ++jc.counts[rank == n ? 2 : rank == n - 1 ? 3 : 4];
    }
    next_tuple(c, r);
  }
  mpz_class total(std::to_string(jc.total));
  jc.probability = mpq_class(total - mpz_class(std::to_string(jc.counts[4])), total);
  jc.probability.canonicalize();
  jc.closed_form = 1 - mpq_class(zpow(r, Nq) - quad_count_formula(n, r), zpow(r, N));
  jc.closed_form.canonicalize();
  jc.sandwich = 1 - qpow(r, -n - 4) >= jc.probability && jc.probability >= 1 - qpow(r, -n - 3);
  return jc;
}

mpq_class zeta_inverse(int n, std::uint64_t q, int s, ZetaConvention conv) {
  if (s <= n) fail(ErrorCode::InvalidArgument, "zeta_inverse needs s > n");
  mpq_class v = 1;
  for (int i = conv == ZetaConvention::standard ? 0 : 1; i <= n; ++i) v *= 1 - qpow(q, i - s);
  v.canonicalize();
  return v;
}

Interval wilson(std::uint64_t k, std::uint64_t N, double z) {
  if (N == 0) return {0, 1};
  const double n = static_cast<double>(N);
  const double p = static_cast<double>(k) / n;
  const double z2 = z * z;
  const double denom = 1 + z2 / n;
  const double center = (p + z2 / (2 * n)) / denom;
  const double half = z / denom * std::sqrt(p * (1 - p) / n + z2 / (4 * n * n));
  return {std::max(0.0, center - half), std::min(1.0, center + half)};
}

// ---------------------------------------------------------------------------
// Density

void DensityTallies::add(const FormVerdict& v) {
  ++total;
  switch (v.cls) {
    case FormClass::smooth:
      ++smooth;
      ++ak_omp;
      ++certified;
      ++certified_resolution;
      return;
    case FormClass::certified:
      ++ak_omp;
      ++certified;
      if (v.certified_resolution) ++certified_resolution;
      return;
    case FormClass::ak_omp_uncertified:
      ++ak_omp;
      return;
    case FormClass::positive_dimensional:
    case FormClass::zero:
      ++positive_dimensional;
      return;
    case FormClass::failed:
      ++failed;
      return;
    case FormClass::other_points:
      return;
  }
}

DensityTallies& DensityTallies::operator+=(const DensityTallies& o) {
  total += o.total;
  smooth += o.smooth;
  ak_omp += o.ak_omp;
  certified += o.certified;
  certified_resolution += o.certified_resolution;
  positive_dimensional += o.positive_dimensional;
  failed += o.failed;
  return *this;
}

namespace {

FormVerdict verdict(const Poly<GaloisField>& P) {
  FormVerdict v;
  if (P.is_zero()) {
    v.cls = FormClass::zero;
    return v;
  }
  if (P.degree() < 2) {
    v.cls = FormClass::smooth;
    v.certified_resolution = true;
    return v;
  }
  try {
    auto locus = singular_locus(P);
    if (locus.dimension == LocusDimension::empty) {
      v.cls = FormClass::smooth;
      v.certified_resolution = true;
      return v;
    }
    if (locus.dimension == LocusDimension::positive) {
      v.cls = FormClass::positive_dimensional;
      return v;
    }
    bool all_a = true, all_ao = true;
    for (auto& p : locus.points) {
      if (p.cls.type != SingularityType::A) all_a = false;
      if (p.cls.type == SingularityType::Other) all_ao = false;
    }
    v.certified_odd_ak = locus.n % 2 == 1 && all_a;
    v.certified_resolution = all_ao && resolution_score(locus).below_degree();
    if (v.certified_odd_ak || v.certified_resolution) v.cls = FormClass::certified;
    else v.cls = all_ao ? FormClass::ak_omp_uncertified : FormClass::other_points;
  } catch (const Error&) {
    v.cls = FormClass::failed;
  }
  return v;
}

std::shared_ptr<const GaloisField> field_for(std::uint64_t q) {
  const std::uint64_t p = check_odd_prime_power(q);
  unsigned e = 0;
  for (std::uint64_t m = q; m > 1; m /= p) ++e;
  return GaloisField::get(p, e);
}

}  // namespace

FormVerdict classify_form(int n, std::uint64_t q, int d, const std::vector<std::uint64_t>& coeffs) {
  auto k = field_for(q);
  auto monos = monomials_of_degree(n + 1, static_cast<unsigned>(d));
  if (coeffs.size() != monos.size()) fail(ErrorCode::DimensionMismatch, "coefficient count does not match S_d");
  std::vector<Poly<GaloisField>::Term> terms;
  for (std::size_t i = 0; i < monos.size(); ++i)
    if (coeffs[i]) terms.push_back({monos[i], coeffs[i]});
  return verdict(Poly<GaloisField>::from_sorted(k, n + 1, std::move(terms)));
}

DensityReport density_experiment(int n, std::uint64_t q, int d, const DensityOptions& opt) {
  auto k = field_for(q);
  if (n < 1 || n + 1 > kMaxVars) fail(ErrorCode::InvalidArgument, "n out of range");
  if (d < 1) fail(ErrorCode::InvalidArgument, "d must be at least 1");
  DensityReport rep;
  rep.n = n;
  rep.q = q;
  rep.d = d;
  rep.exhaustive = opt.exhaustive;
  rep.smooth_ref_standard = zeta_inverse(n, q, n + 1, ZetaConvention::standard);
  rep.smooth_ref_truncated = zeta_inverse(n, q, n + 1, ZetaConvention::truncated);
  rep.nodefect_ref_standard = zeta_inverse(n, q, n + 3, ZetaConvention::standard);
  rep.nodefect_ref_truncated = zeta_inverse(n, q, n + 3, ZetaConvention::truncated);

  const auto monos = monomials_of_degree(n + 1, static_cast<unsigned>(d));
  std::uint64_t total;
  if (opt.exhaustive) {
    total = checked_power(q, monos.size(), 10000000, "exhaustive density census");
  } else {
    if (opt.samples == 0) fail(ErrorCode::InvalidArgument, "sample mode needs at least one sample");
    total = opt.samples;
    rep.seed = opt.seed;
  }
  rep.samples = total;

  auto form_at = [&](std::uint64_t idx) {
    std::vector<Poly<GaloisField>::Term> terms;
    if (opt.exhaustive) {
      for (auto& m : monos) {
        std::uint64_t c = idx % q;
        idx /= q;
        if (c) terms.push_back({m, c});
      }
      return Poly<GaloisField>::from_sorted(k, n + 1, std::move(terms));
    }
    auto rng = SplitMix64::stream(opt.seed, idx);
    return random_form(k, n + 1, static_cast<unsigned>(d), rng);
  };

  unsigned jobs = opt.jobs ? opt.jobs : std::max(1u, std::thread::hardware_concurrency());
  jobs = static_cast<unsigned>(std::min<std::uint64_t>(jobs, total));
  std::vector<DensityTallies> parts(jobs);
  auto work = [&](unsigned w) {
    for (std::uint64_t i = w; i < total; i += jobs) parts[w].add(verdict(form_at(i)));
  };
  if (jobs <= 1) {
    work(0);
  } else {
    std::vector<std::thread> threads;
    for (unsigned w = 0; w < jobs; ++w) threads.emplace_back(work, w);
    for (auto& t : threads) t.join();
  }
  for (auto& p : parts) rep.tallies += p;
  return rep;
}

}  // namespace defekt
