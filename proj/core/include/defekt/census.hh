#pragma once

// Finite-field counting: quadratic forms by rank, 2-jets, zeta values and
// density experiments for smooth / certified hypersurfaces.

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace defekt {

// q must be an odd prime power; returns p with q = p^e.
std::uint64_t check_odd_prime_power(std::uint64_t q);

// Number of quadratic forms in n variables over F_q of rank >= n-1.
mpz_class quad_count_formula(int n, std::uint64_t q);

struct QuadCensus {
  int n = 0;
  std::uint64_t q = 0;
  mpz_class count;
  std::string route;                    // "closed-form" | "brute-force"
  std::vector<std::uint64_t> histogram;  // by rank 0..n (brute force only)
};

QuadCensus quad_census_formula(int n, std::uint64_t q);
QuadCensus quad_count_brute(int n, std::uint64_t q);

// q^{n(n+1)/2}(1 - q^-2) <= count <= q^{n(n+1)/2}(1 - q^-3)
bool quad_sandwich(int n, std::uint64_t q, const mpz_class& count);

struct JetCensus {
  int n = 0;
  std::uint64_t r = 0;
  // not on X, smooth, node, corank one (A_k, k >= 2), worse
  std::vector<std::uint64_t> counts;
  std::uint64_t total = 0;
  mpq_class probability;  // at most an A_k singularity
  mpq_class closed_form;
  bool sandwich = false;  // 1 - r^{-n-4} >= P >= 1 - r^{-n-3}
};

JetCensus jet_census(int n, std::uint64_t r);

enum class ZetaConvention { standard, truncated };

// 1/zeta_{P^n}(s): prod_{i=0}^n (1 - q^{i-s}) (standard) or
// prod_{i=1}^n (1 - q^{i-s}) (truncated: the i = 0 factor dropped).
mpq_class zeta_inverse(int n, std::uint64_t q, int s, ZetaConvention conv = ZetaConvention::standard);

struct Interval {
  double lo = 0, hi = 0;
  double half_width() const { return (hi - lo) / 2; }
};

// Wilson score interval for k successes in N trials.
Interval wilson(std::uint64_t k, std::uint64_t N, double z = 1.959963984540054);

enum class FormClass { smooth, certified, ak_omp_uncertified, other_points, positive_dimensional, zero, failed };

struct FormVerdict {
  FormClass cls = FormClass::failed;
  bool certified_resolution = false;  // score < d with all points A_k or OMP
  bool certified_odd_ak = false;      // n odd with only A_k points
};

struct DensityTallies {
  std::uint64_t total = 0;
  std::uint64_t smooth = 0;
  std::uint64_t ak_omp = 0;  // every singular point A_k or OMP (smooth included)
  std::uint64_t certified = 0;
  std::uint64_t certified_resolution = 0;
  std::uint64_t positive_dimensional = 0;
  std::uint64_t failed = 0;  // budget or other errors, counted inconclusive
  std::uint64_t inconclusive() const { return total - certified; }
  void add(const FormVerdict& v);
  DensityTallies& operator+=(const DensityTallies& o);
};

struct DensityReport {
  int n = 0;
  std::uint64_t q = 0;
  int d = 0;
  bool exhaustive = false;
  std::uint64_t samples = 0;
  std::optional<std::uint64_t> seed;
  DensityTallies tallies;
  mpq_class smooth_ref_standard, smooth_ref_truncated;      // 1/zeta(n+1)
  mpq_class nodefect_ref_standard, nodefect_ref_truncated;  // 1/zeta(n+3)
};

struct DensityOptions {
  bool exhaustive = false;
  std::uint64_t samples = 0;
  std::uint64_t seed = 0;
  unsigned jobs = 0;  // 0: hardware concurrency
};

// Classification of one form in n+1 variables over F_q, coefficients given
// in the order of monomials_of_degree(n+1, d).
FormVerdict classify_form(int n, std::uint64_t q, int d, const std::vector<std::uint64_t>& coeffs);

DensityReport density_experiment(int n, std::uint64_t q, int d, const DensityOptions& opt);

}  // namespace defekt
