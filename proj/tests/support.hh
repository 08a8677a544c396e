#pragma once

// Random inputs and property checks shared by the gtest suites and the
// acceptance binary.

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "defekt/defect.hh"
#include "defekt/random.hh"

namespace defekt {

// Readable gtest failure messages.
template <class F>
void PrintTo(const Poly<F>& f, std::ostream* os) {
  *os << format_poly(f);
}

}  // namespace defekt

namespace defekt::testing {

using Q = Rationals;
using GF = GaloisField;

inline std::shared_ptr<const GF> gf(std::uint64_t p, unsigned e = 1) { return GaloisField::get(p, e); }
inline const std::shared_ptr<const Q>& qq() { return Rationals::instance(); }

template <class F>
Poly<F> P(const std::string& text, const std::shared_ptr<const F>& k, int nvars, int base = 0) {
  return parse_poly(text, k, nvars, base);
}

// Small random scalars: integers in [-5, 5] with an occasional fraction over
// Q, uniform elements over F_q.
mpq_class random_scalar(const Q& k, SplitMix64& rng);
GF::Element random_scalar(const GF& k, SplitMix64& rng);

template <class F>
Poly<F> random_poly(const std::shared_ptr<const F>& k, int nvars, unsigned max_deg, int terms, SplitMix64& rng);
template <class F>
Poly<F> random_form(const std::shared_ptr<const F>& k, int nvars, unsigned d, int terms, SplitMix64& rng);
// Row-major invertible matrix.
template <class F>
std::vector<typename F::Element> random_invertible(const F& k, int n, SplitMix64& rng);

template <class Fn>
std::optional<ErrorCode> error_of(Fn&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  return std::nullopt;
}

struct PropertyRun {
  std::string name;
  int cases = 0;
  int failures = 0;
  int skipped = 0;  // generated inputs outside the property's hypotheses
  std::string first_failure;

  bool ok() const { return failures == 0 && cases >= 200; }
  void fail(const std::string& why) {
    if (!failures++) first_failure = why;
  }
};

PropertyRun prop_euler(std::uint64_t seed, int cases = 200);
PropertyRun prop_product_rule(std::uint64_t seed, int cases = 200);
PropertyRun prop_gb_permutation(std::uint64_t seed, int cases = 200);
PropertyRun prop_tjurina_additivity(std::uint64_t seed, int cases = 200);
PropertyRun prop_classification_invariance(std::uint64_t seed, int cases = 200);
PropertyRun prop_evaluation_rank(std::uint64_t seed, int cases = 200);
PropertyRun prop_jacobian_palindrome(int cases = 200);
PropertyRun prop_census_determinism(std::uint64_t seed, int cases = 200);

std::vector<PropertyRun> all_properties(std::uint64_t seed);

}  // namespace defekt::testing
