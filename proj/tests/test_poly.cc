#include <gtest/gtest.h>

#include <map>
#include <set>

#include "support.hh"

using namespace defekt;
using namespace defekt::testing;

TEST(Poly, ParseAndCancel) {
  auto f = P("x0^3 + 2*x1*x2^2", qq(), 3);
  EXPECT_EQ(f.size(), 2u);
  EXPECT_TRUE(P("x1^2 - x1^2", qq(), 3).is_zero());
  EXPECT_TRUE(P("x0*x1 + 4*x0*x1", gf(5), 2).is_zero());
  EXPECT_EQ(P("(x0+x1)^2", qq(), 2), P("x0^2 + 2*x0*x1 + x1^2", qq(), 2));
  EXPECT_EQ(P("x0/2 + 1/3", qq(), 1).coefficient(Monomial::var(0)), mpq_class(1, 2));
}

TEST(Poly, ParseErrors) {
  EXPECT_EQ(error_of([] { P("x0 +* x1", qq(), 2); }), ErrorCode::SyntaxError);
  EXPECT_EQ(error_of([] { P("x5", qq(), 2); }), ErrorCode::UnknownVariable);
  EXPECT_EQ(error_of([] { P("x0/5", gf(5), 1); }), ErrorCode::CoefficientNotInField);
}

TEST(Poly, FormatRoundTrip) {
  SplitMix64 rng(11);
  for (int i = 0; i < 200; ++i) {
    auto f = random_poly(qq(), 4, 5, 6, rng);
    EXPECT_EQ(P(format_poly(f), qq(), 4), f) << format_poly(f);
    auto k = gf(3, 2);
    auto g = random_poly(k, 3, 4, 5, rng);
    EXPECT_EQ(P(format_poly(g), k, 3), g) << format_poly(g);
  }
}

TEST(Poly, PartialDerivatives) {
  auto f = P("x1^3 + 2*x1*x2", qq(), 2, 1);
  EXPECT_EQ(partial_derivative(f, 0), P("3*x1^2 + 2*x2", qq(), 2, 1));
  EXPECT_TRUE(partial_derivative(P("x1^3", gf(3), 1, 1), 0).is_zero());
  EXPECT_EQ(error_of([&] { partial_derivative(f, 2); }), ErrorCode::IndexOutOfRange);
}

TEST(Poly, EulerAndProductRule) {
  auto e = prop_euler(1, 200);
  EXPECT_EQ(e.failures, 0) << e.first_failure;
  auto p = prop_product_rule(2, 200);
  EXPECT_EQ(p.failures, 0) << p.first_failure;
}

TEST(Poly, DehomogenizeAndHomogenize) {
  auto F = P("x0^2 + x1*x2", qq(), 3);
  auto f = dehomogenize(F, 0);
  EXPECT_EQ(f, P("1 + x1*x2", qq(), 2, 1));
  EXPECT_EQ(homogenize(f, 2), F);
  EXPECT_EQ(dehomogenize(P("x0*x1", qq(), 2), 0), P("x1", qq(), 1, 1));
  EXPECT_EQ(error_of([] { dehomogenize(P("x0 + x1^2", qq(), 2), 0); }), ErrorCode::NotHomogeneous);
  SplitMix64 rng(3);
  for (int i = 0; i < 100; ++i) {
    auto G = random_form(qq(), 4, 1 + static_cast<unsigned>(rng.uniform(4)), 5, rng);
    // The round trip needs x0 not to divide G.
    bool divisible = true;
    for (auto& t : G.terms()) divisible = divisible && t.m[0] > 0;
    if (divisible) continue;
    EXPECT_EQ(homogenize(dehomogenize(G, 0), G.degree()), G) << format_poly(G);
  }
}

TEST(Poly, JetLayers) {
  auto f = P("x1^2 + x2^2", qq(), 2, 1);
  auto j = jet_at(f, {0, 0}, 2);
  EXPECT_TRUE(j.layers[0].is_zero());
  EXPECT_TRUE(j.layers[1].is_zero());
  EXPECT_EQ(j.layers[2], f);
  auto g = P("1 + x1", qq(), 2, 1);
  EXPECT_EQ(jet_at(g, {0, 0}, 2).layers[0].constant_term(), 1);
  auto c = jet_at(P("x1^3 + x2^2", qq(), 2, 1), {0, 0}, 2);
  EXPECT_EQ(c.layers[2], P("x2^2", qq(), 2, 1));
  EXPECT_EQ(error_of([&] { jet_at(f, {0}, 2); }), ErrorCode::DimensionMismatch);
}

TEST(Poly, JetReconstructsPolynomial) {
  // Sum of layers at a, translated back by -a, gives f when order >= deg f.
  SplitMix64 rng(5);
  for (int i = 0; i < 200; ++i) {
    auto k = gf(i % 2 ? 3 : 7);
    int n = 1 + static_cast<int>(rng.uniform(3));
    auto f = random_poly(k, n, 4, 5, rng);
    std::vector<GF::Element> a(n), minus(n);
    for (int t = 0; t < n; ++t) {
      a[t] = random_scalar(*k, rng);
      minus[t] = k->neg(a[t]);
    }
    int order = std::max(f.degree(), 0);
    auto jet = jet_at(f, a, order);
    Poly<GF> sum(k, n);
    for (auto& layer : jet.layers) sum += layer;
    EXPECT_EQ(translate(sum, minus), f);
  }
}

TEST(Poly, SubstitutionsAgreeWithEvaluation) {
  SplitMix64 rng(8);
  auto k = gf(101);
  for (int i = 0; i < 100; ++i) {
    auto f = random_poly(k, 3, 4, 6, rng);
    auto A = random_invertible(*k, 3, rng);
    std::vector<GF::Element> y{random_scalar(*k, rng), random_scalar(*k, rng), random_scalar(*k, rng)};
    std::vector<GF::Element> x(3, 0);
    for (int r = 0; r < 3; ++r)
      for (int c = 0; c < 3; ++c) x[r] = k->add(x[r], k->mul(A[r * 3 + c], y[c]));
    EXPECT_EQ(evaluate(linear_change(f, A), y), evaluate(f, x));
    auto g = specialize(f, 1, y[1]);
    EXPECT_EQ(evaluate(g, {y[0], y[2]}), evaluate(f, y));
  }
}

TEST(Poly, RandomFormUniform) {
  // F_3, 2 variables, degree 1: 9 forms; chi-square over 10^5 draws.
  auto k = gf(3);
  SplitMix64 rng(2024);
  std::map<std::string, int> counts;
  const int N = 100000;
  for (int i = 0; i < N; ++i) counts[format_poly(defekt::random_form(k, 2, 1, rng))]++;
  ASSERT_EQ(counts.size(), 9u);
  double chi = 0, expect = N / 9.0;
  for (auto& [_, c] : counts) chi += (c - expect) * (c - expect) / expect;
  EXPECT_LT(chi, 26.1);  // 99.9% quantile, 8 degrees of freedom
  std::set<std::string> affine;
  SplitMix64 r2(1);
  for (int i = 0; i < 2000; ++i) affine.insert(format_poly(defekt::random_form(k, 1, 2, r2, false)));
  EXPECT_EQ(affine.size(), 27u);
  SplitMix64 a(77), b(77);
  for (int i = 0; i < 20; ++i) EXPECT_EQ(defekt::random_form(k, 3, 3, a), defekt::random_form(k, 3, 3, b));
  EXPECT_EQ(SplitMix64::stream(5, 9)(), SplitMix64::stream(5, 9)());
}

TEST(Poly, VariableIndexScan) {
  EXPECT_EQ(max_variable_index("x0^2 + x13*x2"), 13);
  EXPECT_EQ(min_variable_index("x3 + x1"), 1);
  EXPECT_EQ(max_variable_index("3 + 4"), -1);
}
