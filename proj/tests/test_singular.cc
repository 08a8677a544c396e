#include <gtest/gtest.h>

#include "support.hh"

using namespace defekt;
using namespace defekt::testing;

namespace {

Poly<Q> affine(const std::string& s, int n) { return P(s, qq(), n, 1); }
std::vector<mpq_class> origin(int n) { return std::vector<mpq_class>(n, 0); }

std::string ak(int k, int n) {
  std::string s = "x1^" + std::to_string(k + 1);
  for (int i = 2; i <= n; ++i) s += " + x" + std::to_string(i) + "^2";
  return s;
}

}  // namespace

TEST(Singular, LocusExamples) {
  auto fermat = singular_locus(P("x0^3+x1^3+x2^3+x3^3", qq(), 4));
  EXPECT_EQ(fermat.dimension, LocusDimension::empty);
  EXPECT_EQ(fermat.tau, 0u);

  auto cone = singular_locus(P("x1^2+x2^2+x3^2", qq(), 4));
  EXPECT_EQ(cone.dimension, LocusDimension::zero);
  ASSERT_EQ(cone.points.size(), 1u);
  EXPECT_EQ(cone.points[0].coords, (std::vector<mpq_class>{1, 0, 0, 0}));
  EXPECT_EQ(cone.points[0].cls.tag(), "A_1");

  auto planes = singular_locus(P("x0*x1", qq(), 4));
  EXPECT_EQ(planes.dimension, LocusDimension::positive);
  EXPECT_FALSE(planes.tau.has_value());

  EXPECT_EQ(error_of([] { singular_locus(P("x0^2+x1", qq(), 2)); }), ErrorCode::NotHomogeneous);
}

TEST(Singular, CharDividesDegree) {
  auto loc = singular_locus(P("x0^3+x1^3+x2^3", gf(3), 3));
  EXPECT_TRUE(loc.char_divides_degree);
  EXPECT_EQ(loc.dimension, LocusDimension::positive);  // (x0+x1+x2)^3 in characteristic 3
}

TEST(Singular, Multiplicity) {
  EXPECT_EQ(multiplicity_at(affine("x1^2+x2^2+x3^2", 3), origin(3)), 2u);
  EXPECT_EQ(multiplicity_at(affine("x1^3+x2^3+x3^3", 3), origin(3)), 3u);
  EXPECT_EQ(multiplicity_at(affine("x1^3+x2^2", 2), origin(2)), 2u);
  EXPECT_EQ(error_of([] { multiplicity_at(affine("x1^2+1", 1), origin(1)); }), ErrorCode::PointNotOnHypersurface);
}

TEST(Singular, ClassifyExamples) {
  auto a1 = classify_point(affine("x1^2+x2^2+x3^2", 3), origin(3));
  EXPECT_EQ(a1.tag(), "A_1");
  EXPECT_EQ(a1.tau, 1u);
  auto a2 = classify_point(affine("x1^3+x2^2+x3^2", 3), origin(3));
  EXPECT_EQ(a2.tag(), "A_2");
  EXPECT_EQ(a2.tau, 2u);
  auto omp = classify_point(affine("x1^3+x2^3+x3^3", 3), origin(3));
  EXPECT_EQ(omp.type, SingularityType::OrdinaryMultiple);
  EXPECT_EQ(omp.k, 3u);
  EXPECT_EQ(omp.tau, 8u);
  EXPECT_TRUE(omp.weighted_homogeneous);
  // D_4 has corank 2, D_5 a non-reduced tangent cone.
  EXPECT_EQ(classify_point(affine("x1^2*x2+x2^3+x3^2", 3), origin(3)).tag(), "Other");
  EXPECT_EQ(classify_point(affine("x1^2*x2+x2^4", 2), origin(2)).tag(), "Other");
  // x2 (x1^2 + x2^2): three distinct tangent lines.
  EXPECT_EQ(classify_point(affine("x1^2*x2+x2^3", 2), origin(2)).tag(), "OrdinaryMultiple(3)");
}

TEST(Singular, ClassifyErrors) {
  EXPECT_EQ(error_of([] { classify_point(affine("x1+x2^2", 2), origin(2)); }), ErrorCode::SmoothPoint);
  auto f = P("x1^2+x2^2+x3^2", gf(2), 3, 1);
  EXPECT_EQ(error_of([&] { classify_point(f, std::vector<GF::Element>(3, 0)); }), ErrorCode::CharacteristicTwo);
  EXPECT_EQ(error_of([] { local_tjurina(affine("x1^2", 2), origin(2)); }), ErrorCode::NonIsolatedSingularity);
}

TEST(Singular, AkNormalForms) {
  for (int n : {2, 3, 4})
    for (int k = 1; k <= 5; ++k) {
      auto c = classify_point(affine(ak(k, n), n), origin(n));
      EXPECT_EQ(c.tag(), "A_" + std::to_string(k)) << ak(k, n);
      EXPECT_EQ(c.tau, static_cast<std::uint64_t>(k));
      EXPECT_EQ(local_tjurina(affine(ak(k, n), n), origin(n)), static_cast<std::uint64_t>(k));
    }
}

TEST(Singular, ClassificationInvariance) {
  auto run = prop_classification_invariance(31, 200);
  EXPECT_EQ(run.failures, 0) << run.first_failure;
}

TEST(Singular, GlobalTjurina) {
  EXPECT_EQ(global_tjurina(P("x0^3+x1^3+x2^3+x3^3", qq(), 4)).tau, 0u);
  auto cone = global_tjurina(P("x1^3+x2^3+x3^3", qq(), 4));
  EXPECT_EQ(cone.tau, 8u);
  EXPECT_EQ(cone.chart.index, 0);
  EXPECT_EQ(error_of([] { global_tjurina(P("x0*x1", qq(), 4)); }), ErrorCode::PositiveDimensionalLocus);
}

TEST(Singular, OneNodeQuarticSurface) {
  // Node seed x0^2 (x1^2+x2^2+x3^2) plus a generic quartic vanishing to
  // order 3 at (1:0:0:0).
  auto F = P("x0^2*(x1^2+x2^2+x3^2) + x0*(x1^3 - 2*x2^3 + 3*x1*x2*x3) + x1^4 + x2^4 + x3^4 + x1*x2^3 - x2*x3^3", qq(), 4);
  auto loc = singular_locus(F);
  ASSERT_EQ(loc.dimension, LocusDimension::zero);
  auto t = global_tjurina(F);
  std::uint64_t listed = 0;
  for (auto& p : loc.points) listed += p.cls.tau.value_or(0);
  EXPECT_EQ(t.tau, *loc.tau);
  EXPECT_EQ(listed + loc.unresolved_length, *loc.tau);
  bool node_at_vertex = false;
  for (auto& p : loc.points)
    if (p.coords == std::vector<mpq_class>{1, 0, 0, 0}) node_at_vertex = p.cls.tag() == "A_1";
  EXPECT_TRUE(node_at_vertex);
}

TEST(Singular, IdealPowers) {
  auto cone = P("x1^3+x2^3+x3^3", qq(), 4);
  EXPECT_EQ(ideal_power_quotient_dim(cone, 1).tau, 8u);
  auto smooth = P("x0^3+x1^3+x2^3+x3^3", qq(), 4);
  for (unsigned i = 1; i <= 3; ++i) EXPECT_EQ(ideal_power_quotient_dim(smooth, i).tau, 0u);
  // Affine node: R/(f, m^3) has dimension 10 - 1.
  auto node = affine("x1^2+x2^2+x3^2", 3);
  auto gb = buchberger(jacobian_power_ideal(node, 3));
  EXPECT_EQ(gb.quotient_dimension(), 9u);
}

TEST(Singular, TjurinaAdditivity) {
  auto run = prop_tjurina_additivity(77, 200);
  EXPECT_EQ(run.failures, 0) << run.first_failure;
  EXPECT_EQ(run.cases, 200);
}

TEST(Singular, ConjugatePointsOverFiniteField) {
  // A_3 points at the conjugate pair x0^2 + x1^2 = x2 = 0 over F_3.
  auto k = gf(3);
  auto F = P("(x0^2+x1^2)^2 + x2^4", k, 3);
  auto loc = singular_locus(F);
  ASSERT_EQ(loc.dimension, LocusDimension::zero);
  EXPECT_EQ(loc.unresolved_length, 0u);
  std::uint64_t sum = 0;
  bool has_degree_two = false;
  for (auto& p : loc.points) {
    sum += p.degree * p.cls.tau.value_or(0);
    has_degree_two = has_degree_two || p.degree == 2;
  }
  EXPECT_TRUE(has_degree_two);
  EXPECT_EQ(sum, *loc.tau);
  EXPECT_EQ(sum, 6u);
  EXPECT_EQ(global_tjurina(F).tau, 6u);
}
