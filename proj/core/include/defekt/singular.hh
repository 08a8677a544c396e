#pragma once

// Singular points of projective hypersurfaces: location, multiplicity,
// A_k / ordinary multiple point recognition, local and global Tjurina
// numbers.

#include <optional>
#include <string>
#include <vector>

#include "defekt/groebner.hh"

namespace defekt {

enum class SingularityType { A, OrdinaryMultiple, Other };

struct PointClass {
  unsigned multiplicity = 0;
  SingularityType type = SingularityType::Other;
  unsigned k = 0;                   // A_k index, or the multiplicity m for OrdinaryMultiple
  std::optional<std::uint64_t> tau;  // local Tjurina number; empty if not isolated
  bool weighted_homogeneous = false;

  std::string tag() const;  // "A_3", "OrdinaryMultiple(3)", "Other"
};

template <class F>
struct SingularPoint {
  // Projective coordinates in the residue field, normalized so that the
  // first nonzero coordinate (index `chart`) is 1.
  std::vector<typename F::Element> coords;
  FieldEmbedding<F> embedding;  // base field -> residue field
  unsigned degree = 1;          // residue degree
  int chart = 0;
  PointClass cls;

  std::string coords_string() const;
};

enum class LocusDimension { empty, zero, positive };

struct ChartRecord {
  std::string kind = "coordinate";  // "coordinate" | "linear"
  int index = 0;                    // dehomogenized variable
  std::vector<std::string> form;    // coefficients of the hyperplane, for "linear"
};

template <class F>
struct SingularLocus {
  LocusDimension dimension = LocusDimension::empty;
  std::vector<SingularPoint<F>> points;
  // Sum of deg(x) * tau_x over closed points, i.e. the length of the
  // singular scheme; empty when the locus is positive-dimensional.
  std::optional<std::uint64_t> tau;
  // Part of tau not carried by the listed points (over Q: the non-rational
  // points, which are not enumerated).
  std::uint64_t unresolved_length = 0;
  bool char_divides_degree = false;
  int degree = 0;  // degree of F
  int n = 0;       // dimension of the ambient P^n

  bool fully_resolved() const { return unresolved_length == 0; }
  // Geometric point count (closed points weighted by residue degree).
  std::uint64_t geometric_count() const;
};

// Ideal (F, dF/dx_0, ..., dF/dx_n) of the singular scheme.
template <class F>
std::vector<Poly<F>> singular_ideal(const Poly<F>& P);

template <class F>
SingularLocus<F> singular_locus(const Poly<F>& P);

// Affine operations: f in K[x_1..x_n], point in K^n.
template <class F>
unsigned multiplicity_at(const Poly<F>& f, const std::vector<typename F::Element>& point);
template <class F>
PointClass classify_point(const Poly<F>& f, const std::vector<typename F::Element>& point);
template <class F>
std::uint64_t local_tjurina(const Poly<F>& f, const std::vector<typename F::Element>& point);

// dim_K of the local algebra of the ideal at the origin, by stabilized
// powers of the maximal ideal. Throws NonIsolatedSingularity when the
// dimension does not stabilize by N = 256.
template <class F>
std::uint64_t local_dimension_at_origin(const std::vector<Poly<F>>& gens);

struct TjurinaResult {
  std::uint64_t tau = 0;
  ChartRecord chart;
};

// Affine chart missing the singular locus: coordinate hyperplanes first, then
// random linear forms (at most 32 attempts in total).
template <class F>
struct Chart {
  ChartRecord record;
  std::vector<typename F::Element> change;  // x = A y, row-major; empty for coordinate charts
  Poly<F> affine;                           // the dehomogenized polynomial

  // Same substitution applied to another form.
  Poly<F> apply(const Poly<F>& G) const;
};

template <class F>
Chart<F> choose_chart(const Poly<F>& P);

// (f) + J(f)^i: f together with all products of i partial derivatives.
template <class F>
std::vector<Poly<F>> jacobian_power_ideal(const Poly<F>& f, unsigned i);

template <class F>
TjurinaResult global_tjurina(const Poly<F>& P);

// dim R/((f) + J(f)^i) in the chart chosen as for global_tjurina.
template <class F>
TjurinaResult ideal_power_quotient_dim(const Poly<F>& P, unsigned i);

}  // namespace defekt
