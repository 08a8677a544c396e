#pragma once

// Betti numbers, defect computation (cones, nodal even-dimensional
// ambient spaces) and no-defect certificates.

#include <optional>
#include <string>
#include <vector>

#include "defekt/singular.hh"

namespace defekt {

// h^0..h^{2n} of a hypersurface in P^n. An empty entry is not computed.
struct BettiTable {
  int n = 0;
  std::vector<std::optional<std::uint64_t>> h;
  std::vector<std::string> provenance;  // "Lefschetz", "Griffiths", "defect-adjusted", "zero-by-dimension", ...
};

std::uint64_t betti_projective_space(int n, int i);

// Coefficients of ((1 - t^{m-1}) / (1 - t))^{N+1}.
std::vector<std::uint64_t> jacobian_ring_series(int N, int m);
// Dimensions of the primitive middle cohomology pieces, k = 0..N-1.
std::vector<std::uint64_t> primitive_pieces(int N, int m);

BettiTable betti_smooth(int N, int m);
BettiTable betti_blowup(int n, std::uint64_t s);
BettiTable betti_singular(int n, std::uint64_t delta);

struct DefectReport {
  std::uint64_t delta = 0;
  std::string method;  // "nodal-evaluation", "cone-formula", "certified-zero"
  // nodal-evaluation
  unsigned degree = 0;  // e = (n/2) d - n - 1
  std::uint64_t rows = 0, cols = 0, rank = 0;
  std::uint64_t nodes = 0;  // geometric count
  // cone-formula
  std::uint64_t base_betti = 0;
  std::uint64_t ambient_betti = 0;
};

// Cone over a smooth form G in n variables, viewed in P^n.
DefectReport cone_defect(const Poly<Rationals>& G);

// If P is a cone (one variable absent after no change of coordinates),
// returns the index of the missing variable.
template <class F>
std::optional<int> cone_vertex_variable(const Poly<F>& P);

struct EvaluationRank {
  std::uint64_t rows = 0, cols = 0, rank = 0;
};

// Rank over the base field of S_e -> (+)_x kappa(x), evaluation of degree-e
// forms in `nvars` variables at the given points.
template <class F>
EvaluationRank evaluation_rank(const std::vector<SingularPoint<F>>& points, int nvars, unsigned e);

template <class F>
DefectReport nodal_defect(const Poly<F>& P);
template <class F>
DefectReport nodal_defect(const Poly<F>& P, const SingularLocus<F>& locus);

struct RestrictionMap {
  unsigned k = 0;
  int source_degree = 0;
  std::string target;  // "T(f)" or "R/((f)+J(f)^3)"
  std::uint64_t source_dim = 0, target_dim = 0, rank = 0;
  std::uint64_t coker() const { return target_dim - rank; }
};

enum class RestrictionTarget { tjurina, jacobian_cube };

template <class F>
RestrictionMap graded_restriction_matrix(const Poly<F>& P, unsigned k, RestrictionTarget target);
template <class F>
RestrictionMap graded_restriction_matrix(const Poly<F>& P, const Chart<F>& chart, unsigned k,
                                         RestrictionTarget target);

struct ResolutionScore {
  std::uint64_t blowups = 0;  // s
  std::uint64_t score = 0;
  int degree = 0;
  bool below_degree() const { return score < static_cast<std::uint64_t>(degree); }
};

template <class F>
ResolutionScore resolution_score(const SingularLocus<F>& locus);

enum class CertificateKind {
  NoDefectTjurina,
  NoDefectWeightedHomogeneous,
  NoDefectResolution,
  NoDefectOddAk,
  FactorialNodal,
  Inconclusive
};

std::string certificate_name(CertificateKind k);

struct Inequality {
  std::string name;  // route the inequality belongs to
  std::string lhs, relation, rhs;
  bool holds = false;
};

struct Certificate {
  CertificateKind kind = CertificateKind::Inconclusive;
  std::vector<std::string> hypotheses;
  std::vector<Inequality> checks;  // the decisive one is last
  std::optional<std::uint64_t> delta;
  bool is_no_defect() const { return kind != CertificateKind::Inconclusive; }
};

struct CertifyOptions {
  bool assert_weighted_homogeneous = false;
};

template <class F>
Certificate certify_no_defect(const Poly<F>& P, const CertifyOptions& opt = {});
template <class F>
Certificate certify_no_defect(const Poly<F>& P, const SingularLocus<F>& locus, const CertifyOptions& opt = {});

template <class F>
Certificate factoriality_certificate(const Poly<F>& P);

}  // namespace defekt
