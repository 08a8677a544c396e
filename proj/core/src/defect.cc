#include "defekt/defect.hh"

#include <algorithm>

namespace defekt {

std::uint64_t betti_projective_space(int n, int i) {
  return (i >= 0 && i <= 2 * n && i % 2 == 0) ? 1 : 0;
}

std::vector<std::uint64_t> jacobian_ring_series(int N, int m) {
  if (m < 2) return {};
  std::vector<std::uint64_t> series{1};
  for (int r = 0; r <= N; ++r) {
    std::vector<std::uint64_t> next(series.size() + static_cast<std::size_t>(m) - 2, 0);
    for (std::size_t a = 0; a < series.size(); ++a)
      for (int b = 0; b <= m - 2; ++b) next[a + b] += series[a];
    series = std::move(next);
  }
  return series;
}

std::vector<std::uint64_t> primitive_pieces(int N, int m) {
  auto series = jacobian_ring_series(N, m);
  std::vector<std::uint64_t> out;
  for (int k = 0; k < N; ++k) {
    long deg = static_cast<long>(k + 1) * m - N - 1;
    out.push_back(deg >= 0 && deg < static_cast<long>(series.size()) ? series[deg] : 0);
  }
  return out;
}

BettiTable betti_smooth(int N, int m) {
  if (N < 1 || m < 1) fail(ErrorCode::InvalidArgument, "betti_smooth needs N >= 1 and m >= 1");
  BettiTable t;
  t.n = N;
  for (int i = 0; i <= 2 * N; ++i) {
    if (i > 2 * (N - 1)) {
      t.h.emplace_back(0);
      t.provenance.emplace_back("zero-by-dimension");
    } else if (i == N - 1) {
      std::uint64_t prim = 0;
      for (auto v : primitive_pieces(N, m)) prim += v;
      t.h.emplace_back(prim + ((N - 1) % 2 == 0 ? 1 : 0));
      t.provenance.emplace_back("Griffiths");
    } else {
      t.h.emplace_back(betti_projective_space(N, i));
      t.provenance.emplace_back("Lefschetz");
    }
  }
  return t;
}

BettiTable betti_blowup(int n, std::uint64_t s) {
  if (n < 2) fail(ErrorCode::InvalidArgument, "betti_blowup needs n >= 2");
  BettiTable t;
  t.n = n;
  for (int i = 0; i <= 2 * n; ++i) {
    std::uint64_t v = 0;
    if (i == 0 || i == 2 * n) v = 1;
    else if (i % 2 == 0) v = s + 1;
    t.h.emplace_back(v);
    t.provenance.emplace_back("blowup");
  }
  return t;
}

BettiTable betti_singular(int n, std::uint64_t delta) {
  if (n < 1) fail(ErrorCode::InvalidArgument, "betti_singular needs n >= 1");
  BettiTable t;
  t.n = n;
  for (int i = 0; i <= 2 * n; ++i) {
    if (i == n - 1) {
      t.h.emplace_back(std::nullopt);
      t.provenance.emplace_back("not-computed");
    } else if (i == n) {
      t.h.emplace_back(betti_projective_space(n, n) + delta);
      t.provenance.emplace_back("defect-adjusted");
    } else if (i == 2 * n) {
      t.h.emplace_back(0);
      t.provenance.emplace_back("zero-by-dimension");
    } else {
      t.h.emplace_back(betti_projective_space(n, i));
      t.provenance.emplace_back("Lefschetz");
    }
  }
  return t;
}

// ---------------------------------------------------------------------------

template <class F>
std::optional<int> cone_vertex_variable(const Poly<F>& P) {
  for (int i = 0; i < P.nvars(); ++i) {
    bool absent = std::all_of(P.terms().begin(), P.terms().end(), [&](const auto& t) { return t.m[i] == 0; });
    if (absent) return i;
  }
  return std::nullopt;
}

DefectReport cone_defect(const Poly<Rationals>& G) {
  if (!G.is_homogeneous() || G.is_zero()) fail(ErrorCode::NotHomogeneous, "cone base must be a nonzero form");
  const int n = G.nvars();  // the cone lives in P^n
  if (n < 2) fail(ErrorCode::InvalidArgument, "cone base needs at least two variables");
  if (!buchberger(singular_ideal(G)).is_projectively_empty())
    fail(ErrorCode::BaseNotSmooth, "cone base is not a smooth hypersurface");
  DefectReport r;
  r.method = "cone-formula";
  r.base_betti = *betti_smooth(n - 1, G.degree()).h[n - 2];
  r.ambient_betti = betti_projective_space(n, n);
  r.delta = r.base_betti >= r.ambient_betti ? r.base_betti - r.ambient_betti : 0;
  return r;
}

namespace {

// Value of a monomial at a point with coordinates in L.
template <class F>
typename F::Element monomial_value(const F& L, const Monomial& m, const std::vector<typename F::Element>& x) {
  auto v = L.one();
  for (std::size_t i = 0; i < x.size(); ++i)
    if (m[i]) v = L.mul(v, L.pow(x[i], m[i]));
  return v;
}

}  // namespace

template <class F>
EvaluationRank evaluation_rank(const std::vector<SingularPoint<F>>& points, int nvars, unsigned e) {
  auto mons = monomials_of_degree(nvars, e);
  EvaluationRank out;
  if constexpr (std::is_same_v<F, Rationals>) {
    const auto& Q = *Rationals::instance();
    Matrix<Rationals> M(Q, points.size(), mons.size());
    for (std::size_t r = 0; r < points.size(); ++r)
      for (std::size_t c = 0; c < mons.size(); ++c) M.at(r, c) = monomial_value(Q, mons[c], points[r].coords);
    out.rows = points.size();
    out.cols = mons.size();
    out.rank = M.rank();
  } else {
    // A K-linear map viewed over the prime field: columns are (monomial,
    // t^j) for a basis of K over F_p, rows the F_p-coordinates in each
    // residue field. The F_p-rank is [K:F_p] times the K-rank.
    if (points.empty()) {
      out.cols = mons.size();
      return out;
    }
    const auto& K = points[0].embedding.source();
    const unsigned e0 = K->degree();
    std::size_t rows = 0;
    for (auto& p : points) rows += p.embedding.target()->degree();
    auto Fp = GaloisField::get(K->p(), 1);
    Matrix<GaloisField> M(*Fp, rows, mons.size() * e0);
    std::size_t r0 = 0;
    for (auto& p : points) {
      const auto& L = *p.embedding.target();
      for (std::size_t c = 0; c < mons.size(); ++c) {
        auto v = monomial_value(L, mons[c], p.coords);
        for (unsigned j = 0; j < e0; ++j) {
          auto basis = p.embedding(K->pow(e0 == 1 ? K->one() : K->generator(), j));
          auto d = L.digits(L.mul(basis, v));
          for (std::size_t i = 0; i < d.size(); ++i) M.at(r0 + i, c * e0 + j) = d[i];
        }
      }
      r0 += L.degree();
    }
    out.rows = rows / e0;
    out.cols = mons.size();
    out.rank = M.rank() / e0;
  }
  return out;
}

template <class F>
DefectReport nodal_defect(const Poly<F>& P, const SingularLocus<F>& locus) {
  if (locus.n % 2 != 0) fail(ErrorCode::OddAmbientDimension, "nodal defect is computed for even n only");
  if (P.field().characteristic() == 2) fail(ErrorCode::CharacteristicTwo, "nodal defect needs characteristic != 2");
  if (locus.dimension == LocusDimension::positive)
    fail(ErrorCode::PositiveDimensionalLocus, "singular locus is positive-dimensional");
  if (!locus.fully_resolved())
    fail(ErrorCode::UnresolvedPoints, "some singular points are not defined over the base field");
  for (auto& p : locus.points)
    if (p.cls.type != SingularityType::A || p.cls.k != 1)
      fail(ErrorCode::NotNodal, "singular point " + p.coords_string() + " is " + p.cls.tag() + ", not a node");
  DefectReport r;
  r.method = "nodal-evaluation";
  r.nodes = locus.geometric_count();
  const long e = static_cast<long>(locus.n / 2) * locus.degree - locus.n - 1;
  if (e < 0) {
    r.degree = 0;
    r.rows = r.nodes;
    r.delta = r.nodes;
    return r;
  }
  r.degree = static_cast<unsigned>(e);
  auto ev = evaluation_rank(locus.points, P.nvars(), r.degree);
  r.rows = ev.rows;
  r.cols = ev.cols;
  r.rank = ev.rank;
  r.delta = ev.rows - ev.rank;
  return r;
}

template <class F>
DefectReport nodal_defect(const Poly<F>& P) {
  if ((P.nvars() - 1) % 2 != 0) fail(ErrorCode::OddAmbientDimension, "nodal defect is computed for even n only");
  return nodal_defect(P, singular_locus(P));
}

// ---------------------------------------------------------------------------

template <class F>
RestrictionMap graded_restriction_matrix(const Poly<F>& P, const Chart<F>& chart, unsigned k,
                                         RestrictionTarget target) {
  if (k < 1) fail(ErrorCode::InvalidArgument, "k must be at least 1");
  const int n = P.nvars() - 1;
  RestrictionMap out;
  out.k = k;
  out.source_degree = static_cast<int>(k) * P.degree() - n - 1;
  out.target = target == RestrictionTarget::tjurina ? "T(f)" : "R/((f)+J(f)^3)";
  auto gb = buchberger(jacobian_power_ideal(chart.affine, target == RestrictionTarget::tjurina ? 1 : 3));
  auto dim = gb.quotient_dimension();
  if (!dim) fail(ErrorCode::PositiveDimensionalLocus, "quotient is infinite-dimensional in the chosen chart");
  out.target_dim = *dim;
  if (out.source_degree < 0) return out;
  auto mons = monomials_of_degree(P.nvars(), static_cast<unsigned>(out.source_degree));
  out.source_dim = mons.size();
  if (out.target_dim == 0) return out;
  QuotientAlgebra<F> A(gb);
  Matrix<F> M(P.field(), A.dimension(), mons.size());
  for (std::size_t c = 0; c < mons.size(); ++c) {
    auto img = chart.apply(Poly<F>::monomial(P.field_ptr(), P.nvars(), mons[c], P.field().one()));
    auto col = A.coordinates(img);
    for (std::size_t r = 0; r < col.size(); ++r) M.at(r, c) = col[r];
  }
  out.rank = M.rank();
  return out;
}

template <class F>
RestrictionMap graded_restriction_matrix(const Poly<F>& P, unsigned k, RestrictionTarget target) {
  return graded_restriction_matrix(P, choose_chart(P), k, target);
}

template <class F>
ResolutionScore resolution_score(const SingularLocus<F>& locus) {
  if (locus.dimension == LocusDimension::positive)
    fail(ErrorCode::PositiveDimensionalLocus, "singular locus is positive-dimensional");
  if (!locus.fully_resolved())
    fail(ErrorCode::UnclassifiedSingularity, "some singular points are not defined over the base field");
  ResolutionScore s;
  s.degree = locus.degree;
  for (auto& p : locus.points) {
    switch (p.cls.type) {
      case SingularityType::A: {
        std::uint64_t r = (p.cls.k + 1) / 2;
        s.blowups += r * p.degree;
        s.score += 2 * r * p.degree;
        break;
      }
      case SingularityType::OrdinaryMultiple:
        s.blowups += p.degree;
        s.score += std::uint64_t{p.cls.k} * p.degree;
        break;
      case SingularityType::Other:
        fail(ErrorCode::UnclassifiedSingularity, "singular point " + p.coords_string() + " is neither A_k nor ordinary");
    }
  }
  return s;
}

std::string certificate_name(CertificateKind k) {
  switch (k) {
    case CertificateKind::NoDefectTjurina: return "NoDefect-Tjurina";
    case CertificateKind::NoDefectWeightedHomogeneous: return "NoDefect-WeightedHomogeneous";
    case CertificateKind::NoDefectResolution: return "NoDefect-Resolution";
    case CertificateKind::NoDefectOddAk: return "NoDefect-OddAk";
    case CertificateKind::FactorialNodal: return "Factorial-Nodal";
    case CertificateKind::Inconclusive: break;
  }
  return "Inconclusive";
}

namespace {

template <class F>
std::string field_hypothesis(const Poly<F>& P) {
  auto p = P.field().characteristic();
  if (p == 0) return "field Q, characteristic 0";
  return "field " + P.field().literal() + ", characteristic " + std::to_string(p);
}

template <class F>
std::string inventory(const SingularLocus<F>& locus) {
  if (locus.dimension == LocusDimension::empty) return "singular locus empty";
  std::string s = "singular points:";
  for (auto& p : locus.points) {
    s += " " + p.coords_string() + " " + p.cls.tag();
    if (p.degree > 1) s += " [degree " + std::to_string(p.degree) + "]";
  }
  if (locus.unresolved_length) s += " + unlisted points carrying tau " + std::to_string(locus.unresolved_length);
  return s;
}

}  // namespace

template <class F>
Certificate certify_no_defect(const Poly<F>& P, const SingularLocus<F>& locus, const CertifyOptions& opt) {
  if (locus.dimension == LocusDimension::positive)
    fail(ErrorCode::PositiveDimensionalLocus, "singular locus is positive-dimensional");
  const auto p = P.field().characteristic();
  if (p == 2) fail(ErrorCode::CharacteristicTwo, "certificates need characteristic != 2");
  const long n = locus.n, d = locus.degree;
  const std::uint64_t tau = locus.tau.value_or(0);
  Certificate c;
  c.hypotheses.push_back(field_hypothesis(P));
  c.hypotheses.push_back("n = " + std::to_string(n) + ", d = " + std::to_string(d));
  c.hypotheses.push_back(inventory(locus));
  c.hypotheses.push_back("tau = " + std::to_string(tau));

  const bool resolved = locus.fully_resolved();
  const bool all_a = resolved && std::all_of(locus.points.begin(), locus.points.end(), [](const auto& x) {
    return x.cls.type == SingularityType::A;
  });
  const bool all_ao = resolved && std::all_of(locus.points.begin(), locus.points.end(), [](const auto& x) {
    return x.cls.type != SingularityType::Other;
  });
  const bool all_wh = resolved && std::all_of(locus.points.begin(), locus.points.end(), [](const auto& x) {
    return x.cls.weighted_homogeneous;
  });

  auto done = [&](CertificateKind k) {
    c.kind = k;
    return c;
  };

  if (n % 2 == 1 && !locus.points.empty()) {
    Inequality q{"NoDefect-OddAk", "n = " + std::to_string(n), "odd, all points A_k", all_a ? "yes" : "no", all_a};
    c.checks.push_back(q);
    if (all_a) return done(CertificateKind::NoDefectOddAk);
  }
  if (p == 0) {
    const long num = d - n + 1, den = n * n + n + 1;
    bool holds = static_cast<long>(tau) * den < num;
    mpq_class bound(num, den);
    bound.canonicalize();
    c.checks.push_back({"NoDefect-Tjurina", "tau = " + std::to_string(tau), "<",
                        "(d-n+1)/(n^2+n+1) = " + bound.get_str(), holds});
    if (holds) return done(CertificateKind::NoDefectTjurina);
    if (all_wh || opt.assert_weighted_homogeneous) {
      bool wh = static_cast<long>(tau) < num;
      c.checks.push_back({"NoDefect-WeightedHomogeneous", "tau = " + std::to_string(tau), "<",
                          "d-n+1 = " + std::to_string(num), wh});
      if (wh) {
        if (!all_wh) c.hypotheses.push_back("weighted homogeneity asserted by the caller");
        return done(CertificateKind::NoDefectWeightedHomogeneous);
      }
    }
  }
  if (all_ao) {
    auto s = resolution_score(locus);
    c.checks.push_back({"NoDefect-Resolution", "score = " + std::to_string(s.score), "<",
                        "d = " + std::to_string(d), s.below_degree()});
    if (s.below_degree()) return done(CertificateKind::NoDefectResolution);
  } else {
    c.checks.push_back({"NoDefect-Resolution", resolved ? "some point is Other" : "unresolved points", "in",
                        "Sigma_O + Sigma_A", false});
  }
  return done(CertificateKind::Inconclusive);
}

template <class F>
Certificate certify_no_defect(const Poly<F>& P, const CertifyOptions& opt) {
  return certify_no_defect(P, singular_locus(P), opt);
}

template <class F>
Certificate factoriality_certificate(const Poly<F>& P) {
  if (P.nvars() != 5) fail(ErrorCode::WrongAmbientDimension, "factoriality certificate needs a threefold in P^4");
  if constexpr (std::is_same_v<F, Rationals>) {
    fail(ErrorCode::RationalFieldUnsupported, "factoriality certificate needs a finite base field");
  } else {
    auto locus = singular_locus(P);
    auto r = nodal_defect(P, locus);
    Certificate c;
    c.hypotheses.push_back(field_hypothesis(P));
    c.hypotheses.push_back(inventory(locus));
    c.delta = r.delta;
    c.checks.push_back({"Factorial-Nodal", "h^4 = 1 + delta = " + std::to_string(1 + r.delta), "==", "1", r.delta == 0});
    c.kind = r.delta == 0 ? CertificateKind::FactorialNodal : CertificateKind::Inconclusive;
    return c;
  }
}

#define DEFEKT_INSTANTIATE(F)                                                                          \
  template std::optional<int> cone_vertex_variable(const Poly<F>&);                                    \
  template EvaluationRank evaluation_rank(const std::vector<SingularPoint<F>>&, int, unsigned);        \
  template DefectReport nodal_defect(const Poly<F>&);                                                  \
  template DefectReport nodal_defect(const Poly<F>&, const SingularLocus<F>&);                         \
  template RestrictionMap graded_restriction_matrix(const Poly<F>&, unsigned, RestrictionTarget);      \
  template RestrictionMap graded_restriction_matrix(const Poly<F>&, const Chart<F>&, unsigned,         \
                                                    RestrictionTarget);                                \
  template ResolutionScore resolution_score(const SingularLocus<F>&);                                  \
  template Certificate certify_no_defect(const Poly<F>&, const CertifyOptions&);                       \
  template Certificate certify_no_defect(const Poly<F>&, const SingularLocus<F>&, const CertifyOptions&); \
  template Certificate factoriality_certificate(const Poly<F>&);

DEFEKT_INSTANTIATE(Rationals)
DEFEKT_INSTANTIATE(GaloisField)
#undef DEFEKT_INSTANTIATE

}  // namespace defekt
