#include "defekt/singular.hh"

#include <algorithm>

namespace defekt {

std::string PointClass::tag() const {
  switch (type) {
    case SingularityType::A:
      return "A_" + std::to_string(k);
    case SingularityType::OrdinaryMultiple:
      return "OrdinaryMultiple(" + std::to_string(k) + ")";
    case SingularityType::Other:
      break;
  }
  return "Other";
}

namespace {

template <class F>
std::string element_string(const F& k, const typename F::Element& a) {
  return k.to_string(a);
}

template <class F>
FieldEmbedding<F> identity_embedding(const std::shared_ptr<const F>& k) {
  return FieldEmbedding<F>(k);
}

template <class F>
typename F::Element random_element(const F& k, SplitMix64& rng) {
  if constexpr (std::is_same_v<F, GaloisField>)
    return rng.uniform(k.cardinality());
  else
    return k.from_int(static_cast<std::int64_t>(rng.uniform(11)) - 5);
}

template <class F>
std::vector<typename F::Element> origin(const Poly<F>& f) {
  return std::vector<typename F::Element>(f.nvars(), f.field().zero());
}

// Hessian of a quadratic form (symmetric, no division by 2).
template <class F>
Matrix<F> hessian(const Poly<F>& q) {
  const F& k = q.field();
  const int n = q.nvars();
  Matrix<F> H(k, n, n);
  for (auto& t : q.terms()) {
    int a = -1, b = -1;
    for (int i = 0; i < n; ++i) {
      if (t.m[i] == 2) a = b = i;
      if (t.m[i] == 1) (a < 0 ? a : b) = i;
    }
    if (a == b) {
      H.at(a, a) = k.add(t.c, t.c);
    } else {
      H.at(a, b) = t.c;
      H.at(b, a) = t.c;
    }
  }
  return H;
}

}  // namespace

template <class F>
std::string SingularPoint<F>::coords_string() const {
  const F& L = *embedding.target();
  std::string out = "(";
  for (std::size_t i = 0; i < coords.size(); ++i) {
    if (i) out += ":";
    out += element_string(L, coords[i]);
  }
  return out + ")";
}

template <class F>
std::uint64_t SingularLocus<F>::geometric_count() const {
  std::uint64_t c = 0;
  for (auto& p : points) c += p.degree;
  return c;
}

template <class F>
std::vector<Poly<F>> singular_ideal(const Poly<F>& P) {
  std::vector<Poly<F>> gens{P};
  for (auto& d : gradient(P)) gens.push_back(d);
  return gens;
}

// ---------------------------------------------------------------------------
// Local computations

template <class F>
std::uint64_t local_dimension_at_origin(const std::vector<Poly<F>>& gens) {
  // Truncate by m^N: once dim(I + m^N) = dim(I + m^(N+1)), Nakayama gives
  // m^N inside the local ideal and the truncated quotient is the local
  // algebra. Much cheaper than a global basis when I has far-away zeros.
  const int nv = gens[0].nvars();
  const auto& K = gens[0].field_ptr();
  std::optional<std::uint64_t> last;
  for (unsigned N = 1; N <= 16; ++N) {
    auto ext = gens;
    for (auto& m : monomials_of_degree(nv, N)) ext.push_back(Poly<F>::monomial(K, nv, m, K->one()));
    auto dim = *buchberger(ext).quotient_dimension();
    if (last && *last == dim) return dim;
    last = dim;
  }
  auto gb = buchberger(gens);
  if (gb.is_unit()) return 0;
  if (gb.is_zero_dimensional()) {
    QuotientAlgebra<F> A(gb);
    std::vector<typename F::Element> zero(gb.nvars(), gb.field().zero());
    return A.local_dimension(zero, identity_embedding(gb.field_ptr()));
  }
  // The ideal has other components away from the origin: cut them off with
  // pure powers x_i^N, which only leaves the origin.
  const int n = gens[0].nvars();
  std::optional<std::uint64_t> prev;
  for (unsigned N = 4; N <= 256; N *= 2) {
    auto ext = gens;
    for (int i = 0; i < n; ++i)
      ext.push_back(Poly<F>::monomial(gens[0].field_ptr(), n, Monomial::var(i, N), gens[0].field().one()));
    auto dim = *buchberger(ext).quotient_dimension();
    if (prev && *prev == dim) return dim;
    prev = dim;
  }
  fail(ErrorCode::NonIsolatedSingularity, "local algebra did not stabilize by N = 256");
}

template <class F>
unsigned multiplicity_at(const Poly<F>& f, const std::vector<typename F::Element>& point) {
  if (static_cast<int>(point.size()) != f.nvars())
    fail(ErrorCode::DimensionMismatch, "point has wrong number of coordinates");
  Poly<F> g = translate(f, point);
  if (!f.field().is_zero(g.constant_term()))
    fail(ErrorCode::PointNotOnHypersurface, "point does not lie on the hypersurface");
  if (g.is_zero()) fail(ErrorCode::NonIsolatedSingularity, "polynomial vanishes identically");
  return static_cast<unsigned>(g.min_degree());
}

template <class F>
std::uint64_t local_tjurina(const Poly<F>& f, const std::vector<typename F::Element>& point) {
  if (static_cast<int>(point.size()) != f.nvars())
    fail(ErrorCode::DimensionMismatch, "point has wrong number of coordinates");
  Poly<F> g = translate(f, point);
  return local_dimension_at_origin(singular_ideal(g));
}

template <class F>
PointClass classify_point(const Poly<F>& f, const std::vector<typename F::Element>& point) {
  const F& k = f.field();
  if (k.characteristic() == 2) fail(ErrorCode::CharacteristicTwo, "classification requires characteristic != 2");
  if (static_cast<int>(point.size()) != f.nvars())
    fail(ErrorCode::DimensionMismatch, "point has wrong number of coordinates");
  Poly<F> g = translate(f, point);
  if (!k.is_zero(g.constant_term()))
    fail(ErrorCode::PointNotOnHypersurface, "point does not lie on the hypersurface");
  PointClass pc;
  if (g.is_zero()) return pc;
  pc.multiplicity = static_cast<unsigned>(g.min_degree());
  if (pc.multiplicity == 1) fail(ErrorCode::SmoothPoint, "point is a smooth point of the hypersurface");
  const int n = f.nvars();

  auto tjurina = [&]() -> std::optional<std::uint64_t> {
    try {
      return local_dimension_at_origin(singular_ideal(g));
    } catch (const Error& e) {
      if (e.code() != ErrorCode::NonIsolatedSingularity) throw;
      return std::nullopt;
    }
  };

  if (pc.multiplicity == 2) {
    Matrix<F> H = hessian(g.homogeneous_part(2));
    std::size_t rank = symmetric_rank(H);
    if (static_cast<int>(rank) == n) {
      pc.type = SingularityType::A;
      pc.k = 1;
      pc.tau = 1;
      pc.weighted_homogeneous = true;
      return pc;
    }
    if (static_cast<int>(rank) == n - 1) {
      // Corank one: along the smooth curve cut out by the partials transverse
      // to the kernel, f has order k + 1.
      auto ker = H.kernel();
      int i = 0;
      while (k.is_zero(ker[0][i])) ++i;
      std::vector<Poly<F>> gens{g};
      for (int j = 0; j < n; ++j)
        if (j != i) gens.push_back(partial_derivative(g, j));
      try {
        std::uint64_t len = local_dimension_at_origin(gens);
        pc.type = SingularityType::A;
        pc.k = static_cast<unsigned>(len - 1);
        pc.weighted_homogeneous = true;
      } catch (const Error& e) {
        if (e.code() != ErrorCode::NonIsolatedSingularity) throw;
      }
      pc.tau = tjurina();
      if (!pc.tau) {
        pc.type = SingularityType::Other;
        pc.k = 0;
        pc.weighted_homogeneous = false;
      }
      return pc;
    }
    pc.tau = tjurina();
    return pc;
  }

  Poly<F> cone = g.homogeneous_part(static_cast<int>(pc.multiplicity));
  bool smooth_cone = buchberger(singular_ideal(cone)).is_projectively_empty();
  pc.tau = tjurina();
  if (smooth_cone) {
    pc.type = SingularityType::OrdinaryMultiple;
    pc.k = pc.multiplicity;
    pc.weighted_homogeneous = (g == cone);
  }
  return pc;
}

// ---------------------------------------------------------------------------
// Singular locus

namespace {

// Point with projective coordinates in emb.target(); rescaled so that the
// first nonzero coordinate is 1, and classified in that chart.
template <class F>
SingularPoint<F> make_point(const Poly<F>& P, std::vector<typename F::Element> coords,
                            const FieldEmbedding<F>& emb, unsigned degree) {
  const auto& L = *emb.target();
  SingularPoint<F> sp;
  sp.embedding = emb;
  sp.degree = degree;
  int chart = 0;
  while (L.is_zero(coords[chart])) ++chart;
  auto inv = L.inv(coords[chart]);
  for (auto& c : coords) c = L.mul(c, inv);
  sp.chart = chart;
  std::vector<typename F::Element> affine;
  for (int i = 0; i < static_cast<int>(coords.size()); ++i)
    if (i != chart) affine.push_back(coords[i]);
  sp.coords = std::move(coords);
  sp.cls = classify_point(embed(dehomogenize(P, chart), emb), affine);
  return sp;
}

// Rational points of P^n(F_q) on V(gens).
std::vector<std::vector<GaloisField::Element>> rational_zeros(const std::vector<Poly<GaloisField>>& gens) {
  const int n1 = gens[0].nvars();
  const std::uint64_t q = gens[0].field().cardinality();
  std::vector<std::vector<GaloisField::Element>> out;
  for (int j = 0; j < n1; ++j) {
    std::vector<GaloisField::Element> x(n1, 0);
    x[j] = 1;
    const int free = n1 - j - 1;
    std::uint64_t total = 1;
    for (int i = 0; i < free; ++i) total *= q;
    for (std::uint64_t idx = 0; idx < total; ++idx) {
      std::uint64_t r = idx;
      for (int i = n1 - 1; i > j; --i) {
        x[i] = r % q;
        r /= q;
      }
      bool zero = true;
      for (auto& g : gens)
        if (!gens[0].field().is_zero(evaluate(g, x))) {
          zero = false;
          break;
        }
      if (zero) out.push_back(x);
    }
  }
  return out;
}

// Strata {x_j = 1, x_i = 0 for i > j}. Since x_n is the smallest grevlex
// variable, setting trailing variables to 0 and then dehomogenizing at the
// new last variable keeps a Groebner basis, so each stratum is cheap.
template <class F>
void locate_points(const Poly<F>& P, const GroebnerBasis<F>& gbh, SingularLocus<F>& loc) {
  const int n1 = P.nvars();
  const auto& K = P.field_ptr();
  for (int j = n1 - 1; j >= 0; --j) {
    std::vector<Poly<F>> stratum;
    for (auto& g : gbh.generators()) {
      Poly<F> s = g;
      for (int i = n1 - 1; i > j; --i) s = specialize(s, i, K->zero());
      s = specialize(s, j, K->one());
      if (!s.is_zero()) stratum.push_back(std::move(s));
    }
    std::vector<SolvedPoint<F>> pts;
    if (stratum.empty()) {
      if (j > 0) fail(ErrorCode::PositiveDimensionalLocus, "singular locus is positive-dimensional");
      SolvedPoint<F> sp;
      sp.embedding = FieldEmbedding<F>(K);
      pts.push_back(sp);
    } else if (j > 0) {
      auto res = solve_zero_dimensional(buchberger(stratum), false);
      pts = std::move(res.points);
    }
    for (auto& sp : pts) {
      const auto& L = *sp.embedding.target();
      auto coords = sp.coords;
      coords.push_back(L.one());
      coords.resize(n1, L.zero());
      loc.points.push_back(make_point(P, std::move(coords), sp.embedding, sp.degree));
    }
  }
  std::stable_sort(loc.points.begin(), loc.points.end(),
                   [](const auto& a, const auto& b) { return a.chart < b.chart; });
}

}  // namespace

template <class F>
SingularLocus<F> singular_locus(const Poly<F>& P) {
  if (!P.is_homogeneous()) fail(ErrorCode::NotHomogeneous, "singular_locus needs a homogeneous polynomial");
  if (P.degree() < 2) fail(ErrorCode::InvalidArgument, "hypersurface degree must be at least 2");
  SingularLocus<F> loc;
  loc.degree = P.degree();
  loc.n = P.nvars() - 1;
  const auto p = P.field().characteristic();
  loc.char_divides_degree = p != 0 && loc.degree % p == 0;

  auto gbh = buchberger(singular_ideal(P));
  if (gbh.is_projectively_empty()) {
    loc.dimension = LocusDimension::empty;
    loc.tau = 0;
    return loc;
  }
  if (!gbh.projective_locus_finite()) {
    loc.dimension = LocusDimension::positive;
    return loc;
  }
  loc.dimension = LocusDimension::zero;
  loc.tau = gbh.projective_degree();

  if constexpr (std::is_same_v<F, GaloisField>) {
    // Try the rational points first: if their Tjurina numbers already add
    // up to the length of the singular scheme there is nothing else.
    const std::uint64_t q = P.field().cardinality();
    double count = 1;
    for (int i = 0; i < loc.n; ++i) count *= static_cast<double>(q);
    if (count <= 2e5) {
      std::uint64_t sum = 0;
      bool ok = true;
      for (auto& x : rational_zeros(singular_ideal(P))) {
        auto sp = make_point(P, x, FieldEmbedding<F>(P.field_ptr()), 1);
        if (!sp.cls.tau) ok = false;
        else sum += *sp.cls.tau;
        loc.points.push_back(std::move(sp));
      }
      if (ok && sum == *loc.tau) return loc;
      loc.points.clear();
    }
  }
  locate_points(P, gbh, loc);
  std::uint64_t listed = 0;
  for (auto& sp : loc.points) listed += static_cast<std::uint64_t>(sp.degree) * sp.cls.tau.value_or(0);
  loc.unresolved_length = *loc.tau > listed ? *loc.tau - listed : 0;
  return loc;
}

// ---------------------------------------------------------------------------
// Charts and global Tjurina numbers

template <class F>
Poly<F> Chart<F>::apply(const Poly<F>& G) const {
  Poly<F> H = change.empty() ? G : linear_change(G, change);
  return dehomogenize(H, record.index);
}

template <class F>
Chart<F> choose_chart(const Poly<F>& P) {
  if (!P.is_homogeneous()) fail(ErrorCode::NotHomogeneous, "chart selection needs a homogeneous polynomial");
  const int n1 = P.nvars();
  const F& k = P.field();
  auto gens = singular_ideal(P);
  auto gbh = buchberger(gens);
  if (!gbh.projective_locus_finite())
    fail(ErrorCode::PositiveDimensionalLocus, "singular locus is positive-dimensional");
  auto misses = [&](const Poly<F>& ell) {
    auto g = gens;
    g.push_back(ell);
    return buchberger(g).is_projectively_empty();
  };
  int attempts = 0;
  for (int j = 0; j < n1 && attempts < 32; ++j, ++attempts) {
    if (gbh.is_projectively_empty() || misses(Poly<F>::variable(P.field_ptr(), n1, j))) {
      Chart<F> ch;
      ch.record.index = j;
      ch.affine = dehomogenize(P, j);
      return ch;
    }
  }
  SplitMix64 rng(0x5eed0c4a27ULL);
  for (; attempts < 32; ++attempts) {
    std::vector<typename F::Element> c(n1);
    for (auto& x : c) x = random_element(k, rng);
    int j = 0;
    while (j < n1 && k.is_zero(c[j])) ++j;
    if (j == n1) continue;
    std::vector<typename Poly<F>::Term> terms;
    for (int i = 0; i < n1; ++i)
      if (!k.is_zero(c[i])) terms.push_back({Monomial::var(i), c[i]});
    auto ell = Poly<F>::from_terms(P.field_ptr(), n1, terms);
    if (!misses(ell)) continue;
    // New coordinates y with y_j = ell(x), y_i = x_i otherwise; x = A y.
    std::vector<typename F::Element> A(static_cast<std::size_t>(n1 * n1), k.zero());
    auto inv = k.inv(c[j]);
    for (int i = 0; i < n1; ++i) {
      if (i == j) continue;
      A[i * n1 + i] = k.one();
      A[j * n1 + i] = k.neg(k.mul(c[i], inv));
    }
    A[j * n1 + j] = inv;
    Chart<F> ch;
    ch.record.kind = "linear";
    ch.record.index = j;
    for (auto& x : c) ch.record.form.push_back(k.to_string(x));
    ch.change = std::move(A);
    ch.affine = ch.apply(P);
    return ch;
  }
  fail(ErrorCode::NoChartFound,
       "every tried hyperplane meets the singular locus; try a larger base field (e.g. F" +
           std::to_string(k.characteristic()) + "^2)");
}

template <class F>
TjurinaResult global_tjurina(const Poly<F>& P) {
  return ideal_power_quotient_dim(P, 1);
}

template <class F>
std::vector<Poly<F>> jacobian_power_ideal(const Poly<F>& f, unsigned i) {
  if (i < 1) fail(ErrorCode::InvalidArgument, "ideal power must be at least 1");
  std::vector<Poly<F>> gens{f};
  const int n = f.nvars();
  if (n == 0) return gens;
  auto grad = gradient(f);
  // Products over multisets of i partials.
  std::vector<int> idx(i, 0);
  for (;;) {
    Poly<F> prod = grad[idx[0]];
    for (unsigned a = 1; a < i; ++a) prod = prod * grad[idx[a]];
    gens.push_back(prod);
    int a = static_cast<int>(i) - 1;
    while (a >= 0 && idx[a] == n - 1) --a;
    if (a < 0) break;
    ++idx[a];
    for (unsigned b = a + 1; b < i; ++b) idx[b] = idx[a];
  }
  return gens;
}

template <class F>
TjurinaResult ideal_power_quotient_dim(const Poly<F>& P, unsigned i) {
  if (i < 1) fail(ErrorCode::InvalidArgument, "ideal power must be at least 1");
  auto ch = choose_chart(P);
  auto dim = buchberger(jacobian_power_ideal(ch.affine, i)).quotient_dimension();
  if (!dim) fail(ErrorCode::PositiveDimensionalLocus, "quotient is infinite-dimensional in the chosen chart");
  return {*dim, ch.record};
}

#define DEFEKT_INSTANTIATE(F)                                                                 \
  template struct SingularPoint<F>;                                                           \
  template struct SingularLocus<F>;                                                           \
  template std::vector<Poly<F>> singular_ideal(const Poly<F>&);                               \
  template SingularLocus<F> singular_locus(const Poly<F>&);                                   \
  template unsigned multiplicity_at(const Poly<F>&, const std::vector<F::Element>&);          \
  template PointClass classify_point(const Poly<F>&, const std::vector<F::Element>&);         \
  template std::uint64_t local_tjurina(const Poly<F>&, const std::vector<F::Element>&);       \
  template std::uint64_t local_dimension_at_origin(const std::vector<Poly<F>>&);              \
  template struct Chart<F>;                                                                   \
  template Chart<F> choose_chart(const Poly<F>&);                                             \
  template std::vector<Poly<F>> jacobian_power_ideal(const Poly<F>&, unsigned);               \
  template TjurinaResult global_tjurina(const Poly<F>&);                                      \
  template TjurinaResult ideal_power_quotient_dim(const Poly<F>&, unsigned);

DEFEKT_INSTANTIATE(Rationals)
DEFEKT_INSTANTIATE(GaloisField)
#undef DEFEKT_INSTANTIATE

}  // namespace defekt
