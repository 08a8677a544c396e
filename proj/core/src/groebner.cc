#include "defekt/groebner.hh"

#include <algorithm>
#include <cstdlib>
#include <string>

namespace defekt {

std::uint64_t default_budget() {
  if (const char* env = std::getenv("DEFEKT_BUDGET")) {
    char* end = nullptr;
    unsigned long long v = std::strtoull(env, &end, 10);
    if (end && *end == '\0' && v > 0) return v;
  }
  return 1000000;
}

namespace {

template <class F>
using Terms = std::vector<typename Poly<F>::Term>;

template <class F>
Terms<F> to_order(const Poly<F>& f, const MonomialOrder& ord) {
  Terms<F> t = f.terms();
  if (ord.kind != OrderKind::grevlex)
    std::sort(t.begin(), t.end(), [&](const auto& a, const auto& b) { return ord.compare(a.m, b.m) > 0; });
  return t;
}

template <class F>
Poly<F> from_order(const std::shared_ptr<const F>& field, int nvars, Terms<F> t, const MonomialOrder& ord) {
  if (ord.kind == OrderKind::grevlex) return Poly<F>::from_sorted(field, nvars, std::move(t));
  return Poly<F>::from_terms(field, nvars, std::move(t));
}

template <class F>
void divide_content(Terms<F>& t, const mpz_class& g) {
  if (g == 0 || g == 1) return;
  for (auto& x : t) {
    mpz_divexact(x.c.get_num_mpz_t(), x.c.get_num_mpz_t(), g.get_mpz_t());
  }
}

// Removes the common integer content of two integral term lists.
template <class F>
void make_primitive_pair(Terms<F>& a, Terms<F>& b) {
  mpz_class g = 0;
  for (auto* t : {&a, &b})
    for (auto& x : *t) {
      mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.c.get_num_mpz_t());
      if (g == 1) return;
    }
  divide_content<F>(a, g);
  divide_content<F>(b, g);
}

// Reduction kernel shared by Buchberger and normal forms.
template <class F>
class Reducer {
 public:
  using Elem = typename F::Element;

  static constexpr bool kIntegral = std::is_same_v<F, Rationals>;

  Reducer(const F& k, const MonomialOrder& ord, std::uint64_t budget, bool integral = false)
      : k_(k), ord_(ord), budget_(budget), integral_(kIntegral && integral) {}

  int cmp(const Monomial& a, const Monomial& b) const {
    return ord_.kind == OrderKind::grevlex ? grevlex_cmp(a, b) : ord_.compare(a, b);
  }

  // h[pos+1..] - c * m * g[1..]
  Terms<F> sub_mul(const Terms<F>& h, std::size_t pos, const Elem& c, const Monomial& m, const Terms<F>& g) const {
    Terms<F> out;
    out.reserve(h.size() - pos + g.size());
    std::size_t i = pos + 1, j = 1;
    while (i < h.size() && j < g.size()) {
      Monomial gm = g[j].m * m;
      int s = cmp(h[i].m, gm);
      if (s > 0) {
        out.push_back(h[i++]);
      } else if (s < 0) {
        out.push_back({gm, k_.neg(k_.mul(c, g[j].c))});
        ++j;
      } else {
        Elem v = k_.sub(h[i].c, k_.mul(c, g[j].c));
        if (!k_.is_zero(v)) out.push_back({gm, std::move(v)});
        ++i;
        ++j;
      }
    }
    for (; i < h.size(); ++i) out.push_back(h[i]);
    for (; j < g.size(); ++j) out.push_back({g[j].m * m, k_.neg(k_.mul(c, g[j].c))});
    return out;
  }

  // Full reduction of h modulo `basis`. Over Q the basis is kept primitive
  // with integer coefficients and h is pseudo-reduced (scaled so that no
  // denominators appear); elsewhere the basis is monic.
  Terms<F> reduce(Terms<F> h, const std::vector<const Terms<F>*>& basis, const std::vector<unsigned>& masks,
                  std::size_t keep = 0) {
    Terms<F> out(h.begin(), h.begin() + static_cast<std::ptrdiff_t>(std::min(keep, h.size())));
    h.erase(h.begin(), h.begin() + static_cast<std::ptrdiff_t>(out.size()));
    std::size_t pos = 0;
    while (pos < h.size()) {
      const auto& t = h[pos];
      const unsigned tmask = t.m.support();
      const Terms<F>* red = nullptr;
      for (std::size_t b = 0; b < basis.size(); ++b) {
        if (masks[b] & ~tmask) continue;
        if ((*basis[b])[0].m.divides(t.m)) {
          red = basis[b];
          break;
        }
      }
      if (!red) {
        out.push_back(t);
        ++pos;
        continue;
      }
      if (++steps_ > budget_)
        fail(ErrorCode::BudgetExceeded, "reduction budget of " + std::to_string(budget_) + " steps exceeded");
      Monomial q = t.m / (*red)[0].m;
      if constexpr (kIntegral) {
        if (!integral_) {
          h = sub_mul(h, pos, t.c, q, *red);
          pos = 0;
          continue;
        }
        mpz_class a = (*red)[0].c.get_num(), b = t.c.get_num(), g;
        mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
        Elem u(a / g), v(b / g);
        if (u != 1) {
          for (auto& x : out) x.c *= u;
          for (std::size_t i = pos + 1; i < h.size(); ++i) h[i].c *= u;
        }
        h = sub_mul(h, pos, v, q, *red);
        if (++since_content_ >= 16) {
          since_content_ = 0;
          make_primitive_pair<F>(out, h);
        }
      } else {
        Elem c = t.c;
        h = sub_mul(h, pos, c, q, *red);
      }
      pos = 0;
    }
    return out;
  }

  std::uint64_t steps() const { return steps_; }

 private:
  const F& k_;
  MonomialOrder ord_;
  std::uint64_t budget_;
  bool integral_;
  std::uint64_t steps_ = 0;
  unsigned since_content_ = 0;
};

template <class F>
void make_monic(const F& k, Terms<F>& t) {
  if (t.empty() || k.is_one(t[0].c)) return;
  auto inv = k.inv(t[0].c);
  for (auto& x : t) x.c = k.mul(x.c, inv);
}

// Buchberger's working normalization: primitive integral with positive
// leading coefficient over Q, monic otherwise.
template <class F>
void normalize(const F& k, Terms<F>& t) {
  if constexpr (std::is_same_v<F, Rationals>) {
    if (t.empty()) return;
    mpz_class den = 1, g = 0;
    for (auto& x : t) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), x.c.get_den_mpz_t());
    for (auto& x : t) {
      x.c *= den;
      x.c.canonicalize();
      mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.c.get_num_mpz_t());
    }
    if (t[0].c < 0) g = -g;
    divide_content<F>(t, g);
  } else {
    make_monic(k, t);
  }
}

struct Pair {
  int i, j;
  Monomial lcm;
};

struct CoefficientGrowth {};

// Over Q the direct algorithm hands over to the modular one past this size.
constexpr std::size_t kDirectBitLimit = 2048;

std::size_t max_bits(const Terms<Rationals>& t) {
  std::size_t b = 0;
  for (auto& x : t) b = std::max(b, mpz_sizeinbase(x.c.get_num_mpz_t(), 2));
  return b;
}

// Buchberger with the normal selection strategy and Gebauer-Moeller
// criteria. Over Q, throws CoefficientGrowth once an element needs more than
// `bit_limit` bits (0: no limit).
template <class F>
GroebnerBasis<F> buchberger_direct(const std::vector<Poly<F>>& generators, MonomialOrder order, std::uint64_t budget,
                                   std::size_t bit_limit = 0) {
  auto field = generators[0].field_ptr();
  const int nvars = generators[0].nvars();
  for (auto& g : generators)
    if (g.nvars() != nvars || g.field_ptr() != field)
      fail(ErrorCode::RingMismatch, "generators live in different rings");
  if (order.kind == OrderKind::elimination && (order.block < 0 || order.block > nvars))
    fail(ErrorCode::InvalidArgument, "elimination block out of range");
  const F& k = *field;
  Reducer<F> red(k, order, budget ? budget : default_budget(), true);

  std::vector<Terms<F>> polys;
  std::vector<unsigned> lead_mask;
  std::vector<int> G;
  std::vector<Pair> B;

  auto reducers = [&](std::vector<const Terms<F>*>& basis, std::vector<unsigned>& masks) {
    basis.clear();
    masks.clear();
    for (int g : G) {
      basis.push_back(&polys[g]);
      masks.push_back(lead_mask[g]);
    }
  };

  auto unit_basis = [&]() {
    Terms<F> one{{Monomial{}, k.one()}};
    return GroebnerBasis<F>(field, nvars, order, {one}, generators);
  };

  // Gebauer-Moeller update with the new element h.
  auto update = [&](int h) {
    const Monomial& lh = polys[h][0].m;
    std::vector<Pair> C, D;
    for (int g : G) C.push_back({g, h, lcm(polys[g][0].m, lh)});
    for (std::size_t a = 0; a < C.size(); ++a) {
      const Pair& p = C[a];
      bool keep = coprime(polys[p.i][0].m, lh);
      if (!keep) {
        keep = true;
        for (std::size_t b = a + 1; b < C.size() && keep; ++b)
          if (C[b].lcm.divides(p.lcm)) keep = false;
        for (std::size_t b = 0; b < D.size() && keep; ++b)
          if (D[b].lcm.divides(p.lcm)) keep = false;
      }
      if (keep) D.push_back(p);
    }
    std::vector<Pair> nb;
    for (auto& p : B) {
      if (lh.divides(p.lcm) && !(lcm(polys[p.i][0].m, lh) == p.lcm) && !(lcm(polys[p.j][0].m, lh) == p.lcm))
        continue;
      nb.push_back(p);
    }
    for (auto& p : D)
      if (!coprime(polys[p.i][0].m, lh)) nb.push_back(p);
    B = std::move(nb);
    std::vector<int> ng;
    for (int g : G)
      if (!lh.divides(polys[g][0].m)) ng.push_back(g);
    ng.push_back(h);
    G = std::move(ng);
  };

  std::vector<const Terms<F>*> basis;
  std::vector<unsigned> masks;

  auto add = [&](Terms<F> t) -> bool {
    normalize(k, t);
    if constexpr (std::is_same_v<F, Rationals>)
      if (bit_limit && max_bits(t) > bit_limit) throw CoefficientGrowth{};
    if (t[0].m.deg == 0) return false;
    polys.push_back(std::move(t));
    lead_mask.push_back(polys.back()[0].m.support());
    update(static_cast<int>(polys.size()) - 1);
    return true;
  };

  std::vector<Terms<F>> inputs;
  for (auto& g : generators)
    if (!g.is_zero()) {
      inputs.push_back(to_order(g, order));
      normalize(k, inputs.back());
    }
  if (inputs.empty()) return GroebnerBasis<F>(field, nvars, order, {}, generators);
  std::stable_sort(inputs.begin(), inputs.end(), [&](const Terms<F>& a, const Terms<F>& b) {
    return red.cmp(a[0].m, b[0].m) < 0;
  });
  for (auto& t : inputs) {
    reducers(basis, masks);
    Terms<F> r = red.reduce(std::move(t), basis, masks);
    if (r.empty()) continue;
    if (!add(std::move(r))) return unit_basis();
  }

  while (!B.empty()) {
    std::size_t best = 0;
    for (std::size_t a = 1; a < B.size(); ++a) {
      const Pair& x = B[a];
      const Pair& y = B[best];
      if (x.lcm.deg != y.lcm.deg) {
        if (x.lcm.deg < y.lcm.deg) best = a;
        continue;
      }
      int c = lex_cmp(x.lcm, y.lcm);
      if (c < 0 || (c == 0 && std::make_pair(x.i, x.j) < std::make_pair(y.i, y.j))) best = a;
    }
    Pair p = B[best];
    B.erase(B.begin() + static_cast<std::ptrdiff_t>(best));

    const Terms<F>& f = polys[p.i];
    const Terms<F>& g = polys[p.j];
    // S = (L/lm f) f - (L/lm g) g, scaled to cancel the leading terms.
    Terms<F> sf;
    Monomial mf = p.lcm / f[0].m;
    auto cf = k.one(), cg = k.one();
    if constexpr (std::is_same_v<F, Rationals>) {
      mpz_class gc;
      mpz_gcd(gc.get_mpz_t(), f[0].c.get_num_mpz_t(), g[0].c.get_num_mpz_t());
      cf = mpq_class(g[0].c.get_num() / gc);
      cg = mpq_class(f[0].c.get_num() / gc);
    }
    for (auto& t : f) sf.push_back({t.m * mf, k.mul(t.c, cf)});
    Terms<F> s = red.sub_mul(sf, 0, cg, p.lcm / g[0].m, g);
    reducers(basis, masks);
    Terms<F> r = red.reduce(std::move(s), basis, masks);
    if (r.empty()) continue;
    if (!add(std::move(r))) return unit_basis();
  }

  // Minimalize and interreduce.
  std::vector<int> minimal;
  for (int g : G) {
    bool redundant = false;
    for (int h : G)
      if (h != g && polys[h][0].m.divides(polys[g][0].m) && !(polys[h][0].m == polys[g][0].m)) redundant = true;
    if (!redundant) minimal.push_back(g);
  }
  std::sort(minimal.begin(), minimal.end(),
            [&](int a, int b) { return red.cmp(polys[a][0].m, polys[b][0].m) < 0; });
  std::vector<Terms<F>> result;
  for (int g : minimal) {
    basis.clear();
    masks.clear();
    for (int h : minimal)
      if (h != g) {
        basis.push_back(&polys[h]);
        masks.push_back(lead_mask[h]);
      }
    Terms<F> full = red.reduce(polys[g], basis, masks, 1);
    make_monic(k, full);
    result.push_back(std::move(full));
  }
  return GroebnerBasis<F>(field, nvars, order, std::move(result), generators);
}

// ---------------------------------------------------------------------------
// Multi-modular Groebner bases over Q (grevlex)
//
// Reduced bases of the images modulo word-size primes are combined by CRT
// and rational reconstruction. A candidate G is accepted once (a) every
// input reduces to 0 modulo G and (b) all S-pairs of G reduce to 0, so <G>
// contains the ideal and G is a Groebner basis of <G>. For homogeneous input
// this forces equality: G has the leading monomials of the reduced basis of
// I_p and dim (I_p)_d <= dim I_d in every degree. For inhomogeneous input
// equality holds unless every prime that voted for G is unlucky.

using QTerms = Terms<Rationals>;
using ZTerms = std::vector<std::pair<Monomial, mpz_class>>;

bool rational_reconstruct(const mpz_class& a, const mpz_class& m, const mpz_class& bound, mpq_class& out) {
  mpz_class r0 = m, r1 = a, s0 = 0, s1 = 1;
  while (r1 > bound) {
    mpz_class q = r0 / r1;
    mpz_class r2 = r0 - q * r1;
    r0 = r1;
    r1 = r2;
    mpz_class s2 = s0 - q * s1;
    s0 = s1;
    s1 = s2;
  }
  if (s1 == 0 || abs(s1) > bound) return false;
  mpz_class g;
  mpz_gcd(g.get_mpz_t(), s1.get_mpz_t(), m.get_mpz_t());
  if (g != 1) return false;
  out = mpq_class(r1, s1);
  out.canonicalize();
  return true;
}

struct ModularImage {
  std::vector<Monomial> leads;
  std::vector<ZTerms> elems;  // residues modulo `modulus`
  mpz_class modulus;
  unsigned primes = 0;
  std::vector<QTerms> last;
};

void crt_merge(ModularImage& acc, const std::vector<Terms<GaloisField>>& gp, std::uint64_t p) {
  if (acc.primes == 0) {
    acc.elems.clear();
    for (auto& g : gp) {
      ZTerms z;
      for (auto& t : g) z.push_back({t.m, mpz_class(static_cast<unsigned long>(t.c))});
      acc.elems.push_back(std::move(z));
    }
    acc.modulus = static_cast<unsigned long>(p);
    acc.primes = 1;
    return;
  }
  const mpz_class M = acc.modulus;
  mpz_class Minv, pz = static_cast<unsigned long>(p);
  mpz_invert(Minv.get_mpz_t(), M.get_mpz_t(), pz.get_mpz_t());
  auto lift = [&](const mpz_class& a, std::uint64_t r) -> mpz_class {
    mpz_class d = mpz_class(static_cast<unsigned long>(r)) - a;
    d = d * Minv % pz;
    if (d < 0) d += pz;
    return a + M * d;
  };
  for (std::size_t e = 0; e < gp.size(); ++e) {
    const ZTerms& a = acc.elems[e];
    const auto& b = gp[e];
    ZTerms out;
    std::size_t i = 0, j = 0;
    while (i < a.size() || j < b.size()) {
      int c = i == a.size() ? -1 : j == b.size() ? 1 : grevlex_cmp(a[i].first, b[j].m);
      if (c > 0) {
        out.push_back({a[i].first, lift(a[i].second, 0)});
        ++i;
      } else if (c < 0) {
        out.push_back({b[j].m, lift(0, b[j].c)});
        ++j;
      } else {
        out.push_back({a[i].first, lift(a[i].second, b[j].c)});
        ++i;
        ++j;
      }
    }
    acc.elems[e] = std::move(out);
  }
  acc.modulus = M * pz;
  ++acc.primes;
}

bool same_terms(const std::vector<QTerms>& a, const std::vector<QTerms>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].size() != b[i].size()) return false;
    for (std::size_t j = 0; j < a[i].size(); ++j)
      if (!(a[i][j].m == b[i][j].m) || a[i][j].c != b[i][j].c) return false;
  }
  return true;
}

bool reconstruct(const ModularImage& acc, std::vector<QTerms>& out) {
  mpz_class bound = sqrt(acc.modulus / 2);
  out.clear();
  for (auto& z : acc.elems) {
    QTerms q;
    for (auto& [m, a] : z) {
      mpq_class v;
      if (!rational_reconstruct(a, acc.modulus, bound, v)) return false;
      if (v != 0) q.push_back({m, v});
    }
    out.push_back(std::move(q));
  }
  return true;
}

std::vector<const QTerms*> pointers(const std::vector<QTerms>& v, std::vector<unsigned>& masks) {
  std::vector<const QTerms*> out;
  masks.clear();
  for (auto& t : v) {
    out.push_back(&t);
    masks.push_back(t[0].m.support());
  }
  return out;
}

// Checks (a) and (b) above exactly over Q.
bool verify_candidate(const Rationals& k, const std::vector<QTerms>& inputs, std::vector<QTerms> G,
                      std::uint64_t budget) {
  Reducer<Rationals> red(k, MonomialOrder{}, budget, true);
  for (auto& g : G) normalize(k, g);
  std::vector<unsigned> masks;
  auto basis = pointers(G, masks);
  for (auto& h : inputs)
    if (!red.reduce(h, basis, masks).empty()) return false;
  for (std::size_t i = 0; i < G.size(); ++i)
    for (std::size_t j = i + 1; j < G.size(); ++j) {
      const Monomial& a = G[i][0].m;
      const Monomial& b = G[j][0].m;
      if (coprime(a, b)) continue;
      Monomial L = lcm(a, b);
      bool chain = false;
      for (std::size_t c = 0; c < G.size() && !chain; ++c) {
        if (c == i || c == j || !G[c][0].m.divides(L)) continue;
        chain = !(lcm(a, G[c][0].m) == L) && !(lcm(b, G[c][0].m) == L);
      }
      if (chain) continue;
      mpz_class gc;
      mpz_gcd(gc.get_mpz_t(), G[i][0].c.get_num_mpz_t(), G[j][0].c.get_num_mpz_t());
      mpq_class cf(G[j][0].c.get_num() / gc), cg(G[i][0].c.get_num() / gc);
      QTerms sf;
      Monomial mf = L / a;
      for (auto& t : G[i]) sf.push_back({t.m * mf, t.c * cf});
      QTerms sp = red.sub_mul(sf, 0, cg, L / b, G[j]);
      if (!red.reduce(std::move(sp), basis, masks).empty()) return false;
    }
  return true;
}

GroebnerBasis<Rationals> buchberger_modular(const std::vector<Poly<Rationals>>& generators, std::uint64_t budget) {
  auto field = generators[0].field_ptr();
  const Rationals& k = *field;
  const int nvars = generators[0].nvars();

  std::vector<QTerms> inputs;
  for (auto& g : generators) {
    if (g.is_zero()) continue;
    QTerms t = g.terms();
    normalize(k, t);
    inputs.push_back(std::move(t));
  }
  if (inputs.empty()) return GroebnerBasis<Rationals>(field, nvars, MonomialOrder{}, {}, generators);

  std::vector<ModularImage> images;
  std::uint64_t p = 2147483647;  // 2^31 - 1
  for (int round = 0; round < 1000; ++round, p -= 2) {
    while (!is_prime(p)) p -= 2;
    auto Fp = GaloisField::get(p, 1);
    std::vector<Poly<GaloisField>> hp;
    for (auto& t : inputs) {
      std::vector<Poly<GaloisField>::Term> r;
      for (auto& x : t)
        if (auto v = Fp->from_rational(x.c); v) r.push_back({x.m, v});
      if (!r.empty()) hp.push_back(Poly<GaloisField>::from_sorted(Fp, nvars, std::move(r)));
    }
    if (hp.empty()) continue;
    auto gp = buchberger_direct(hp, MonomialOrder{}, budget);
    std::vector<Terms<GaloisField>> elems;
    std::vector<Monomial> leads;
    for (auto& g : gp.generators()) {
      elems.push_back(g.terms());
      leads.push_back(g.terms()[0].m);
    }
    auto it = std::find_if(images.begin(), images.end(), [&](const auto& im) { return im.leads == leads; });
    if (it == images.end()) {
      images.push_back({});
      it = images.end() - 1;
      it->leads = leads;
    }
    crt_merge(*it, elems, p);
    std::vector<QTerms> cand;
    if (!reconstruct(*it, cand)) continue;
    // wait for one more prime to confirm before the exact check
    bool stable = same_terms(cand, it->last);
    it->last = cand;
    if (stable && verify_candidate(k, inputs, cand, budget))
      return GroebnerBasis<Rationals>(field, nvars, MonomialOrder{}, std::move(cand), generators);
  }
  fail(ErrorCode::BudgetExceeded, "modular Groebner basis did not stabilize");
}

}  // namespace

GroebnerBasis<Rationals> modular_groebner(const std::vector<Poly<Rationals>>& generators, std::uint64_t budget) {
  if (generators.empty()) fail(ErrorCode::InvalidArgument, "empty generator list");
  auto field = generators[0].field_ptr();
  const int nvars = generators[0].nvars();
  for (auto& g : generators)
    if (g.nvars() != nvars || g.field_ptr() != field)
      fail(ErrorCode::RingMismatch, "generators live in different rings");
  return buchberger_modular(generators, budget ? budget : default_budget());
}

template <class F>
GroebnerBasis<F> buchberger(const std::vector<Poly<F>>& generators, MonomialOrder order, std::uint64_t budget) {
  if (generators.empty()) fail(ErrorCode::InvalidArgument, "empty generator list");
  auto field = generators[0].field_ptr();
  const int nvars = generators[0].nvars();
  for (auto& g : generators)
    if (g.nvars() != nvars || g.field_ptr() != field)
      fail(ErrorCode::RingMismatch, "generators live in different rings");
  if (budget == 0) budget = default_budget();
  if constexpr (std::is_same_v<F, Rationals>) {
    // Direct computation unless coefficients blow up; then go modular.
    if (order.kind == OrderKind::grevlex) {
      try {
        return buchberger_direct(generators, order, budget, kDirectBitLimit);
      } catch (const CoefficientGrowth&) {
      } catch (const Error& e) {
        if (e.code() != ErrorCode::BudgetExceeded) throw;
      }
      return buchberger_modular(generators, budget);
    }
  }
  return buchberger_direct(generators, order, budget);
}

// ---------------------------------------------------------------------------

template <class F>
GroebnerBasis<F>::GroebnerBasis(std::shared_ptr<const F> field, int nvars, MonomialOrder order,
                                std::vector<Terms> basis, std::vector<Poly<F>> source)
    : field_(std::move(field)), nvars_(nvars), order_(order), basis_(std::move(basis)), source_(std::move(source)) {
  const int base = source_.empty() ? 0 : source_[0].var_base();
  for (auto& t : basis_) {
    leads_.push_back(t[0].m);
    polys_.push_back(from_order(field_, nvars_, t, order_));
    polys_.back().set_var_base(base);
  }
}

template <class F>
Poly<F> GroebnerBasis<F>::normal_form(const Poly<F>& f) const {
  if (f.nvars() != nvars_ || f.field_ptr() != field_)
    fail(ErrorCode::RingMismatch, "polynomial and basis live in different rings");
  Reducer<F> red(*field_, order_, ~std::uint64_t{0});
  std::vector<const Terms*> basis;
  std::vector<unsigned> masks;
  for (auto& t : basis_) {
    basis.push_back(&t);
    masks.push_back(t[0].m.support());
  }
  Poly<F> r = from_order(field_, nvars_, red.reduce(to_order(f, order_), basis, masks), order_);
  r.set_var_base(f.var_base());
  return r;
}

template <class F>
bool GroebnerBasis<F>::is_standard(const Monomial& m) const {
  for (auto& l : leads_)
    if (l.divides(m)) return false;
  return true;
}

template <class F>
bool GroebnerBasis<F>::is_zero_dimensional() const {
  if (is_unit()) return true;
  for (int i = 0; i < nvars_; ++i) {
    bool found = false;
    for (auto& l : leads_) {
      int v;
      if (l.is_pure_power(&v) && v == i) found = true;
    }
    if (!found) return false;
  }
  return true;
}

template <class F>
std::optional<std::uint64_t> GroebnerBasis<F>::quotient_dimension() const {
  if (!is_zero_dimensional()) return std::nullopt;
  return standard_monomials().dimension();
}

template <class F>
QuotientBasis GroebnerBasis<F>::standard_monomials() const {
  if (!is_zero_dimensional()) fail(ErrorCode::NotZeroDimensional, "quotient ring is infinite-dimensional");
  QuotientBasis qb;
  if (is_unit()) return qb;
  // Depth-first over exponent vectors; a monomial that is not standard has
  // no standard multiples, so each variable's loop stops at the first hit.
  Monomial cur;
  std::vector<Monomial>& out = qb.monomials;
  auto rec = [&](auto&& self, int i) -> void {
    if (i == nvars_) {
      out.push_back(cur);
      return;
    }
    for (unsigned e = 0;; ++e) {
      cur.set(i, e);
      if (!is_standard(cur)) break;
      self(self, i + 1);
    }
    cur.set(i, 0);
  };
  rec(rec, 0);
  std::sort(out.begin(), out.end(), [](const Monomial& a, const Monomial& b) { return grevlex_cmp(a, b) < 0; });
  for (auto& m : out) {
    if (qb.by_degree.size() <= m.deg) qb.by_degree.resize(m.deg + 1, 0);
    ++qb.by_degree[m.deg];
  }
  return qb;
}

template <class F>
std::uint64_t GroebnerBasis<F>::hilbert_function(unsigned d) const {
  if (is_unit()) return 0;
  if (nvars_ == 0) return d == 0 ? 1 : 0;
  Monomial cur;
  std::uint64_t count = 0;
  auto rec = [&](auto&& self, int i, unsigned left) -> void {
    if (i == nvars_ - 1) {
      cur.set(i, left);
      if (is_standard(cur)) ++count;
      cur.set(i, 0);
      return;
    }
    for (unsigned e = 0; e <= left; ++e) {
      cur.set(i, e);
      if (!is_standard(cur)) break;
      self(self, i + 1, left - e);
    }
    cur.set(i, 0);
  };
  rec(rec, 0, d);
  return count;
}

template <class F>
bool GroebnerBasis<F>::is_projectively_empty() const {
  for (auto& p : polys_)
    if (!p.is_homogeneous()) fail(ErrorCode::NotHomogeneous, "projective emptiness needs a homogeneous ideal");
  for (auto& s : source_)
    if (!s.is_homogeneous()) fail(ErrorCode::NotHomogeneous, "projective emptiness needs a homogeneous ideal");
  return is_zero_dimensional();
}

template <class F>
bool GroebnerBasis<F>::projective_locus_finite() const {
  if (is_unit()) return true;
  for (int i = 0; i < nvars_; ++i)
    for (int j = i + 1; j < nvars_; ++j) {
      const unsigned allowed = (1u << i) | (1u << j);
      bool found = false;
      for (auto& l : leads_)
        if ((l.support() & ~allowed) == 0) {
          found = true;
          break;
        }
      if (!found) return false;
    }
  return true;
}

template <class F>
std::uint64_t GroebnerBasis<F>::projective_degree() const {
  if (!projective_locus_finite()) fail(ErrorCode::PositiveDimensionalLocus, "projective locus is not finite");
  // With E_i the largest exponent of x_i among the leading monomials, the
  // Hilbert function is constant beyond sum E_i.
  unsigned bound = 0;
  for (int i = 0; i < nvars_; ++i) {
    unsigned e = 0;
    for (auto& l : leads_) e = std::max(e, l[i]);
    bound += e;
  }
  return hilbert_function(bound + 1);
}

// ---------------------------------------------------------------------------
// Quotient algebra

template <class F>
QuotientAlgebra<F>::QuotientAlgebra(GroebnerBasis<F> gb) : gb_(std::move(gb)) {
  monomials_ = gb_.standard_monomials().monomials;
  for (std::size_t i = 0; i < monomials_.size(); ++i) index_.emplace(monomials_[i], i);
  const F& k = gb_.field();
  const std::size_t D = monomials_.size();
  for (int v = 0; v < gb_.nvars(); ++v) {
    Matrix<F> M(k, D, D);
    for (std::size_t j = 0; j < D; ++j) {
      Monomial m = monomials_[j] * Monomial::var(v);
      auto it = index_.find(m);
      if (it != index_.end()) {
        M.at(it->second, j) = k.one();
        continue;
      }
      auto col = coordinates(Poly<F>::monomial(gb_.field_ptr(), gb_.nvars(), m, k.one()));
      for (std::size_t i = 0; i < D; ++i) M.at(i, j) = col[i];
    }
    mult_.push_back(std::move(M));
  }
}

template <class F>
std::vector<typename F::Element> QuotientAlgebra<F>::coordinates(const Poly<F>& f) const {
  std::vector<Elem> v(monomials_.size(), gb_.field().zero());
  Poly<F> nf = gb_.normal_form(f);
  for (auto& t : nf.terms()) v[index_.at(t.m)] = t.c;
  return v;
}

template <class F>
std::vector<typename F::Element> QuotientAlgebra<F>::minimal_polynomial(int var) const {
  const F& k = gb_.field();
  const std::size_t D = monomials_.size();
  if (D == 0) return {k.one()};
  const Matrix<F>& M = mult_[var];
  struct Row {
    std::size_t pivot;
    std::vector<Elem> vec, combo;
  };
  std::vector<Row> rows;
  std::vector<Elem> cur(D, k.zero());
  cur[index_.at(Monomial{})] = k.one();
  for (std::size_t deg = 0; deg <= D; ++deg) {
    std::vector<Elem> v = cur;
    std::vector<Elem> combo(deg + 1, k.zero());
    combo[deg] = k.one();
    for (auto& r : rows) {
      if (k.is_zero(v[r.pivot])) continue;
      Elem f = v[r.pivot];
      for (std::size_t i = 0; i < D; ++i)
        if (!k.is_zero(r.vec[i])) v[i] = k.sub(v[i], k.mul(f, r.vec[i]));
      for (std::size_t i = 0; i < r.combo.size(); ++i) combo[i] = k.sub(combo[i], k.mul(f, r.combo[i]));
    }
    std::size_t piv = 0;
    while (piv < D && k.is_zero(v[piv])) ++piv;
    if (piv == D) return combo;  // sum combo_j x^j = 0 and combo_deg = 1
    Elem inv = k.inv(v[piv]);
    for (auto& x : v) x = k.mul(x, inv);
    for (auto& x : combo) x = k.mul(x, inv);
    rows.push_back({piv, std::move(v), std::move(combo)});
    // Next Krylov vector.
    std::vector<Elem> next(D, k.zero());
    for (std::size_t j = 0; j < D; ++j) {
      if (k.is_zero(cur[j])) continue;
      for (std::size_t i = 0; i < D; ++i)
        if (!k.is_zero(M.at(i, j))) next[i] = k.add(next[i], k.mul(M.at(i, j), cur[j]));
    }
    cur = std::move(next);
  }
  fail(ErrorCode::InvalidArgument, "minimal polynomial search did not terminate");
}

template <class F>
std::vector<std::uint64_t> QuotientAlgebra<F>::local_profile(const std::vector<typename F::Element>& point,
                                                             const FieldEmbedding<F>& emb) const {
  if (static_cast<int>(point.size()) != gb_.nvars())
    fail(ErrorCode::DimensionMismatch, "point has wrong number of coordinates");
  const auto& Lptr = emb.target();
  const F& L = *Lptr;
  const std::size_t D = monomials_.size();
  const int n = gb_.nvars();
  // N_i = M_i - a_i over L.
  std::vector<Matrix<F>> N;
  for (int v = 0; v < n; ++v) {
    Matrix<F> A(L, D, D);
    for (std::size_t i = 0; i < D; ++i)
      for (std::size_t j = 0; j < D; ++j) A.at(i, j) = emb(mult_[v].at(i, j));
    for (std::size_t i = 0; i < D; ++i) A.at(i, i) = L.sub(A.at(i, i), point[v]);
    N.push_back(std::move(A));
  }
  // W as an echelon list of rows; W_0 = A.
  std::vector<std::vector<Elem>> W;
  for (std::size_t i = 0; i < D; ++i) {
    std::vector<Elem> e(D, L.zero());
    e[i] = L.one();
    W.push_back(std::move(e));
  }
  std::vector<std::uint64_t> profile;
  std::size_t prev = D;
  for (;;) {
    std::vector<std::vector<Elem>> gens;
    for (auto& w : W)
      for (int v = 0; v < n; ++v) {
        std::vector<Elem> out(D, L.zero());
        for (std::size_t j = 0; j < D; ++j) {
          if (L.is_zero(w[j])) continue;
          for (std::size_t i = 0; i < D; ++i)
            if (!L.is_zero(N[v].at(i, j))) out[i] = L.add(out[i], L.mul(N[v].at(i, j), w[j]));
        }
        gens.push_back(std::move(out));
      }
    // Echelonize gens.
    std::vector<std::vector<Elem>> basis;
    std::vector<std::size_t> pivots;
    for (auto& g : gens) {
      for (std::size_t r = 0; r < basis.size(); ++r) {
        if (L.is_zero(g[pivots[r]])) continue;
        Elem f = g[pivots[r]];
        for (std::size_t i = 0; i < D; ++i)
          if (!L.is_zero(basis[r][i])) g[i] = L.sub(g[i], L.mul(f, basis[r][i]));
      }
      std::size_t piv = 0;
      while (piv < D && L.is_zero(g[piv])) ++piv;
      if (piv == D) continue;
      Elem inv = L.inv(g[piv]);
      for (auto& x : g) x = L.mul(x, inv);
      basis.push_back(std::move(g));
      pivots.push_back(piv);
      if (basis.size() == prev) break;  // cannot grow beyond W_{N-1}
    }
    profile.push_back(D - basis.size());
    if (basis.size() == prev) {
      if (profile.size() == 1) profile.push_back(profile.back());
      break;
    }
    prev = basis.size();
    W = std::move(basis);
  }
  return profile;
}

#define DEFEKT_INSTANTIATE(F)                                                                         \
  template class GroebnerBasis<F>;                                                                    \
  template class QuotientAlgebra<F>;                                                                  \
  template GroebnerBasis<F> buchberger(const std::vector<Poly<F>>&, MonomialOrder, std::uint64_t);

DEFEKT_INSTANTIATE(Rationals)
DEFEKT_INSTANTIATE(GaloisField)
#undef DEFEKT_INSTANTIATE

}  // namespace defekt
