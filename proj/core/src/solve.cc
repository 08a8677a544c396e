#include <algorithm>
#include <map>
#include <mutex>
#include <set>

#include "defekt/groebner.hh"
#include "defekt/upoly.hh"

namespace defekt {

namespace {

// ---------------------------------------------------------------------------
// Rational roots of a univariate polynomial over Q.

std::vector<mpz_class> factor_integer(mpz_class n) {
  std::vector<mpz_class> primes;
  if (n < 0) n = -n;
  if (n <= 1) return primes;
  for (unsigned long d = 2; d < 100000 && d * d <= n; ++d) {
    if (mpz_divisible_ui_p(n.get_mpz_t(), d)) {
      primes.emplace_back(d);
      while (mpz_divisible_ui_p(n.get_mpz_t(), d)) n /= d;
    }
  }
  // Pollard rho for whatever is left.
  std::vector<mpz_class> stack;
  if (n > 1) stack.push_back(n);
  while (!stack.empty()) {
    mpz_class m = stack.back();
    stack.pop_back();
    if (m == 1) continue;
    if (mpz_probab_prime_p(m.get_mpz_t(), 30)) {
      primes.push_back(m);
      continue;
    }
    mpz_class d = m;
    for (unsigned long c = 1; d == m; ++c) {
      mpz_class x = 2, y = 2;
      d = 1;
      while (d == 1) {
        x = (x * x + c) % m;
        y = (y * y + c) % m;
        y = (y * y + c) % m;
        mpz_class diff = x - y;
        mpz_gcd(d.get_mpz_t(), diff.get_mpz_t(), m.get_mpz_t());
      }
    }
    stack.push_back(d);
    stack.push_back(m / d);
  }
  std::sort(primes.begin(), primes.end());
  primes.erase(std::unique(primes.begin(), primes.end()), primes.end());
  return primes;
}

std::vector<mpz_class> divisors(const mpz_class& n_in) {
  mpz_class n = abs(n_in);
  std::vector<mpz_class> divs{1};
  for (auto& p : factor_integer(n)) {
    mpz_class m = n;
    unsigned e = 0;
    while (mpz_divisible_p(m.get_mpz_t(), p.get_mpz_t())) {
      m /= p;
      ++e;
    }
    std::size_t count = divs.size();
    mpz_class pk = 1;
    for (unsigned k = 1; k <= e; ++k) {
      pk *= p;
      for (std::size_t i = 0; i < count; ++i) divs.push_back(divs[i] * pk);
    }
  }
  return divs;
}

using QCoeffs = std::vector<mpq_class>;

void qtrim(QCoeffs& a) {
  while (!a.empty() && sgn(a.back()) == 0) a.pop_back();
}

QCoeffs qmod(QCoeffs a, const QCoeffs& b) {
  qtrim(a);
  while (a.size() >= b.size() && !a.empty()) {
    mpq_class c = a.back() / b.back();
    std::size_t shift = a.size() - b.size();
    for (std::size_t j = 0; j < b.size(); ++j) a[shift + j] -= c * b[j];
    qtrim(a);
  }
  return a;
}

QCoeffs qdiv(QCoeffs a, const QCoeffs& b) {
  qtrim(a);
  if (a.size() < b.size()) return {};
  QCoeffs quo(a.size() - b.size() + 1);
  while (a.size() >= b.size() && !a.empty()) {
    mpq_class c = a.back() / b.back();
    std::size_t shift = a.size() - b.size();
    quo[shift] = c;
    for (std::size_t j = 0; j < b.size(); ++j) a[shift + j] -= c * b[j];
    qtrim(a);
  }
  qtrim(quo);
  return quo;
}

QCoeffs qgcd(QCoeffs a, QCoeffs b) {
  qtrim(a);
  qtrim(b);
  while (!b.empty()) {
    QCoeffs r = qmod(a, b);
    a = std::move(b);
    b = std::move(r);
  }
  if (!a.empty()) {
    mpq_class lc = a.back();
    for (auto& c : a) c /= lc;
  }
  return a;
}

QCoeffs squarefree_part(const QCoeffs& f) {
  QCoeffs d;
  for (std::size_t i = 1; i < f.size(); ++i) d.push_back(f[i] * static_cast<long>(i));
  qtrim(d);
  if (d.empty()) return f;
  return qdiv(f, qgcd(f, d));
}

std::vector<mpq_class> rational_roots(const QCoeffs& f_in) {
  QCoeffs f = f_in;
  qtrim(f);
  std::vector<mpq_class> roots;
  if (f.size() <= 1) return roots;
  mpz_class den = 1;
  for (auto& c : f) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), c.get_den_mpz_t());
  std::vector<mpz_class> a;
  for (auto& c : f) a.push_back(mpz_class(c * den));
  std::size_t low = 0;
  while (a[low] == 0) ++low;
  if (low > 0) roots.emplace_back(0);
  a.erase(a.begin(), a.begin() + static_cast<std::ptrdiff_t>(low));
  if (a.size() <= 1) return roots;
  auto eval = [&](const mpq_class& x) {
    mpq_class acc = 0;
    for (std::size_t i = a.size(); i-- > 0;) acc = acc * x + a[i];
    return acc;
  };
  std::set<mpq_class> found;
  for (auto& p : divisors(a.front()))
    for (auto& q : divisors(a.back())) {
      for (int s : {1, -1}) {
        mpq_class x(p * s, q);
        x.canonicalize();
        if (found.count(x)) continue;
        if (sgn(eval(x)) == 0) found.insert(x);
      }
    }
  roots.insert(roots.end(), found.begin(), found.end());
  std::sort(roots.begin(), roots.end());
  return roots;
}

// ---------------------------------------------------------------------------

std::mutex embedding_mu;

FieldEmbedding<GaloisField> cached_embedding(const std::shared_ptr<const GaloisField>& from,
                                             const std::shared_ptr<const GaloisField>& to) {
  static std::map<std::pair<const GaloisField*, const GaloisField*>, FieldEmbedding<GaloisField>> cache;
  {
    std::lock_guard<std::mutex> lock(embedding_mu);
    auto it = cache.find({from.get(), to.get()});
    if (it != cache.end()) return it->second;
  }
  auto emb = canonical_embedding(from, to);
  std::lock_guard<std::mutex> lock(embedding_mu);
  cache.emplace(std::make_pair(from.get(), to.get()), emb);
  return emb;
}

struct RawPoint {
  std::vector<GaloisField::Element> coords;
  FieldEmbedding<GaloisField> emb;
};

std::vector<RawPoint> solve_rec(const GroebnerBasis<GaloisField>& gb) {
  const auto& K = gb.field_ptr();
  const int n = gb.nvars();
  std::vector<RawPoint> out;
  if (gb.is_unit()) return out;
  if (n == 0) {
    out.push_back({{}, FieldEmbedding<GaloisField>(K)});
    return out;
  }
  if (!gb.is_zero_dimensional()) fail(ErrorCode::NotZeroDimensional, "ideal is not zero-dimensional");
  QuotientAlgebra<GaloisField> A(gb);
  auto mp = A.minimal_polynomial(n - 1);
  for (const auto& h : upoly::irreducible_factors(*K, mp)) {
    const unsigned a = static_cast<unsigned>(upoly::degree(h));
    FieldEmbedding<GaloisField> emb(K);
    auto L = K;
    if (a > 1) {
      L = GaloisField::get(K->p(), K->degree() * a);
      emb = cached_embedding(K, L);
    }
    upoly::Coeffs hl;
    for (auto c : h) hl.push_back(emb(c));
    auto rts = upoly::roots(*L, hl);
    if (rts.empty()) fail(ErrorCode::InvalidField, "irreducible factor has no root in its splitting field");
    const auto alpha = rts.front();
    std::vector<Poly<GaloisField>> sub;
    for (auto& g : gb.generators()) sub.push_back(specialize(embed(g, emb), n - 1, alpha));
    bool all_zero = std::all_of(sub.begin(), sub.end(), [](const auto& p) { return p.is_zero(); });
    std::vector<RawPoint> below;
    if (all_zero) {
      if (n - 1 > 0) fail(ErrorCode::NotZeroDimensional, "ideal is not zero-dimensional");
      below.push_back({{}, FieldEmbedding<GaloisField>(L)});
    } else {
      below = solve_rec(buchberger(sub));
    }
    for (auto& pt : below) {
      RawPoint r;
      r.coords = pt.coords;
      r.coords.push_back(pt.emb(alpha));
      r.emb = emb.then(pt.emb);
      out.push_back(std::move(r));
    }
  }
  return out;
}

struct RawQPoint {
  std::vector<mpq_class> coords;
};

std::vector<RawQPoint> solve_rec_q(const GroebnerBasis<Rationals>& gb, unsigned& unresolved) {
  const int n = gb.nvars();
  std::vector<RawQPoint> out;
  if (gb.is_unit()) return out;
  if (n == 0) {
    out.push_back({});
    return out;
  }
  if (!gb.is_zero_dimensional()) fail(ErrorCode::NotZeroDimensional, "ideal is not zero-dimensional");
  QuotientAlgebra<Rationals> A(gb);
  QCoeffs mp = A.minimal_polynomial(n - 1);
  QCoeffs sf = squarefree_part(mp);
  auto rts = rational_roots(sf);
  unresolved += static_cast<unsigned>(sf.size() - 1 - rts.size());
  for (auto& alpha : rts) {
    std::vector<Poly<Rationals>> sub;
    for (auto& g : gb.generators()) sub.push_back(specialize(g, n - 1, alpha));
    bool all_zero = std::all_of(sub.begin(), sub.end(), [](const auto& p) { return p.is_zero(); });
    std::vector<RawQPoint> below;
    if (all_zero) {
      if (n - 1 > 0) fail(ErrorCode::NotZeroDimensional, "ideal is not zero-dimensional");
      below.push_back({});
    } else {
      below = solve_rec_q(buchberger(sub), unresolved);
    }
    for (auto& pt : below) {
      pt.coords.push_back(alpha);
      out.push_back(std::move(pt));
    }
  }
  return out;
}

}  // namespace

template <>
SolveResult<GaloisField> solve_zero_dimensional(const GroebnerBasis<GaloisField>& gb, bool with_multiplicity) {
  SolveResult<GaloisField> res;
  if (gb.nvars() > 0 && !gb.is_unit() && !gb.is_zero_dimensional())
    fail(ErrorCode::NotZeroDimensional, "ideal is not zero-dimensional");
  auto raw = solve_rec(gb);
  std::optional<QuotientAlgebra<GaloisField>> A;
  if (with_multiplicity && !raw.empty()) A.emplace(gb);
  const unsigned base_deg = gb.field().degree();
  for (auto& r : raw) {
    SolvedPoint<GaloisField> pt;
    pt.coords = r.coords;
    pt.embedding = r.emb;
    pt.degree = r.emb.target()->degree() / base_deg;
    if (A) pt.multiplicity = A->local_dimension(pt.coords, pt.embedding);
    res.points.push_back(std::move(pt));
  }
  return res;
}

template <>
SolveResult<Rationals> solve_zero_dimensional(const GroebnerBasis<Rationals>& gb, bool with_multiplicity) {
  SolveResult<Rationals> res;
  if (gb.nvars() > 0 && !gb.is_unit() && !gb.is_zero_dimensional())
    fail(ErrorCode::NotZeroDimensional, "ideal is not zero-dimensional");
  auto raw = solve_rec_q(gb, res.unresolved_degree);
  std::optional<QuotientAlgebra<Rationals>> A;
  if (with_multiplicity && !raw.empty()) A.emplace(gb);
  for (auto& r : raw) {
    SolvedPoint<Rationals> pt;
    pt.coords = r.coords;
    if (A) pt.multiplicity = A->local_dimension(pt.coords, pt.embedding);
    res.points.push_back(std::move(pt));
  }
  return res;
}

}  // namespace defekt
