#include "defekt/upoly.hh"

#include <algorithm>

#include "defekt/random.hh"

namespace defekt::upoly {

void trim(Coeffs& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

Coeffs add(const GaloisField& k, const Coeffs& a, const Coeffs& b) {
  Coeffs r(std::max(a.size(), b.size()), 0);
  for (std::size_t i = 0; i < r.size(); ++i) {
    Elem x = i < a.size() ? a[i] : 0;
    Elem y = i < b.size() ? b[i] : 0;
    r[i] = k.add(x, y);
  }
  trim(r);
  return r;
}

Coeffs sub(const GaloisField& k, const Coeffs& a, const Coeffs& b) {
  Coeffs r(std::max(a.size(), b.size()), 0);
  for (std::size_t i = 0; i < r.size(); ++i) {
    Elem x = i < a.size() ? a[i] : 0;
    Elem y = i < b.size() ? b[i] : 0;
    r[i] = k.sub(x, y);
  }
  trim(r);
  return r;
}

Coeffs mul(const GaloisField& k, const Coeffs& a, const Coeffs& b) {
  if (a.empty() || b.empty()) return {};
  Coeffs r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = k.add(r[i + j], k.mul(a[i], b[j]));
  }
  trim(r);
  return r;
}

Coeffs scale(const GaloisField& k, const Coeffs& a, Elem c) {
  if (c == 0) return {};
  Coeffs r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = k.mul(a[i], c);
  return r;
}

std::pair<Coeffs, Coeffs> divmod(const GaloisField& k, const Coeffs& a, const Coeffs& b) {
  if (b.empty()) fail(ErrorCode::DivisionByZero, "polynomial division by zero");
  Coeffs rem = a;
  trim(rem);
  if (rem.size() < b.size()) return {{}, rem};
  Coeffs quo(rem.size() - b.size() + 1, 0);
  Elem lead_inv = k.inv(b.back());
  for (std::size_t i = rem.size(); i-- >= b.size();) {
    Elem c = k.mul(rem[i], lead_inv);
    std::size_t shift = i - (b.size() - 1);
    quo[shift] = c;
    if (c == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j)
      rem[shift + j] = k.sub(rem[shift + j], k.mul(c, b[j]));
  }
  trim(rem);
  trim(quo);
  return {quo, rem};
}

Coeffs mod(const GaloisField& k, const Coeffs& a, const Coeffs& m) { return divmod(k, a, m).second; }

Coeffs monic(const GaloisField& k, const Coeffs& a) {
  if (a.empty() || a.back() == 1) return a;
  return scale(k, a, k.inv(a.back()));
}

Coeffs gcd(const GaloisField& k, Coeffs a, Coeffs b) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    Coeffs r = mod(k, a, b);
    a = std::move(b);
    b = std::move(r);
  }
  return monic(k, a);
}

Coeffs derivative(const GaloisField& k, const Coeffs& a) {
  if (a.size() <= 1) return {};
  Coeffs r(a.size() - 1);
  for (std::size_t i = 1; i < a.size(); ++i)
    r[i - 1] = k.mul(a[i], k.from_int(static_cast<std::int64_t>(i % k.p())));
  trim(r);
  return r;
}

Elem eval(const GaloisField& k, const Coeffs& a, Elem x) {
  Elem acc = 0;
  for (std::size_t i = a.size(); i-- > 0;) acc = k.add(k.mul(acc, x), a[i]);
  return acc;
}

Coeffs mulmod(const GaloisField& k, const Coeffs& a, const Coeffs& b, const Coeffs& m) {
  return mod(k, mul(k, a, b), m);
}

Coeffs powmod(const GaloisField& k, const Coeffs& a, const mpz_class& exponent, const Coeffs& m) {
  Coeffs result{1};
  result = mod(k, result, m);
  Coeffs base = mod(k, a, m);
  if (sgn(exponent) == 0) return result;
  for (std::size_t bit = mpz_sizeinbase(exponent.get_mpz_t(), 2); bit-- > 0;) {
    result = mulmod(k, result, result, m);
    if (mpz_tstbit(exponent.get_mpz_t(), bit)) result = mulmod(k, result, base, m);
  }
  return result;
}

Coeffs powmod(const GaloisField& k, const Coeffs& a, std::uint64_t exponent, const Coeffs& m) {
  mpz_class e;
  mpz_import(e.get_mpz_t(), 1, 1, sizeof(exponent), 0, 0, &exponent);
  return powmod(k, a, e, m);
}

bool is_irreducible(const GaloisField& k, const Coeffs& f_in) {
  Coeffs f = monic(k, f_in);
  int n = degree(f);
  if (n < 1) return false;
  if (n == 1) return true;
  const Coeffs x{0, 1};
  std::vector<Coeffs> frob(static_cast<std::size_t>(n) + 1);
  frob[0] = x;
  for (int i = 1; i <= n; ++i) frob[i] = powmod(k, frob[i - 1], k.cardinality(), f);
  if (sub(k, frob[n], x) != Coeffs{}) return false;
  for (std::uint64_t r : prime_factors(static_cast<std::uint64_t>(n))) {
    Coeffs g = gcd(k, f, sub(k, frob[n / r], x));
    if (degree(g) != 0) return false;
  }
  return true;
}

namespace {

Coeffs pth_root(const GaloisField& k, const Coeffs& a) {
  const std::uint64_t p = k.p();
  // c^(1/p) = c^(q/p) in F_q.
  const std::uint64_t root_exp = k.cardinality() / p;
  Coeffs r((a.size() - 1) / p + 1, 0);
  for (std::size_t i = 0; i < a.size(); i += p) r[i / p] = k.pow(a[i], root_exp);
  trim(r);
  return r;
}

std::vector<std::pair<Coeffs, unsigned>> distinct_degree(const GaloisField& k, Coeffs f) {
  std::vector<std::pair<Coeffs, unsigned>> out;
  const Coeffs x{0, 1};
  Coeffs h = mod(k, x, f);
  for (unsigned i = 1; degree(f) >= 2 * static_cast<int>(i); ++i) {
    h = powmod(k, h, k.cardinality(), f);
    Coeffs g = gcd(k, f, sub(k, h, x));
    if (degree(g) > 0) {
      out.emplace_back(g, i);
      f = divmod(k, f, g).first;
      h = mod(k, h, f);
    }
  }
  if (degree(f) > 0) out.emplace_back(monic(k, f), static_cast<unsigned>(degree(f)));
  return out;
}

Coeffs random_poly(const GaloisField& k, int deg_bound, SplitMix64& rng) {
  Coeffs a(static_cast<std::size_t>(deg_bound));
  for (auto& c : a) c = rng.uniform(k.cardinality());
  trim(a);
  return a;
}

void equal_degree(const GaloisField& k, const Coeffs& f, unsigned d, SplitMix64& rng,
                  std::vector<Coeffs>& out) {
  if (degree(f) == static_cast<int>(d)) {
    out.push_back(monic(k, f));
    return;
  }
  const std::uint64_t q = k.cardinality();
  mpz_class qd;
  mpz_ui_pow_ui(qd.get_mpz_t(), k.p(), static_cast<unsigned long>(k.degree()) * d);
  for (;;) {
    Coeffs a = random_poly(k, degree(f), rng);
    if (degree(a) < 1) continue;
    Coeffs g = gcd(k, a, f);
    if (degree(g) > 0 && degree(g) < degree(f)) {
      equal_degree(k, g, d, rng, out);
      equal_degree(k, divmod(k, f, g).first, d, rng, out);
      return;
    }
    Coeffs b;
    if (q % 2 == 1) {
      mpz_class e = (qd - 1) / 2;
      b = sub(k, powmod(k, a, e, f), Coeffs{1});
    } else {
      // Trace map onto F_2: sum of a^(2^j), j < log2(q^d).
      unsigned steps = k.degree() * d;
      Coeffs t = mod(k, a, f);
      Coeffs acc = t;
      for (unsigned j = 1; j < steps; ++j) {
        t = mulmod(k, t, t, f);
        acc = add(k, acc, t);
      }
      b = acc;
    }
    g = gcd(k, b, f);
    if (degree(g) > 0 && degree(g) < degree(f)) {
      equal_degree(k, g, d, rng, out);
      equal_degree(k, divmod(k, f, g).first, d, rng, out);
      return;
    }
  }
}

bool coeff_less(const Coeffs& a, const Coeffs& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  return std::lexicographical_compare(a.rbegin(), a.rend(), b.rbegin(), b.rend());
}

}  // namespace

std::vector<std::pair<Coeffs, unsigned>> squarefree_factorization(const GaloisField& k,
                                                                  const Coeffs& f_in) {
  std::vector<std::pair<Coeffs, unsigned>> out;
  Coeffs f = monic(k, f_in);
  if (degree(f) < 1) return out;
  Coeffs c = gcd(k, f, derivative(k, f));
  Coeffs w = divmod(k, f, c).first;
  unsigned i = 1;
  while (degree(w) > 0) {
    Coeffs y = gcd(k, w, c);
    Coeffs fac = divmod(k, w, y).first;
    if (degree(fac) > 0) out.emplace_back(monic(k, fac), i);
    w = y;
    c = divmod(k, c, y).first;
    ++i;
  }
  if (degree(c) > 0) {
    for (auto& [g, j] : squarefree_factorization(k, pth_root(k, c)))
      out.emplace_back(g, j * static_cast<unsigned>(k.p()));
  }
  return out;
}

std::vector<Coeffs> irreducible_factors(const GaloisField& k, const Coeffs& f) {
  std::vector<Coeffs> out;
  SplitMix64 rng(0x5eedf00dULL + k.cardinality());
  for (auto& [g, mult] : squarefree_factorization(k, f)) {
    (void)mult;
    for (auto& [h, d] : distinct_degree(k, g)) equal_degree(k, h, d, rng, out);
  }
  std::sort(out.begin(), out.end(), coeff_less);
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<Elem> roots(const GaloisField& k, const Coeffs& f) {
  std::vector<Elem> out;
  Coeffs g = monic(k, f);
  trim(g);
  if (degree(g) < 1) return out;
  // Restrict to the split part gcd(f, x^q - x) before factoring.
  Coeffs xq = powmod(k, Coeffs{0, 1}, k.cardinality(), g);
  Coeffs split = gcd(k, g, sub(k, xq, Coeffs{0, 1}));
  for (const Coeffs& h : irreducible_factors(k, split))
    if (degree(h) == 1) out.push_back(k.neg(h[0]));
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace defekt::upoly
