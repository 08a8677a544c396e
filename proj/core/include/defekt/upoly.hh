#pragma once

// Dense univariate polynomials over a finite field: Euclid, modular powers,
// square-free, distinct-degree and equal-degree (Cantor-Zassenhaus)
// factorization, root extraction.

#include <cstdint>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "defekt/field.hh"

namespace defekt::upoly {

using Elem = GaloisField::Element;
// c_0..c_deg with nonzero leading coefficient; the zero polynomial is empty.
using Coeffs = std::vector<Elem>;

void trim(Coeffs& a);
inline int degree(const Coeffs& a) { return static_cast<int>(a.size()) - 1; }

Coeffs add(const GaloisField& k, const Coeffs& a, const Coeffs& b);
Coeffs sub(const GaloisField& k, const Coeffs& a, const Coeffs& b);
Coeffs mul(const GaloisField& k, const Coeffs& a, const Coeffs& b);
Coeffs scale(const GaloisField& k, const Coeffs& a, Elem c);
std::pair<Coeffs, Coeffs> divmod(const GaloisField& k, const Coeffs& a, const Coeffs& b);
Coeffs mod(const GaloisField& k, const Coeffs& a, const Coeffs& m);
Coeffs monic(const GaloisField& k, const Coeffs& a);
Coeffs gcd(const GaloisField& k, Coeffs a, Coeffs b);
Coeffs derivative(const GaloisField& k, const Coeffs& a);
Elem eval(const GaloisField& k, const Coeffs& a, Elem x);

Coeffs mulmod(const GaloisField& k, const Coeffs& a, const Coeffs& b, const Coeffs& m);
Coeffs powmod(const GaloisField& k, const Coeffs& a, const mpz_class& exponent, const Coeffs& m);
Coeffs powmod(const GaloisField& k, const Coeffs& a, std::uint64_t exponent, const Coeffs& m);

bool is_irreducible(const GaloisField& k, const Coeffs& f);

// Square-free factorization of a monic f: pairs (g_i, i) with f = prod g_i^i.
std::vector<std::pair<Coeffs, unsigned>> squarefree_factorization(const GaloisField& k,
                                                                  const Coeffs& f);

// Monic irreducible factors of f without multiplicity, sorted by degree then
// coefficients. Deterministic.
std::vector<Coeffs> irreducible_factors(const GaloisField& k, const Coeffs& f);

// Distinct roots of f in k, ascending by encoding.
std::vector<Elem> roots(const GaloisField& k, const Coeffs& f);

}  // namespace defekt::upoly
