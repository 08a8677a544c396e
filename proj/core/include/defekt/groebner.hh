#pragma once

#include <cstdint>
#include <optional>
#include <unordered_map>
#include <vector>

#include "defekt/linalg.hh"
#include "defekt/poly.hh"

namespace defekt {

// Reduction-step budget: DEFEKT_BUDGET if set, else 10^6.
std::uint64_t default_budget();

struct QuotientBasis {
  std::vector<Monomial> monomials;  // ascending grevlex
  std::vector<std::uint64_t> by_degree;
  std::uint64_t dimension() const { return monomials.size(); }
};

template <class F>
class GroebnerBasis {
 public:
  using Elem = typename F::Element;
  using Term = typename Poly<F>::Term;
  using Terms = std::vector<Term>;  // sorted descending in `order`

  GroebnerBasis() = default;
  GroebnerBasis(std::shared_ptr<const F> field, int nvars, MonomialOrder order, std::vector<Terms> basis,
                std::vector<Poly<F>> source);

  const std::shared_ptr<const F>& field_ptr() const { return field_; }
  const F& field() const { return *field_; }
  int nvars() const { return nvars_; }
  const MonomialOrder& order() const { return order_; }
  const std::vector<Poly<F>>& generators() const { return polys_; }
  const std::vector<Poly<F>>& source() const { return source_; }
  const std::vector<Monomial>& leading_monomials() const { return leads_; }
  std::size_t size() const { return basis_.size(); }
  bool is_unit() const { return leads_.size() == 1 && leads_[0].deg == 0; }

  Poly<F> normal_form(const Poly<F>& f) const;
  bool contains(const Poly<F>& f) const { return normal_form(f).is_zero(); }

  // Finite iff every variable has a pure power among the leading monomials.
  bool is_zero_dimensional() const;
  std::optional<std::uint64_t> quotient_dimension() const;
  // Requires is_zero_dimensional().
  QuotientBasis standard_monomials() const;
  // Number of standard monomials of total degree exactly d (may be used on
  // positive-dimensional ideals).
  std::uint64_t hilbert_function(unsigned d) const;

  // Homogeneous ideal in n+1 variables: is V(I) empty in P^n?
  bool is_projectively_empty() const;
  // Homogeneous ideal: is V(I) a finite set of points in P^n?
  bool projective_locus_finite() const;
  // Degree of the zero-dimensional projective scheme V(I) (constant value of
  // the Hilbert polynomial). Requires projective_locus_finite().
  std::uint64_t projective_degree() const;

  // Leading monomial test helper.
  bool is_standard(const Monomial& m) const;

 private:
  std::shared_ptr<const F> field_;
  int nvars_ = 0;
  MonomialOrder order_;
  std::vector<Terms> basis_;
  std::vector<Poly<F>> polys_;
  std::vector<Poly<F>> source_;
  std::vector<Monomial> leads_;
};

// Reduced Groebner basis. Over Q in grevlex the direct computation switches
// to modular_groebner when coefficients grow large.
template <class F>
GroebnerBasis<F> buchberger(const std::vector<Poly<F>>& generators,
                            MonomialOrder order = MonomialOrder::grevlex(),
                            std::uint64_t budget = 0);

// Grevlex basis over Q from images modulo word-size primes. The candidate is
// checked exactly to be a Groebner basis of an ideal containing the input;
// for homogeneous input that ideal is the input ideal.
GroebnerBasis<Rationals> modular_groebner(const std::vector<Poly<Rationals>>& generators, std::uint64_t budget = 0);

// The finite-dimensional algebra A = R/I of a zero-dimensional ideal, with
// multiplication matrices in the standard-monomial basis.
template <class F>
class QuotientAlgebra {
 public:
  using Elem = typename F::Element;

  explicit QuotientAlgebra(GroebnerBasis<F> gb);

  const GroebnerBasis<F>& basis() const { return gb_; }
  std::size_t dimension() const { return monomials_.size(); }
  const std::vector<Monomial>& monomials() const { return monomials_; }
  // Coordinates of the normal form of f.
  std::vector<Elem> coordinates(const Poly<F>& f) const;
  // Column j = coordinates of x_i * b_j.
  const Matrix<F>& multiplication(int i) const { return mult_[i]; }

  // Minimal polynomial of multiplication by x_i, c_0..c_d (monic).
  std::vector<Elem> minimal_polynomial(int i) const;

  // dim R/(I + m^N) for the maximal ideal of `point` (coordinates in the
  // target of `emb`), for N = 1, 2, ... until the chain stabilizes. The last
  // entry is the local multiplicity.
  std::vector<std::uint64_t> local_profile(const std::vector<typename F::Element>& point,
                                           const FieldEmbedding<F>& emb) const;
  std::uint64_t local_dimension(const std::vector<typename F::Element>& point,
                                const FieldEmbedding<F>& emb) const {
    return local_profile(point, emb).back();
  }

 private:
  GroebnerBasis<F> gb_;
  std::vector<Monomial> monomials_;
  std::unordered_map<Monomial, std::size_t, MonomialHash> index_;
  std::vector<Matrix<F>> mult_;
};

template <class F>
struct SolvedPoint {
  std::vector<typename F::Element> coords;  // in emb.target()
  FieldEmbedding<F> embedding;              // base field -> residue field
  unsigned degree = 1;                      // residue degree over the base
  std::uint64_t multiplicity = 0;           // local quotient dimension
};

template <class F>
struct SolveResult {
  std::vector<SolvedPoint<F>> points;
  // Over Q: total degree of eliminant factors without rational roots.
  unsigned unresolved_degree = 0;
};

// All closed points of a zero-dimensional ideal, one representative per
// Galois orbit. Over Q only rational points are found.
template <class F>
SolveResult<F> solve_zero_dimensional(const GroebnerBasis<F>& gb, bool with_multiplicity = true);
template <>
SolveResult<GaloisField> solve_zero_dimensional(const GroebnerBasis<GaloisField>& gb, bool with_multiplicity);
template <>
SolveResult<Rationals> solve_zero_dimensional(const GroebnerBasis<Rationals>& gb, bool with_multiplicity);

}  // namespace defekt
