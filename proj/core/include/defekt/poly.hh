#pragma once

// Sparse multivariate polynomials over a field policy F (see field.hh).
// Terms are kept sorted by descending grevlex with no zero coefficients.

#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "defekt/field.hh"
#include "defekt/monomial.hh"
#include "defekt/random.hh"

namespace defekt {

template <class F>
class Poly {
 public:
  using Field = F;
  using Elem = typename F::Element;
  struct Term {
    Monomial m;
    Elem c;
  };

  Poly() = default;
  // Zero polynomial. `var_base` only affects printing and parsing: variables
  // are named x<base>, x<base+1>, ...
  Poly(std::shared_ptr<const F> field, int nvars, int var_base = 0);

  static Poly constant(std::shared_ptr<const F> field, int nvars, const Elem& c, int var_base = 0);
  static Poly variable(std::shared_ptr<const F> field, int nvars, int i, int var_base = 0);
  static Poly monomial(std::shared_ptr<const F> field, int nvars, const Monomial& m, const Elem& c,
                       int var_base = 0);
  // Sorts, merges equal monomials and drops zeros.
  static Poly from_terms(std::shared_ptr<const F> field, int nvars, std::vector<Term> terms,
                         int var_base = 0);
  // Takes terms already sorted descending grevlex, distinct, nonzero.
  static Poly from_sorted(std::shared_ptr<const F> field, int nvars, std::vector<Term> terms,
                          int var_base = 0);

  const F& field() const { return *field_; }
  const std::shared_ptr<const F>& field_ptr() const { return field_; }
  int nvars() const { return nvars_; }
  int var_base() const { return var_base_; }
  void set_var_base(int b) { var_base_ = b; }

  bool is_zero() const { return terms_.empty(); }
  const std::vector<Term>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  const Term& leading() const { return terms_.front(); }

  int degree() const;      // -1 for zero
  int min_degree() const;  // -1 for zero
  bool is_homogeneous() const;
  bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].m.deg == 0); }
  Elem coefficient(const Monomial& m) const;
  Elem constant_term() const;
  Poly homogeneous_part(int k) const;

  Poly operator+(const Poly& o) const;
  Poly operator-(const Poly& o) const;
  Poly operator-() const;
  Poly operator*(const Poly& o) const;
  Poly& operator+=(const Poly& o) { return *this = *this + o; }
  Poly& operator-=(const Poly& o) { return *this = *this - o; }
  Poly& operator*=(const Poly& o) { return *this = *this * o; }
  Poly scaled(const Elem& c) const;
  Poly times_monomial(const Monomial& m, const Elem& c) const;
  Poly pow(unsigned k) const;
  Poly monic() const;

  bool operator==(const Poly& o) const;
  bool operator!=(const Poly& o) const { return !(*this == o); }

 private:
  void check_compatible(const Poly& o) const;

  std::shared_ptr<const F> field_;
  int nvars_ = 0;
  int var_base_ = 0;
  std::vector<Term> terms_;
};

template <class F>
struct Jet {
  std::vector<typename F::Element> point;
  int order = 0;
  // layers[i] is homogeneous of degree i (or zero), in coordinates centered
  // at the point.
  std::vector<Poly<F>> layers;

  int multiplicity() const;  // least i with a nonzero layer, or order + 1
};

template <class F>
Poly<F> partial_derivative(const Poly<F>& f, int i);
template <class F>
std::vector<Poly<F>> gradient(const Poly<F>& f);

// Sets x_chart = 1 and drops that variable; remaining variables are renamed
// x1..xn.
template <class F>
Poly<F> dehomogenize(const Poly<F>& F_, int chart);
// Homogenizes to degree d with a new variable x0 in front.
template <class F>
Poly<F> homogenize(const Poly<F>& f, int d);

template <class F>
typename F::Element evaluate(const Poly<F>& f, const std::vector<typename F::Element>& point);

// f(x_0, ..., x_{n-1}) with x_i replaced by subs[i] (all in the same ring).
template <class F>
Poly<F> substitute(const Poly<F>& f, const std::vector<Poly<F>>& subs);
// f(x + a).
template <class F>
Poly<F> translate(const Poly<F>& f, const std::vector<typename F::Element>& a);
// f(A x) for an nvars x nvars matrix A given row-major.
template <class F>
Poly<F> linear_change(const Poly<F>& f, const std::vector<typename F::Element>& A);
// Sets x_i = value and removes x_i from the ring.
template <class F>
Poly<F> specialize(const Poly<F>& f, int i, const typename F::Element& value);
// Image of f under a field embedding K -> L.
template <class F>
Poly<F> embed(const Poly<F>& f, const FieldEmbedding<F>& emb);

template <class F>
Jet<F> jet_at(const Poly<F>& f, const std::vector<typename F::Element>& point, int order);

// Uniform random polynomial over a finite field: all q^N coefficient tuples
// over the N monomials of degree exactly d (homogeneous) or <= d (affine) are
// equally likely.
Poly<GaloisField> random_form(const std::shared_ptr<const GaloisField>& field, int nvars,
                              unsigned d, SplitMix64& rng, bool homogeneous = true);

template <class F>
Poly<F> parse_poly(std::string_view text, const std::shared_ptr<const F>& field, int nvars,
                   int var_base = 0);
template <class F>
std::string format_poly(const Poly<F>& f);

// Largest variable index appearing in `text` (x<i>), or -1.
int max_variable_index(std::string_view text);
// The smallest index used, or -1.
int min_variable_index(std::string_view text);

}  // namespace defekt
