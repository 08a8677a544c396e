#pragma once

// Exact scalar fields: the rationals and finite fields F_{p^e}.
//
// Polynomial code is templated over a field policy class providing an
// `Element` type and arithmetic on it. `Rationals` and `GaloisField` are the
// two models. `FieldSpec` is the runtime handle used by the CLI and by the
// census code; `visit_field` dispatches a generic lambda on it.

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include <gmpxx.h>

#include "defekt/error.hh"

namespace defekt {

class Rationals {
 public:
  using Element = mpq_class;

  static const std::shared_ptr<const Rationals>& instance();

  std::uint64_t characteristic() const { return 0; }
  bool is_finite() const { return false; }

  Element zero() const { return Element(0); }
  Element one() const { return Element(1); }
  Element from_int(std::int64_t v) const { return Element(static_cast<long>(v)); }
  Element from_rational(const mpq_class& v) const { return v; }

  bool is_zero(const Element& a) const { return sgn(a) == 0; }
  bool is_one(const Element& a) const { return a == 1; }
  bool equal(const Element& a, const Element& b) const { return a == b; }

  Element add(const Element& a, const Element& b) const { return a + b; }
  Element sub(const Element& a, const Element& b) const { return a - b; }
  Element neg(const Element& a) const { return -a; }
  Element mul(const Element& a, const Element& b) const { return a * b; }
  Element inv(const Element& a) const;
  Element div(const Element& a, const Element& b) const { return mul(a, inv(b)); }
  Element pow(const Element& a, std::uint64_t k) const;

  // Total order used for deterministic tie-breaks.
  bool less(const Element& a, const Element& b) const { return a < b; }
  std::string to_string(const Element& a) const { return a.get_str(); }
  std::string literal() const { return "Q"; }
};

// F_{p^e}. Elements are encoded as integers 0..q-1 whose base-p digits are the
// coefficients c_0 + c_1 t + ... + c_{e-1} t^{e-1} modulo the defining
// polynomial. For e = 1 the encoding is the residue itself.
class GaloisField {
 public:
  using Element = std::uint64_t;

  // Cached; construction verifies primality and selects the least monic
  // irreducible modulus of degree e.
  static std::shared_ptr<const GaloisField> get(std::uint64_t p, unsigned e);

  std::uint64_t characteristic() const { return p_; }
  std::uint64_t p() const { return p_; }
  unsigned degree() const { return e_; }
  std::uint64_t cardinality() const { return q_; }
  bool is_finite() const { return true; }
  // Coefficients c_0..c_e of the monic modulus (c_e = 1).
  const std::vector<std::uint64_t>& modulus() const { return modulus_; }
  Element generator() const { return e_ == 1 ? 0 : p_; }  // the class of t

  Element zero() const { return 0; }
  Element one() const { return 1; }
  Element from_int(std::int64_t v) const;
  Element from_rational(const mpq_class& v) const;

  bool is_zero(Element a) const { return a == 0; }
  bool is_one(Element a) const { return a == 1; }
  bool equal(Element a, Element b) const { return a == b; }

  Element add(Element a, Element b) const {
    if (e_ == 1) {
      Element s = a + b;
      return s >= p_ ? s - p_ : s;
    }
    return add_ext(a, b);
  }
  Element neg(Element a) const {
    if (e_ == 1) return a == 0 ? 0 : p_ - a;
    return neg_ext(a);
  }
  Element sub(Element a, Element b) const { return add(a, neg(b)); }
  Element mul(Element a, Element b) const {
    if (e_ == 1) return a * b % p_;  // p < 2^31
    return mul_ext(a, b);
  }
  Element inv(Element a) const;
  Element div(Element a, Element b) const { return mul(a, inv(b)); }
  Element pow(Element a, std::uint64_t k) const;
  Element frobenius(Element a) const { return pow(a, p_); }

  bool less(Element a, Element b) const { return a < b; }
  std::string to_string(Element a) const;
  std::string literal() const;

  std::vector<std::uint64_t> digits(Element a) const;
  Element from_digits(std::span<const std::uint64_t> d) const;

  GaloisField(std::uint64_t p, unsigned e, std::vector<std::uint64_t> modulus);

 private:
  Element add_ext(Element a, Element b) const;
  Element neg_ext(Element a) const;
  Element mul_ext(Element a, Element b) const;
  Element mul_digits(Element a, Element b) const;
  void build_tables();

  std::uint64_t p_;
  unsigned e_;
  std::uint64_t q_;
  std::vector<std::uint64_t> modulus_;
  std::vector<std::uint64_t> pow_p_;  // p^0..p^e
  // Log/antilog/Zech tables, present when e > 1 and q is small.
  std::vector<std::uint32_t> exp_;
  std::vector<std::uint32_t> log_;
  std::vector<std::uint32_t> zech_;
  static constexpr std::uint32_t kNoLog = 0xffffffffu;
};

bool is_prime(std::uint64_t n);
std::vector<std::uint64_t> prime_factors(std::uint64_t n);

// Field homomorphism K -> L between finite fields of the same characteristic,
// determined by the image of K's generator. Identity for the rationals.
template <class F>
class FieldEmbedding;

template <>
class FieldEmbedding<Rationals> {
 public:
  using Element = mpq_class;
  FieldEmbedding() = default;
  explicit FieldEmbedding(std::shared_ptr<const Rationals>) {}
  const Element& operator()(const Element& a) const { return a; }
  const std::shared_ptr<const Rationals>& target() const { return Rationals::instance(); }
};

template <>
class FieldEmbedding<GaloisField> {
 public:
  using Element = GaloisField::Element;
  FieldEmbedding() = default;
  // Identity embedding of `field` into itself.
  explicit FieldEmbedding(std::shared_ptr<const GaloisField> field);
  FieldEmbedding(std::shared_ptr<const GaloisField> from, std::shared_ptr<const GaloisField> to,
                 Element generator_image);

  Element operator()(Element a) const;
  const std::shared_ptr<const GaloisField>& source() const { return from_; }
  const std::shared_ptr<const GaloisField>& target() const { return to_; }
  Element generator_image() const { return gen_image_; }
  FieldEmbedding then(const FieldEmbedding& next) const;

 private:
  std::shared_ptr<const GaloisField> from_;
  std::shared_ptr<const GaloisField> to_;
  Element gen_image_ = 0;
  std::vector<Element> powers_;  // images of t^0..t^{e-1}
};

// Canonical embedding F_{p^a} -> F_{p^b} (a | b): sends the generator to the
// least root (by encoding) of the source modulus in the target.
FieldEmbedding<GaloisField> canonical_embedding(const std::shared_ptr<const GaloisField>& from,
                                                const std::shared_ptr<const GaloisField>& to);

// ---------------------------------------------------------------------------
// Runtime field handle.

enum class FieldKind { rationals, finite };

class FieldSpec {
 public:
  static FieldSpec rationals();
  static FieldSpec finite(std::uint64_t p, unsigned e = 1);

  FieldKind kind() const { return kind_; }
  bool is_finite() const { return kind_ == FieldKind::finite; }
  std::uint64_t characteristic() const { return gf_ ? gf_->p() : 0; }
  unsigned degree() const { return gf_ ? gf_->degree() : 1; }
  // q = p^e, or 0 for the rationals.
  std::uint64_t cardinality() const { return gf_ ? gf_->cardinality() : 0; }
  std::string literal() const;

  const std::shared_ptr<const GaloisField>& gf() const;

  friend bool operator==(const FieldSpec& a, const FieldSpec& b) {
    return a.kind_ == b.kind_ && a.characteristic() == b.characteristic() &&
           a.degree() == b.degree();
  }

 private:
  FieldKind kind_ = FieldKind::rationals;
  std::shared_ptr<const GaloisField> gf_;
};

FieldSpec make_field(FieldKind kind, std::uint64_t p, unsigned e);
// Grammar: "Q" | "F<p>" | "F<p>^<e>" | "F<q>" with q a prime power.
FieldSpec parse_field(std::string_view text);

template <class Fn>
decltype(auto) visit_field(const FieldSpec& spec, Fn&& fn) {
  if (spec.is_finite()) return std::forward<Fn>(fn)(spec.gf());
  return std::forward<Fn>(fn)(Rationals::instance());
}

class FieldElement {
 public:
  FieldElement(FieldSpec spec, mpq_class v);
  FieldElement(FieldSpec spec, GaloisField::Element v);

  const FieldSpec& spec() const { return spec_; }
  bool is_zero() const;
  const mpq_class& rational() const { return std::get<mpq_class>(value_); }
  GaloisField::Element encoded() const { return std::get<GaloisField::Element>(value_); }

  FieldElement operator+(const FieldElement& o) const;
  FieldElement operator-(const FieldElement& o) const;
  FieldElement operator*(const FieldElement& o) const;
  FieldElement operator/(const FieldElement& o) const;
  FieldElement inverse() const;
  FieldElement pow(std::uint64_t k) const;
  FieldElement frobenius() const;
  bool operator==(const FieldElement& o) const;
  std::string to_string() const;

 private:
  void check_same(const FieldElement& o) const;

  FieldSpec spec_;
  std::variant<mpq_class, GaloisField::Element> value_;
};

// All q elements in encoding order (coefficient vectors, c_0 fastest).
std::vector<FieldElement> enumerate_elements(const FieldSpec& spec);

}  // namespace defekt
