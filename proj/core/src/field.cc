#include "defekt/field.hh"

#include <charconv>
#include <map>
#include <mutex>

#include "defekt/upoly.hh"

namespace defekt {

// ---------------------------------------------------------------------------
// Rationals

const std::shared_ptr<const Rationals>& Rationals::instance() {
  static const std::shared_ptr<const Rationals> q = std::make_shared<const Rationals>();
  return q;
}

Rationals::Element Rationals::inv(const Element& a) const {
  if (sgn(a) == 0) fail(ErrorCode::DivisionByZero, "inverse of zero");
  Element r = 1 / a;
  return r;
}

Rationals::Element Rationals::pow(const Element& a, std::uint64_t k) const {
  Element result = 1;
  Element base = a;
  while (k) {
    if (k & 1) result *= base;
    base *= base;
    k >>= 1;
  }
  return result;
}

// ---------------------------------------------------------------------------
// Integer helpers

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL}) {
    if (n % d == 0) return n == d;
  }
  for (std::uint64_t d = 17; d * d <= n; d += 2)
    if (n % d == 0) return false;
  return true;
}

std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d) continue;
    out.push_back(d);
    while (n % d == 0) n /= d;
  }
  if (n > 1) out.push_back(n);
  return out;
}

// ---------------------------------------------------------------------------
// GaloisField

namespace {

constexpr std::uint64_t kTableLimit = 1u << 16;

std::vector<std::uint64_t> least_irreducible(std::uint64_t p, unsigned e) {
  if (e == 1) return {0, 1};
  auto prime = GaloisField::get(p, 1);
  // Enumerate (c_{e-1}, ..., c_0) in lexicographic order.
  std::vector<std::uint64_t> c(e, 0);
  for (;;) {
    upoly::Coeffs f(c.begin(), c.end());
    f.push_back(1);
    if (f[0] != 0 && upoly::is_irreducible(*prime, f)) return f;
    // Increment with c_0 as the least significant position.
    unsigned i = 0;
    while (i < e && ++c[i] == p) c[i++] = 0;
    if (i == e) break;
  }
  fail(ErrorCode::InvalidField, "no irreducible polynomial found");
}

}  // namespace

std::shared_ptr<const GaloisField> GaloisField::get(std::uint64_t p, unsigned e) {
  static std::mutex mu;
  static std::map<std::pair<std::uint64_t, unsigned>, std::shared_ptr<const GaloisField>> cache;
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find({p, e});
    if (it != cache.end()) return it->second;
  }
  if (!is_prime(p)) fail(ErrorCode::NonPrimeModulus, "characteristic " + std::to_string(p) + " is not prime");
  if (e < 1) fail(ErrorCode::InvalidField, "extension degree must be >= 1");
  if (p >= (1ULL << 31)) fail(ErrorCode::InvalidField, "characteristic too large");
  long double qd = 1;
  for (unsigned i = 0; i < e; ++i) qd *= static_cast<long double>(p);
  if (qd > static_cast<long double>(1ULL << 62)) fail(ErrorCode::InvalidField, "field too large");

  auto field = std::make_shared<const GaloisField>(p, e, least_irreducible(p, e));
  std::lock_guard<std::mutex> lock(mu);
  auto [it, inserted] = cache.emplace(std::make_pair(p, e), field);
  return it->second;
}

GaloisField::GaloisField(std::uint64_t p, unsigned e, std::vector<std::uint64_t> modulus)
    : p_(p), e_(e), q_(1), modulus_(std::move(modulus)) {
  pow_p_.push_back(1);
  for (unsigned i = 0; i < e_; ++i) {
    q_ *= p_;
    pow_p_.push_back(q_);
  }
  if (e_ > 1 && q_ <= kTableLimit) build_tables();
}

void GaloisField::build_tables() {
  // Find a primitive element by brute force on orders.
  const std::uint64_t order = q_ - 1;
  const auto factors = prime_factors(order);
  auto slow_pow = [&](Element a, std::uint64_t k) {
    Element r = 1;
    while (k) {
      if (k & 1) r = mul_digits(r, a);
      a = mul_digits(a, a);
      k >>= 1;
    }
    return r;
  };
  Element g = 0;
  for (Element cand = 2; cand < q_; ++cand) {
    bool primitive = true;
    for (auto r : factors)
      if (slow_pow(cand, order / r) == 1) {
        primitive = false;
        break;
      }
    if (primitive) {
      g = cand;
      break;
    }
  }
  exp_.assign(2 * order, 0);
  log_.assign(q_, kNoLog);
  Element cur = 1;
  for (std::uint64_t i = 0; i < order; ++i) {
    exp_[i] = static_cast<std::uint32_t>(cur);
    exp_[i + order] = static_cast<std::uint32_t>(cur);
    log_[cur] = static_cast<std::uint32_t>(i);
    cur = mul_digits(cur, g);
  }
  // zech[k] = log(1 + g^k)
  zech_.assign(order, kNoLog);
  for (std::uint64_t k = 0; k < order; ++k) {
    auto d = digits(exp_[k]);
    d[0] = (d[0] + 1) % p_;
    Element s = from_digits(d);
    zech_[k] = s == 0 ? kNoLog : log_[s];
  }
}

std::vector<std::uint64_t> GaloisField::digits(Element a) const {
  std::vector<std::uint64_t> d(e_);
  for (unsigned i = 0; i < e_; ++i) {
    d[i] = a % p_;
    a /= p_;
  }
  return d;
}

GaloisField::Element GaloisField::from_digits(std::span<const std::uint64_t> d) const {
  Element a = 0;
  for (std::size_t i = d.size(); i-- > 0;) a = a * p_ + d[i] % p_;
  return a;
}

GaloisField::Element GaloisField::from_int(std::int64_t v) const {
  std::int64_t r = v % static_cast<std::int64_t>(p_);
  if (r < 0) r += static_cast<std::int64_t>(p_);
  return static_cast<Element>(r);
}

GaloisField::Element GaloisField::from_rational(const mpq_class& v) const {
  mpz_class num = v.get_num() % p_;
  mpz_class den = v.get_den() % p_;
  if (num < 0) num += p_;
  if (den == 0) {
    fail(ErrorCode::CoefficientNotInField,
         "coefficient " + v.get_str() + " has denominator divisible by " + std::to_string(p_));
  }
  return div(num.get_ui(), den.get_ui());
}

GaloisField::Element GaloisField::add_ext(Element a, Element b) const {
  if (!zech_.empty()) {
    if (a == 0) return b;
    if (b == 0) return a;
    const std::uint64_t order = q_ - 1;
    std::uint64_t la = log_[a], lb = log_[b];
    std::uint64_t k = lb >= la ? lb - la : lb + order - la;
    std::uint32_t z = zech_[k];
    if (z == kNoLog) return 0;
    return exp_[la + z];
  }
  Element r = 0;
  for (unsigned i = 0; i < e_; ++i) {
    std::uint64_t s = (a % p_) + (b % p_);
    if (s >= p_) s -= p_;
    r += s * pow_p_[i];
    a /= p_;
    b /= p_;
  }
  return r;
}

GaloisField::Element GaloisField::neg_ext(Element a) const {
  Element r = 0;
  for (unsigned i = 0; i < e_; ++i) {
    std::uint64_t d = a % p_;
    r += (d == 0 ? 0 : p_ - d) * pow_p_[i];
    a /= p_;
  }
  return r;
}

GaloisField::Element GaloisField::mul_ext(Element a, Element b) const {
  if (a == 0 || b == 0) return 0;
  if (!exp_.empty()) return exp_[log_[a] + log_[b]];
  return mul_digits(a, b);
}

GaloisField::Element GaloisField::mul_digits(Element a, Element b) const {
  auto da = digits(a), db = digits(b);
  std::vector<std::uint64_t> prod(2 * e_ - 1, 0);
  for (unsigned i = 0; i < e_; ++i) {
    if (!da[i]) continue;
    for (unsigned j = 0; j < e_; ++j)
      prod[i + j] = static_cast<std::uint64_t>(
          (prod[i + j] + static_cast<unsigned __int128>(da[i]) * db[j]) % p_);
  }
  // Reduce with t^e = -(c_0 + ... + c_{e-1} t^{e-1}).
  for (std::size_t k = prod.size(); k-- > e_;) {
    std::uint64_t c = prod[k];
    if (!c) continue;
    prod[k] = 0;
    for (unsigned j = 0; j < e_; ++j) {
      std::uint64_t sub = static_cast<std::uint64_t>((static_cast<unsigned __int128>(c) * modulus_[j]) % p_);
      std::uint64_t& t = prod[k - e_ + j];
      t = (t + p_ - sub) % p_;
    }
  }
  prod.resize(e_);
  return from_digits(prod);
}

GaloisField::Element GaloisField::inv(Element a) const {
  if (a == 0) fail(ErrorCode::DivisionByZero, "inverse of zero in " + literal());
  if (e_ == 1) {
    // Extended Euclid.
    std::int64_t t = 0, new_t = 1;
    std::int64_t r = static_cast<std::int64_t>(p_), new_r = static_cast<std::int64_t>(a);
    while (new_r != 0) {
      std::int64_t quot = r / new_r;
      std::int64_t tmp = t - quot * new_t;
      t = new_t;
      new_t = tmp;
      tmp = r - quot * new_r;
      r = new_r;
      new_r = tmp;
    }
    if (t < 0) t += static_cast<std::int64_t>(p_);
    return static_cast<Element>(t);
  }
  if (!exp_.empty()) {
    const std::uint64_t order = q_ - 1;
    std::uint64_t l = log_[a];
    return exp_[l == 0 ? 0 : order - l];
  }
  return pow(a, q_ - 2);
}

GaloisField::Element GaloisField::pow(Element a, std::uint64_t k) const {
  if (!exp_.empty() && a != 0) {
    const std::uint64_t order = q_ - 1;
    return exp_[static_cast<std::uint64_t>((static_cast<unsigned __int128>(log_[a]) * (k % order)) % order)];
  }
  Element r = 1;
  while (k) {
    if (k & 1) r = mul(r, a);
    a = mul(a, a);
    k >>= 1;
  }
  return r;
}

std::string GaloisField::to_string(Element a) const {
  if (e_ == 1) return std::to_string(a);
  auto d = digits(a);
  std::string out;
  for (std::size_t i = d.size(); i-- > 0;) {
    if (!d[i]) continue;
    if (!out.empty()) out += "+";
    if (i == 0 || d[i] != 1) out += std::to_string(d[i]);
    if (i > 0) {
      if (d[i] != 1) out += "*";
      out += "t";
      if (i > 1) out += "^" + std::to_string(i);
    }
  }
  return out.empty() ? "0" : out;
}

std::string GaloisField::literal() const {
  if (e_ == 1) return "F" + std::to_string(p_);
  return "F" + std::to_string(p_) + "^" + std::to_string(e_);
}

// ---------------------------------------------------------------------------
// Embeddings

FieldEmbedding<GaloisField>::FieldEmbedding(std::shared_ptr<const GaloisField> field)
    : FieldEmbedding(field, field, field->generator()) {}

FieldEmbedding<GaloisField>::FieldEmbedding(std::shared_ptr<const GaloisField> from,
                                            std::shared_ptr<const GaloisField> to,
                                            Element generator_image)
    : from_(std::move(from)), to_(std::move(to)), gen_image_(generator_image) {
  if (from_->p() != to_->p() || to_->degree() % from_->degree() != 0)
    fail(ErrorCode::InvalidField, "no embedding " + from_->literal() + " -> " + to_->literal());
  if (from_->degree() == 1) gen_image_ = 0;
  Element cur = 1;
  for (unsigned i = 0; i < from_->degree(); ++i) {
    powers_.push_back(cur);
    cur = to_->mul(cur, gen_image_);
  }
}

FieldEmbedding<GaloisField>::Element FieldEmbedding<GaloisField>::operator()(Element a) const {
  if (from_->degree() == 1) return a;
  if (from_ == to_ && gen_image_ == from_->generator()) return a;
  Element r = 0;
  const std::uint64_t p = from_->p();
  for (unsigned i = 0; i < powers_.size(); ++i) {
    std::uint64_t d = a % p;
    a /= p;
    if (d) r = to_->add(r, to_->mul(d, powers_[i]));
  }
  return r;
}

FieldEmbedding<GaloisField> FieldEmbedding<GaloisField>::then(const FieldEmbedding& next) const {
  return FieldEmbedding(from_, next.to_, next(gen_image_));
}

FieldEmbedding<GaloisField> canonical_embedding(const std::shared_ptr<const GaloisField>& from,
                                                const std::shared_ptr<const GaloisField>& to) {
  if (from->degree() == 1) return FieldEmbedding<GaloisField>(from, to, 0);
  upoly::Coeffs m(from->modulus().begin(), from->modulus().end());
  auto rs = upoly::roots(*to, m);
  if (rs.empty())
    fail(ErrorCode::InvalidField, "no embedding " + from->literal() + " -> " + to->literal());
  return FieldEmbedding<GaloisField>(from, to, rs.front());
}

// ---------------------------------------------------------------------------
// FieldSpec

FieldSpec FieldSpec::rationals() { return FieldSpec{}; }

FieldSpec FieldSpec::finite(std::uint64_t p, unsigned e) {
  FieldSpec s;
  s.kind_ = FieldKind::finite;
  s.gf_ = GaloisField::get(p, e);
  return s;
}

const std::shared_ptr<const GaloisField>& FieldSpec::gf() const {
  if (!gf_) fail(ErrorCode::InfiniteField, "the rationals are not a finite field");
  return gf_;
}

std::string FieldSpec::literal() const { return gf_ ? gf_->literal() : "Q"; }

FieldSpec make_field(FieldKind kind, std::uint64_t p, unsigned e) {
  if (kind == FieldKind::rationals) {
    if (p != 0 || e != 1) fail(ErrorCode::InvalidField, "the rationals take p = 0, e = 1");
    return FieldSpec::rationals();
  }
  return FieldSpec::finite(p, e);
}

FieldSpec parse_field(std::string_view text) {
  auto bad = [&]() -> FieldSpec {
    fail(ErrorCode::InvalidField, "cannot parse field literal '" + std::string(text) + "'");
  };
  if (text == "Q" || text == "QQ") return FieldSpec::rationals();
  if (text.size() < 2 || (text[0] != 'F' && text[0] != 'f')) return bad();
  std::uint64_t base = 0;
  const char* first = text.data() + 1;
  const char* last = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(first, last, base);
  if (ec != std::errc() || base < 2) return bad();
  if (ptr != last) {
    if (*ptr != '^') return bad();
    unsigned e = 0;
    auto [ptr2, ec2] = std::from_chars(ptr + 1, last, e);
    if (ec2 != std::errc() || ptr2 != last) return bad();
    return FieldSpec::finite(base, e);
  }
  if (is_prime(base)) return FieldSpec::finite(base, 1);
  // Prime power literal such as F9.
  auto factors = prime_factors(base);
  if (factors.size() != 1) fail(ErrorCode::NonPrimeModulus, std::to_string(base) + " is not a prime power");
  std::uint64_t p = factors[0];
  unsigned e = 0;
  while (base > 1) {
    base /= p;
    ++e;
  }
  return FieldSpec::finite(p, e);
}

// ---------------------------------------------------------------------------
// FieldElement

FieldElement::FieldElement(FieldSpec spec, mpq_class v) : spec_(std::move(spec)) {
  if (spec_.is_finite())
    value_ = spec_.gf()->from_rational(v);
  else
    value_ = std::move(v);
}

FieldElement::FieldElement(FieldSpec spec, GaloisField::Element v) : spec_(std::move(spec)) {
  if (spec_.is_finite()) {
    if (v >= spec_.cardinality()) fail(ErrorCode::InvalidArgument, "element encoding out of range");
    value_ = v;
  } else {
    value_ = mpq_class(static_cast<unsigned long>(v));
  }
}

void FieldElement::check_same(const FieldElement& o) const {
  if (!(spec_ == o.spec_)) fail(ErrorCode::RingMismatch, "elements of different fields");
}

bool FieldElement::is_zero() const {
  return spec_.is_finite() ? encoded() == 0 : sgn(rational()) == 0;
}

#define DEFEKT_FIELD_BINOP(op, method)                                        \
  FieldElement FieldElement::operator op(const FieldElement& o) const {       \
    check_same(o);                                                            \
    if (spec_.is_finite())                                                    \
      return FieldElement(spec_, spec_.gf()->method(encoded(), o.encoded())); \
    return FieldElement(spec_, Rationals().method(rational(), o.rational())); \
  }
DEFEKT_FIELD_BINOP(+, add)
DEFEKT_FIELD_BINOP(-, sub)
DEFEKT_FIELD_BINOP(*, mul)
DEFEKT_FIELD_BINOP(/, div)
#undef DEFEKT_FIELD_BINOP

FieldElement FieldElement::inverse() const {
  if (spec_.is_finite()) return FieldElement(spec_, spec_.gf()->inv(encoded()));
  return FieldElement(spec_, Rationals().inv(rational()));
}

FieldElement FieldElement::pow(std::uint64_t k) const {
  if (spec_.is_finite()) return FieldElement(spec_, spec_.gf()->pow(encoded(), k));
  return FieldElement(spec_, Rationals().pow(rational(), k));
}

FieldElement FieldElement::frobenius() const {
  if (!spec_.is_finite()) return *this;
  return FieldElement(spec_, spec_.gf()->frobenius(encoded()));
}

bool FieldElement::operator==(const FieldElement& o) const {
  return spec_ == o.spec_ && value_ == o.value_;
}

std::string FieldElement::to_string() const {
  if (spec_.is_finite()) return spec_.gf()->to_string(encoded());
  return rational().get_str();
}

std::vector<FieldElement> enumerate_elements(const FieldSpec& spec) {
  if (!spec.is_finite()) fail(ErrorCode::InfiniteField, "cannot enumerate the rationals");
  std::vector<FieldElement> out;
  out.reserve(spec.cardinality());
  for (GaloisField::Element a = 0; a < spec.cardinality(); ++a) out.emplace_back(spec, a);
  return out;
}

// ---------------------------------------------------------------------------

std::string_view error_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::NonPrimeModulus: return "NonPrimeModulus";
    case ErrorCode::InvalidField: return "InvalidField";
    case ErrorCode::InfiniteField: return "InfiniteField";
    case ErrorCode::DivisionByZero: return "DivisionByZero";
    case ErrorCode::SyntaxError: return "SyntaxError";
    case ErrorCode::UnknownVariable: return "UnknownVariable";
    case ErrorCode::CoefficientNotInField: return "CoefficientNotInField";
    case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::NotHomogeneous: return "NotHomogeneous";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::RationalsNotSamplable: return "RationalsNotSamplable";
    case ErrorCode::BudgetExceeded: return "BudgetExceeded";
    case ErrorCode::RingMismatch: return "RingMismatch";
    case ErrorCode::NotZeroDimensional: return "NotZeroDimensional";
    case ErrorCode::RationalFieldUnsupported: return "RationalFieldUnsupported";
    case ErrorCode::CharacteristicTwo: return "CharacteristicTwo";
    case ErrorCode::EvenCharacteristic: return "EvenCharacteristic";
    case ErrorCode::SmoothPoint: return "SmoothPoint";
    case ErrorCode::PointNotOnHypersurface: return "PointNotOnHypersurface";
    case ErrorCode::NonIsolatedSingularity: return "NonIsolatedSingularity";
    case ErrorCode::NoChartFound: return "NoChartFound";
    case ErrorCode::PositiveDimensionalLocus: return "PositiveDimensionalLocus";
    case ErrorCode::UnresolvedPoints: return "UnresolvedPoints";
    case ErrorCode::BaseNotSmooth: return "BaseNotSmooth";
    case ErrorCode::NotNodal: return "NotNodal";
    case ErrorCode::OddAmbientDimension: return "OddAmbientDimension";
    case ErrorCode::WrongAmbientDimension: return "WrongAmbientDimension";
    case ErrorCode::UnclassifiedSingularity: return "UnclassifiedSingularity";
    case ErrorCode::UsageError: return "UsageError";
  }
  return "Unknown";
}

}  // namespace defekt
