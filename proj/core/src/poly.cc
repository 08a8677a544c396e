#include "defekt/poly.hh"

#include <algorithm>
#include <cctype>
#include <map>
#include <mutex>

namespace defekt {

// ---------------------------------------------------------------------------
// Monomial enumeration

namespace {

void gen_monomials(int nvars, int i, unsigned left, Monomial& cur, std::vector<Monomial>& out) {
  if (i == nvars - 1) {
    cur.set(i, left);
    out.push_back(cur);
    cur.set(i, 0);
    return;
  }
  for (unsigned k = 0; k <= left; ++k) {
    cur.set(i, k);
    gen_monomials(nvars, i + 1, left - k, cur, out);
  }
  cur.set(i, 0);
}

}  // namespace

std::vector<Monomial> monomials_of_degree(int nvars, unsigned d) {
  static std::mutex mu;
  static std::map<std::pair<int, unsigned>, std::vector<Monomial>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find({nvars, d});
  if (it != cache.end()) return it->second;
  std::vector<Monomial> out;
  if (nvars == 0) {
    if (d == 0) out.emplace_back();
  } else {
    Monomial cur;
    gen_monomials(nvars, 0, d, cur, out);
  }
  std::sort(out.begin(), out.end(), [](const Monomial& a, const Monomial& b) { return grevlex_cmp(a, b) > 0; });
  cache.emplace(std::make_pair(nvars, d), out);
  return out;
}

std::vector<Monomial> monomials_up_to_degree(int nvars, unsigned d) {
  std::vector<Monomial> out;
  for (unsigned k = d + 1; k-- > 0;) {
    auto part = monomials_of_degree(nvars, k);
    out.insert(out.end(), part.begin(), part.end());
  }
  return out;
}

// ---------------------------------------------------------------------------
// Poly

template <class F>
Poly<F>::Poly(std::shared_ptr<const F> field, int nvars, int var_base)
    : field_(std::move(field)), nvars_(nvars), var_base_(var_base) {
  if (nvars < 0 || nvars > kMaxVars)
    fail(ErrorCode::InvalidArgument, "number of variables must be in 0.." + std::to_string(kMaxVars));
}

template <class F>
Poly<F> Poly<F>::constant(std::shared_ptr<const F> field, int nvars, const Elem& c, int var_base) {
  return monomial(std::move(field), nvars, Monomial{}, c, var_base);
}

template <class F>
Poly<F> Poly<F>::variable(std::shared_ptr<const F> field, int nvars, int i, int var_base) {
  if (i < 0 || i >= nvars) fail(ErrorCode::IndexOutOfRange, "variable index out of range");
  auto one = field->one();
  return monomial(std::move(field), nvars, Monomial::var(i), one, var_base);
}

template <class F>
Poly<F> Poly<F>::monomial(std::shared_ptr<const F> field, int nvars, const Monomial& m, const Elem& c,
                          int var_base) {
  Poly p(std::move(field), nvars, var_base);
  if (!p.field_->is_zero(c)) p.terms_.push_back({m, c});
  return p;
}

template <class F>
Poly<F> Poly<F>::from_terms(std::shared_ptr<const F> field, int nvars, std::vector<Term> terms,
                            int var_base) {
  Poly p(std::move(field), nvars, var_base);
  std::sort(terms.begin(), terms.end(),
            [](const Term& a, const Term& b) { return grevlex_cmp(a.m, b.m) > 0; });
  const F& k = *p.field_;
  for (auto& t : terms) {
    if (!p.terms_.empty() && p.terms_.back().m == t.m) {
      p.terms_.back().c = k.add(p.terms_.back().c, t.c);
    } else {
      if (!p.terms_.empty() && k.is_zero(p.terms_.back().c)) p.terms_.pop_back();
      p.terms_.push_back(std::move(t));
    }
  }
  if (!p.terms_.empty() && k.is_zero(p.terms_.back().c)) p.terms_.pop_back();
  return p;
}

template <class F>
Poly<F> Poly<F>::from_sorted(std::shared_ptr<const F> field, int nvars, std::vector<Term> terms,
                             int var_base) {
  Poly p(std::move(field), nvars, var_base);
  p.terms_ = std::move(terms);
  return p;
}

template <class F>
void Poly<F>::check_compatible(const Poly& o) const {
  if (nvars_ != o.nvars_ || field_ != o.field_)
    fail(ErrorCode::RingMismatch, "polynomials live in different rings");
}

template <class F>
int Poly<F>::degree() const {
  int d = -1;
  for (auto& t : terms_) d = std::max(d, static_cast<int>(t.m.deg));
  return d;
}

template <class F>
int Poly<F>::min_degree() const {
  if (terms_.empty()) return -1;
  return static_cast<int>(terms_.back().m.deg);
}

template <class F>
bool Poly<F>::is_homogeneous() const {
  if (terms_.empty()) return true;
  return terms_.front().m.deg == terms_.back().m.deg;
}

template <class F>
typename Poly<F>::Elem Poly<F>::coefficient(const Monomial& m) const {
  auto it = std::lower_bound(terms_.begin(), terms_.end(), m,
                             [](const Term& t, const Monomial& x) { return grevlex_cmp(t.m, x) > 0; });
  if (it != terms_.end() && it->m == m) return it->c;
  return field_->zero();
}

template <class F>
typename Poly<F>::Elem Poly<F>::constant_term() const {
  if (!terms_.empty() && terms_.back().m.deg == 0) return terms_.back().c;
  return field_->zero();
}

template <class F>
Poly<F> Poly<F>::homogeneous_part(int k) const {
  Poly r(field_, nvars_, var_base_);
  for (auto& t : terms_)
    if (static_cast<int>(t.m.deg) == k) r.terms_.push_back(t);
  return r;
}

template <class F>
Poly<F> Poly<F>::operator+(const Poly& o) const {
  check_compatible(o);
  const F& k = *field_;
  Poly r(field_, nvars_, var_base_);
  r.terms_.reserve(terms_.size() + o.terms_.size());
  std::size_t i = 0, j = 0;
  while (i < terms_.size() && j < o.terms_.size()) {
    int c = grevlex_cmp(terms_[i].m, o.terms_[j].m);
    if (c > 0) {
      r.terms_.push_back(terms_[i++]);
    } else if (c < 0) {
      r.terms_.push_back(o.terms_[j++]);
    } else {
      Elem s = k.add(terms_[i].c, o.terms_[j].c);
      if (!k.is_zero(s)) r.terms_.push_back({terms_[i].m, std::move(s)});
      ++i;
      ++j;
    }
  }
  for (; i < terms_.size(); ++i) r.terms_.push_back(terms_[i]);
  for (; j < o.terms_.size(); ++j) r.terms_.push_back(o.terms_[j]);
  return r;
}

template <class F>
Poly<F> Poly<F>::operator-() const {
  Poly r = *this;
  for (auto& t : r.terms_) t.c = field_->neg(t.c);
  return r;
}

template <class F>
Poly<F> Poly<F>::operator-(const Poly& o) const {
  return *this + (-o);
}

template <class F>
Poly<F> Poly<F>::operator*(const Poly& o) const {
  check_compatible(o);
  if (terms_.empty() || o.terms_.empty()) return Poly(field_, nvars_, var_base_);
  if (o.terms_.size() == 1) return times_monomial(o.terms_[0].m, o.terms_[0].c);
  if (terms_.size() == 1) return o.times_monomial(terms_[0].m, terms_[0].c);
  const F& k = *field_;
  std::vector<Term> prod;
  prod.reserve(terms_.size() * o.terms_.size());
  for (auto& a : terms_)
    for (auto& b : o.terms_) prod.push_back({a.m * b.m, k.mul(a.c, b.c)});
  return from_terms(field_, nvars_, std::move(prod), var_base_);
}

template <class F>
Poly<F> Poly<F>::scaled(const Elem& c) const {
  if (field_->is_zero(c)) return Poly(field_, nvars_, var_base_);
  Poly r = *this;
  for (auto& t : r.terms_) t.c = field_->mul(t.c, c);
  return r;
}

template <class F>
Poly<F> Poly<F>::times_monomial(const Monomial& m, const Elem& c) const {
  if (field_->is_zero(c)) return Poly(field_, nvars_, var_base_);
  Poly r(field_, nvars_, var_base_);
  r.terms_.reserve(terms_.size());
  // Multiplying by a monomial preserves grevlex order.
  for (auto& t : terms_) r.terms_.push_back({t.m * m, field_->mul(t.c, c)});
  return r;
}

template <class F>
Poly<F> Poly<F>::pow(unsigned k) const {
  Poly result = constant(field_, nvars_, field_->one(), var_base_);
  Poly base = *this;
  while (k) {
    if (k & 1) result = result * base;
    k >>= 1;
    if (k) base = base * base;
  }
  return result;
}

template <class F>
Poly<F> Poly<F>::monic() const {
  if (terms_.empty()) return *this;
  return scaled(field_->inv(terms_.front().c));
}

template <class F>
bool Poly<F>::operator==(const Poly& o) const {
  if (nvars_ != o.nvars_ || terms_.size() != o.terms_.size()) return false;
  for (std::size_t i = 0; i < terms_.size(); ++i)
    if (!(terms_[i].m == o.terms_[i].m) || !field_->equal(terms_[i].c, o.terms_[i].c)) return false;
  return true;
}

template <class F>
int Jet<F>::multiplicity() const {
  for (int i = 0; i < static_cast<int>(layers.size()); ++i)
    if (!layers[i].is_zero()) return i;
  return order + 1;
}

// ---------------------------------------------------------------------------
// Calculus and substitutions

template <class F>
Poly<F> partial_derivative(const Poly<F>& f, int i) {
  if (i < 0 || i >= f.nvars()) fail(ErrorCode::IndexOutOfRange, "partial derivative index out of range");
  const F& k = f.field();
  std::vector<typename Poly<F>::Term> out;
  for (auto& t : f.terms()) {
    unsigned e = t.m[i];
    if (!e) continue;
    auto c = k.mul(t.c, k.from_int(e));
    if (k.is_zero(c)) continue;
    Monomial m = t.m;
    m.set(i, e - 1);
    out.push_back({m, c});
  }
  return Poly<F>::from_terms(f.field_ptr(), f.nvars(), std::move(out), f.var_base());
}

template <class F>
std::vector<Poly<F>> gradient(const Poly<F>& f) {
  std::vector<Poly<F>> g;
  for (int i = 0; i < f.nvars(); ++i) g.push_back(partial_derivative(f, i));
  return g;
}

template <class F>
Poly<F> dehomogenize(const Poly<F>& P, int chart) {
  if (!P.is_homogeneous()) fail(ErrorCode::NotHomogeneous, "dehomogenize needs a homogeneous polynomial");
  if (chart < 0 || chart >= P.nvars()) fail(ErrorCode::IndexOutOfRange, "chart index out of range");
  std::vector<typename Poly<F>::Term> out;
  for (auto& t : P.terms()) {
    Monomial m;
    int j = 0;
    for (int i = 0; i < P.nvars(); ++i) {
      if (i == chart) continue;
      m.set(j++, t.m[i]);
    }
    out.push_back({m, t.c});
  }
  return Poly<F>::from_terms(P.field_ptr(), P.nvars() - 1, std::move(out), 1);
}

template <class F>
Poly<F> homogenize(const Poly<F>& f, int d) {
  if (f.degree() > d) fail(ErrorCode::InvalidArgument, "homogenize degree below polynomial degree");
  std::vector<typename Poly<F>::Term> out;
  for (auto& t : f.terms()) {
    Monomial m;
    m.set(0, static_cast<unsigned>(d) - t.m.deg);
    for (int i = 0; i < f.nvars(); ++i) m.set(i + 1, t.m[i]);
    out.push_back({m, t.c});
  }
  return Poly<F>::from_terms(f.field_ptr(), f.nvars() + 1, std::move(out), 0);
}

template <class F>
typename F::Element evaluate(const Poly<F>& f, const std::vector<typename F::Element>& point) {
  if (static_cast<int>(point.size()) != f.nvars())
    fail(ErrorCode::DimensionMismatch, "point has wrong number of coordinates");
  const F& k = f.field();
  std::vector<std::vector<typename F::Element>> powers(point.size());
  for (std::size_t i = 0; i < point.size(); ++i) powers[i].push_back(k.one());
  auto acc = k.zero();
  for (auto& t : f.terms()) {
    auto v = t.c;
    for (int i = 0; i < f.nvars() && !k.is_zero(v); ++i) {
      unsigned e = t.m[i];
      if (!e) continue;
      auto& pw = powers[i];
      while (pw.size() <= e) pw.push_back(k.mul(pw.back(), point[i]));
      v = k.mul(v, pw[e]);
    }
    acc = k.add(acc, v);
  }
  return acc;
}

template <class F>
Poly<F> substitute(const Poly<F>& f, const std::vector<Poly<F>>& subs) {
  if (static_cast<int>(subs.size()) != f.nvars())
    fail(ErrorCode::DimensionMismatch, "substitution has wrong length");
  if (f.is_zero()) return subs.empty() ? f : Poly<F>(f.field_ptr(), subs[0].nvars(), subs[0].var_base());
  const int target_n = subs.empty() ? 0 : subs[0].nvars();
  const int target_base = subs.empty() ? f.var_base() : subs[0].var_base();
  std::vector<std::vector<Poly<F>>> powers(subs.size());
  for (std::size_t i = 0; i < subs.size(); ++i)
    powers[i].push_back(Poly<F>::constant(f.field_ptr(), target_n, f.field().one(), target_base));
  std::vector<typename Poly<F>::Term> acc;
  for (auto& t : f.terms()) {
    Poly<F> v = Poly<F>::constant(f.field_ptr(), target_n, t.c, target_base);
    for (int i = 0; i < f.nvars(); ++i) {
      unsigned e = t.m[i];
      if (!e) continue;
      auto& pw = powers[i];
      while (pw.size() <= e) pw.push_back(pw.back() * subs[i]);
      v = v * pw[e];
    }
    acc.insert(acc.end(), v.terms().begin(), v.terms().end());
  }
  return Poly<F>::from_terms(f.field_ptr(), target_n, std::move(acc), target_base);
}

template <class F>
Poly<F> translate(const Poly<F>& f, const std::vector<typename F::Element>& a) {
  if (static_cast<int>(a.size()) != f.nvars())
    fail(ErrorCode::DimensionMismatch, "point has wrong number of coordinates");
  std::vector<Poly<F>> subs;
  for (int i = 0; i < f.nvars(); ++i)
    subs.push_back(Poly<F>::variable(f.field_ptr(), f.nvars(), i, f.var_base()) +
                   Poly<F>::constant(f.field_ptr(), f.nvars(), a[i], f.var_base()));
  return substitute(f, subs);
}

template <class F>
Poly<F> linear_change(const Poly<F>& f, const std::vector<typename F::Element>& A) {
  const int n = f.nvars();
  if (static_cast<int>(A.size()) != n * n) fail(ErrorCode::DimensionMismatch, "matrix has wrong size");
  std::vector<Poly<F>> subs;
  for (int i = 0; i < n; ++i) {
    std::vector<typename Poly<F>::Term> row;
    for (int j = 0; j < n; ++j) row.push_back({Monomial::var(j), A[i * n + j]});
    std::vector<typename Poly<F>::Term> nz;
    for (auto& t : row)
      if (!f.field().is_zero(t.c)) nz.push_back(t);
    subs.push_back(Poly<F>::from_terms(f.field_ptr(), n, std::move(nz), f.var_base()));
  }
  return substitute(f, subs);
}

template <class F>
Poly<F> specialize(const Poly<F>& f, int i, const typename F::Element& value) {
  if (i < 0 || i >= f.nvars()) fail(ErrorCode::IndexOutOfRange, "variable index out of range");
  const F& k = f.field();
  std::vector<typename F::Element> pw{k.one()};
  std::vector<typename Poly<F>::Term> out;
  for (auto& t : f.terms()) {
    unsigned e = t.m[i];
    while (pw.size() <= e) pw.push_back(k.mul(pw.back(), value));
    auto c = k.mul(t.c, pw[e]);
    if (k.is_zero(c)) continue;
    Monomial m;
    int j = 0;
    for (int v = 0; v < f.nvars(); ++v) {
      if (v == i) continue;
      m.set(j++, t.m[v]);
    }
    out.push_back({m, c});
  }
  return Poly<F>::from_terms(f.field_ptr(), f.nvars() - 1, std::move(out), f.var_base());
}

template <class F>
Poly<F> embed(const Poly<F>& f, const FieldEmbedding<F>& emb) {
  if constexpr (std::is_same_v<F, Rationals>) {
    return f;
  } else {
    std::vector<typename Poly<F>::Term> out;
    out.reserve(f.size());
    for (auto& t : f.terms()) out.push_back({t.m, emb(t.c)});
    return Poly<F>::from_sorted(emb.target(), f.nvars(), std::move(out), f.var_base());
  }
}

template <class F>
Jet<F> jet_at(const Poly<F>& f, const std::vector<typename F::Element>& point, int order) {
  Jet<F> jet;
  jet.point = point;
  jet.order = order;
  Poly<F> g = translate(f, point);
  for (int i = 0; i <= order; ++i) jet.layers.push_back(g.homogeneous_part(i));
  return jet;
}

Poly<GaloisField> random_form(const std::shared_ptr<const GaloisField>& field, int nvars, unsigned d,
                              SplitMix64& rng, bool homogeneous) {
  auto monos = homogeneous ? monomials_of_degree(nvars, d) : monomials_up_to_degree(nvars, d);
  std::vector<Poly<GaloisField>::Term> terms;
  terms.reserve(monos.size());
  const std::uint64_t q = field->cardinality();
  for (auto& m : monos) {
    std::uint64_t c = rng.uniform(q);
    if (c) terms.push_back({m, c});
  }
  return Poly<GaloisField>::from_sorted(field, nvars, std::move(terms), homogeneous ? 0 : 1);
}

// ---------------------------------------------------------------------------
// Parsing and formatting

namespace {

template <class F>
class Parser {
 public:
  Parser(std::string_view text, std::shared_ptr<const F> field, int nvars, int base)
      : s_(text), field_(std::move(field)), nvars_(nvars), base_(base) {}

  Poly<F> parse() {
    Poly<F> r = expr();
    skip();
    if (pos_ != s_.size()) error("unexpected '" + std::string(1, s_[pos_]) + "'");
    return r;
  }

 private:
  [[noreturn]] void error(const std::string& msg) {
    fail(ErrorCode::SyntaxError, msg + " at offset " + std::to_string(pos_));
  }

  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool eat(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  Poly<F> constant(const mpq_class& v) {
    return Poly<F>::constant(field_, nvars_, field_->from_rational(v), base_);
  }

  Poly<F> expr() {
    skip();
    bool neg = false;
    if (eat('-'))
      neg = true;
    else
      eat('+');
    Poly<F> acc = term();
    if (neg) acc = -acc;
    for (;;) {
      if (eat('+'))
        acc = acc + term();
      else if (eat('-'))
        acc = acc - term();
      else
        break;
    }
    return acc;
  }

  Poly<F> term() {
    Poly<F> acc = factor();
    for (;;) {
      skip();
      if (eat('*')) {
        acc = acc * factor();
      } else if (eat('/')) {
        Poly<F> d = factor();
        if (!d.is_constant()) error("division by a non-constant");
        if (d.is_zero()) fail(ErrorCode::CoefficientNotInField, "division by zero in coefficient");
        acc = acc.scaled(field_->inv(d.constant_term()));
      } else if (pos_ < s_.size() && (s_[pos_] == 'x' || s_[pos_] == '(' || s_[pos_] == 't')) {
        acc = acc * factor();  // implicit product such as 2x1 or 3(x0+x1)
      } else {
        break;
      }
    }
    return acc;
  }

  Poly<F> factor() {
    Poly<F> base = primary();
    if (eat('^')) {
      skip();
      mpz_class e = integer();
      if (e > 100000) error("exponent too large");
      base = base.pow(static_cast<unsigned>(e.get_ui()));
    }
    return base;
  }

  mpz_class integer() {
    skip();
    std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_) error("expected an integer");
    return mpz_class(std::string(s_.substr(start, pos_ - start)));
  }

  Poly<F> primary() {
    skip();
    if (pos_ >= s_.size()) error("unexpected end of input");
    char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      Poly<F> r = expr();
      if (!eat(')')) error("expected ')'");
      return r;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) return constant(mpq_class(integer()));
    if (c == 'x') {
      ++pos_;
      mpz_class idx = integer();
      long i = idx.fits_slong_p() ? idx.get_si() - base_ : -1;
      if (i < 0 || i >= nvars_)
        fail(ErrorCode::UnknownVariable, "unknown variable x" + idx.get_str());
      return Poly<F>::variable(field_, nvars_, static_cast<int>(i), base_);
    }
    if (c == 't') {
      ++pos_;
      if constexpr (std::is_same_v<F, GaloisField>) {
        if (field_->degree() > 1) return Poly<F>::constant(field_, nvars_, field_->generator(), base_);
      }
      fail(ErrorCode::UnknownVariable, "generator t is only defined over extension fields");
    }
    error("unexpected '" + std::string(1, c) + "'");
  }

  std::string_view s_;
  std::size_t pos_ = 0;
  std::shared_ptr<const F> field_;
  int nvars_;
  int base_;
};

std::string monomial_string(const Monomial& m, int nvars, int base) {
  std::string out;
  for (int i = 0; i < nvars; ++i) {
    if (!m[i]) continue;
    if (!out.empty()) out += "*";
    out += "x" + std::to_string(i + base);
    if (m[i] > 1) out += "^" + std::to_string(m[i]);
  }
  return out;
}

}  // namespace

template <class F>
Poly<F> parse_poly(std::string_view text, const std::shared_ptr<const F>& field, int nvars, int var_base) {
  return Parser<F>(text, field, nvars, var_base).parse();
}

template <class F>
std::string format_poly(const Poly<F>& f) {
  if (f.is_zero()) return "0";
  const F& k = f.field();
  std::string out;
  for (auto& t : f.terms()) {
    std::string mono = monomial_string(t.m, f.nvars(), f.var_base());
    std::string coef;
    bool negative = false;
    if constexpr (std::is_same_v<F, Rationals>) {
      negative = sgn(t.c) < 0;
      mpq_class a = abs(t.c);
      coef = a.get_str();
    } else {
      coef = k.to_string(t.c);
      if (coef.find('+') != std::string::npos) coef = "(" + coef + ")";
    }
    if (out.empty())
      out += negative ? "-" : "";
    else
      out += negative ? " - " : " + ";
    if (mono.empty()) {
      out += coef;
    } else {
      if (coef != "1") out += coef + "*";
      out += mono;
    }
  }
  return out;
}

namespace {
template <class Fn>
int scan_indices(std::string_view text, Fn&& pick) {
  int best = -1;
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (text[i] != 'x') continue;
    std::size_t j = i + 1;
    int v = 0;
    bool any = false;
    while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) {
      v = v * 10 + (text[j] - '0');
      any = true;
      ++j;
      if (v > 1000) break;
    }
    if (any) best = best < 0 ? v : pick(best, v);
  }
  return best;
}
}  // namespace

int max_variable_index(std::string_view text) {
  return scan_indices(text, [](int a, int b) { return std::max(a, b); });
}

int min_variable_index(std::string_view text) {
  return scan_indices(text, [](int a, int b) { return std::min(a, b); });
}

// ---------------------------------------------------------------------------

#define DEFEKT_INSTANTIATE(F)                                                                  \
  template class Poly<F>;                                                                      \
  template struct Jet<F>;                                                                      \
  template Poly<F> partial_derivative(const Poly<F>&, int);                                    \
  template std::vector<Poly<F>> gradient(const Poly<F>&);                                      \
  template Poly<F> dehomogenize(const Poly<F>&, int);                                          \
  template Poly<F> homogenize(const Poly<F>&, int);                                            \
  template F::Element evaluate(const Poly<F>&, const std::vector<F::Element>&);                \
  template Poly<F> substitute(const Poly<F>&, const std::vector<Poly<F>>&);                    \
  template Poly<F> translate(const Poly<F>&, const std::vector<F::Element>&);                  \
  template Poly<F> linear_change(const Poly<F>&, const std::vector<F::Element>&);              \
  template Poly<F> specialize(const Poly<F>&, int, const F::Element&);                         \
  template Poly<F> embed(const Poly<F>&, const FieldEmbedding<F>&);                            \
  template Jet<F> jet_at(const Poly<F>&, const std::vector<F::Element>&, int);                 \
  template Poly<F> parse_poly(std::string_view, const std::shared_ptr<const F>&, int, int);    \
  template std::string format_poly(const Poly<F>&);

DEFEKT_INSTANTIATE(Rationals)
DEFEKT_INSTANTIATE(GaloisField)
#undef DEFEKT_INSTANTIATE

}  // namespace defekt
