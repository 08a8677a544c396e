#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <functional>
#include <vector>

namespace defekt {

constexpr int kMaxVars = 8;

struct Monomial {
  std::array<std::uint16_t, kMaxVars> e{};
  std::uint32_t deg = 0;

  static Monomial var(int i, unsigned power = 1) {
    Monomial m;
    m.e[i] = static_cast<std::uint16_t>(power);
    m.deg = power;
    return m;
  }

  unsigned operator[](int i) const { return e[i]; }

  void set(int i, unsigned v) {
    deg = deg - e[i] + v;
    e[i] = static_cast<std::uint16_t>(v);
  }

  friend Monomial operator*(const Monomial& a, const Monomial& b) {
    Monomial r;
    for (int i = 0; i < kMaxVars; ++i) r.e[i] = static_cast<std::uint16_t>(a.e[i] + b.e[i]);
    r.deg = a.deg + b.deg;
    return r;
  }

  // a / b, assuming b | a.
  friend Monomial operator/(const Monomial& a, const Monomial& b) {
    Monomial r;
    for (int i = 0; i < kMaxVars; ++i) r.e[i] = static_cast<std::uint16_t>(a.e[i] - b.e[i]);
    r.deg = a.deg - b.deg;
    return r;
  }

  bool divides(const Monomial& other) const {
    if (deg > other.deg) return false;
    for (int i = 0; i < kMaxVars; ++i)
      if (e[i] > other.e[i]) return false;
    return true;
  }

  friend bool operator==(const Monomial& a, const Monomial& b) { return a.e == b.e; }

  bool is_pure_power(int* var = nullptr) const {
    int found = -1;
    for (int i = 0; i < kMaxVars; ++i) {
      if (!e[i]) continue;
      if (found >= 0) return false;
      found = i;
    }
    if (found < 0) return false;
    if (var) *var = found;
    return true;
  }

  // Variables occurring in the monomial, as a bit mask.
  unsigned support() const {
    unsigned s = 0;
    for (int i = 0; i < kMaxVars; ++i)
      if (e[i]) s |= 1u << i;
    return s;
  }
};

inline Monomial lcm(const Monomial& a, const Monomial& b) {
  Monomial r;
  for (int i = 0; i < kMaxVars; ++i) {
    r.e[i] = std::max(a.e[i], b.e[i]);
    r.deg += r.e[i];
  }
  return r;
}

inline bool coprime(const Monomial& a, const Monomial& b) {
  for (int i = 0; i < kMaxVars; ++i)
    if (a.e[i] && b.e[i]) return false;
  return true;
}

// Degree-reverse-lexicographic: higher degree first; ties broken by the
// last differing variable, where the smaller exponent wins.
inline int grevlex_cmp(const Monomial& a, const Monomial& b) {
  if (a.deg != b.deg) return a.deg > b.deg ? 1 : -1;
  for (int i = kMaxVars - 1; i >= 0; --i)
    if (a.e[i] != b.e[i]) return a.e[i] < b.e[i] ? 1 : -1;
  return 0;
}

inline int lex_cmp(const Monomial& a, const Monomial& b) {
  for (int i = 0; i < kMaxVars; ++i)
    if (a.e[i] != b.e[i]) return a.e[i] > b.e[i] ? 1 : -1;
  return 0;
}

struct MonomialHash {
  std::size_t operator()(const Monomial& m) const {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (auto v : m.e) h = (h ^ v) * 0x100000001b3ULL;
    return static_cast<std::size_t>(h);
  }
};

enum class OrderKind { grevlex, lex, elimination };

// Monomial order. `block` is the number of leading variables eliminated by
// the elimination order (grevlex on each block, first block dominant).
struct MonomialOrder {
  OrderKind kind = OrderKind::grevlex;
  int block = 0;

  static MonomialOrder grevlex() { return {}; }
  static MonomialOrder lex() { return {OrderKind::lex, 0}; }
  static MonomialOrder elimination(int k) { return {OrderKind::elimination, k}; }

  int compare(const Monomial& a, const Monomial& b) const {
    switch (kind) {
      case OrderKind::grevlex:
        return grevlex_cmp(a, b);
      case OrderKind::lex:
        return lex_cmp(a, b);
      case OrderKind::elimination: {
        unsigned da = 0, db = 0;
        for (int i = 0; i < block; ++i) {
          da += a.e[i];
          db += b.e[i];
        }
        if (da != db) return da > db ? 1 : -1;
        for (int i = block - 1; i >= 0; --i)
          if (a.e[i] != b.e[i]) return a.e[i] < b.e[i] ? 1 : -1;
        if (a.deg - da != b.deg - db) return a.deg - da > b.deg - db ? 1 : -1;
        for (int i = kMaxVars - 1; i >= block; --i)
          if (a.e[i] != b.e[i]) return a.e[i] < b.e[i] ? 1 : -1;
        return 0;
      }
    }
    return 0;
  }

  bool greater(const Monomial& a, const Monomial& b) const { return compare(a, b) > 0; }

  friend bool operator==(const MonomialOrder& a, const MonomialOrder& b) {
    return a.kind == b.kind && (a.kind != OrderKind::elimination || a.block == b.block);
  }
};

// All monomials of total degree d in n variables, descending grevlex.
std::vector<Monomial> monomials_of_degree(int nvars, unsigned d);
// All monomials of degree <= d, descending grevlex.
std::vector<Monomial> monomials_up_to_degree(int nvars, unsigned d);

}  // namespace defekt
