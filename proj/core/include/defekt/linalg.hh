#pragma once

// Small dense exact linear algebra over a field policy.

#include <cstddef>
#include <vector>

#include "defekt/error.hh"

namespace defekt {

template <class F>
class Matrix {
 public:
  using Elem = typename F::Element;

  Matrix(const F& field, std::size_t rows, std::size_t cols)
      : k_(&field), rows_(rows), cols_(cols), a_(rows * cols, field.zero()) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  Elem& at(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
  const Elem& at(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }
  const F& field() const { return *k_; }

  // In-place reduced row echelon form; returns pivot columns.
  std::vector<std::size_t> rref() {
    const F& k = *k_;
    std::vector<std::size_t> pivots;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols_ && r < rows_; ++c) {
      std::size_t piv = r;
      while (piv < rows_ && k.is_zero(at(piv, c))) ++piv;
      if (piv == rows_) continue;
      if (piv != r)
        for (std::size_t j = 0; j < cols_; ++j) std::swap(at(piv, j), at(r, j));
      Elem inv = k.inv(at(r, c));
      for (std::size_t j = c; j < cols_; ++j) at(r, j) = k.mul(at(r, j), inv);
      for (std::size_t i = 0; i < rows_; ++i) {
        if (i == r || k.is_zero(at(i, c))) continue;
        Elem factor = at(i, c);
        for (std::size_t j = c; j < cols_; ++j)
          if (!k.is_zero(at(r, j))) at(i, j) = k.sub(at(i, j), k.mul(factor, at(r, j)));
      }
      pivots.push_back(c);
      ++r;
    }
    return pivots;
  }

  std::size_t rank() const {
    Matrix copy = *this;
    return copy.forward_eliminate();
  }

  // Basis of the right kernel {v : A v = 0}.
  std::vector<std::vector<Elem>> kernel() const {
    const F& k = *k_;
    Matrix copy = *this;
    auto pivots = copy.rref();
    std::vector<bool> is_pivot(cols_, false);
    for (auto c : pivots) is_pivot[c] = true;
    std::vector<std::vector<Elem>> basis;
    for (std::size_t free = 0; free < cols_; ++free) {
      if (is_pivot[free]) continue;
      std::vector<Elem> v(cols_, k.zero());
      v[free] = k.one();
      for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = k.neg(copy.at(r, free));
      basis.push_back(std::move(v));
    }
    return basis;
  }

 private:
  // Row echelon without back substitution; returns the rank.
  std::size_t forward_eliminate() {
    const F& k = *k_;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols_ && r < rows_; ++c) {
      std::size_t piv = r;
      while (piv < rows_ && k.is_zero(at(piv, c))) ++piv;
      if (piv == rows_) continue;
      if (piv != r)
        for (std::size_t j = c; j < cols_; ++j) std::swap(at(piv, j), at(r, j));
      Elem inv = k.inv(at(r, c));
      for (std::size_t i = r + 1; i < rows_; ++i) {
        if (k.is_zero(at(i, c))) continue;
        Elem factor = k.mul(at(i, c), inv);
        for (std::size_t j = c; j < cols_; ++j)
          if (!k.is_zero(at(r, j))) at(i, j) = k.sub(at(i, j), k.mul(factor, at(r, j)));
      }
      ++r;
    }
    return r;
  }

  const F* k_;
  std::size_t rows_, cols_;
  std::vector<Elem> a_;
};

// Rank of a symmetric matrix by symmetric elimination (congruence
// diagonalization). Requires characteristic != 2. Returns the rank and, if
// requested, a basis of the radical (kernel).
template <class F>
std::size_t symmetric_rank(Matrix<F> S) {
  const F& k = S.field();
  if (k.characteristic() == 2) fail(ErrorCode::CharacteristicTwo, "quadratic form rank in characteristic 2");
  const std::size_t n = S.rows();
  std::size_t rank = 0;
  std::vector<bool> done(n, false);
  for (;;) {
    // Look for a nonzero diagonal entry among the remaining indices.
    std::size_t piv = n;
    for (std::size_t i = 0; i < n && piv == n; ++i)
      if (!done[i] && !k.is_zero(S.at(i, i))) piv = i;
    if (piv == n) {
      // All remaining diagonal entries vanish: find an off-diagonal pair and
      // replace row/col i by row/col i + row/col j, which makes S_ii = 2 S_ij.
      std::size_t pi = n, pj = n;
      for (std::size_t i = 0; i < n && pi == n; ++i) {
        if (done[i]) continue;
        for (std::size_t j = 0; j < n; ++j)
          if (!done[j] && j != i && !k.is_zero(S.at(i, j))) {
            pi = i;
            pj = j;
            break;
          }
      }
      if (pi == n) break;
      for (std::size_t c = 0; c < n; ++c) S.at(pi, c) = k.add(S.at(pi, c), S.at(pj, c));
      for (std::size_t r = 0; r < n; ++r) S.at(r, pi) = k.add(S.at(r, pi), S.at(r, pj));
      piv = pi;
    }
    auto inv = k.inv(S.at(piv, piv));
    for (std::size_t i = 0; i < n; ++i) {
      if (i == piv || done[i] || k.is_zero(S.at(i, piv))) continue;
      auto factor = k.mul(S.at(i, piv), inv);
      for (std::size_t c = 0; c < n; ++c) S.at(i, c) = k.sub(S.at(i, c), k.mul(factor, S.at(piv, c)));
      for (std::size_t r = 0; r < n; ++r) S.at(r, i) = k.sub(S.at(r, i), k.mul(factor, S.at(r, piv)));
    }
    done[piv] = true;
    ++rank;
  }
  return rank;
}

}  // namespace defekt
