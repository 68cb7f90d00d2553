#pragma once

// Exact dense linear algebra over Q and F_p.

#include <cstddef>
#include <utility>
#include <vector>

#include "gpchow/coeff.hpp"
#include "gpchow/error.hpp"

namespace gpchow {

/// Row echelon form grown one row at a time; add() reports whether the new
/// row is independent of the rows seen so far.
template <class F>
class IncrementalEchelon {
 public:
  explicit IncrementalEchelon(std::size_t cols) : cols_(cols) {}

  std::size_t rank() const { return rows_.size(); }

  bool add(std::vector<F> r) {
    if (r.size() != cols_) throw InconsistencyError("row length mismatch");
    for (std::size_t k = 0; k < rows_.size(); ++k) {
      const F c = r[pivots_[k]];
      if (CoeffTraits<F>::is_zero(c)) continue;
      for (std::size_t j = 0; j < cols_; ++j)
        if (!CoeffTraits<F>::is_zero(rows_[k][j])) r[j] -= c * rows_[k][j];
    }
    std::size_t p = 0;
    while (p < cols_ && CoeffTraits<F>::is_zero(r[p])) ++p;
    if (p == cols_) return false;
    F inv = CoeffTraits<F>::divexact(CoeffTraits<F>::one(r[p]), r[p]);
    for (auto& x : r) x = x * inv;
    // keep the basis reduced so that later reductions need one pass
    for (auto& row : rows_) {
      const F c = row[p];
      if (CoeffTraits<F>::is_zero(c)) continue;
      for (std::size_t j = 0; j < cols_; ++j)
        if (!CoeffTraits<F>::is_zero(r[j])) row[j] -= c * r[j];
    }
    rows_.push_back(std::move(r));
    pivots_.push_back(p);
    return true;
  }

 private:
  std::size_t cols_;
  std::vector<std::vector<F>> rows_;
  std::vector<std::size_t> pivots_;
};

/// Inverse of a square matrix by Gauss-Jordan elimination.
template <class F>
std::vector<std::vector<F>> invert_matrix(std::vector<std::vector<F>> a) {
  const std::size_t n = a.size();
  if (n == 0) return {};
  F one, zero;
  for (const auto& row : a) {
    if (row.size() != n) throw InconsistencyError("matrix is not square");
    for (const auto& x : row)
      if (!CoeffTraits<F>::is_zero(x)) {
        one = CoeffTraits<F>::one(x);
        zero = CoeffTraits<F>::zero(x);
      }
  }
  std::vector<std::vector<F>> inv(n, std::vector<F>(n, zero));
  for (std::size_t i = 0; i < n; ++i) inv[i][i] = one;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && CoeffTraits<F>::is_zero(a[p][c])) ++p;
    if (p == n) throw InconsistencyError("singular matrix");
    std::swap(a[p], a[c]);
    std::swap(inv[p], inv[c]);
    F s = CoeffTraits<F>::divexact(one, a[c][c]);
    for (std::size_t j = 0; j < n; ++j) {
      a[c][j] = a[c][j] * s;
      inv[c][j] = inv[c][j] * s;
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == c) continue;
      F f = a[r][c];
      if (CoeffTraits<F>::is_zero(f)) continue;
      for (std::size_t j = 0; j < n; ++j) {
        if (!CoeffTraits<F>::is_zero(a[c][j])) a[r][j] -= f * a[c][j];
        if (!CoeffTraits<F>::is_zero(inv[c][j])) inv[r][j] -= f * inv[c][j];
      }
    }
  }
  return inv;
}

/// A row over the fraction field written as (integer row) / denominator.
template <class C>
std::pair<std::vector<C>, C> integral_row(const std::vector<typename std::conditional_t<std::is_same_v<C, BigInt>, Rational, C>>& row,
                                          const C& like);

template <>
inline std::pair<std::vector<BigInt>, BigInt> integral_row<BigInt>(const std::vector<Rational>& row, const BigInt&) {
  BigInt den = 1;
  for (const auto& x : row) {
    BigInt d = x.get_den();
    mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), d.get_mpz_t());
  }
  std::vector<BigInt> out;
  out.reserve(row.size());
  for (const auto& x : row) {
    Rational y = x * Rational(den);
    y.canonicalize();
    out.push_back(y.get_num());
  }
  return {out, den};
}

template <>
inline std::pair<std::vector<Fp>, Fp> integral_row<Fp>(const std::vector<Fp>& row, const Fp& like) {
  return {row, Fp(1, like.p)};
}

}  // namespace gpchow
