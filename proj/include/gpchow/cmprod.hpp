#pragma once

// CH(X x X') as a sum of shifted CH(Y_w) over double cosets, and the
// operators alpha_* : Ch(X) -> Ch(X') built from cycles on Y_w.

#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <unordered_map>
#include <vector>

#include "gpchow/chow.hpp"
#include "gpchow/error.hpp"
#include "gpchow/weyl.hpp"

namespace gpchow {

struct ProductSummand {
  WeylElement w;  // minimal double coset representative
  int shift = 0;  // l(w)
  IndexSet type;  // Theta of Y_w = G/Q_w
};

struct ProductDecomposition {
  std::shared_ptr<const RootSystem> rs;
  IndexSet theta;
  IndexSet theta_prime;
  std::vector<ProductSummand> summands;
};

/// Coefficient lists of integer polynomials in t.
inline std::vector<long long> poly_mul(const std::vector<long long>& a, const std::vector<long long>& b) {
  if (a.empty() || b.empty()) return {};
  std::vector<long long> c(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) c[i + j] += a[i] * b[j];
  return c;
}

inline std::vector<long long> poly_trim(std::vector<long long> a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
  return a;
}

/// Sum over summands of t^{l(w)} P(Y_w, t).
inline std::vector<long long> decomposition_poincare(const ProductDecomposition& d) {
  std::vector<long long> total;
  for (const auto& s : d.summands) {
    auto p = coset_space(d.rs, s.type)->poincare();
    if (total.size() < p.size() + s.shift) total.resize(p.size() + s.shift, 0);
    for (std::size_t i = 0; i < p.size(); ++i) total[i + s.shift] += p[i];
  }
  return poly_trim(total);
}

inline ProductDecomposition decompose_product(std::shared_ptr<const RootSystem> rs, const IndexSet& theta,
                                              const IndexSet& theta_prime) {
  ProductDecomposition d{rs, normalize(theta), normalize(theta_prime), {}};
  for (const auto& r : double_coset_reps(rs, d.theta, d.theta_prime))
    d.summands.push_back({r.element, r.length, qw_type(r.element, d.theta, d.theta_prime)});
  auto lhs = decomposition_poincare(d);
  auto rhs = poly_trim(poly_mul(coset_space(rs, d.theta)->poincare(), coset_space(rs, d.theta_prime)->poincare()));
  if (lhs != rhs) throw InconsistencyError("Poincare polynomials of the product decomposition do not add up");
  return d;
}

/// beta_*(1) for beta on Y_w (in the Z basis), landing on X' (Z basis).
/// Z_r on Y is the cycle X_u with u = x_to_z(r). Its preimage in the orbit
/// of (P, wP') has dimension l(u) + l(w) and maps onto the closure of
/// B u w P'; the push-forward is that class when the dimension is kept,
/// zero otherwise.
template <class C>
ChowClass<C> beta_star_one(const ChowClass<C>& beta, const WeylElement& w,
                           std::shared_ptr<const CosetSpace> target) {
  const auto& y = beta.space();
  ChowClass<C> out(target, beta.like());
  for (const auto& [r, c] : beta.coeffs()) {
    std::size_t u = y.x_to_z(r);
    std::size_t img = target->coset_of(y.element(u) * w);
    if (target->length(img) != y.length(u) + w.length()) continue;
    out.add(target->x_to_z(img), c);
  }
  return out;
}

/// alpha_*(x) = (alpha . f^*(x))_*(1) with f: Y_w -> X; `table` is a
/// restriction table on Y_w deep enough for the products.
template <class Ring>
ChowClass<typename Ring::Coeff> alpha_star(const RestrictionTable<Ring>& table, const ChowClass<typename Ring::Coeff>& alpha,
                                           const WeylElement& w, const ChowClass<typename Ring::Coeff>& x,
                                           std::shared_ptr<const CosetSpace> target) {
  auto fx = pullback(x, table.space_ptr());
  auto prod = multiply(table, alpha, fx);
  return beta_star_one(prod, w, std::move(target));
}

/// Square matrix in the Schubert basis of one G/P; column u holds the image
/// of Z_u.
template <class C>
class EndoMatrix {
 public:
  EndoMatrix() = default;
  EndoMatrix(std::shared_ptr<const CosetSpace> space, C like)
      : space_(std::move(space)), like_(CoeffTraits<C>::zero(like)), m_(space_->size() * space_->size(), like_) {}

  static EndoMatrix from_columns(std::shared_ptr<const CosetSpace> space, const std::vector<ChowClass<C>>& cols, const C& like) {
    EndoMatrix e(space, like);
    if (cols.size() != space->size()) throw ConfigError("one column per Schubert class is needed");
    for (std::size_t u = 0; u < cols.size(); ++u)
      for (const auto& [v, c] : cols[u].coeffs()) e.at(v, u) = c;
    return e;
  }
  static EndoMatrix identity(std::shared_ptr<const CosetSpace> space, const C& like) {
    EndoMatrix e(space, like);
    for (std::size_t i = 0; i < space->size(); ++i) e.at(i, i) = CoeffTraits<C>::one(like);
    return e;
  }

  const CosetSpace& space() const { return *space_; }
  std::size_t size() const { return space_->size(); }
  C& at(std::size_t r, std::size_t c) { return m_[r * size() + c]; }
  const C& at(std::size_t r, std::size_t c) const { return m_[r * size() + c]; }

  ChowClass<C> apply(const ChowClass<C>& x) const {
    ChowClass<C> out(space_, like_);
    for (const auto& [u, c] : x.coeffs())
      for (std::size_t v = 0; v < size(); ++v)
        if (!CoeffTraits<C>::is_zero(at(v, u))) out.add(v, at(v, u) * c);
    return out;
  }

  friend EndoMatrix operator*(const EndoMatrix& a, const EndoMatrix& b) {
    EndoMatrix c(a.space_, a.like_);
    const std::size_t n = a.size();
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t k = 0; k < n; ++k) {
        const C& x = a.at(i, k);
        if (CoeffTraits<C>::is_zero(x)) continue;
        for (std::size_t j = 0; j < n; ++j)
          if (!CoeffTraits<C>::is_zero(b.at(k, j))) c.at(i, j) += x * b.at(k, j);
      }
    return c;
  }
  friend bool operator==(const EndoMatrix& a, const EndoMatrix& b) { return a.m_ == b.m_; }

  bool is_zero() const {
    for (const auto& x : m_)
      if (!CoeffTraits<C>::is_zero(x)) return false;
    return true;
  }
  /// Every nonzero entry maps codimension i to codimension i + shift.
  bool respects_shift(int shift) const {
    for (std::size_t v = 0; v < size(); ++v)
      for (std::size_t u = 0; u < size(); ++u)
        if (!CoeffTraits<C>::is_zero(at(v, u)) && space_->length(v) != space_->length(u) + shift) return false;
    return true;
  }
  /// Smallest codimension whose Schubert classes are not all sent to zero, -1 if none.
  int lowest_grade() const {
    int best = -1;
    for (std::size_t u = 0; u < size(); ++u)
      for (std::size_t v = 0; v < size(); ++v)
        if (!CoeffTraits<C>::is_zero(at(v, u)) && (best < 0 || space_->length(u) < best)) best = space_->length(u);
    return best;
  }
  std::string key() const {
    std::string s;
    for (const auto& x : m_) s += CoeffTraits<C>::str(x) + ",";
    return s;
  }

 private:
  std::shared_ptr<const CosetSpace> space_;
  C like_{};
  std::vector<C> m_;
};

/// The idempotent power of m over a finite field. Powers are listed until
/// m^{a+b} = m^a; then m^n with n the least multiple of b that is >= a
/// (and >= 1) is idempotent.
template <class C>
EndoMatrix<C> iterate_to_idempotent(const EndoMatrix<C>& m, std::size_t max_steps = 100000) {
  std::vector<EndoMatrix<C>> powers{m};
  std::unordered_map<std::string, std::size_t> seen{{m.key(), 1}};
  for (std::size_t k = 2; k <= max_steps; ++k) {
    powers.push_back(powers.back() * m);
    auto [it, fresh] = seen.emplace(powers.back().key(), k);
    if (fresh) continue;
    std::size_t a = it->second, b = k - a;
    std::size_t n = ((a + b - 1) / b) * b;
    auto e = powers[n - 1];
    if (!(e * e == e)) throw InconsistencyError("power selected by cycle detection is not idempotent");
    return e;
  }
  throw InconsistencyError("no repetition among the first " + std::to_string(max_steps) + " powers");
}

}  // namespace gpchow
