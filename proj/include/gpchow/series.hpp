#pragma once

// Entries for Steenrod operations at primes where every polynomial frame
// needs many variables (E7 mod 2 needs six).
//
// Pick an F_p-linear map phi: Lambda -> F_q, q = p^r, with no root in its
// kernel, and specialize omega_i -> theta_i + s theta_i^p. Modulo p this is
// the map lambda -> phi(lambda) + s phi(lambda)^p, so for homogeneous f of
// degree d
//   psi(f) = sum_j s^j phi(S^j f)
// with the implicit powers of the frame variable dropped. One restriction
// table over F_q[s] / s^{J+1} therefore carries every S^j, j <= J.
//
// The table is built exactly over Z[y]/(g)[s] / s^{J+1}, with g a monic lift
// of the minimal polynomial of F_q, and reduced afterwards: a direct build
// over F_q breaks down at torsion primes.

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "gpchow/coeff.hpp"
#include "gpchow/error.hpp"
#include "gpchow/frame.hpp"
#include "gpchow/linalg.hpp"
#include "gpchow/rootsys.hpp"

namespace gpchow {

struct SeriesContext {
  std::uint64_t p = 2;
  int r = 1;
  int J = 0;
  std::vector<long> g;                   // monic of degree r, low coefficient first
  std::vector<std::vector<long>> theta;  // theta_i in F_q as r coefficients, i = 1..n
};

namespace detail {

inline std::vector<long> fq_mul(const std::vector<long>& a, const std::vector<long>& b, const std::vector<long>& g, long p) {
  const std::size_t r = g.size() - 1;
  std::vector<long> t(2 * r - 1, 0);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t k = 0; k < r; ++k) t[i + k] = (t[i + k] + a[i] * b[k]) % p;
  for (std::size_t d = t.size() - 1; d >= r; --d) {
    long c = t[d];
    for (std::size_t k = 0; k < r; ++k) t[d - r + k] = ((t[d - r + k] - c * g[k]) % p + p) % p;
    t[d] = 0;
  }
  t.resize(r);
  return t;
}

inline bool fq_irreducible(const std::vector<long>& g, long p) {
  const int r = static_cast<int>(g.size()) - 1;
  // trial division by every monic polynomial of degree 1..r/2
  for (int d = 1; 2 * d <= r; ++d) {
    std::vector<long> f(d + 1, 0);
    f[d] = 1;
    long total = 1;
    for (int i = 0; i < d; ++i) total *= p;
    for (long code = 0; code < total; ++code) {
      long c = code;
      for (int i = 0; i < d; ++i) {
        f[i] = c % p;
        c /= p;
      }
      std::vector<long> rem = g;
      for (int k = r; k >= d; --k) {
        long q = rem[k];
        if (!q) continue;
        for (int i = 0; i <= d; ++i) rem[k - d + i] = ((rem[k - d + i] - q * f[i]) % p + p) % p;
      }
      bool zero = true;
      for (int i = 0; i < d; ++i)
        if (rem[i]) zero = false;
      if (zero) return false;
    }
  }
  return true;
}

template <class C>
void add_mul(C& acc, const C& a, const C& b) {
  acc += a * b;
}
template <>
inline void add_mul<BigInt>(BigInt& acc, const BigInt& a, const BigInt& b) {
  mpz_addmul(acc.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
}

inline long coeff_key(const BigInt& c) { return c.get_si(); }
inline long coeff_key(const Fp& c) { return static_cast<long>(c.v); }

}  // namespace detail

/// Smallest extension degree r with a map into F_{p^r} killing no root,
/// found by a seeded search; J is the highest Steenrod degree needed.
inline std::shared_ptr<const SeriesContext> series_context(const RootSystem& rs, std::uint64_t p, int J,
                                                           std::uint64_t seed = 20240611) {
  if (!is_prime(p)) throw ConfigError(std::to_string(p) + " is not prime");
  if (J < 0) throw ConfigError("negative Steenrod degree");
  const long P = static_cast<long>(p);
  std::mt19937_64 rng(seed);
  for (int r = 1; r <= 8; ++r) {
    long total = 1;
    for (int i = 0; i < r; ++i) total *= P;
    if (total > (1L << 20)) break;
    std::vector<long> g;
    for (long code = 0; code < total && g.empty(); ++code) {
      std::vector<long> cand(r + 1, 0);
      cand[r] = 1;
      long c = code;
      for (int i = 0; i < r; ++i) {
        cand[i] = c % P;
        c /= P;
      }
      if (detail::fq_irreducible(cand, P)) g = cand;
    }
    std::uniform_int_distribution<long> dist(0, P - 1);
    for (int attempt = 0; attempt < 2000; ++attempt) {
      std::vector<std::vector<long>> theta(rs.rank(), std::vector<long>(r));
      for (auto& t : theta)
        for (auto& x : t) x = dist(rng);
      bool ok = true;
      for (const auto& a : rs.positive_roots()) {
        std::vector<long> v(r, 0);
        for (int i = 0; i < rs.rank(); ++i)
          for (int k = 0; k < r; ++k) v[k] = ((v[k] + a[i] * theta[i][k]) % P + P) % P;
        bool nz = false;
        for (long x : v)
          if (x) nz = true;
        if (!nz) {
          ok = false;
          break;
        }
      }
      if (!ok) continue;
      auto ctx = std::make_shared<SeriesContext>();
      ctx->p = p;
      ctx->r = r;
      ctx->J = J;
      ctx->g = g;
      ctx->theta = theta;
      return ctx;
    }
  }
  throw ConfigError("no extension of F_" + std::to_string(p) + " of degree <= 8 separates the roots of " + rs.name());
}

/// Entries in (Z[y]/(g) or F_q)[s] / s^{J+1}, stored as (J+1) blocks of r
/// coefficients. Degrees are implicit as in ScalarRing.
template <class C>
class SeriesRing {
 public:
  using Coeff = C;
  using Elem = std::vector<C>;
  static constexpr bool kPolynomial = false;

  SeriesRing() = default;
  SeriesRing(std::shared_ptr<const SeriesContext> ctx, C like = C())
      : ctx_(std::move(ctx)), like_(CoeffTraits<C>::zero(like)), cache_(std::make_shared<Cache>()) {
    const int r = ctx_->r;
    const long P = static_cast<long>(ctx_->p);
    for (const auto& th : ctx_->theta) {
      Elem e = zero();
      for (int k = 0; k < r; ++k) e[k] = CoeffTraits<C>::from_int(th[k], like_);
      if (ctx_->J >= 1) {
        std::vector<long> pw(r, 0);
        pw[0] = 1;
        for (std::uint64_t i = 0; i < ctx_->p; ++i) pw = detail::fq_mul(pw, th, ctx_->g, P);
        for (int k = 0; k < r; ++k) e[r + k] = CoeffTraits<C>::from_int(pw[k], like_);
      }
      omega_.push_back(std::move(e));
    }
  }

  const SeriesContext& context() const { return *ctx_; }
  std::shared_ptr<const SeriesContext> context_ptr() const { return ctx_; }
  const C& like() const { return like_; }
  std::uint64_t modulus() const { return CoeffTraits<C>::modulus(like_); }
  int block() const { return ctx_->r; }
  int terms() const { return ctx_->J + 1; }

  void validate(const RootSystem& rs) const {
    if (static_cast<int>(ctx_->theta.size()) != rs.rank()) throw ConfigError("series frame rank differs from the root system rank");
    const long P = static_cast<long>(ctx_->p);
    for (const auto& a : rs.positive_roots()) {
      bool nz = false;
      for (int k = 0; k < ctx_->r; ++k) {
        long v = 0;
        for (int i = 0; i < rs.rank(); ++i) v += a[i] * ctx_->theta[i][k];
        if (v % P) nz = true;
      }
      if (!nz) throw ConfigError("series frame sends a root to zero modulo " + std::to_string(ctx_->p));
    }
  }

  Elem zero() const { return Elem(static_cast<std::size_t>(ctx_->r * terms()), CoeffTraits<C>::zero(like_)); }
  Elem one() const { return scalar(CoeffTraits<C>::one(like_)); }
  Elem scalar(const C& c) const {
    Elem e = zero();
    e[0] = c;
    return e;
  }
  Elem linear(const Weight& w) const {
    Elem e = zero();
    for (int i = 0; i < static_cast<int>(omega_.size()); ++i)
      if (w[i]) add_to(e, scale(omega_[i], CoeffTraits<C>::from_int(w[i], like_)));
    return e;
  }
  static bool is_zero(const Elem& a) {
    for (const auto& c : a)
      if (!CoeffTraits<C>::is_zero(c)) return false;
    return true;
  }

  Elem mul(const Elem& a, const Elem& b) const {
    const int r = ctx_->r, T = terms();
    Elem out = zero();
    std::vector<C> acc(2 * r - 1, CoeffTraits<C>::zero(like_));
    for (int j = 0; j < T; ++j) {
      bool any = false;
      for (auto& x : acc) x = CoeffTraits<C>::zero(like_);
      for (int j1 = 0; j1 <= j; ++j1) {
        const int j2 = j - j1;
        if (block_zero(a, j1) || block_zero(b, j2)) continue;
        any = true;
        for (int i = 0; i < r; ++i) {
          const C& x = a[j1 * r + i];
          if (CoeffTraits<C>::is_zero(x)) continue;
          for (int k = 0; k < r; ++k) detail::add_mul(acc[i + k], x, b[j2 * r + k]);
        }
      }
      if (!any) continue;
      reduce(acc);
      for (int k = 0; k < r; ++k) out[j * r + k] = acc[k];
    }
    return out;
  }
  static void add_to(Elem& a, const Elem& b) {
    for (std::size_t i = 0; i < a.size(); ++i) a[i] += b[i];
  }
  void sub_mul(Elem& a, const Elem& b, const Elem& c) const {
    Elem m = mul(b, c);
    for (std::size_t i = 0; i < a.size(); ++i) a[i] -= m[i];
  }
  static Elem scale(Elem a, const C& c) {
    for (auto& x : a) x *= c;
    return a;
  }
  static Elem div_scalar(Elem a, const C& c) {
    for (auto& x : a) x = CoeffTraits<C>::divexact(x, c);
    return a;
  }
  Elem pow(const Elem& a, int e) const {
    Elem r = one();
    for (int i = 0; i < e; ++i) r = mul(r, a);
    return r;
  }
  /// Exact division by a product of linear factors.
  Elem div_factors(Elem a, const std::vector<Elem>& factors) const {
    for (const auto& f : factors) {
      const auto& [inv, den] = inverse(f);
      a = div_scalar(mul(a, inv), den);
    }
    return a;
  }
  static std::optional<C> as_scalar(const Elem& a) {
    for (std::size_t i = 1; i < a.size(); ++i)
      if (!CoeffTraits<C>::is_zero(a[i])) return std::nullopt;
    return a[0];
  }
  static bool has_degree(const Elem&, int) { return true; }

  /// Block j (the s^j coefficient) as an element of the ring with J = 0.
  std::vector<C> coefficient(const Elem& a, int j) const {
    return std::vector<C>(a.begin() + j * ctx_->r, a.begin() + (j + 1) * ctx_->r);
  }

  nlohmann::json descriptor() const {
    return {{"ring", "series"}, {"modulus", modulus()}, {"p", ctx_->p}, {"r", ctx_->r},
            {"J", ctx_->J},     {"g", ctx_->g},         {"theta", ctx_->theta}};
  }
  nlohmann::json to_json(const Elem& a) const {
    nlohmann::json j = nlohmann::json::array();
    for (const auto& c : a) j.push_back(CoeffTraits<C>::str(c));
    return j;
  }
  Elem from_json(const nlohmann::json& j) const {
    Elem e = zero();
    if (j.size() != e.size()) throw CacheError("series entry has the wrong length");
    for (std::size_t i = 0; i < e.size(); ++i) e[i] = CoeffTraits<C>::parse(j[i].get<std::string>(), like_);
    return e;
  }
  std::string str(const Elem& a, const std::vector<std::string>& = {}) const { return to_json(a).dump(); }

 private:
  using F = typename FieldOf<C>::F;
  struct Cache {
    std::mutex mu;
    std::map<std::vector<long>, std::pair<Elem, C>> inv;
  };

  bool block_zero(const Elem& a, int j) const {
    for (int k = 0; k < ctx_->r; ++k)
      if (!CoeffTraits<C>::is_zero(a[j * ctx_->r + k])) return false;
    return true;
  }

  template <class X>
  void reduce(std::vector<X>& t) const {
    const int r = ctx_->r;
    for (int d = static_cast<int>(t.size()) - 1; d >= r; --d) {
      if (CoeffTraits<X>::is_zero(t[d])) continue;
      X c = t[d];
      for (int k = 0; k < r; ++k)
        if (ctx_->g[k]) t[d - r + k] -= c * CoeffTraits<X>::from_int(ctx_->g[k], c);
      t[d] = CoeffTraits<X>::zero(c);
    }
  }

  std::vector<F> field_mul(const std::vector<F>& a, const std::vector<F>& b, const F& zero) const {
    const int r = ctx_->r;
    std::vector<F> t(2 * r - 1, zero);
    for (int i = 0; i < r; ++i)
      for (int k = 0; k < r; ++k) t[i + k] += a[i] * b[k];
    reduce(t);
    t.resize(r);
    return t;
  }

  /// (D f^{-1}, D) with D f^{-1} integral; D = 1 over a field.
  const std::pair<Elem, C>& inverse(const Elem& f) const {
    std::vector<long> key;
    key.reserve(f.size());
    for (const auto& c : f) key.push_back(detail::coeff_key(c));
    std::lock_guard<std::mutex> lock(cache_->mu);
    auto it = cache_->inv.find(key);
    if (it != cache_->inv.end()) return it->second;

    const int r = ctx_->r, T = terms();
    const F fz = FieldOf<C>::embed(CoeffTraits<C>::zero(like_), like_);
    const F f1 = FieldOf<C>::embed(CoeffTraits<C>::one(like_), like_);
    std::vector<std::vector<F>> fb(T, std::vector<F>(r, fz));
    for (int j = 0; j < T; ++j)
      for (int k = 0; k < r; ++k) fb[j][k] = FieldOf<C>::embed(f[j * r + k], like_);
    // multiplication-by-theta matrix; column k is theta * y^k
    std::vector<std::vector<F>> m(r, std::vector<F>(r, fz));
    for (int k = 0; k < r; ++k) {
      std::vector<F> yk(r, fz);
      yk[k] = f1;
      auto col = field_mul(fb[0], yk, fz);
      for (int i = 0; i < r; ++i) m[i][k] = col[i];
    }
    auto mi = invert_matrix(m);
    std::vector<std::vector<F>> inv(T, std::vector<F>(r, fz));
    for (int i = 0; i < r; ++i) inv[0][i] = mi[i][0];
    for (int j = 1; j < T; ++j) {
      std::vector<F> acc(r, fz);
      for (int i = 1; i <= j; ++i) {
        auto pr = field_mul(fb[i], inv[j - i], fz);
        for (int k = 0; k < r; ++k) acc[k] += pr[k];
      }
      auto pr = field_mul(inv[0], acc, fz);
      for (int k = 0; k < r; ++k) inv[j][k] = -pr[k];
    }
    std::vector<F> flat;
    for (const auto& b : inv) flat.insert(flat.end(), b.begin(), b.end());
    auto [ints, den] = integral_row<C>(flat, like_);
    return cache_->inv[key] = {Elem(ints.begin(), ints.end()), den};
  }

  std::shared_ptr<const SeriesContext> ctx_;
  C like_{};
  std::vector<Elem> omega_;
  std::shared_ptr<Cache> cache_;
};

}  // namespace gpchow
