#pragma once

// Frames: a linear map phi from the weight lattice to Z^k. Restriction
// polynomials in omega_1..omega_n are stored after applying phi, i.e. as
// polynomials in k frame variables. phi = identity keeps everything exact in
// the omega variables; a frame with k < n is a ring homomorphism that keeps
// every computation of the elimination procedure valid as long as no root is
// sent to zero (the diagonal entries stay nonzero).
//
// Two entry rings implement the operations the elimination needs:
//   PolyRing<C>   entries are MultiPoly<C> in k variables;
//   ScalarRing<C> k == 1 and entries of degree d are c * x^d, stored as c.

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "gpchow/coeff.hpp"
#include "gpchow/error.hpp"
#include "gpchow/poly.hpp"
#include "gpchow/rootsys.hpp"
#include "gpchow/weyl.hpp"

namespace gpchow {

class Frame {
 public:
  Frame() = default;
  Frame(int n, int k, std::vector<long> m) : n_(n), k_(k), m_(std::move(m)) {
    if (static_cast<int>(m_.size()) != n_ * k_) throw ConfigError("frame matrix has wrong size");
    if (k_ < 1 || k_ > kMaxVars) throw ConfigError("frame needs 1..8 variables");
  }

  static Frame identity(int n) {
    std::vector<long> m(n * n, 0);
    for (int i = 0; i < n; ++i) m[i * n + i] = 1;
    return Frame(n, n, std::move(m));
  }

  /// Smallest k admitting a map with no root in its kernel modulo
  /// `modulus` (0 means over Z), found by a seeded random search. Entries
  /// are small so that integer growth stays moderate.
  static Frame generic(const RootSystem& rs, std::uint64_t modulus = 0, std::uint64_t seed = 20240611) {
    const int n = rs.rank();
    std::mt19937_64 rng(seed);
    for (int k = 1; k <= std::min(n, kMaxVars); ++k) {
      for (int attempt = 0; attempt < 4000; ++attempt) {
        long bound = modulus ? static_cast<long>(modulus) : 3 + attempt / 200;
        std::uniform_int_distribution<long> dist(modulus ? 0 : -bound, bound - (modulus ? 1 : 0));
        std::vector<long> m(k * n);
        for (auto& x : m) x = dist(rng);
        Frame f(n, k, m);
        if (f.kills_no_root(rs, modulus)) return f;
      }
    }
    return identity(n);
  }

  int rank() const { return n_; }
  int vars() const { return k_; }
  const std::vector<long>& matrix() const { return m_; }
  bool is_identity() const { return k_ == n_ && *this == identity(n_); }

  /// phi(lambda) as coefficients of the k frame variables.
  std::vector<long> image(const Weight& w) const {
    std::vector<long> out(k_, 0);
    for (int r = 0; r < k_; ++r)
      for (int i = 0; i < n_; ++i) out[r] += m_[r * n_ + i] * w[i];
    return out;
  }

  bool kills_no_root(const RootSystem& rs, std::uint64_t modulus) const {
    for (const auto& a : rs.positive_roots()) {
      auto v = image(a);
      bool nonzero = false;
      for (long x : v) {
        long r = modulus ? ((x % static_cast<long>(modulus)) + static_cast<long>(modulus)) % static_cast<long>(modulus) : x;
        if (r != 0) nonzero = true;
      }
      if (!nonzero) return false;
    }
    return true;
  }

  friend bool operator==(const Frame&, const Frame&) = default;

  nlohmann::json to_json() const { return {{"rank", n_}, {"vars", k_}, {"matrix", m_}}; }
  static Frame from_json(const nlohmann::json& j) {
    return Frame(j.at("rank").get<int>(), j.at("vars").get<int>(), j.at("matrix").get<std::vector<long>>());
  }

 private:
  int n_ = 0;
  int k_ = 0;
  std::vector<long> m_;
};

/// Scalar field used to solve the linear systems over a coefficient ring.
template <class C>
struct FieldOf;
template <>
struct FieldOf<BigInt> {
  using F = Rational;
  static F embed(const BigInt& c, const BigInt&) { return F(c); }
};
template <>
struct FieldOf<Fp> {
  using F = Fp;
  static F embed(const Fp& c, const Fp&) { return c; }
};

/// Entries are polynomials in the frame variables.
template <class C>
class PolyRing {
 public:
  using Coeff = C;
  using Elem = MultiPoly<C>;
  static constexpr bool kPolynomial = true;

  PolyRing() = default;
  PolyRing(Frame frame, C like = C()) : frame_(std::move(frame)), like_(CoeffTraits<C>::zero(like)) {}

  const Frame& frame() const { return frame_; }
  const C& like() const { return like_; }
  void validate(const RootSystem& rs) const {
    if (frame_.rank() != rs.rank()) throw ConfigError("frame rank differs from the root system rank");
    if (!frame_.kills_no_root(rs, modulus())) throw ConfigError("frame sends a root to zero in the coefficient domain");
  }
  std::uint64_t modulus() const { return CoeffTraits<C>::modulus(like_); }

  Elem zero() const { return Elem(frame_.vars(), like_); }
  Elem one() const { return Elem::one(frame_.vars(), like_); }
  Elem scalar(const C& c) const { return Elem::constant(frame_.vars(), c); }
  Elem linear(const Weight& w) const { return Elem::linear(frame_.image(w), like_); }
  static bool is_zero(const Elem& a) { return a.is_zero(); }
  static Elem mul(const Elem& a, const Elem& b) { return a * b; }
  static void add_to(Elem& a, const Elem& b) { a += b; }
  static void sub_mul(Elem& a, const Elem& b, const Elem& c) { a -= b * c; }
  static Elem scale(const Elem& a, const C& c) { return a.scaled(c); }
  static Elem div_scalar(const Elem& a, const C& c) { return a.divided_by_scalar(c); }
  static Elem pow(const Elem& a, int e) { return a.pow(e); }
  /// Exact division by a product of linear factors.
  static Elem div_factors(Elem a, const std::vector<Elem>& factors) {
    for (const auto& f : factors) a = a.divexact(f);
    return a;
  }
  static std::optional<C> as_scalar(const Elem& a) {
    if (a.is_zero()) return CoeffTraits<C>::zero(a.like());
    if (!a.is_constant()) return std::nullopt;
    return a.constant_term();
  }
  C coeff_zero() const { return CoeffTraits<C>::zero(like_); }
  /// Homogeneous of degree d (zero counts).
  static bool has_degree(const Elem& a, int d) { return a.is_zero() || (a.is_homogeneous() && a.degree() == d); }

  nlohmann::json descriptor() const { return {{"ring", "poly"}, {"modulus", modulus()}, {"frame", frame_.to_json()}}; }
  nlohmann::json to_json(const Elem& a) const { return a.to_json(); }
  Elem from_json(const nlohmann::json& j) const { return Elem::from_json(j, frame_.vars(), like_); }
  std::string str(const Elem& a, const std::vector<std::string>& names = {}) const { return a.to_string(names); }

 private:
  Frame frame_;
  C like_{};
};

/// One frame variable x; an entry of degree d is c * x^d and stored as c.
/// Degrees are implicit, so every operation is a coefficient operation.
template <class C>
class ScalarRing {
 public:
  using Coeff = C;
  using Elem = C;
  static constexpr bool kPolynomial = false;

  ScalarRing() = default;
  ScalarRing(Frame frame, C like = C()) : frame_(std::move(frame)), like_(CoeffTraits<C>::zero(like)) {
    if (frame_.vars() != 1) throw ConfigError("scalar entries need a one-variable frame");
  }

  const Frame& frame() const { return frame_; }
  const C& like() const { return like_; }
  void validate(const RootSystem& rs) const {
    if (frame_.rank() != rs.rank()) throw ConfigError("frame rank differs from the root system rank");
    if (!frame_.kills_no_root(rs, modulus())) throw ConfigError("frame sends a root to zero in the coefficient domain");
  }
  std::uint64_t modulus() const { return CoeffTraits<C>::modulus(like_); }

  Elem zero() const { return CoeffTraits<C>::zero(like_); }
  Elem one() const { return CoeffTraits<C>::one(like_); }
  Elem scalar(const C& c) const { return c; }
  Elem linear(const Weight& w) const { return CoeffTraits<C>::from_int(frame_.image(w)[0], like_); }
  static bool is_zero(const Elem& a) { return CoeffTraits<C>::is_zero(a); }
  static Elem mul(const Elem& a, const Elem& b) { return a * b; }
  static void add_to(Elem& a, const Elem& b) { a += b; }
  static void sub_mul(Elem& a, const Elem& b, const Elem& c);
  static Elem scale(const Elem& a, const C& c) { return a * c; }
  static Elem div_scalar(const Elem& a, const C& c) { return CoeffTraits<C>::divexact(a, c); }
  static Elem pow(const Elem& a, int e) {
    Elem r = CoeffTraits<C>::one(a);
    for (int i = 0; i < e; ++i) r *= a;
    return r;
  }
  static Elem div_factors(const Elem& a, const std::vector<Elem>& factors) {
    Elem d = CoeffTraits<C>::one(a);
    for (const auto& f : factors) d *= f;
    return CoeffTraits<C>::divexact(a, d);
  }
  static std::optional<C> as_scalar(const Elem& a) { return a; }
  C coeff_zero() const { return CoeffTraits<C>::zero(like_); }
  static bool has_degree(const Elem&, int) { return true; }

  nlohmann::json descriptor() const { return {{"ring", "scalar"}, {"modulus", modulus()}, {"frame", frame_.to_json()}}; }
  nlohmann::json to_json(const Elem& a) const { return CoeffTraits<C>::str(a); }
  Elem from_json(const nlohmann::json& j) const { return CoeffTraits<C>::parse(j.get<std::string>(), like_); }
  std::string str(const Elem& a, const std::vector<std::string>& = {}) const { return CoeffTraits<C>::str(a); }

 private:
  Frame frame_;
  C like_{};
};

template <>
inline void ScalarRing<BigInt>::sub_mul(BigInt& a, const BigInt& b, const BigInt& c) {
  mpz_submul(a.get_mpz_t(), b.get_mpz_t(), c.get_mpz_t());
}
template <>
inline void ScalarRing<Fp>::sub_mul(Fp& a, const Fp& b, const Fp& c) {
  a -= b * c;
}

/// Replaces each omega_i in f by w(omega_i).
template <class C>
MultiPoly<C> weyl_substitute(const WeylElement& w, const MultiPoly<C>& f) {
  if (f.nvars() != w.rank()) throw ConfigError("polynomial variable count differs from the rank");
  std::vector<MultiPoly<C>> images;
  for (int i = 1; i <= w.rank(); ++i) {
    Weight im = w.apply(w.root_system().fundamental_weight(i));
    images.push_back(MultiPoly<C>::linear(std::vector<long>(im.coords().begin(), im.coords().end()), f.like()));
  }
  return f.substitute(images);
}

/// The weight as a linear polynomial in omega_1..omega_n.
template <class C = BigInt>
MultiPoly<C> weight_poly(const Weight& w, const C& like = C()) {
  return MultiPoly<C>::linear(std::vector<long>(w.coords().begin(), w.coords().end()), like);
}

inline std::vector<std::string> omega_names(int n) {
  std::vector<std::string> v;
  for (int i = 1; i <= n; ++i) v.push_back("w" + std::to_string(i));
  return v;
}

}  // namespace gpchow
