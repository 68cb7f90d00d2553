#pragma once

// Coefficient domains: arbitrary-precision integers and rationals (GMP) and
// prime fields F_p with p < 2^62.

#include <gmpxx.h>

#include <cstdint>
#include <string>

#include "gpchow/error.hpp"

namespace gpchow {

using BigInt = mpz_class;
using Rational = mpq_class;

/// Element of F_p. The modulus travels with the value; p == 0 is allowed
/// only for a default-constructed zero whose field is not yet known.
struct Fp {
  std::uint64_t v = 0;
  std::uint64_t p = 0;

  Fp() = default;
  Fp(std::int64_t value, std::uint64_t prime) : p(prime) {
    if (prime < 2) throw ConfigError("prime field needs p >= 2");
    std::int64_t r = value % static_cast<std::int64_t>(prime);
    if (r < 0) r += static_cast<std::int64_t>(prime);
    v = static_cast<std::uint64_t>(r);
  }
  static Fp from_big(const BigInt& x, std::uint64_t prime) {
    BigInt r = x % BigInt(std::to_string(prime));
    if (r < 0) r += BigInt(std::to_string(prime));
    Fp out;
    out.p = prime;
    out.v = std::stoull(r.get_str());
    return out;
  }

  bool is_zero() const { return v == 0; }

  friend bool operator==(const Fp& a, const Fp& b) { return a.v == b.v && (a.p == b.p || a.v == 0); }

  static std::uint64_t join(const Fp& a, const Fp& b) {
    if (a.p == b.p) return a.p;
    if (a.p == 0) return b.p;
    if (b.p == 0) return a.p;
    throw ConfigError("mixing different prime fields");
  }
  friend Fp operator+(const Fp& a, const Fp& b) {
    Fp r;
    r.p = join(a, b);
    if (r.p == 0) return r;
    std::uint64_t s = a.v + b.v;
    r.v = s >= r.p ? s - r.p : s;
    return r;
  }
  friend Fp operator-(const Fp& a, const Fp& b) {
    Fp r;
    r.p = join(a, b);
    if (r.p == 0) return r;
    r.v = a.v >= b.v ? a.v - b.v : a.v + r.p - b.v;
    return r;
  }
  friend Fp operator-(const Fp& a) {
    Fp r = a;
    if (r.v) r.v = r.p - r.v;
    return r;
  }
  friend Fp operator*(const Fp& a, const Fp& b) {
    Fp r;
    r.p = join(a, b);
    if (r.p == 0) return r;
    r.v = static_cast<std::uint64_t>(static_cast<unsigned __int128>(a.v) * b.v % r.p);
    return r;
  }
  Fp& operator+=(const Fp& o) { return *this = *this + o; }
  Fp& operator-=(const Fp& o) { return *this = *this - o; }
  Fp& operator*=(const Fp& o) { return *this = *this * o; }

  Fp pow(std::uint64_t e) const {
    Fp base = *this, r(1, p);
    while (e) {
      if (e & 1) r *= base;
      base *= base;
      e >>= 1;
    }
    return r;
  }
  Fp inverse() const {
    if (v == 0) throw InconsistencyError("inverting zero in F_" + std::to_string(p));
    return pow(p - 2);
  }
  friend Fp operator/(const Fp& a, const Fp& b) { return a * b.inverse(); }

  /// Representative in (-p/2, p/2].
  std::int64_t centered() const {
    if (v > p / 2) return -static_cast<std::int64_t>(p - v);
    return static_cast<std::int64_t>(v);
  }
};

/// Uniform interface over the coefficient types used by MultiPoly.
template <class C>
struct CoeffTraits;

template <>
struct CoeffTraits<BigInt> {
  static constexpr const char* name = "integers";
  static BigInt zero(const BigInt&) { return 0; }
  static BigInt one(const BigInt&) { return 1; }
  static BigInt from_int(long v, const BigInt&) { return BigInt(v); }
  static bool is_zero(const BigInt& a) { return sgn(a) == 0; }
  static BigInt divexact(const BigInt& a, const BigInt& b) {
    if (sgn(b) == 0) throw InconsistencyError("division by zero");
    if (!mpz_divisible_p(a.get_mpz_t(), b.get_mpz_t())) throw InconsistencyError("inexact integer division");
    BigInt q;
    mpz_divexact(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return q;
  }
  static bool divides(const BigInt& b, const BigInt& a) { return mpz_divisible_p(a.get_mpz_t(), b.get_mpz_t()) != 0; }
  static std::string str(const BigInt& a) { return a.get_str(); }
  static BigInt parse(const std::string& s, const BigInt&) { return BigInt(s); }
  static std::uint64_t modulus(const BigInt&) { return 0; }
};

template <>
struct CoeffTraits<Rational> {
  static constexpr const char* name = "rationals";
  static Rational zero(const Rational&) { return 0; }
  static Rational one(const Rational&) { return 1; }
  static Rational from_int(long v, const Rational&) { return Rational(v); }
  static bool is_zero(const Rational& a) { return sgn(a) == 0; }
  static Rational divexact(const Rational& a, const Rational& b) {
    if (sgn(b) == 0) throw InconsistencyError("division by zero");
    Rational q = a / b;
    q.canonicalize();
    return q;
  }
  static bool divides(const Rational& b, const Rational&) { return sgn(b) != 0; }
  static std::string str(const Rational& a) { return a.get_str(); }
  static Rational parse(const std::string& s, const Rational&) {
    Rational r(s);
    r.canonicalize();
    return r;
  }
  static std::uint64_t modulus(const Rational&) { return 0; }
};

template <>
struct CoeffTraits<Fp> {
  static constexpr const char* name = "prime field";
  static Fp zero(const Fp& like) {
    Fp z;
    z.p = like.p;
    return z;
  }
  static Fp one(const Fp& like) { return Fp(1, like.p); }
  static Fp from_int(long v, const Fp& like) { return Fp(v, like.p); }
  static bool is_zero(const Fp& a) { return a.v == 0; }
  static Fp divexact(const Fp& a, const Fp& b) { return a / b; }
  static bool divides(const Fp& b, const Fp&) { return b.v != 0; }
  static std::string str(const Fp& a) { return std::to_string(a.v); }
  static Fp parse(const std::string& s, const Fp& like) { return Fp::from_big(BigInt(s), like.p); }
  static std::uint64_t modulus(const Fp& a) { return a.p; }
};

inline bool is_prime(std::uint64_t p) {
  if (p < 2) return false;
  BigInt q(std::to_string(p));
  return mpz_probab_prime_p(q.get_mpz_t(), 40) != 0;
}

}  // namespace gpchow
