#pragma once

// Sparse multivariate polynomials with exact coefficients.
//
// Monomials are packed into a 64-bit word, 8 bits per variable with
// variable 0 in the high byte, so at most 8 variables and total degree at
// most 255. Terms are kept sorted in graded-lex descending order.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "gpchow/coeff.hpp"
#include "gpchow/error.hpp"

namespace gpchow {

using Monomial = std::uint64_t;
inline constexpr int kMaxVars = 8;
inline constexpr int kMaxDegree = 255;

inline int mono_degree(Monomial m) {
  int d = 0;
  while (m) {
    d += static_cast<int>(m & 0xff);
    m >>= 8;
  }
  return d;
}
inline int mono_exp(Monomial m, int var) { return static_cast<int>((m >> (8 * (kMaxVars - 1 - var))) & 0xff); }
inline Monomial mono_var(int var, int e = 1) { return static_cast<Monomial>(e) << (8 * (kMaxVars - 1 - var)); }
inline Monomial make_mono(const std::vector<int>& exps) {
  if (exps.size() > static_cast<std::size_t>(kMaxVars)) throw ConfigError("too many variables");
  Monomial m = 0;
  int total = 0;
  for (std::size_t i = 0; i < exps.size(); ++i) {
    if (exps[i] < 0) throw ConfigError("negative exponent");
    total += exps[i];
    m |= mono_var(static_cast<int>(i), exps[i]);
  }
  if (total > kMaxDegree) throw ConfigError("monomial degree above 255");
  return m;
}
/// a divides b
inline bool mono_divides(Monomial a, Monomial b) {
  for (int v = 0; v < kMaxVars; ++v)
    if (mono_exp(a, v) > mono_exp(b, v)) return false;
  return true;
}

template <class C>
struct Term {
  Monomial mono;
  int degree;
  C coeff;
};

/// true if a comes before b in graded-lex descending order
inline bool term_before(int da, Monomial a, int db, Monomial b) { return da != db ? da > db : a > b; }

template <class C>
class MultiPoly {
 public:
  using Traits = CoeffTraits<C>;

  MultiPoly() = default;
  explicit MultiPoly(int nvars, C like = C()) : nvars_(nvars), like_(Traits::zero(like)) {
    if (nvars < 0 || nvars > kMaxVars) throw ConfigError("polynomials support at most 8 variables");
  }

  static MultiPoly constant(int nvars, const C& c) {
    MultiPoly p(nvars, c);
    if (!Traits::is_zero(c)) p.terms_.push_back({0, 0, c});
    return p;
  }
  static MultiPoly one(int nvars, const C& like = C()) { return constant(nvars, Traits::one(like)); }
  static MultiPoly variable(int nvars, int var, const C& like = C()) {
    MultiPoly p(nvars, like);
    if (var < 0 || var >= nvars) throw ConfigError("variable index out of range");
    p.terms_.push_back({mono_var(var), 1, Traits::one(like)});
    return p;
  }
  /// sum_i coeffs[i] * x_i
  static MultiPoly linear(const std::vector<long>& coeffs, const C& like = C()) {
    MultiPoly p(static_cast<int>(coeffs.size()), like);
    for (std::size_t i = 0; i < coeffs.size(); ++i) {
      C c = Traits::from_int(coeffs[i], like);
      if (!Traits::is_zero(c)) p.terms_.push_back({mono_var(static_cast<int>(i)), 1, c});
    }
    return p;
  }
  static MultiPoly monomial(int nvars, const std::vector<int>& exps, const C& c) {
    MultiPoly p(nvars, c);
    if (static_cast<int>(exps.size()) != nvars) throw ConfigError("exponent vector length differs from variable count");
    if (!Traits::is_zero(c)) {
      Monomial m = make_mono(exps);
      p.terms_.push_back({m, mono_degree(m), c});
    }
    return p;
  }
  /// Builds from unsorted terms, combining duplicates.
  static MultiPoly from_terms(int nvars, std::vector<Term<C>> terms, const C& like = C()) {
    MultiPoly p(nvars, like);
    p.terms_ = std::move(terms);
    p.normalize();
    return p;
  }

  int nvars() const { return nvars_; }
  const std::vector<Term<C>>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  const C& like() const { return like_; }
  C zero_coeff() const { return Traits::zero(like_); }

  int degree() const { return terms_.empty() ? -1 : terms_.front().degree; }
  bool is_homogeneous() const {
    for (const auto& t : terms_)
      if (t.degree != terms_.front().degree) return false;
    return true;
  }
  bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].mono == 0); }
  C constant_term() const {
    if (!terms_.empty() && terms_.back().mono == 0) return terms_.back().coeff;
    return Traits::zero(like_);
  }
  C coeff(const std::vector<int>& exps) const {
    Monomial m = make_mono(exps);
    for (const auto& t : terms_)
      if (t.mono == m) return t.coeff;
    return Traits::zero(like_);
  }

  /// Homogeneous component of the given degree.
  MultiPoly component(int d) const {
    MultiPoly p(nvars_, like_);
    for (const auto& t : terms_)
      if (t.degree == d) p.terms_.push_back(t);
    return p;
  }

  friend bool operator==(const MultiPoly& a, const MultiPoly& b) {
    if (a.terms_.size() != b.terms_.size()) return false;
    for (std::size_t i = 0; i < a.terms_.size(); ++i)
      if (a.terms_[i].mono != b.terms_[i].mono || !(a.terms_[i].coeff == b.terms_[i].coeff)) return false;
    return true;
  }

  MultiPoly operator-() const {
    MultiPoly p = *this;
    for (auto& t : p.terms_) t.coeff = -t.coeff;
    return p;
  }

  friend MultiPoly operator+(const MultiPoly& a, const MultiPoly& b) { return merge(a, b, false); }
  friend MultiPoly operator-(const MultiPoly& a, const MultiPoly& b) { return merge(a, b, true); }
  MultiPoly& operator+=(const MultiPoly& b) { return *this = merge(*this, b, false); }
  MultiPoly& operator-=(const MultiPoly& b) { return *this = merge(*this, b, true); }

  friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
    check_vars(a, b);
    MultiPoly p(std::max(a.nvars_, b.nvars_), pick_like(a, b));
    if (a.is_zero() || b.is_zero()) return p;
    if (a.degree() + b.degree() > kMaxDegree) throw ConfigError("polynomial degree above 255");
    if (b.terms_.size() == 1) return a.times_term(b.terms_[0]);
    if (a.terms_.size() == 1) return b.times_term(a.terms_[0]);
    std::vector<Term<C>> out;
    out.reserve(a.terms_.size() * b.terms_.size());
    for (const auto& x : a.terms_)
      for (const auto& y : b.terms_) out.push_back({x.mono + y.mono, x.degree + y.degree, x.coeff * y.coeff});
    p.terms_ = std::move(out);
    p.normalize();
    return p;
  }
  MultiPoly& operator*=(const MultiPoly& b) { return *this = *this * b; }

  MultiPoly scaled(const C& c) const {
    MultiPoly p(nvars_, like_);
    if (Traits::is_zero(c)) return p;
    p.terms_.reserve(terms_.size());
    for (const auto& t : terms_) {
      C v = t.coeff * c;
      if (!Traits::is_zero(v)) p.terms_.push_back({t.mono, t.degree, v});
    }
    return p;
  }
  /// Divides every coefficient exactly by c.
  MultiPoly divided_by_scalar(const C& c) const {
    MultiPoly p = *this;
    for (auto& t : p.terms_) t.coeff = Traits::divexact(t.coeff, c);
    return p;
  }

  MultiPoly pow(int e) const {
    if (e < 0) throw ConfigError("negative power");
    MultiPoly r = one(nvars_, like_);
    MultiPoly b = *this;
    while (e) {
      if (e & 1) r *= b;
      e >>= 1;
      if (e) b *= b;
    }
    return r;
  }

  /// Quotient q with *this = q * g; throws InconsistencyError otherwise.
  MultiPoly divexact(const MultiPoly& g) const {
    auto q = try_divexact(g);
    if (!q) throw InconsistencyError("inexact polynomial division");
    return std::move(*q);
  }
  bool divisible_by(const MultiPoly& g) const { return try_divexact(g).has_value(); }

  std::optional<MultiPoly> try_divexact(const MultiPoly& g) const {
    if (g.is_zero()) throw InconsistencyError("exact division by the zero polynomial");
    check_vars(*this, g);
    MultiPoly q(std::max(nvars_, g.nvars_), pick_like(*this, g));
    if (is_zero()) return q;
    if (g.terms_.size() == 1) {
      const auto& lt = g.terms_[0];
      MultiPoly out(q.nvars_, q.like_);
      out.terms_.reserve(terms_.size());
      for (const auto& t : terms_) {
        if (!mono_divides(lt.mono, t.mono) || !Traits::divides(lt.coeff, t.coeff)) return std::nullopt;
        out.terms_.push_back({t.mono - lt.mono, t.degree - lt.degree, Traits::divexact(t.coeff, lt.coeff)});
      }
      return out;
    }
    MultiPoly r = *this;
    const auto& lg = g.terms_.front();
    std::vector<Term<C>> qt;
    while (!r.is_zero()) {
      const auto& lr = r.terms_.front();
      if (!mono_divides(lg.mono, lr.mono) || !Traits::divides(lg.coeff, lr.coeff)) return std::nullopt;
      Term<C> t{lr.mono - lg.mono, lr.degree - lg.degree, Traits::divexact(lr.coeff, lg.coeff)};
      qt.push_back(t);
      r = merge(r, g.times_term(t), true);
    }
    q.terms_ = std::move(qt);
    q.normalize();
    return q;
  }

  /// Replaces x_i by images[i] (all images share a variable count).
  MultiPoly substitute(const std::vector<MultiPoly>& images) const {
    if (static_cast<int>(images.size()) != nvars_) throw ConfigError("substitution needs one image per variable");
    int nv = images.empty() ? 0 : images[0].nvars();
    MultiPoly out(nv, like_);
    if (is_zero()) return out;
    std::vector<std::vector<MultiPoly>> powers(nvars_);
    for (int v = 0; v < nvars_; ++v) powers[v].push_back(MultiPoly::one(nv, like_for_one()));
    auto power = [&](int v, int e) -> const MultiPoly& {
      while (static_cast<int>(powers[v].size()) <= e) powers[v].push_back(powers[v].back() * images[v]);
      return powers[v][e];
    };
    for (const auto& t : terms_) {
      MultiPoly m = MultiPoly::constant(nv, t.coeff);
      for (int v = 0; v < nvars_; ++v) {
        int e = mono_exp(t.mono, v);
        if (e) m *= power(v, e);
      }
      out += m;
    }
    return out;
  }

  /// Applies f to every coefficient, producing a polynomial over D.
  template <class D, class F>
  MultiPoly<D> map_coeffs(F f, const D& like = D()) const {
    std::vector<Term<D>> out;
    out.reserve(terms_.size());
    for (const auto& t : terms_) {
      D c = f(t.coeff);
      if (!CoeffTraits<D>::is_zero(c)) out.push_back({t.mono, t.degree, c});
    }
    return MultiPoly<D>::from_sorted(nvars_, std::move(out), like);
  }

  /// Terms already sorted and nonzero.
  static MultiPoly from_sorted(int nvars, std::vector<Term<C>> terms, const C& like = C()) {
    MultiPoly p(nvars, like);
    p.terms_ = std::move(terms);
    return p;
  }

  /// Same polynomial viewed in more variables (new variables appended).
  MultiPoly extended(int nvars) const {
    if (nvars < nvars_) throw ConfigError("cannot drop variables");
    MultiPoly p = *this;
    p.nvars_ = nvars;
    return p;
  }

  std::string to_string(const std::vector<std::string>& names = {}) const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& t : terms_) {
      std::string c = Traits::str(t.coeff);
      bool neg = !c.empty() && c[0] == '-';
      if (neg) c = c.substr(1);
      if (first)
        os << (neg ? "-" : "");
      else
        os << (neg ? " - " : " + ");
      std::string m;
      for (int v = 0; v < nvars_; ++v) {
        int e = mono_exp(t.mono, v);
        if (!e) continue;
        if (!m.empty()) m += "*";
        m += v < static_cast<int>(names.size()) ? names[v] : "x" + std::to_string(v + 1);
        if (e > 1) m += "^" + std::to_string(e);
      }
      if (m.empty())
        os << c;
      else if (c == "1")
        os << m;
      else
        os << c << "*" << m;
      first = false;
    }
    return os.str();
  }

  nlohmann::json to_json() const {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& t : terms_) {
      std::vector<int> e(nvars_);
      for (int v = 0; v < nvars_; ++v) e[v] = mono_exp(t.mono, v);
      arr.push_back({{"exponents", e}, {"coefficient", Traits::str(t.coeff)}});
    }
    return arr;
  }
  static MultiPoly from_json(const nlohmann::json& j, int nvars, const C& like = C()) {
    std::vector<Term<C>> terms;
    for (const auto& t : j) {
      auto e = t.at("exponents").get<std::vector<int>>();
      if (static_cast<int>(e.size()) != nvars) throw CacheError("polynomial has wrong variable count");
      Monomial m = make_mono(e);
      terms.push_back({m, mono_degree(m), Traits::parse(t.at("coefficient").get<std::string>(), like)});
    }
    return from_terms(nvars, std::move(terms), like);
  }

  friend std::ostream& operator<<(std::ostream& os, const MultiPoly& p) { return os << p.to_string(); }

 private:
  C like_for_one() const { return like_; }

  static C pick_like(const MultiPoly& a, const MultiPoly& b) {
    if (Traits::modulus(a.like_) != 0) return a.like_;
    return b.like_;
  }
  static void check_vars(const MultiPoly& a, const MultiPoly& b) {
    if (a.nvars_ != b.nvars_) throw ConfigError("polynomials have different variable counts");
  }

  MultiPoly times_term(const Term<C>& s) const {
    MultiPoly p(nvars_, like_);
    p.terms_.reserve(terms_.size());
    for (const auto& t : terms_) {
      C v = t.coeff * s.coeff;
      if (!Traits::is_zero(v)) p.terms_.push_back({t.mono + s.mono, t.degree + s.degree, v});
    }
    return p;
  }

  static MultiPoly merge(const MultiPoly& a, const MultiPoly& b, bool subtract) {
    check_vars(a, b);
    MultiPoly p(a.nvars_, pick_like(a, b));
    p.terms_.reserve(a.terms_.size() + b.terms_.size());
    std::size_t i = 0, j = 0;
    while (i < a.terms_.size() || j < b.terms_.size()) {
      if (j == b.terms_.size() ||
          (i < a.terms_.size() && term_before(a.terms_[i].degree, a.terms_[i].mono, b.terms_[j].degree, b.terms_[j].mono))) {
        p.terms_.push_back(a.terms_[i++]);
      } else if (i == a.terms_.size() || a.terms_[i].mono != b.terms_[j].mono) {
        const auto& t = b.terms_[j++];
        p.terms_.push_back({t.mono, t.degree, subtract ? C(-t.coeff) : t.coeff});
      } else {
        C v = subtract ? C(a.terms_[i].coeff - b.terms_[j].coeff) : C(a.terms_[i].coeff + b.terms_[j].coeff);
        if (!Traits::is_zero(v)) p.terms_.push_back({a.terms_[i].mono, a.terms_[i].degree, v});
        ++i;
        ++j;
      }
    }
    return p;
  }

  void normalize() {
    std::sort(terms_.begin(), terms_.end(),
              [](const Term<C>& a, const Term<C>& b) { return term_before(a.degree, a.mono, b.degree, b.mono); });
    std::vector<Term<C>> out;
    out.reserve(terms_.size());
    for (auto& t : terms_) {
      if (t.degree > kMaxDegree) throw ConfigError("polynomial degree above 255");
      if (!out.empty() && out.back().mono == t.mono)
        out.back().coeff = out.back().coeff + t.coeff;
      else
        out.push_back(std::move(t));
      if (out.size() >= 2 && Traits::is_zero(out[out.size() - 2].coeff)) {
        out[out.size() - 2] = std::move(out.back());
        out.pop_back();
      }
    }
    if (!out.empty() && Traits::is_zero(out.back().coeff)) out.pop_back();
    terms_ = std::move(out);
  }

  int nvars_ = 0;
  std::vector<Term<C>> terms_;
  C like_{};
};

using IntPoly = MultiPoly<BigInt>;
using RatPoly = MultiPoly<Rational>;
using ModPoly = MultiPoly<Fp>;

inline ModPoly reduce_mod(const IntPoly& f, std::uint64_t p) {
  Fp like(0, p);
  return f.map_coeffs<Fp>([p](const BigInt& c) { return Fp::from_big(c, p); }, like);
}

inline RatPoly to_rational(const IntPoly& f) {
  return f.map_coeffs<Rational>([](const BigInt& c) { return Rational(c); });
}

/// Integer polynomial if every coefficient is integral.
inline std::optional<IntPoly> to_integer(const RatPoly& f) {
  for (const auto& t : f.terms())
    if (t.coeff.get_den() != 1) return std::nullopt;
  return f.map_coeffs<BigInt>([](const Rational& c) { return BigInt(c.get_num()); });
}

/// Binomial coefficient C(n, k) mod p by Lucas' theorem.
inline std::uint64_t lucas_binomial(std::uint64_t n, std::uint64_t k, std::uint64_t p) {
  std::uint64_t r = 1;
  while (n || k) {
    std::uint64_t a = n % p, b = k % p;
    if (b > a) return 0;
    // C(a, b) mod p for a, b < p
    std::uint64_t num = 1, den = 1;
    for (std::uint64_t i = 0; i < b; ++i) {
      num = static_cast<std::uint64_t>(static_cast<unsigned __int128>(num) * ((a - i) % p) % p);
      den = static_cast<std::uint64_t>(static_cast<unsigned __int128>(den) * ((i + 1) % p) % p);
    }
    r = static_cast<std::uint64_t>(static_cast<unsigned __int128>(r) * (Fp(static_cast<std::int64_t>(num), p) / Fp(static_cast<std::int64_t>(den), p)).v % p);
    n /= p;
    k /= p;
  }
  return r;
}

/// Coefficient of t^j in f(x_i + t x_i^p): for each monomial prod x_i^{e_i},
/// sum over j_1 + ... + j_n = j of prod C(e_i, j_i) x_i^{e_i + j_i (p-1)}.
inline ModPoly steenrod_component(std::uint64_t p, int j, const ModPoly& f) {
  if (j < 0) throw ConfigError("negative Steenrod degree");
  for (const auto& t : f.terms())
    if (t.coeff.p != p) throw ConfigError("Steenrod operation needs coefficients in F_" + std::to_string(p));
  const int n = f.nvars();
  Fp like(0, p);
  std::vector<Term<Fp>> out;
  for (const auto& t : f.terms()) {
    std::vector<int> e(n);
    for (int v = 0; v < n; ++v) e[v] = mono_exp(t.mono, v);
    std::vector<int> pick(n, 0);
    std::function<void(int, int, Fp)> rec = [&](int v, int left, Fp c) {
      if (v == n) {
        if (left) return;
        std::vector<int> ex(n);
        for (int i = 0; i < n; ++i) ex[i] = e[i] + pick[i] * static_cast<int>(p - 1);
        Monomial m = make_mono(ex);
        out.push_back({m, mono_degree(m), c});
        return;
      }
      for (int a = 0; a <= std::min(left, e[v]); ++a) {
        std::uint64_t b = lucas_binomial(e[v], a, p);
        if (!b) continue;
        pick[v] = a;
        rec(v + 1, left - a, c * Fp(static_cast<std::int64_t>(b), p));
      }
      pick[v] = 0;
    };
    rec(0, j, t.coeff);
  }
  return ModPoly::from_terms(n, std::move(out), like);
}

/// f with x_i replaced by x_i + t x_i^p, t being a new last variable.
inline ModPoly total_steenrod_vars(std::uint64_t p, const ModPoly& f) {
  if (!is_prime(p)) throw ConfigError("Steenrod operations need a prime");
  for (const auto& t : f.terms())
    if (t.coeff.p != p) throw ConfigError("Steenrod operation needs coefficients in F_" + std::to_string(p));
  const int n = f.nvars();
  if (n + 1 > kMaxVars) throw ConfigError("no room for the extra variable t");
  Fp like(0, p);
  ModPoly out(n + 1, like);
  int top = 0;
  for (const auto& t : f.terms()) top = std::max(top, t.degree);
  for (int j = 0; j <= top; ++j) {
    ModPoly c = steenrod_component(p, j, f).extended(n + 1);
    if (c.is_zero()) continue;
    std::vector<int> e(n + 1, 0);
    e[n] = j;
    out += c * ModPoly::monomial(n + 1, e, Fp(1, p));
  }
  return out;
}

}  // namespace gpchow
