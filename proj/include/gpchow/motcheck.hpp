#pragma once

// Polynomial bookkeeping for motivic decompositions: Poincare polynomials
// of motives, exact quotients with non-negative coefficients, and the E6
// mod 3 tables.

#include <cstdint>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "gpchow/error.hpp"
#include "gpchow/rootsys.hpp"

namespace gpchow {

/// Integer polynomial in t, coefficient of t^i at index i, no trailing zeros.
class UPoly {
 public:
  UPoly() = default;
  UPoly(std::vector<long long> c) : c_(std::move(c)) { trim(); }
  static UPoly monomial(int e, long long c = 1) {
    std::vector<long long> v(e + 1, 0);
    v[e] = c;
    return UPoly(v);
  }
  static UPoly one() { return monomial(0); }
  /// sum of t^i over the listed indices (with multiplicity)
  static UPoly from_indices(const std::vector<int>& idx) {
    UPoly p;
    for (int i : idx) p += monomial(i);
    return p;
  }
  /// t^a - 1
  static UPoly tpow_minus_one(int a) { return monomial(a) - one(); }

  const std::vector<long long>& coeffs() const { return c_; }
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  long long operator[](int i) const { return i >= 0 && i < static_cast<int>(c_.size()) ? c_[i] : 0; }
  long long at_one() const {
    long long s = 0;
    for (auto x : c_) s += x;
    return s;
  }
  bool nonnegative() const {
    for (auto x : c_)
      if (x < 0) return false;
    return true;
  }
  int term_count() const {
    int n = 0;
    for (auto x : c_)
      if (x) ++n;
    return n;
  }
  bool palindromic() const {
    for (std::size_t i = 0; i < c_.size(); ++i)
      if (c_[i] != c_[c_.size() - 1 - i]) return false;
    return true;
  }

  UPoly& operator+=(const UPoly& o) {
    if (c_.size() < o.c_.size()) c_.resize(o.c_.size(), 0);
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
    trim();
    return *this;
  }
  UPoly& operator-=(const UPoly& o) {
    if (c_.size() < o.c_.size()) c_.resize(o.c_.size(), 0);
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
    trim();
    return *this;
  }
  friend UPoly operator+(UPoly a, const UPoly& b) { return a += b; }
  friend UPoly operator-(UPoly a, const UPoly& b) { return a -= b; }
  friend UPoly operator*(const UPoly& a, const UPoly& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<long long> c(a.c_.size() + b.c_.size() - 1, 0);
    for (std::size_t i = 0; i < a.c_.size(); ++i)
      if (a.c_[i])
        for (std::size_t j = 0; j < b.c_.size(); ++j) c[i + j] += a.c_[i] * b.c_[j];
    return UPoly(c);
  }
  friend bool operator==(const UPoly&, const UPoly&) = default;

  /// Quotient and remainder by a polynomial with leading coefficient +-1.
  std::pair<UPoly, UPoly> divmod(const UPoly& d) const {
    if (d.is_zero()) throw ConfigError("division by the zero polynomial");
    const long long lead = d.c_.back();
    if (lead != 1 && lead != -1) throw ConfigError("divisor must have leading coefficient 1 or -1");
    std::vector<long long> r = c_;
    std::vector<long long> q(c_.size() >= d.c_.size() ? c_.size() - d.c_.size() + 1 : 0, 0);
    for (int k = static_cast<int>(r.size()) - 1; k >= d.degree(); --k) {
      long long f = r[k] * lead;
      if (!f) continue;
      q[k - d.degree()] = f;
      for (int i = 0; i <= d.degree(); ++i) r[k - d.degree() + i] -= f * d.c_[i];
    }
    return {UPoly(q), UPoly(r)};
  }
  std::optional<UPoly> divexact(const UPoly& d) const {
    auto [q, r] = divmod(d);
    if (!r.is_zero()) return std::nullopt;
    return q;
  }

  std::string to_string() const {
    if (c_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (int i = degree(); i >= 0; --i) {
      long long c = c_[i];
      if (!c) continue;
      os << (c < 0 ? (first ? "-" : " - ") : (first ? "" : " + "));
      long long a = c < 0 ? -c : c;
      if (a != 1 || i == 0) os << a;
      if (i > 0) os << (a != 1 ? "*" : "") << "t" << (i > 1 ? "^" + std::to_string(i) : "");
      first = false;
    }
    return os.str();
  }

 private:
  void trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
  }
  std::vector<long long> c_;
};

/// Exact quotient of products of (t^a - 1) factors.
inline UPoly cyclotomic_quotient(const std::vector<int>& num, const std::vector<int>& den) {
  UPoly n = UPoly::one(), d = UPoly::one();
  for (int a : num) n = n * UPoly::tpow_minus_one(a);
  for (int a : den) d = d * UPoly::tpow_minus_one(a);
  auto q = n.divexact(d);
  if (!q) throw InconsistencyError("quotient of (t^a - 1) products is not a polynomial");
  return *q;
}

/// P(G/P_theta, t) from root heights: the product over positive roots whose
/// support meets theta of (1 - t^{ht+1}) / (1 - t^{ht}).
inline UPoly poincare_by_heights(const RootSystem& rs, const IndexSet& theta) {
  std::vector<int> num, den;
  for (std::size_t b = 0; b < rs.positive_roots().size(); ++b) {
    if (!rs.support_meets(b, theta)) continue;
    int ht = 0;
    for (int c : rs.positive_roots_simple_coords()[b]) ht += c;
    num.push_back(ht + 1);
    den.push_back(ht);
  }
  return cyclotomic_quotient(num, den);
}

/// b = (p^n - 1) / (p - 1) for some n >= 1.
inline bool rost_dim_test(std::uint64_t b, std::uint64_t p) {
  if (p < 2) throw ConfigError("p must be at least 2");
  unsigned __int128 s = 0, pw = 1;
  while (s < b) {
    s += pw;
    pw *= p;
  }
  return s == b;
}

struct Check {
  std::string name;
  bool pass = false;
  UPoly residual;
  std::string detail;
};

inline nlohmann::json to_json(const Check& c) {
  return {{"check", c.name}, {"status", c.pass ? "pass" : "fail"}, {"residual", c.residual.to_string()}, {"detail", c.detail}};
}

/// lhs == sum of P(M) Q(M); the residual is lhs minus the sum.
inline Check check_sum_identity(const std::string& name, const UPoly& lhs, const std::vector<std::pair<UPoly, UPoly>>& parts) {
  UPoly s;
  for (const auto& [m, q] : parts) s += m * q;
  UPoly res = lhs - s;
  return {name, res.is_zero(), res, ""};
}

/// Exact quotient with non-negative integer coefficients, or nullopt.
inline std::optional<UPoly> quotient_multiset(const UPoly& num, const UPoly& den) {
  if (den.is_zero()) throw ConfigError("empty denominator");
  auto [q, r] = num.divmod(den);
  if (!r.is_zero() || !q.nonnegative()) return std::nullopt;
  return q;
}

inline Check check_quotient(const std::string& name, const UPoly& num, const UPoly& den) {
  auto [q, r] = num.divmod(den);
  Check c{name, r.is_zero() && q.nonnegative(), r, "quotient " + q.to_string()};
  if (r.is_zero() && !q.nonnegative()) c.detail += " has negative coefficients";
  return c;
}

/// Motives of the E6 mod 3 tables.
namespace e6 {

/// (t^4+1)(t^12-1)(t^6+t^3+1)/(t-1)
inline UPoly p_x2_closed() { return cyclotomic_quotient({8, 12, 9}, {1, 4, 3}); }

/// (t^5-1)(t^3+1)(t^8-1)(t^6+t^3+1)(t^12-1) / ((t-1)(t^2-1)^2)
inline UPoly p_x4_closed() {
  UPoly n = UPoly::tpow_minus_one(5) * (UPoly::monomial(3) + UPoly::one()) * UPoly::tpow_minus_one(8) *
            (UPoly::monomial(6) + UPoly::monomial(3) + UPoly::one()) * UPoly::tpow_minus_one(12);
  UPoly d = UPoly::tpow_minus_one(1) * UPoly::tpow_minus_one(2) * UPoly::tpow_minus_one(2);
  auto q = n.divexact(d);
  if (!q) throw InconsistencyError("closed form of P(E6/P4) is not a polynomial");
  return *q;
}

/// (t^4+1)(t^12-1)(t^6+t^3+1)/(t^2-1)
inline UPoly p_m21() {
  UPoly n = (UPoly::monomial(4) + UPoly::one()) * UPoly::tpow_minus_one(12) *
            (UPoly::monomial(6) + UPoly::monomial(3) + UPoly::one());
  auto q = n.divexact(UPoly::tpow_minus_one(2));
  if (!q) throw InconsistencyError("P(M_{2,1}) is not a polynomial");
  return *q;
}

inline UPoly p_m11() {
  return UPoly::from_indices({20, 18, 17, 16, 14, 13, 12, 11, 10, 10, 9, 8, 7, 6, 4, 3, 2, 0});
}

inline UPoly p_r(int j1, int j2) {
  int a = 1, b = 4;
  for (int i = 0; i < j1; ++i) a *= 3;
  for (int i = 0; i < j2; ++i) b *= 3;
  return cyclotomic_quotient({a, b}, {1, 4});
}

inline const std::vector<int>& tate_x2() {
  static const std::vector<int> v{0, 1, 10, 11, 20, 21};
  return v;
}
inline const std::vector<int>& tate_x4() {
  static const std::vector<int> v{0, 9, 10, 19, 20, 29};
  return v;
}
inline const std::vector<int>& tate_x4_row10() {
  static const std::vector<int> v{0, 1, 9, 10, 10, 11, 19, 20, 20, 21, 29, 30};
  return v;
}

}  // namespace e6

/// All nonempty subsets of {1..n}, in order of the bit mask.
inline std::vector<IndexSet> nonempty_subsets(int n) {
  std::vector<IndexSet> out;
  for (int mask = 1; mask < (1 << n); ++mask) {
    IndexSet s;
    for (int i = 0; i < n; ++i)
      if (mask & (1 << i)) s.push_back(i + 1);
    out.push_back(s);
  }
  return out;
}

/// The polynomial identities behind the E6 mod 3 tables. `poincare`
/// supplies P(E6/P_theta, t) (coset enumeration or the height formula).
template <class PoincareFn>
std::vector<Check> verify_e6_tables(PoincareFn poincare) {
  using namespace e6;
  std::vector<Check> out;
  const UPoly x2 = poincare(IndexSet{2}), x4 = poincare(IndexSet{4});
  const UPoly one = UPoly::one(), t = UPoly::monomial(1), t9 = UPoly::monomial(9);

  out.push_back(check_sum_identity("P(X2) closed form", x2, {{p_x2_closed(), one}}));
  out.push_back(check_sum_identity("P(X4) closed form", x4, {{p_x4_closed(), one}}));

  // Table 2
  {
    Check c = check_sum_identity("P(M21) closed form times (t^2-1)",
                                 (UPoly::monomial(4) + one) * UPoly::tpow_minus_one(12) * (UPoly::monomial(6) + UPoly::monomial(3) + one),
                                 {{p_m21(), UPoly::tpow_minus_one(2)}});
    c.pass = c.pass && p_m21().nonnegative() && p_m21().degree() == 20;
    out.push_back(c);
  }
  {
    UPoly m = p_m11();
    Check c{"P(M11) has 17 terms, degree 20, palindromic", m.term_count() == 17 && m.degree() == 20 && m.palindromic(), {}, m.to_string()};
    out.push_back(c);
    out.push_back(check_quotient("P(M11) - (1+t^10+t^20) divisible by 1+t+t^2", m - UPoly::from_indices({0, 10, 20}), p_r(1, 0)));
  }
  for (int j1 = 0; j1 <= 2; ++j1)
    for (int j2 = 0; j2 <= 1; ++j2) {
      UPoly r = p_r(j1, j2);
      out.push_back({"P(R" + std::to_string(j1) + std::to_string(j2) + ") is a non-negative polynomial", r.nonnegative() && r[0] == 1, {}, r.to_string()});
    }

  // Table 1, rows with explicit summands
  out.push_back(check_sum_identity("row (2,1) theta=2: P(X2) = P(M21)(1+t)", x2, {{p_m21(), one + t}}));
  out.push_back(check_sum_identity("row (1,1) theta=2: P(X2) = P(M11)(1+t) + P(R11)(t^4+...+t^7)", x2,
                                   {{p_m11(), one + t}, {p_r(1, 1), UPoly::from_indices({4, 5, 6, 7})}}));
  out.push_back(check_quotient("row (1,1): P(M11) - (1+t^10+t^20) = P(R10) S with S >= 0", p_m11() - UPoly::from_indices({0, 10, 20}), p_r(1, 0)));

  // Table 3
  for (int j1 = 1; j1 <= 2; ++j1)
    out.push_back(check_quotient("J^{" + std::to_string(j1) + ",1}", x4 - (j1 == 2 ? p_m21() : p_m11()) * (one + t9), p_r(j1, 1)));
  out.push_back(check_quotient("J^{1,0}_2", x2 - UPoly::from_indices(tate_x2()), p_r(1, 0)));
  out.push_back(check_quotient("J^{1,0}_4", x4 - UPoly::from_indices(tate_x2()) * (one + t9), p_r(1, 0)));
  out.push_back(check_sum_identity("row (1,0) theta=4 Tate indices = (1+t+t^10+t^11+t^20+t^21)(1+t^9)",
                                   UPoly::from_indices(tate_x4_row10()), {{UPoly::from_indices(tate_x2()), one + t9}}));
  out.push_back(check_sum_identity("Tate indices of X2 = (1+t^10+t^20)(1+t)", UPoly::from_indices(tate_x2()),
                                   {{UPoly::from_indices({0, 10, 20}), one + t}}));
  out.push_back(check_sum_identity("Tate indices of X4 = (1+t^10+t^20)(1+t^9)", UPoly::from_indices(tate_x4()),
                                   {{UPoly::from_indices({0, 10, 20}), one + t9}}));
  out.push_back(check_quotient("P(X4) minus the Tate indices of X4 divisible by 1+t+t^2", x4 - UPoly::from_indices(tate_x4()), p_r(1, 0)));

  // I_theta^{j1,j2} for the rows that use them
  const IndexSet s2{2}, s4{4}, s24{2, 4};
  for (const auto& th : nonempty_subsets(6)) {
    const bool special = th == s2 || th == s4 || th == s24;
    UPoly x = poincare(th);
    for (auto [j1, j2] : std::vector<std::pair<int, int>>{{2, 1}, {1, 1}, {0, 1}, {1, 0}, {0, 0}}) {
      if (special && j1 > 0) continue;
      out.push_back(check_quotient("I_" + set_string(th) + "^{" + std::to_string(j1) + "," + std::to_string(j2) + "}", x, p_r(j1, j2)));
    }
  }

  out.push_back({"Rost test b=10 p=3 fails", !rost_dim_test(10, 3), {}, ""});
  out.push_back({"Rost test b=28 p=3 fails", !rost_dim_test(28, 3), {}, ""});
  return out;
}

}  // namespace gpchow
