#pragma once

// Weyl group elements, minimal coset representatives of W/W_P, Bruhat order
// and double cosets.
//
// Convention for varieties: X_Theta = G/P where W_P is generated by the
// simple reflections s_i with i NOT in Theta. So Theta = {all} is the Borel
// case and Theta = {i} is a maximal parabolic.

#include <algorithm>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <shared_mutex>
#include <string>
#include <tuple>
#include <unordered_map>
#include <utility>
#include <vector>

#include "gpchow/error.hpp"
#include "gpchow/rootsys.hpp"

namespace gpchow {

/// Reduced word, letters are 1-based simple-root indices, w = s_{a1} s_{a2} ...
using Word = std::vector<int>;

inline std::string word_string(const Word& w, bool brackets = true) {
  std::string s = brackets ? "[" : "";
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(w[i]);
  }
  if (brackets) s += "]";
  return s;
}

inline Weight rho(const RootSystem& rs) { return Weight(std::vector<int>(rs.rank(), 1)); }

/// Reduced word extracted from a W-orbit point: repeatedly strip the
/// smallest index i with mu_i < 0. Applied to w(rho) this is the canonical
/// word of w; applied to w(lambda_Theta) it is the canonical word of the
/// minimal representative.
inline Word descent_word(const RootSystem& rs, Weight mu) {
  Word word;
  const int n = rs.rank();
  while (true) {
    int i = 0;
    while (i < n && mu[i] >= 0) ++i;
    if (i == n) break;
    word.push_back(i + 1);
    mu = rs.reflect(i + 1, mu);
  }
  return word;
}

class WeylElement {
 public:
  WeylElement() = default;

  static WeylElement identity(std::shared_ptr<const RootSystem> rs) {
    const int n = rs->rank();
    std::vector<int> m(n * n, 0);
    for (int i = 0; i < n; ++i) m[i * n + i] = 1;
    return WeylElement(std::move(rs), std::move(m));
  }

  static WeylElement simple(std::shared_ptr<const RootSystem> rs, int i) {
    rs->check_index(i);
    const int n = rs->rank();
    std::vector<int> m(n * n, 0);
    for (int c = 0; c < n; ++c) {
      Weight col = rs->reflect(i, rs->fundamental_weight(c + 1));
      for (int r = 0; r < n; ++r) m[r * n + c] = col[r];
    }
    return WeylElement(std::move(rs), std::move(m));
  }

  static WeylElement from_word(std::shared_ptr<const RootSystem> rs, const Word& word) {
    WeylElement w = identity(rs);
    for (int i : word) w = w * simple(rs, i);
    return w;
  }

  const RootSystem& root_system() const { return *rs_; }
  std::shared_ptr<const RootSystem> root_system_ptr() const { return rs_; }
  int rank() const { return rs_->rank(); }

  /// Row-major n x n matrix; column c is w(omega_{c+1}).
  const std::vector<int>& matrix() const { return m_; }
  int entry(int r, int c) const { return m_[r * rank() + c]; }

  const Word& word() const { return word_; }
  int length() const { return static_cast<int>(word_.size()); }
  bool is_identity() const { return word_.empty(); }

  Weight apply(const Weight& lambda) const {
    rs_->check_weight(lambda);
    const int n = rank();
    Weight out(n);
    for (int r = 0; r < n; ++r) {
      int s = 0;
      for (int c = 0; c < n; ++c) s += m_[r * n + c] * lambda[c];
      out[r] = s;
    }
    return out;
  }

  friend WeylElement operator*(const WeylElement& u, const WeylElement& v) { return compose(u, v); }

  static WeylElement compose(const WeylElement& u, const WeylElement& v) {
    if (!(*u.rs_ == *v.rs_)) throw ConfigError("composing Weyl elements of different root systems");
    const int n = u.rank();
    std::vector<int> m(n * n, 0);
    for (int r = 0; r < n; ++r)
      for (int k = 0; k < n; ++k) {
        int a = u.m_[r * n + k];
        if (a == 0) continue;
        for (int c = 0; c < n; ++c) m[r * n + c] += a * v.m_[k * n + c];
      }
    return WeylElement(u.rs_, std::move(m));
  }

  WeylElement inverse() const {
    Word rev(word_.rbegin(), word_.rend());
    return from_word(rs_, rev);
  }

  /// s_i is a left descent iff w^{-1}(alpha_i) < 0 iff <w rho, alpha_i^vee> < 0.
  bool is_left_descent(int i) const {
    rs_->check_index(i);
    int s = 0;
    for (int c = 0; c < rank(); ++c) s += m_[(i - 1) * rank() + c];
    return s < 0;
  }

  /// s_i is a right descent iff w(alpha_i) < 0.
  bool is_right_descent(int i) const { return rs_->root_sign(apply(rs_->simple_root(i))) < 0; }

  /// Number of positive roots beta with w^{-1}(beta) negative.
  int inversion_count() const {
    WeylElement inv = inverse();
    int count = 0;
    for (const auto& b : rs_->positive_roots())
      if (rs_->root_sign(inv.apply(b)) < 0) ++count;
    return count;
  }

  friend bool operator==(const WeylElement& a, const WeylElement& b) { return a.m_ == b.m_; }

 private:
  WeylElement(std::shared_ptr<const RootSystem> rs, std::vector<int> m) : rs_(std::move(rs)), m_(std::move(m)) {
    word_ = descent_word(*rs_, apply(rho(*rs_)));
  }

  std::shared_ptr<const RootSystem> rs_;
  std::vector<int> m_;
  Word word_;
};

struct WeylElementHash {
  std::size_t operator()(const WeylElement& w) const noexcept {
    std::uint64_t h = 1469598103934665603ull;
    for (int x : w.matrix()) {
      h ^= static_cast<std::uint64_t>(static_cast<std::uint32_t>(x));
      h *= 1099511628211ull;
    }
    return static_cast<std::size_t>(h);
  }
};

/// Strong Bruhat order u <= w. Walks a reduced word of w from the left,
/// using the lifting property: if s is a left descent of w then
/// u <= w iff (s u <= s w when s is a left descent of u, else u <= s w).
inline bool bruhat_leq(const WeylElement& u, const WeylElement& w) {
  const RootSystem& rs = u.root_system();
  if (!(rs == w.root_system())) throw ConfigError("Bruhat comparison across root systems");
  if (u.length() > w.length()) return false;
  Weight r = rho(rs);
  Weight ur = u.apply(r);
  for (int s : w.word()) {
    if (ur[s - 1] < 0) ur = rs.reflect(s, ur);
  }
  return ur == r;
}

/// Longest element of the subgroup generated by s_i, i in S.
/// s_beta for a root beta, as u s_i u^{-1} with beta = u(alpha_i).
inline WeylElement reflection(std::shared_ptr<const RootSystem> rs, Weight beta) {
  if (rs->root_sign(beta) < 0) beta = -beta;
  Word u;
  for (;;) {
    int found = 0;
    for (int i = 1; i <= rs->rank() && !found; ++i)
      if (beta == rs->simple_root(i)) found = i;
    if (found) {
      auto uu = WeylElement::from_word(rs, u);
      return uu * WeylElement::simple(rs, found) * uu.inverse();
    }
    int i = 1;
    while (i <= rs->rank() && (beta[i - 1] <= 0)) ++i;
    if (i > rs->rank()) throw InconsistencyError("weight is not a root");
    beta = rs->reflect(i, beta);
    u.push_back(i);
  }
}

inline WeylElement longest_element(std::shared_ptr<const RootSystem> rs, const IndexSet& S) {
  rs->check_subset(S);
  WeylElement w = WeylElement::identity(rs);
  bool grew = true;
  while (grew) {
    grew = false;
    for (int i : S) {
      if (!w.is_right_descent(i)) {
        w = w * WeylElement::simple(rs, i);
        grew = true;
      }
    }
  }
  return w;
}

inline IndexSet complement(const RootSystem& rs, const IndexSet& s) {
  IndexSet out;
  for (int i = 1; i <= rs.rank(); ++i)
    if (!contains(s, i)) out.push_back(i);
  return out;
}

/// lambda_Theta = sum of omega_i over i in Theta; its stabilizer is W_P.
inline Weight theta_weight(const RootSystem& rs, const IndexSet& theta) {
  Weight l(rs.rank());
  for (int i : theta) l[i - 1] = 1;
  return l;
}

/// A minimal representative of a coset in W/W_P, identified by its orbit
/// point w(lambda_Theta).
struct CosetRep {
  Weight point;
  Word word;
  int length = 0;
  std::size_t index = 0;
};

inline std::uint64_t fnv1a(const std::string& s, std::uint64_t h = 1469598103934665603ull) {
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

/// Minimal representatives of W/W_P in the fixed linear order (ascending
/// length, then lexicographic canonical word), with Bruhat data.
class CosetSpace {
 public:
  CosetSpace(std::shared_ptr<const RootSystem> rs, IndexSet theta) : rs_(std::move(rs)), theta_(normalize(std::move(theta))) {
    rs_->check_subset(theta_);
    lambda_ = theta_weight(*rs_, theta_);
    enumerate();
    build_bruhat();
  }

  const RootSystem& root_system() const { return *rs_; }
  std::shared_ptr<const RootSystem> root_system_ptr() const { return rs_; }
  const IndexSet& theta() const { return theta_; }
  /// Generators of W_P.
  IndexSet levi() const { return complement(*rs_, theta_); }
  const Weight& lambda() const { return lambda_; }

  std::size_t size() const { return reps_.size(); }
  const std::vector<CosetRep>& reps() const { return reps_; }
  const CosetRep& rep(std::size_t i) const { return reps_.at(i); }
  int dim() const { return reps_.back().length; }
  int length(std::size_t i) const { return reps_[i].length; }

  /// Indices of representatives of the given length, in linear order.
  const std::vector<std::size_t>& of_length(int l) const {
    static const std::vector<std::size_t> empty;
    if (l < 0 || l >= static_cast<int>(by_length_.size())) return empty;
    return by_length_[l];
  }
  std::size_t count_of_length(int l) const { return of_length(l).size(); }

  std::optional<std::size_t> find_point(const Weight& mu) const {
    auto it = index_.find(mu);
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }
  std::size_t index_of_point(const Weight& mu) const {
    auto i = find_point(mu);
    if (!i) throw InconsistencyError("weight is not in the W-orbit of lambda_Theta");
    return *i;
  }
  /// Index of the coset w W_P.
  std::size_t coset_of(const WeylElement& w) const { return index_of_point(w.apply(lambda_)); }

  std::optional<std::size_t> find_word(const Word& word) const {
    WeylElement w = WeylElement::from_word(rs_, word);
    auto i = find_point(w.apply(lambda_));
    if (!i || reps_[*i].length != w.length()) return std::nullopt;
    return i;
  }
  std::size_t index_of_word(const Word& word) const {
    auto i = find_word(word);
    if (!i) throw ConfigError("word " + word_string(word) + " is not a minimal coset representative for " + rs_->name() + "/P" + set_string(theta_));
    return *i;
  }

  WeylElement element(std::size_t i) const { return WeylElement::from_word(rs_, reps_.at(i).word); }

  bool bruhat_leq(std::size_t u, std::size_t w) const {
    return (below_[w][u >> 6] >> (u & 63)) & 1u;
  }
  /// Representatives w with u <= w, in linear order.
  const std::vector<std::uint32_t>& above(std::size_t u) const { return above_.at(u); }

  /// Index of the representative of w0 w w0^P; Z_w = X_{w0 w w0^P}.
  std::size_t x_to_z(std::size_t i) const { return xz_.at(i); }
  std::size_t top() const { return reps_.size() - 1; }

  /// Positive roots beta with w^{-1}(beta) < 0, as indices into positive_roots().
  const std::vector<std::size_t>& inversions(std::size_t i) const { return inv_.at(i); }

  /// Coefficients of sum over reps of t^{l(w)}.
  std::vector<long long> poincare() const {
    std::vector<long long> p(by_length_.size(), 0);
    for (std::size_t l = 0; l < by_length_.size(); ++l) p[l] = static_cast<long long>(by_length_[l].size());
    return p;
  }

  /// Hash of the ordered list of canonical words; used to validate caches.
  std::uint64_t order_hash() const {
    std::uint64_t h = fnv1a(rs_->name() + set_string(theta_));
    for (const auto& r : reps_) h = fnv1a(word_string(r.word) + ";", h);
    return h;
  }

 private:
  void enumerate() {
    std::vector<Weight> points{lambda_};
    std::unordered_map<Weight, std::size_t, WeightHash> seen{{lambda_, 0}};
    std::vector<int> len{0};
    for (std::size_t k = 0; k < points.size(); ++k) {
      for (int i = 1; i <= rs_->rank(); ++i) {
        if (points[k][i - 1] <= 0) continue;
        Weight nu = rs_->reflect(i, points[k]);
        if (seen.emplace(nu, points.size()).second) {
          points.push_back(nu);
          len.push_back(len[k] + 1);
        }
      }
    }
    reps_.reserve(points.size());
    for (std::size_t k = 0; k < points.size(); ++k) {
      CosetRep r;
      r.point = points[k];
      r.word = descent_word(*rs_, points[k]);
      r.length = static_cast<int>(r.word.size());
      if (r.length != len[k]) throw InconsistencyError("coset length mismatch");
      reps_.push_back(std::move(r));
    }
    std::sort(reps_.begin(), reps_.end(), [](const CosetRep& a, const CosetRep& b) {
      return std::tie(a.length, a.word) < std::tie(b.length, b.word);
    });
    for (std::size_t i = 0; i < reps_.size(); ++i) {
      reps_[i].index = i;
      index_.emplace(reps_[i].point, i);
      if (by_length_.size() <= static_cast<std::size_t>(reps_[i].length)) by_length_.resize(reps_[i].length + 1);
      by_length_[reps_[i].length].push_back(i);
    }
    WeylElement w0 = longest_element(rs_, [&] {
      IndexSet all;
      for (int i = 1; i <= rs_->rank(); ++i) all.push_back(i);
      return all;
    }());
    const auto& pos = rs_->positive_roots();
    for (auto& r : reps_) {
      xz_.push_back(index_of_point(w0.apply(r.point)));
      std::vector<std::size_t> inv;
      for (std::size_t b = 0; b < pos.size(); ++b)
        if (rs_->pairing(r.point, b) < 0) inv.push_back(b);
      if (static_cast<int>(inv.size()) != r.length) throw InconsistencyError("inversion count differs from length");
      inv_.push_back(std::move(inv));
    }
  }

  // mu < s_beta(mu) whenever <mu, beta^vee> > 0; the transitive closure is
  // the Bruhat order on W/W_P.
  void build_bruhat() {
    const std::size_t n = reps_.size();
    const std::size_t words = (n + 63) / 64;
    below_.assign(n, std::vector<std::uint64_t>(words, 0));
    std::vector<std::vector<std::uint32_t>> up(n);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t b = 0; b < rs_->positive_roots().size(); ++b) {
        if (rs_->pairing(reps_[i].point, b) > 0) up[i].push_back(static_cast<std::uint32_t>(index_of_point(rs_->reflect_root(b, reps_[i].point))));
      }
    }
    for (std::size_t i = 0; i < n; ++i) {
      below_[i][i >> 6] |= std::uint64_t{1} << (i & 63);
      for (auto j : up[i]) {
        if (reps_[j].length <= reps_[i].length) throw InconsistencyError("Bruhat relation does not raise length");
      }
    }
    // indices are sorted by length, so every predecessor is finished first
    for (std::size_t i = 0; i < n; ++i)
      for (auto j : up[i])
        for (std::size_t k = 0; k < words; ++k) below_[j][k] |= below_[i][k];
    above_.assign(n, {});
    for (std::size_t w = 0; w < n; ++w)
      for (std::size_t u = 0; u <= w; ++u)
        if (bruhat_leq(u, w)) above_[u].push_back(static_cast<std::uint32_t>(w));
  }

  std::shared_ptr<const RootSystem> rs_;
  IndexSet theta_;
  Weight lambda_;
  std::vector<CosetRep> reps_;
  std::unordered_map<Weight, std::size_t, WeightHash> index_;
  std::vector<std::vector<std::size_t>> by_length_;
  std::vector<std::size_t> xz_;
  std::vector<std::vector<std::size_t>> inv_;
  std::vector<std::vector<std::uint64_t>> below_;
  std::vector<std::vector<std::uint32_t>> above_;
};

/// Process-wide cache of coset spaces keyed by (type, Theta). Readers share
/// a lock; construction happens outside the lock and the first insert wins.
class CosetCache {
 public:
  static CosetCache& instance() {
    static CosetCache c;
    return c;
  }

  std::shared_ptr<const CosetSpace> get(std::shared_ptr<const RootSystem> rs, const IndexSet& theta) {
    auto key = std::make_pair(rs->name(), normalize(theta));
    {
      std::shared_lock lock(mu_);
      auto it = map_.find(key);
      if (it != map_.end()) return it->second;
    }
    auto built = std::make_shared<const CosetSpace>(rs, theta);
    std::unique_lock lock(mu_);
    auto [it, inserted] = map_.emplace(key, built);
    return it->second;
  }

 private:
  std::shared_mutex mu_;
  std::map<std::pair<std::string, IndexSet>, std::shared_ptr<const CosetSpace>> map_;
};

inline std::shared_ptr<const CosetSpace> coset_space(std::shared_ptr<const RootSystem> rs, const IndexSet& theta) {
  return CosetCache::instance().get(std::move(rs), theta);
}

/// The ordered list of minimal coset representatives.
inline std::vector<CosetRep> coset_reps(std::shared_ptr<const RootSystem> rs, const IndexSet& theta) {
  return coset_space(std::move(rs), theta)->reps();
}

struct DoubleCosetRep {
  WeylElement element;
  int length = 0;
};

/// Minimal representatives of W_P \ W / W_P' where X = G/P has type theta
/// and X' = G/P' has type theta_prime. Each W/W_P' representative is pushed
/// down by left multiplication with s_i (i not in theta) while that lowers
/// the length; the result is the minimal element of its double coset.
inline std::vector<DoubleCosetRep> double_coset_reps(std::shared_ptr<const RootSystem> rs, const IndexSet& theta,
                                                     const IndexSet& theta_prime) {
  rs->check_subset(theta);
  rs->check_subset(theta_prime);
  auto space = coset_space(rs, theta_prime);
  IndexSet levi = complement(*rs, normalize(theta));
  std::vector<std::size_t> found;
  for (const auto& r : space->reps()) {
    Weight mu = r.point;
    bool moved = true;
    while (moved) {
      moved = false;
      for (int i : levi) {
        if (mu[i - 1] < 0) {
          mu = rs->reflect(i, mu);
          moved = true;
        }
      }
    }
    std::size_t idx = space->index_of_point(mu);
    if (std::find(found.begin(), found.end(), idx) == found.end()) found.push_back(idx);
  }
  std::sort(found.begin(), found.end());
  std::vector<DoubleCosetRep> out;
  for (auto idx : found) out.push_back({space->element(idx), space->length(idx)});
  return out;
}

/// Type of the parabolic Q_w = R_u P (P cap w P' w^{-1}) in the Theta
/// convention: s_i (i not in Theta) lies in W_{Q_w} iff w^{-1}(alpha_i) is a
/// root of the Levi of P', i.e. has support disjoint from Theta'.
inline IndexSet qw_type(const WeylElement& w, const IndexSet& theta, const IndexSet& theta_prime) {
  const RootSystem& rs = w.root_system();
  IndexSet th = normalize(theta), thp = normalize(theta_prime);
  rs.check_subset(th);
  rs.check_subset(thp);
  WeylElement winv = w.inverse();
  IndexSet out = th;
  for (int i = 1; i <= rs.rank(); ++i) {
    if (contains(th, i)) continue;
    Weight b = winv.apply(rs.simple_root(i));
    if (rs.root_sign(b) < 0) throw ConfigError("qw_type: element is not minimal in its double coset");
    if (rs.support_meets(*rs.root_index(b), thp)) out.push_back(i);
  }
  for (int i = 1; i <= rs.rank(); ++i) {
    if (contains(thp, i)) continue;
    if (rs.root_sign(w.apply(rs.simple_root(i))) < 0)
      throw ConfigError("qw_type: element is not minimal in its double coset");
  }
  return normalize(out);
}

}  // namespace gpchow
