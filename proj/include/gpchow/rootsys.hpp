#pragma once

// Root systems of split semisimple groups in fundamental-weight coordinates.
//
// Simple roots are numbered as in Bourbaki, 1-based. For a product type such
// as "A3xA1" the components are numbered consecutively (A3 gets 1..3, A1
// gets 4). The Cartan matrix is stored as C[i][j] = <alpha_j, alpha_i^vee>,
// so that column j of C is alpha_j written in the basis omega_1..omega_n.

#include <algorithm>
#include <cctype>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <numeric>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "gpchow/error.hpp"

namespace gpchow {

/// An element of the weight lattice, coordinates in omega_1..omega_n.
class Weight {
 public:
  Weight() = default;
  explicit Weight(std::size_t n) : c_(n, 0) {}
  explicit Weight(std::vector<int> coords) : c_(std::move(coords)) {}
  Weight(std::initializer_list<int> coords) : c_(coords) {}

  std::size_t size() const { return c_.size(); }
  int operator[](std::size_t i) const { return c_[i]; }
  int& operator[](std::size_t i) { return c_[i]; }
  const std::vector<int>& coords() const { return c_; }

  bool is_zero() const {
    return std::all_of(c_.begin(), c_.end(), [](int x) { return x == 0; });
  }

  Weight& operator+=(const Weight& o) {
    for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
    return *this;
  }
  Weight& operator-=(const Weight& o) {
    for (std::size_t i = 0; i < c_.size(); ++i) c_[i] -= o.c_[i];
    return *this;
  }
  friend Weight operator+(Weight a, const Weight& b) { return a += b; }
  friend Weight operator-(Weight a, const Weight& b) { return a -= b; }
  friend Weight operator-(Weight a) {
    for (auto& x : a.c_) x = -x;
    return a;
  }
  friend Weight operator*(int k, Weight a) {
    for (auto& x : a.c_) x *= k;
    return a;
  }
  friend bool operator==(const Weight&, const Weight&) = default;
  friend auto operator<=>(const Weight&, const Weight&) = default;

  friend std::ostream& operator<<(std::ostream& os, const Weight& w) {
    bool first = true;
    for (std::size_t i = 0; i < w.size(); ++i) {
      int c = w[i];
      if (c == 0) continue;
      if (c < 0)
        os << (first ? "-" : " - ");
      else if (!first)
        os << " + ";
      if (std::abs(c) != 1) os << std::abs(c);
      os << "w" << (i + 1);
      first = false;
    }
    if (first) os << "0";
    return os;
  }

 private:
  std::vector<int> c_;
};

struct WeightHash {
  std::size_t operator()(const Weight& w) const noexcept {
    std::uint64_t h = 1469598103934665603ull;
    for (int x : w.coords()) {
      h ^= static_cast<std::uint64_t>(static_cast<std::uint32_t>(x));
      h *= 1099511628211ull;
    }
    return static_cast<std::size_t>(h);
  }
};

/// Set of simple-root indices (1-based, sorted, unique). Used both for
/// generating sets of parabolic subgroups and for variety types Theta.
using IndexSet = std::vector<int>;

inline IndexSet normalize(IndexSet s) {
  std::sort(s.begin(), s.end());
  s.erase(std::unique(s.begin(), s.end()), s.end());
  return s;
}

inline bool contains(const IndexSet& s, int i) {
  return std::binary_search(s.begin(), s.end(), i);
}

inline std::string set_string(const IndexSet& s) {
  std::ostringstream os;
  os << "{";
  for (std::size_t i = 0; i < s.size(); ++i) os << (i ? "," : "") << s[i];
  os << "}";
  return os.str();
}

/// Parses "2", "1,2,6", "{1,2,6}" or "" (empty set).
inline IndexSet parse_index_set(std::string_view text) {
  IndexSet out;
  std::string tok;
  auto flush = [&] {
    if (tok.empty()) return;
    std::size_t used = 0;
    int v = 0;
    try {
      v = std::stoi(tok, &used);
    } catch (const std::exception&) {
      throw ConfigError("bad index in set: '" + tok + "'");
    }
    if (used != tok.size()) throw ConfigError("bad index in set: '" + tok + "'");
    out.push_back(v);
    tok.clear();
  };
  for (char ch : text) {
    if (std::isdigit(static_cast<unsigned char>(ch)) || ch == '-') {
      tok.push_back(ch);
    } else if (ch == ',' || ch == ' ' || ch == '{' || ch == '}' || ch == '[' || ch == ']') {
      flush();
    } else {
      throw ConfigError(std::string("unexpected character in index set: '") + ch + "'");
    }
  }
  flush();
  return normalize(out);
}

struct SimpleType {
  char letter;
  int rank;
  friend bool operator==(const SimpleType&, const SimpleType&) = default;
};

namespace detail {

inline bool admissible(char letter, int rank) {
  switch (letter) {
    case 'A': return rank >= 1;
    case 'B': return rank >= 2;
    case 'C': return rank >= 2;
    case 'D': return rank >= 4;
    case 'E': return rank >= 6 && rank <= 8;
    case 'F': return rank == 4;
    case 'G': return rank == 2;
    default: return false;
  }
}

// Cartan block of a simple type, C[i][j] = <alpha_j, alpha_i^vee>.
inline std::vector<std::vector<int>> simple_cartan(char letter, int n) {
  std::vector<std::vector<int>> c(n, std::vector<int>(n, 0));
  for (int i = 0; i < n; ++i) c[i][i] = 2;
  auto bond = [&](int a, int b) {  // simply-laced edge, 1-based
    c[a - 1][b - 1] = -1;
    c[b - 1][a - 1] = -1;
  };
  switch (letter) {
    case 'A':
      for (int i = 1; i < n; ++i) bond(i, i + 1);
      break;
    case 'B':
      for (int i = 1; i < n - 1; ++i) bond(i, i + 1);
      // alpha_n short
      c[n - 1][n - 2] = -2;  // <alpha_{n-1}, alpha_n^vee>
      c[n - 2][n - 1] = -1;  // <alpha_n, alpha_{n-1}^vee>
      break;
    case 'C':
      for (int i = 1; i < n - 1; ++i) bond(i, i + 1);
      // alpha_n long
      c[n - 1][n - 2] = -1;
      c[n - 2][n - 1] = -2;
      break;
    case 'D':
      for (int i = 1; i < n - 1; ++i) bond(i, i + 1);
      bond(n - 2, n);
      break;
    case 'E':
      bond(1, 3);
      bond(3, 4);
      bond(2, 4);
      for (int i = 4; i < n; ++i) bond(i, i + 1);
      break;
    case 'F':
      bond(1, 2);
      bond(3, 4);
      // alpha_1, alpha_2 long; alpha_3, alpha_4 short
      c[2][1] = -2;  // <alpha_2, alpha_3^vee>
      c[1][2] = -1;  // <alpha_3, alpha_2^vee>
      break;
    case 'G':
      // alpha_1 short, alpha_2 long
      c[0][1] = -3;  // <alpha_2, alpha_1^vee>
      c[1][0] = -1;  // <alpha_1, alpha_2^vee>
      break;
    default:
      break;
  }
  return c;
}

}  // namespace detail

/// Parses "E7", "G2", "A3xA1" (also accepts '*' or the Unicode times sign).
inline std::vector<SimpleType> parse_type(std::string_view text) {
  std::vector<SimpleType> out;
  std::string s;
  for (std::size_t i = 0; i < text.size(); ++i) {
    unsigned char ch = static_cast<unsigned char>(text[i]);
    if (ch == 0xC3 && i + 1 < text.size() && static_cast<unsigned char>(text[i + 1]) == 0x97) {
      s.push_back('x');  // U+00D7
      ++i;
    } else if (!std::isspace(ch)) {
      s.push_back(static_cast<char>(ch));
    }
  }
  if (s.empty()) throw ConfigError("empty Dynkin type descriptor");
  std::size_t pos = 0;
  while (pos < s.size()) {
    char letter = static_cast<char>(std::toupper(static_cast<unsigned char>(s[pos])));
    ++pos;
    std::size_t start = pos;
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
    if (start == pos) throw ConfigError("missing rank in Dynkin type '" + std::string(text) + "'");
    int rank = std::stoi(s.substr(start, pos - start));
    if (!detail::admissible(letter, rank))
      throw ConfigError("inadmissible Dynkin type " + std::string(1, letter) + std::to_string(rank));
    out.push_back({letter, rank});
    if (pos < s.size()) {
      if (s[pos] != 'x' && s[pos] != 'X' && s[pos] != '*')
        throw ConfigError("bad separator in Dynkin type '" + std::string(text) + "'");
      ++pos;
      if (pos == s.size()) throw ConfigError("trailing separator in '" + std::string(text) + "'");
    }
  }
  return out;
}

/// Cartan data, simple and positive roots of a split semisimple group.
/// Immutable after construction.
class RootSystem {
 public:
  explicit RootSystem(std::vector<SimpleType> components) : components_(std::move(components)) {
    if (components_.empty()) throw ConfigError("root system needs at least one component");
    for (const auto& t : components_) {
      if (!detail::admissible(t.letter, t.rank))
        throw ConfigError("inadmissible Dynkin type " + std::string(1, t.letter) + std::to_string(t.rank));
      n_ += t.rank;
    }
    cartan_.assign(n_, std::vector<int>(n_, 0));
    int off = 0;
    for (const auto& t : components_) {
      auto block = detail::simple_cartan(t.letter, t.rank);
      for (int i = 0; i < t.rank; ++i)
        for (int j = 0; j < t.rank; ++j) cartan_[off + i][off + j] = block[i][j];
      off += t.rank;
    }
    for (int j = 0; j < n_; ++j) {
      Weight a(n_);
      for (int i = 0; i < n_; ++i) a[i] = cartan_[i][j];
      simple_.push_back(std::move(a));
    }
    close_roots();
  }

  int rank() const { return n_; }
  const std::vector<SimpleType>& components() const { return components_; }
  const std::vector<std::vector<int>>& cartan() const { return cartan_; }

  std::string name() const {
    std::string s;
    for (std::size_t i = 0; i < components_.size(); ++i) {
      if (i) s += "x";
      s += components_[i].letter;
      s += std::to_string(components_[i].rank);
    }
    return s;
  }

  /// alpha_i for 1 <= i <= n.
  const Weight& simple_root(int i) const {
    check_index(i);
    return simple_[i - 1];
  }
  const std::vector<Weight>& simple_roots() const { return simple_; }

  /// Positive roots sorted by height, ties broken by simple-root coordinates.
  const std::vector<Weight>& positive_roots() const { return positive_; }
  /// The same roots written in the basis of simple roots.
  const std::vector<std::vector<int>>& positive_roots_simple_coords() const { return positive_alpha_; }

  Weight fundamental_weight(int i) const {
    check_index(i);
    Weight w(n_);
    w[i - 1] = 1;
    return w;
  }

  /// s_i(lambda) = lambda - <lambda, alpha_i^vee> alpha_i.
  Weight reflect(int i, const Weight& lambda) const {
    check_index(i);
    check_weight(lambda);
    Weight out = lambda;
    int k = lambda[i - 1];
    if (k != 0) {
      const Weight& a = simple_[i - 1];
      for (int j = 0; j < n_; ++j) out[j] -= k * a[j];
    }
    return out;
  }

  /// +1 for a positive root, -1 for a negative root, 0 if not a root.
  int root_sign(const Weight& w) const {
    auto it = index_.find(w);
    if (it == index_.end()) return 0;
    return it->second.second;
  }

  /// Index into positive_roots() of +-w, if w is a root.
  std::optional<std::size_t> root_index(const Weight& w) const {
    auto it = index_.find(w);
    if (it == index_.end()) return std::nullopt;
    return it->second.first;
  }

  /// Simple-root coordinates of a positive root given in omega-coordinates.
  const std::vector<int>& simple_coords(std::size_t root_idx) const { return positive_alpha_.at(root_idx); }

  /// Coroot of a positive root in the basis of simple coroots.
  const std::vector<int>& coroot_simple_coords(std::size_t root_idx) const { return coroot_.at(root_idx); }

  /// <mu, beta^vee> for the positive root with the given index.
  int pairing(const Weight& mu, std::size_t root_idx) const {
    const auto& c = coroot_[root_idx];
    int s = 0;
    for (int i = 0; i < n_; ++i) s += mu[i] * c[i];
    return s;
  }

  /// s_beta(mu) for the positive root with the given index.
  Weight reflect_root(std::size_t root_idx, const Weight& mu) const {
    int k = pairing(mu, root_idx);
    if (k == 0) return mu;
    Weight out = mu;
    const Weight& b = positive_[root_idx];
    for (int i = 0; i < n_; ++i) out[i] -= k * b[i];
    return out;
  }

  /// True if the positive root (by index) involves some alpha_i with i in s.
  bool support_meets(std::size_t root_idx, const IndexSet& s) const {
    const auto& a = positive_alpha_.at(root_idx);
    for (int i : s)
      if (a[i - 1] != 0) return true;
    return false;
  }

  void check_index(int i) const {
    if (i < 1 || i > n_)
      throw ConfigError("simple root index " + std::to_string(i) + " out of range 1.." + std::to_string(n_));
  }
  void check_weight(const Weight& w) const {
    if (static_cast<int>(w.size()) != n_)
      throw ConfigError("weight has " + std::to_string(w.size()) + " coordinates, rank is " + std::to_string(n_));
  }
  void check_subset(const IndexSet& s) const {
    for (int i : s) check_index(i);
  }

  friend bool operator==(const RootSystem& a, const RootSystem& b) { return a.cartan_ == b.cartan_; }

 private:
  void close_roots() {
    // Breadth-first closure by height using alpha-strings: for a positive
    // root beta and a simple root alpha_i, beta + alpha_i is a root iff
    // q > 0 where q = r - <beta, alpha_i^vee> and r is the largest k with
    // beta - k alpha_i a root.
    std::unordered_map<Weight, std::size_t, WeightHash> seen;
    std::vector<std::vector<int>> layer;
    for (int i = 0; i < n_; ++i) {
      std::vector<int> e(n_, 0);
      e[i] = 1;
      layer.push_back(e);
    }
    auto to_omega = [&](const std::vector<int>& a) {
      Weight w(n_);
      for (int j = 0; j < n_; ++j)
        if (a[j])
          for (int i = 0; i < n_; ++i) w[i] += a[j] * cartan_[i][j];
      return w;
    };
    auto in_set = [&](const std::vector<int>& a) {
      for (int x : a)
        if (x < 0) return false;
      return seen.count(to_omega(a)) > 0;
    };
    while (!layer.empty()) {
      std::vector<std::vector<int>> next;
      for (auto& a : layer) {
        Weight w = to_omega(a);
        if (seen.count(w)) continue;
        seen.emplace(w, positive_.size());
        positive_.push_back(w);
        positive_alpha_.push_back(a);
      }
      for (auto& a : layer) {
        Weight w = to_omega(a);
        for (int i = 0; i < n_; ++i) {
          int r = 0;
          std::vector<int> down = a;
          while (true) {
            down[i] -= 1;
            if (!in_set(down)) break;
            ++r;
          }
          int q = r - w[i];
          if (q > 0) {
            auto up = a;
            up[i] += 1;
            if (!seen.count(to_omega(up))) next.push_back(up);
          }
        }
      }
      std::sort(next.begin(), next.end(), std::greater<>());
      next.erase(std::unique(next.begin(), next.end()), next.end());
      layer = std::move(next);
    }
    for (std::size_t k = 0; k < positive_.size(); ++k) {
      index_.emplace(positive_[k], std::make_pair(k, 1));
      index_.emplace(-positive_[k], std::make_pair(k, -1));
    }
    build_coroots();
  }

  // half squared lengths: (alpha_i, alpha_j) = C[i][j] * len_i
  void build_coroots() {
    std::vector<long> len(n_, 0);
    for (int start = 0; start < n_; ++start) {
      if (len[start]) continue;
      len[start] = 6;
      std::vector<int> stack{start};
      while (!stack.empty()) {
        int i = stack.back();
        stack.pop_back();
        for (int j = 0; j < n_; ++j) {
          if (j == i || cartan_[i][j] == 0 || len[j]) continue;
          // C[i][j] len_i = C[j][i] len_j
          len[j] = cartan_[i][j] * len[i] / cartan_[j][i];
          stack.push_back(j);
        }
      }
    }
    for (const auto& a : positive_alpha_) {
      long norm2 = 0;  // (beta, beta)
      for (int i = 0; i < n_; ++i)
        for (int j = 0; j < n_; ++j) norm2 += static_cast<long>(a[i]) * a[j] * cartan_[i][j] * len[i];
      long lb = norm2 / 2;
      std::vector<int> c(n_, 0);
      for (int i = 0; i < n_; ++i) {
        if ((a[i] * len[i]) % lb != 0) throw InconsistencyError("non-integral coroot");
        c[i] = static_cast<int>(a[i] * len[i] / lb);
      }
      coroot_.push_back(std::move(c));
    }
  }

  std::vector<SimpleType> components_;
  int n_ = 0;
  std::vector<std::vector<int>> cartan_;
  std::vector<Weight> simple_;
  std::vector<Weight> positive_;
  std::vector<std::vector<int>> positive_alpha_;
  std::vector<std::vector<int>> coroot_;
  std::unordered_map<Weight, std::pair<std::size_t, int>, WeightHash> index_;
};

inline std::shared_ptr<const RootSystem> build_root_system(std::string_view descriptor) {
  return std::make_shared<const RootSystem>(parse_type(descriptor));
}

}  // namespace gpchow
