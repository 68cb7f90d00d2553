#pragma once

// Fixed-point restrictions i_w(Z_v^T) of equivariant Schubert classes.
//
// The table is indexed by minimal coset representatives in the fixed linear
// order. Row v holds the nonzero entries T(v, w), which only occur for
// v <= w in the Bruhat order. A class is a vector x[w] of restrictions; the
// elimination below writes it as sum_v a_v Z_v^T.

#include <algorithm>
#include <chrono>
#include <climits>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "gpchow/error.hpp"
#include "gpchow/frame.hpp"
#include "gpchow/linalg.hpp"
#include "gpchow/poly.hpp"
#include "gpchow/rootsys.hpp"
#include "gpchow/weyl.hpp"

namespace gpchow {

template <class Ring>
class RestrictionTable {
 public:
  using Elem = typename Ring::Elem;
  using Coeff = typename Ring::Coeff;
  using Row = std::vector<std::pair<std::uint32_t, Elem>>;

  RestrictionTable(std::shared_ptr<const CosetSpace> space, Ring ring) : space_(std::move(space)), ring_(std::move(ring)) {
    const auto& rs = space_->root_system();
    ring_.validate(rs);
    const std::size_t n = space_->size();
    rows_.resize(n);
    diag_.resize(n);
    factors_.resize(n);
    sigma_.reserve(n);
    for (std::size_t v = 0; v < n; ++v) {
      sigma_.push_back(space_->element(v));
      Elem d = ring_.one();
      for (auto b : space_->inversions(v)) {
        Elem f = ring_.linear(rs.positive_roots()[b]);
        d = ring_.mul(d, f);
        factors_[v].push_back(std::move(f));
      }
      diag_[v] = std::move(d);
    }
    Row r0;
    for (std::size_t w = 0; w < n; ++w) r0.emplace_back(static_cast<std::uint32_t>(w), ring_.one());
    rows_[0] = std::move(r0);
  }

  const CosetSpace& space() const { return *space_; }
  std::shared_ptr<const CosetSpace> space_ptr() const { return space_; }
  const Ring& ring() const { return ring_; }
  std::size_t size() const { return space_->size(); }
  int built_degree() const { return built_; }

  const Row& row(std::size_t v) const {
    if (space_->length(v) > built_)
      throw DepthError("restriction table built to degree " + std::to_string(built_) + ", row of length " +
                       std::to_string(space_->length(v)) + " requested");
    return rows_[v];
  }
  Elem entry(std::size_t v, std::size_t w) const {
    for (const auto& [idx, e] : row(v))
      if (idx == w) return e;
    return ring_.zero();
  }
  /// Product of the inversion roots of v (restriction of Z_v^T at v).
  const Elem& diag(std::size_t v) const { return diag_[v]; }
  const std::vector<Elem>& diag_factors(std::size_t v) const { return factors_[v]; }

  /// i_w(c(f)) = f(-w omega) for W_P-invariant f; eval_weight gives -w(mu).
  const WeylElement& element(std::size_t w) const { return sigma_[w]; }
  Elem eval_weight(std::size_t w, const Weight& mu) const { return ring_.linear(-sigma_[w].apply(mu)); }

  void set_row(std::size_t v, Row row) { rows_[v] = std::move(row); }
  void commit_degree(int m) {
    if (m != built_ + 1) throw InconsistencyError("degrees must be committed in order");
    built_ = m;
  }

  /// Same table with every entry mapped into another ring (e.g. reduction mod p).
  template <class Ring2, class F>
  RestrictionTable<Ring2> mapped(const Ring2& ring2, F f) const {
    RestrictionTable<Ring2> out(space_, ring2);
    for (int m = 1; m <= built_; ++m) {
      for (auto v : space_->of_length(m)) {
        typename RestrictionTable<Ring2>::Row r;
        for (const auto& [w, e] : rows_[v]) {
          auto g = f(e);
          if (!ring2.is_zero(g)) r.emplace_back(w, std::move(g));
        }
        out.set_row(v, std::move(r));
      }
      out.commit_degree(m);
    }
    return out;
  }

 private:
  std::shared_ptr<const CosetSpace> space_;
  Ring ring_;
  int built_ = 0;
  std::vector<Row> rows_;
  std::vector<Elem> diag_;
  std::vector<std::vector<Elem>> factors_;
  std::vector<WeylElement> sigma_;
};

/// Reduction of an integral polynomial table modulo p.
inline RestrictionTable<PolyRing<Fp>> reduce_table(const RestrictionTable<PolyRing<BigInt>>& t, std::uint64_t p) {
  if (!is_prime(p)) throw ConfigError(std::to_string(p) + " is not prime");
  PolyRing<Fp> ring(t.ring().frame(), Fp(0, p));
  return t.mapped(ring, [p](const IntPoly& f) { return reduce_mod(f, p); });
}

template <class Ring>
struct Elimination {
  std::vector<std::pair<std::size_t, typename Ring::Elem>> coeffs;
  std::vector<typename Ring::Elem> remainder;
};

/// Writes the restriction vector x (homogeneous of the given degree) as
/// sum_v a_v Z_v^T. Representatives are visited in the linear order; at each
/// u with x[u] != 0 the coefficient is x[u] / i_u(Z_u^T) and a_u Z_u^T is
/// subtracted. With below_length set, stops before the first rep of that
/// length and returns what is left; otherwise the remainder must vanish.
template <class Ring>
Elimination<Ring> eliminate(const RestrictionTable<Ring>& t, std::vector<typename Ring::Elem> x, int degree,
                            int below_length = INT_MAX) {
  const auto& space = t.space();
  if (x.size() != space.size()) throw ConfigError("restriction vector has wrong length");
  Elimination<Ring> out;
  const auto& R = t.ring();
  const bool partial = below_length != INT_MAX;
  const int stop = std::min(below_length, degree + 1);
  for (std::size_t u = 0; u < space.size(); ++u) {
    if (space.length(u) >= stop) break;
    if (R.is_zero(x[u])) continue;
    const auto& row = t.row(u);
    auto b = R.div_factors(x[u], t.diag_factors(u));
    for (const auto& [w, e] : row) R.sub_mul(x[w], b, e);
    if (!R.is_zero(x[u])) throw InconsistencyError("elimination step did not clear its pivot");
    out.coeffs.emplace_back(u, std::move(b));
  }
  if (!partial) {
    for (std::size_t w = 0; w < space.size(); ++w)
      if (!R.is_zero(x[w]))
        throw InconsistencyError("nonzero remainder after elimination at representative " + word_string(space.rep(w).word));
  }
  out.remainder = std::move(x);
  return out;
}

/// A W_P-invariant polynomial used to produce candidate classes c(f).
struct BasicInvariant {
  int degree = 1;
  int fixed = 0;      // omega_fixed (1-based) when nonzero
  int orbit = -1;     // power sum over this orbit otherwise
  int power = 0;
  std::string label;
};

/// Orbit power sums of fundamental weights and W_P-fixed fundamental
/// weights; orbits are ordered by size and released tier by tier.
class InvariantSystem {
 public:
  InvariantSystem(std::shared_ptr<const RootSystem> rs, const IndexSet& theta, int max_degree)
      : rs_(std::move(rs)), theta_(normalize(theta)), max_degree_(max_degree) {
    levi_ = complement(*rs_, theta_);
    for (int i : theta_) basics_.push_back({1, i, -1, 1, "w" + std::to_string(i)});
    for (int j : levi_) {
      std::vector<Weight> orb = orbit(rs_->fundamental_weight(j));
      bool dup = false;
      for (const auto& o : orbits_)
        if (std::find(o.begin(), o.end(), orb.front()) != o.end()) dup = true;
      if (!dup) {
        orbits_.push_back(std::move(orb));
        orbit_source_.push_back(j);
      }
    }
    order_.resize(orbits_.size());
    for (std::size_t k = 0; k < order_.size(); ++k) order_[k] = k;
    std::stable_sort(order_.begin(), order_.end(), [&](auto a, auto b) { return orbits_[a].size() < orbits_[b].size(); });
    if (!order_.empty()) release_next();
  }

  const std::vector<BasicInvariant>& basics() const { return basics_; }
  const std::vector<std::vector<Weight>>& orbits() const { return orbits_; }
  bool exhausted() const { return released_ >= order_.size(); }
  std::size_t released() const { return released_; }

  /// Adds the power sums of the next orbit; returns false if none is left.
  bool release_next() {
    if (released_ >= order_.size()) return false;
    std::size_t o = order_[released_++];
    int top = std::min<int>(static_cast<int>(orbits_[o].size()), max_degree_);
    for (int d = 2; d <= top; ++d)
      basics_.push_back({d, 0, static_cast<int>(o), d, "p" + std::to_string(d) + "(W_P w" + std::to_string(orbit_source_[o]) + ")"});
    return true;
  }

  std::vector<Weight> orbit(const Weight& start) const {
    std::vector<Weight> out{start};
    std::set<Weight> seen{start};
    for (std::size_t k = 0; k < out.size(); ++k)
      for (int i : levi_) {
        Weight nu = rs_->reflect(i, out[k]);
        if (seen.insert(nu).second) out.push_back(nu);
      }
    std::sort(out.begin(), out.end());
    return out;
  }

  /// The basic invariant as a polynomial in omega_1..omega_n.
  template <class C>
  MultiPoly<C> polynomial(const BasicInvariant& b, const C& like = C()) const {
    const int n = rs_->rank();
    if (b.fixed) return MultiPoly<C>::variable(n, b.fixed - 1, like);
    MultiPoly<C> s(n, like);
    for (const auto& mu : orbits_[b.orbit]) s += weight_poly<C>(mu, like).pow(b.power);
    return s;
  }

  /// Value of i_w(c(b)) in the table's ring.
  template <class Ring>
  std::vector<typename Ring::Elem> evaluate(const RestrictionTable<Ring>& t, const BasicInvariant& b) const {
    std::vector<typename Ring::Elem> out;
    out.reserve(t.size());
    for (std::size_t w = 0; w < t.size(); ++w) {
      if (b.fixed) {
        out.push_back(t.eval_weight(w, rs_->fundamental_weight(b.fixed)));
        continue;
      }
      auto s = t.ring().zero();
      for (const auto& mu : orbits_[b.orbit]) t.ring().add_to(s, t.ring().pow(t.eval_weight(w, mu), b.power));
      out.push_back(std::move(s));
    }
    return out;
  }

 private:
  std::shared_ptr<const RootSystem> rs_;
  IndexSet theta_;
  IndexSet levi_;
  int max_degree_;
  std::vector<BasicInvariant> basics_;
  std::vector<std::vector<Weight>> orbits_;
  std::vector<int> orbit_source_;
  std::vector<std::size_t> order_;
  std::size_t released_ = 0;
};

/// Products of basic invariants of total degree m, as polynomials over the
/// rationals. Spanning is not assumed; the table builder checks ranks.
inline std::vector<RatPoly> invariant_generators(std::shared_ptr<const RootSystem> rs, const IndexSet& theta, int m) {
  const int n = rs->rank();
  if (m < 0) throw ConfigError("negative degree");
  if (m == 0) return {RatPoly::one(n)};
  InvariantSystem inv(rs, theta, m);
  while (inv.release_next()) {
  }
  const auto& basics = inv.basics();
  std::vector<RatPoly> polys;
  for (const auto& b : basics) polys.push_back(inv.polynomial<Rational>(b));
  std::vector<RatPoly> out;
  std::function<void(std::size_t, int, RatPoly)> rec = [&](std::size_t start, int left, RatPoly acc) {
    if (left == 0) {
      out.push_back(acc);
      return;
    }
    for (std::size_t k = start; k < basics.size(); ++k)
      if (basics[k].degree <= left) rec(k, left - basics[k].degree, acc * polys[k]);
  };
  rec(0, m, RatPoly::one(n));
  return out;
}

/// Hooks for checkpointing: called after each committed degree, and asked
/// for a previously saved degree before building it.
template <class Ring>
struct BuildHooks {
  std::function<void(const RestrictionTable<Ring>&, int, const std::vector<std::vector<int>>&)> save;
  std::function<bool(RestrictionTable<Ring>&, int, std::vector<std::vector<int>>&)> load;
  std::function<void(const std::string&)> log;
};

namespace detail {

template <class Ring>
class TableBuilder {
 public:
  using Elem = typename Ring::Elem;
  using C = typename Ring::Coeff;
  using F = typename FieldOf<C>::F;
  using Recipe = std::vector<int>;  // sorted indices into basics

  TableBuilder(RestrictionTable<Ring>& t, int max_degree, BuildHooks<Ring> hooks)
      : t_(t), inv_(t.space().root_system_ptr(), t.space().theta(), max_degree), max_degree_(max_degree), hooks_(std::move(hooks)) {
    chosen_[0] = {Recipe{}};
  }

  void run() {
    const int top = std::min(max_degree_, t_.space().dim());
    for (int m = t_.built_degree() + 1; m <= top; ++m) {
      std::vector<Recipe> recipes;
      if (hooks_.load && hooks_.load(t_, m, recipes)) {
        int need = -1;
        for (const auto& r : recipes)
          for (int b : r) need = std::max(need, b);
        while (need >= static_cast<int>(inv_.basics().size()))
          if (!inv_.release_next()) throw CacheError("cached recipe refers to an unknown invariant");
        chosen_[m] = std::move(recipes);
        log("degree " + std::to_string(m) + " loaded from cache");
        continue;
      }
      auto start = std::chrono::steady_clock::now();
      build_degree(m);
      double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
      log("degree " + std::to_string(m) + " built: " + std::to_string(t_.space().count_of_length(m)) + " classes, " +
          std::to_string(secs) + " s");
      if (hooks_.save) hooks_.save(t_, m, chosen_[m]);
    }
  }

 private:
  void log(const std::string& s) {
    if (hooks_.log) hooks_.log(s);
  }

  const std::vector<Elem>& basic_eval(int b) {
    auto it = basic_cache_.find(b);
    if (it != basic_cache_.end()) return it->second;
    return basic_cache_[b] = inv_.evaluate(t_, inv_.basics()[b]);
  }

  std::vector<Elem> recipe_eval(const Recipe& r) {
    std::vector<Elem> x(t_.size(), t_.ring().one());
    for (int b : r) {
      const auto& e = basic_eval(b);
      for (std::size_t w = 0; w < x.size(); ++w) x[w] = t_.ring().mul(x[w], e[w]);
    }
    return x;
  }

  int recipe_degree(const Recipe& r) const {
    int d = 0;
    for (int b : r) d += inv_.basics()[b].degree;
    return d;
  }

  void build_degree(int m) {
    const auto& space = t_.space();
    const auto& targets = space.of_length(m);
    const std::size_t N = targets.size();
    std::vector<std::size_t> col(space.size(), SIZE_MAX);
    for (std::size_t k = 0; k < N; ++k) col[targets[k]] = k;

    IncrementalEchelon<F> ech(N);
    std::vector<std::vector<F>> arows;
    std::vector<std::vector<Elem>> ys;
    std::vector<Recipe> accepted;
    std::set<Recipe> tried;

    auto try_recipe = [&](const Recipe& r) {
      if (ech.rank() == N || !tried.insert(r).second) return;
      auto x = recipe_eval(r);
      auto el = eliminate(t_, std::move(x), m, m);
      std::vector<F> a(N);
      for (std::size_t k = 0; k < N; ++k) {
        std::size_t v = targets[k];
        auto q = t_.ring().div_factors(el.remainder[v], t_.diag_factors(v));
        auto s = t_.ring().as_scalar(q);
        if (!s) throw InconsistencyError("top coefficient of an invariant class is not a scalar");
        a[k] = FieldOf<C>::embed(*s, t_.ring().like());
      }
      if (ech.add(a)) {
        arows.push_back(std::move(a));
        ys.push_back(std::move(el.remainder));
        accepted.push_back(r);
      }
    };

    auto sweep = [&] {
      const auto& basics = inv_.basics();
      for (int d = 1; d <= m && ech.rank() < N; ++d) {
        if (!chosen_.count(m - d)) continue;
        for (std::size_t b = 0; b < basics.size() && ech.rank() < N; ++b) {
          if (basics[b].degree != d) continue;
          for (const auto& c : chosen_[m - d]) {
            if (ech.rank() == N) break;
            Recipe r = c;
            r.push_back(static_cast<int>(b));
            std::sort(r.begin(), r.end());
            try_recipe(r);
          }
        }
      }
    };

    sweep();
    while (ech.rank() < N && inv_.release_next()) {
      log("degree " + std::to_string(m) + ": rank " + std::to_string(ech.rank()) + " of " + std::to_string(N) +
          ", adding orbit power sums");
      sweep();
    }
    if (ech.rank() < N) {
      throw InconsistencyError("invariant classes of degree " + std::to_string(m) + " on " + space.root_system().name() +
                               "/P" + set_string(space.theta()) + " reach rank " + std::to_string(ech.rank()) + " of " +
                               std::to_string(N));
    }

    auto inv = invert_matrix(arows);
    for (std::size_t k = 0; k < N; ++k) {
      std::size_t v = targets[k];
      auto [ints, den] = integral_row<C>(inv[k], t_.ring().like());
      typename RestrictionTable<Ring>::Row row;
      for (std::size_t w = 0; w < space.size(); ++w) {
        if (space.length(w) < m) {
          for (const auto& y : ys)
            if (!t_.ring().is_zero(y[w])) throw InconsistencyError("remainder has entries below the current degree");
          continue;
        }
        Elem s = t_.ring().zero();
        for (std::size_t j = 0; j < N; ++j)
          if (!CoeffTraits<C>::is_zero(ints[j]) && !t_.ring().is_zero(ys[j][w])) t_.ring().add_to(s, t_.ring().scale(ys[j][w], ints[j]));
        if (t_.ring().is_zero(s)) continue;
        s = t_.ring().div_scalar(s, den);
        if (!space.bruhat_leq(v, w))
          throw InconsistencyError("nonzero restriction outside the Bruhat upper set of " + word_string(space.rep(v).word));
        if (!t_.ring().has_degree(s, m)) throw InconsistencyError("restriction is not homogeneous of the expected degree");
        row.emplace_back(static_cast<std::uint32_t>(w), std::move(s));
      }
      if (row.empty() || row.front().first != v || !(row.front().second == t_.diag(v)))
        throw InconsistencyError("diagonal restriction of " + word_string(space.rep(v).word) + " is not the inversion product");
      t_.set_row(v, std::move(row));
    }
    t_.commit_degree(m);
    chosen_[m] = std::move(accepted);
    // candidate evaluations for degrees that can no longer be used
    (void)col;
  }

  RestrictionTable<Ring>& t_;
  InvariantSystem inv_;
  int max_degree_;
  BuildHooks<Ring> hooks_;
  std::map<int, std::vector<Recipe>> chosen_;
  std::map<int, std::vector<Elem>> basic_cache_;
};

}  // namespace detail

/// Builds the rows of every representative of length <= max_degree.
template <class Ring>
void extend_table(RestrictionTable<Ring>& t, int max_degree, BuildHooks<Ring> hooks = {}) {
  detail::TableBuilder<Ring> b(t, max_degree, std::move(hooks));
  b.run();
}

template <class Ring>
RestrictionTable<Ring> build_table(std::shared_ptr<const CosetSpace> space, Ring ring, int max_degree,
                                   BuildHooks<Ring> hooks = {}) {
  RestrictionTable<Ring> t(std::move(space), std::move(ring));
  extend_table(t, max_degree, std::move(hooks));
  return t;
}

/// Exact table over the integers in the omega variables.
inline RestrictionTable<PolyRing<BigInt>> build_exact_table(std::shared_ptr<const CosetSpace> space, int max_degree) {
  Frame f = Frame::identity(space->root_system().rank());
  return build_table(space, PolyRing<BigInt>(f), max_degree);
}

/// i_w(Z_v^T) for the inversion root product at the diagonal.
inline IntPoly diagonal_restriction(const CosetSpace& space, std::size_t w) {
  const auto& rs = space.root_system();
  IntPoly d = IntPoly::one(rs.rank());
  for (auto b : space.inversions(w)) d *= weight_poly(rs.positive_roots()[b]);
  return d;
}

/// Independent computation of i_w(Z_v^T) by the subword formula: the sum,
/// over subwords of the canonical reduced word a_1..a_l of w that are
/// reduced words of v, of prod beta_j with
/// beta_j = s_{a_1} ... s_{a_{j-1}}(alpha_{a_j}).
inline IntPoly billey_restriction(const CosetSpace& space, std::size_t v, std::size_t w) {
  const auto& rs = space.root_system();
  auto rsp = space.root_system_ptr();
  const Word& a = space.rep(w).word;
  const int l = static_cast<int>(a.size());
  const int target_len = space.length(v);
  Weight target = space.element(v).apply(rho(rs));
  std::vector<IntPoly> beta;
  {
    WeylElement prefix = WeylElement::identity(rsp);
    for (int j = 0; j < l; ++j) {
      beta.push_back(weight_poly(prefix.apply(rs.simple_root(a[j]))));
      prefix = prefix * WeylElement::simple(rsp, a[j]);
    }
  }
  IntPoly total(rs.rank());
  // u is tracked through u(rho); appending s_i is reduced iff u(alpha_i) > 0
  std::function<void(int, int, WeylElement, IntPoly)> rec = [&](int pos, int taken, WeylElement u, IntPoly prod) {
    if (taken == target_len) {
      if (u.apply(rho(rs)) == target) total += prod;
      return;
    }
    if (l - pos < target_len - taken) return;
    for (int j = pos; j < l; ++j) {
      if (u.is_right_descent(a[j])) continue;
      rec(j + 1, taken + 1, u * WeylElement::simple(rsp, a[j]), prod * beta[j]);
    }
  };
  rec(0, 0, WeylElement::identity(rsp), IntPoly::one(rs.rank()));
  return total;
}

}  // namespace gpchow
