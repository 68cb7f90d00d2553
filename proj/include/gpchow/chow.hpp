#pragma once

// Ordinary Chow ring of G/P in the Schubert basis Z_w (codimension l(w)).

#include <cstdint>
#include <map>
#include <memory>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "gpchow/error.hpp"
#include "gpchow/gkm.hpp"
#include "gpchow/parallel.hpp"
#include "gpchow/series.hpp"
#include "gpchow/weyl.hpp"

namespace gpchow {

/// Linear combination of Schubert classes Z_w on one G/P. Homogeneity is
/// not required.
template <class C>
class ChowClass {
 public:
  ChowClass() = default;
  ChowClass(std::shared_ptr<const CosetSpace> space, C like = C()) : space_(std::move(space)), like_(CoeffTraits<C>::zero(like)) {}

  static ChowClass schubert(std::shared_ptr<const CosetSpace> space, std::size_t w, const C& like = C()) {
    ChowClass x(space, like);
    if (w >= space->size()) throw ConfigError("Schubert index out of range");
    x.coeffs_[w] = CoeffTraits<C>::one(like);
    return x;
  }
  static ChowClass unit(std::shared_ptr<const CosetSpace> space, const C& like = C()) { return schubert(space, 0, like); }
  static ChowClass point(std::shared_ptr<const CosetSpace> space, const C& like = C()) {
    return schubert(space, space->top(), like);
  }
  static ChowClass from_word(std::shared_ptr<const CosetSpace> space, const Word& word, const C& like = C()) {
    return schubert(space, space->index_of_word(word), like);
  }

  const CosetSpace& space() const { return *space_; }
  std::shared_ptr<const CosetSpace> space_ptr() const { return space_; }
  const std::map<std::size_t, C>& coeffs() const { return coeffs_; }
  const C& like() const { return like_; }
  bool is_zero() const { return coeffs_.empty(); }

  C coeff(std::size_t w) const {
    auto it = coeffs_.find(w);
    return it == coeffs_.end() ? CoeffTraits<C>::zero(like_) : it->second;
  }
  void add(std::size_t w, const C& c) {
    if (!space_ || w >= space_->size()) throw ConfigError("coefficient attached to an invalid representative");
    C v = coeff(w) + c;
    if (CoeffTraits<C>::is_zero(v))
      coeffs_.erase(w);
    else
      coeffs_[w] = v;
  }

  /// Codimension if homogeneous, -1 for zero, throws otherwise.
  int grade() const {
    int g = -1;
    for (const auto& [w, c] : coeffs_) {
      if (g >= 0 && g != space_->length(w)) throw ConfigError("class is not homogeneous");
      g = space_->length(w);
    }
    return g;
  }
  ChowClass part(int grade) const {
    ChowClass x(space_, like_);
    for (const auto& [w, c] : coeffs_)
      if (space_->length(w) == grade) x.coeffs_[w] = c;
    return x;
  }
  std::vector<int> grades() const {
    std::vector<int> g;
    for (const auto& [w, c] : coeffs_)
      if (g.empty() || g.back() != space_->length(w)) g.push_back(space_->length(w));
    std::sort(g.begin(), g.end());
    g.erase(std::unique(g.begin(), g.end()), g.end());
    return g;
  }

  /// Coefficient of the class of a point.
  C degree() const { return coeff(space_->top()); }

  friend bool operator==(const ChowClass& a, const ChowClass& b) {
    if (a.coeffs_.size() != b.coeffs_.size()) return false;
    auto i = a.coeffs_.begin();
    auto j = b.coeffs_.begin();
    for (; i != a.coeffs_.end(); ++i, ++j)
      if (i->first != j->first || !(i->second == j->second)) return false;
    return true;
  }
  friend ChowClass operator+(ChowClass a, const ChowClass& b) {
    check_same(a, b);
    for (const auto& [w, c] : b.coeffs_) a.add(w, c);
    return a;
  }
  friend ChowClass operator-(ChowClass a, const ChowClass& b) {
    check_same(a, b);
    for (const auto& [w, c] : b.coeffs_) a.add(w, -c);
    return a;
  }
  ChowClass scaled(const C& s) const {
    ChowClass x(space_, like_);
    for (const auto& [w, c] : coeffs_) x.add(w, c * s);
    return x;
  }

  std::string to_string() const {
    if (coeffs_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [w, c] : coeffs_) {
      std::string s = CoeffTraits<C>::str(c);
      bool neg = s[0] == '-';
      if (neg) s = s.substr(1);
      os << (first ? (neg ? "-" : "") : (neg ? " - " : " + "));
      if (s != "1") os << s << "*";
      os << "Z" << word_string(space_->rep(w).word);
      first = false;
    }
    return os.str();
  }

  template <class D, class F>
  ChowClass<D> mapped(F f, const D& like) const {
    ChowClass<D> x(space_, like);
    for (const auto& [w, c] : coeffs_) x.add(w, f(c));
    return x;
  }

 private:
  static void check_same(const ChowClass& a, const ChowClass& b) {
    if (a.space_ != b.space_ && !(a.space_->root_system() == b.space_->root_system() && a.space_->theta() == b.space_->theta()))
      throw ConfigError("classes live on different varieties");
  }

  std::shared_ptr<const CosetSpace> space_;
  std::map<std::size_t, C> coeffs_;
  C like_{};
};

inline ChowClass<Fp> reduce_class(const ChowClass<BigInt>& x, std::uint64_t p) {
  return x.mapped<Fp>([p](const BigInt& c) { return Fp::from_big(c, p); }, Fp(0, p));
}

/// Restriction vector of sum c_u Z_u^T, the equivariant lift of an ordinary
/// class in the Schubert basis.
template <class Ring>
std::vector<typename Ring::Elem> lift(const RestrictionTable<Ring>& t, const ChowClass<typename Ring::Coeff>& x) {
  std::vector<typename Ring::Elem> v(t.size(), t.ring().zero());
  for (const auto& [u, c] : x.coeffs())
    for (const auto& [w, e] : t.row(u)) t.ring().add_to(v[w], t.ring().scale(e, c));
  return v;
}

/// Ordinary class from the coefficients of an elimination: the constant
/// terms, which sit exactly at the representatives of the top length.
template <class Ring>
ChowClass<typename Ring::Coeff> constant_terms(const RestrictionTable<Ring>& t, const Elimination<Ring>& e, int degree) {
  ChowClass<typename Ring::Coeff> x(t.space_ptr(), t.ring().like());
  for (const auto& [u, a] : e.coeffs) {
    if (t.space().length(u) != degree) continue;
    auto s = t.ring().as_scalar(a);
    if (!s) throw InconsistencyError("top coefficient is not a scalar");
    x.add(u, *s);
  }
  return x;
}

template <class Ring>
void require_depth(const RestrictionTable<Ring>& t, int degree) {
  if (degree > t.built_degree())
    throw DepthError("operation needs the restriction table to degree " + std::to_string(degree) + ", built to " +
                     std::to_string(t.built_degree()));
}

/// Equivariant product of the lifts of two homogeneous classes, expanded in
/// the Z^T basis.
template <class Ring>
Elimination<Ring> multiply_equivariant(const RestrictionTable<Ring>& t, const ChowClass<typename Ring::Coeff>& a,
                                       const ChowClass<typename Ring::Coeff>& b) {
  int d = a.grade() + b.grade();
  require_depth(t, std::min(d, t.space().dim()));
  auto x = lift(t, a);
  auto y = lift(t, b);
  for (std::size_t w = 0; w < x.size(); ++w) x[w] = t.ring().mul(x[w], y[w]);
  return eliminate(t, std::move(x), d);
}

/// Z_u . Z_v = sum of constant terms of the eliminated pointwise product.
template <class Ring>
ChowClass<typename Ring::Coeff> multiply(const RestrictionTable<Ring>& t, const ChowClass<typename Ring::Coeff>& a,
                                         const ChowClass<typename Ring::Coeff>& b) {
  using C = typename Ring::Coeff;
  ChowClass<C> out(t.space_ptr(), t.ring().like());
  for (int ga : a.grades())
    for (int gb : b.grades()) {
      int d = ga + gb;
      if (d > t.space().dim()) continue;
      auto e = multiply_equivariant(t, a.part(ga), b.part(gb));
      out = out + constant_terms(t, e, d);
    }
  return out;
}

/// All products Z_u . Z_v; entry [u][v] is filled for u <= v.
template <class Ring>
std::vector<std::vector<ChowClass<typename Ring::Coeff>>> multiplication_table(const RestrictionTable<Ring>& t) {
  using C = typename Ring::Coeff;
  const std::size_t n = t.size();
  require_depth(t, t.space().dim());
  return parallel_map<std::vector<ChowClass<C>>>(n, [&](std::size_t u) {
    std::vector<ChowClass<C>> row;
    for (std::size_t v = 0; v < n; ++v) {
      if (v < u) {
        row.emplace_back(t.space_ptr(), t.ring().like());
        continue;
      }
      row.push_back(multiply(t, ChowClass<C>::schubert(t.space_ptr(), u, t.ring().like()),
                             ChowClass<C>::schubert(t.space_ptr(), v, t.ring().like())));
    }
    return row;
  });
}

template <class Ring>
ChowClass<typename Ring::Coeff> power(const RestrictionTable<Ring>& t, const ChowClass<typename Ring::Coeff>& a, int e) {
  auto r = ChowClass<typename Ring::Coeff>::unit(t.space_ptr(), t.ring().like());
  for (int i = 0; i < e; ++i) r = multiply(t, r, a);
  return r;
}

/// Equivariant S^j of a homogeneous class: substitute omega -> omega + t omega^p
/// in every restriction, keep the t^j part and eliminate.
inline Elimination<PolyRing<Fp>> steenrod_equivariant(const RestrictionTable<PolyRing<Fp>>& t, int j, const ChowClass<Fp>& x) {
  const std::uint64_t p = t.ring().modulus();
  int g = x.grade();
  if (g < 0) return {{}, {}};
  int d = g + j * static_cast<int>(p - 1);
  require_depth(t, std::min(d, t.space().dim()));
  auto v = lift(t, x);
  for (auto& e : v) e = steenrod_component(p, j, e);
  return eliminate(t, std::move(v), d);
}

/// S^j on Ch^*(X) = CH^*(X)/p.
inline ChowClass<Fp> steenrod(const RestrictionTable<PolyRing<Fp>>& t, int j, const ChowClass<Fp>& x) {
  const std::uint64_t p = t.ring().modulus();
  ChowClass<Fp> out(t.space_ptr(), Fp(0, p));
  for (const auto& [w, c] : x.coeffs())
    if (c.p != p) throw ConfigError("class and table use different primes");
  for (int g : x.grades()) {
    int d = g + j * static_cast<int>(p - 1);
    if (d > t.space().dim()) continue;
    out = out + constant_terms(t, steenrod_equivariant(t, j, x.part(g)), d);
  }
  return out;
}

/// Steenrod operations from a series table (see series.hpp): the lift of x
/// is read off at s^j and eliminated in the s^0 part of the table.
class SeriesSteenrod {
 public:
  explicit SeriesSteenrod(const RestrictionTable<SeriesRing<BigInt>>& integral)
      : full_(reduce(integral)), base_(truncate(full_)) {}

  std::uint64_t prime() const { return full_.ring().context().p; }
  int max_j() const { return full_.ring().context().J; }
  const RestrictionTable<SeriesRing<Fp>>& full() const { return full_; }
  const RestrictionTable<SeriesRing<Fp>>& base() const { return base_; }

  ChowClass<Fp> steenrod(int j, const ChowClass<Fp>& x) const {
    const std::uint64_t p = prime();
    if (j < 0) throw ConfigError("negative Steenrod degree");
    if (j > max_j()) throw DepthError("series table carries S^j only for j <= " + std::to_string(max_j()));
    for (const auto& [w, c] : x.coeffs())
      if (c.p != p) throw ConfigError("class and table use different primes");
    ChowClass<Fp> out(base_.space_ptr(), Fp(0, p));
    for (int g : x.grades()) {
      int d = g + j * static_cast<int>(p - 1);
      if (d > base_.space().dim()) continue;
      require_depth(base_, d);
      auto v = lift(full_, x.part(g));
      std::vector<std::vector<Fp>> v0;
      v0.reserve(v.size());
      for (const auto& e : v) v0.push_back(full_.ring().coefficient(e, j));
      out = out + constant_terms(base_, eliminate(base_, std::move(v0), d), d);
    }
    return out;
  }

 private:
  static RestrictionTable<SeriesRing<Fp>> reduce(const RestrictionTable<SeriesRing<BigInt>>& t) {
    const std::uint64_t p = t.ring().context().p;
    SeriesRing<Fp> ring(t.ring().context_ptr(), Fp(0, p));
    return t.mapped(ring, [p](const std::vector<BigInt>& e) {
      std::vector<Fp> out;
      out.reserve(e.size());
      for (const auto& c : e) out.push_back(Fp::from_big(c, p));
      return out;
    });
  }
  static RestrictionTable<SeriesRing<Fp>> truncate(const RestrictionTable<SeriesRing<Fp>>& t) {
    auto ctx = std::make_shared<SeriesContext>(t.ring().context());
    ctx->J = 0;
    SeriesRing<Fp> ring(ctx, t.ring().like());
    const auto& R = t.ring();
    return t.mapped(ring, [&R](const std::vector<Fp>& e) { return R.coefficient(e, 0); });
  }

  RestrictionTable<SeriesRing<Fp>> full_;
  RestrictionTable<SeriesRing<Fp>> base_;
};

/// Weights of the tangent space at the base point: positive roots not in
/// the Levi of P.
inline std::vector<Weight> tangent_roots(const CosetSpace& space) {
  const auto& rs = space.root_system();
  std::vector<Weight> out;
  for (std::size_t b = 0; b < rs.positive_roots().size(); ++b)
    if (rs.support_meets(b, space.theta())) out.push_back(rs.positive_roots()[b]);
  return out;
}

/// Restriction vector of c_d^T of the homogeneous bundle with the given
/// weights: e_d of sigma_w(weights) at every fixed point.
template <class Ring>
std::vector<typename Ring::Elem> chern_restrictions(const RestrictionTable<Ring>& t, const std::vector<Weight>& roots, int d) {
  std::vector<typename Ring::Elem> out;
  out.reserve(t.size());
  for (std::size_t w = 0; w < t.size(); ++w) {
    std::vector<typename Ring::Elem> e(d + 1, t.ring().zero());
    e[0] = t.ring().one();
    for (const auto& r : roots) {
      auto lin = t.eval_weight(w, r);
      for (int k = d; k >= 1; --k) t.ring().add_to(e[k], t.ring().mul(e[k - 1], lin));
    }
    out.push_back(std::move(e[d]));
  }
  return out;
}

template <class Ring>
Elimination<Ring> chern_class_equivariant(const RestrictionTable<Ring>& t, const std::vector<Weight>& roots, int d) {
  require_depth(t, d);
  return eliminate(t, chern_restrictions(t, roots, d), d);
}

template <class Ring>
ChowClass<typename Ring::Coeff> chern_class(const RestrictionTable<Ring>& t, const std::vector<Weight>& roots, int d) {
  if (d > static_cast<int>(roots.size()) || d > t.space().dim()) return ChowClass<typename Ring::Coeff>(t.space_ptr(), t.ring().like());
  return constant_terms(t, chern_class_equivariant(t, roots, d), d);
}

/// Pull-back along G/Q -> G/P for Theta_P contained in Theta_Q: Z_w goes to Z_w.
template <class C>
ChowClass<C> pullback(const ChowClass<C>& x, std::shared_ptr<const CosetSpace> target) {
  const auto& src = x.space();
  if (!(src.root_system() == target->root_system())) throw ConfigError("pull-back between different groups");
  for (int i : src.theta())
    if (!contains(target->theta(), i)) throw ConfigError("pull-back needs Theta_P inside Theta_Q");
  ChowClass<C> out(target, x.like());
  for (const auto& [w, c] : x.coeffs()) out.add(target->index_of_word(src.rep(w).word), c);
  return out;
}

/// Coefficients of P(X, t) = sum over representatives of t^{l(w)}.
inline std::vector<long long> poincare_polynomial(const CosetSpace& space) { return space.poincare(); }

}  // namespace gpchow
