#pragma once

// Acceptance suites. Each criterion returns one result; expected values are
// written out literally from the worked examples, the rest is checked
// against independent computations (subword formula, coset enumeration).

#include <chrono>
#include <functional>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "gpchow/cache.hpp"
#include "gpchow/chow.hpp"
#include "gpchow/cmprod.hpp"
#include "gpchow/gkm.hpp"
#include "gpchow/motcheck.hpp"
#include "gpchow/parallel.hpp"
#include "gpchow/series.hpp"

namespace gpchow {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  std::string detail;
  double seconds = 0;
};

inline nlohmann::json to_json(const CriterionResult& r) {
  return {{"id", r.id}, {"name", r.name}, {"status", r.pass ? "pass" : "fail"}, {"detail", r.detail}, {"seconds", r.seconds}};
}

struct VerifyOptions {
  std::string cache_dir;
  std::function<void(const std::string&)> log;
};

namespace detail {

/// Collects failed sub-checks of one criterion.
class Report {
 public:
  void check(bool ok, const std::string& what) {
    ++total_;
    if (!ok) failures_.push_back(what);
  }
  bool pass() const { return failures_.empty(); }
  std::string summary() const {
    std::ostringstream os;
    os << total_ - failures_.size() << "/" << total_ << " checks";
    for (std::size_t i = 0; i < failures_.size() && i < 8; ++i) os << (i ? "; " : ": ") << failures_[i];
    if (failures_.size() > 8) os << "; ...";
    return os.str();
  }

 private:
  int total_ = 0;
  std::vector<std::string> failures_;
};

template <class F>
CriterionResult run_criterion(int id, const std::string& name, double budget_seconds, F body) {
  auto start = std::chrono::steady_clock::now();
  Report rep;
  body(rep);
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  rep.check(secs <= budget_seconds, "runtime " + std::to_string(secs) + " s over budget " + std::to_string(budget_seconds) + " s");
  return {id, name, rep.pass(), rep.summary(), secs};
}

/// c * w1^a * w2^b
inline IntPoly g2mono(long c, int a, int b) { return IntPoly::monomial(2, {a, b}, BigInt(c)); }

template <class Ring>
std::map<std::size_t, typename Ring::Elem> coeff_map(const Elimination<Ring>& e, const Ring& ring) {
  std::map<std::size_t, typename Ring::Elem> m;
  for (const auto& [u, a] : e.coeffs)
    if (!ring.is_zero(a)) m[u] = a;
  return m;
}

struct G2Setup {
  std::shared_ptr<const CosetSpace> space;
  RestrictionTable<PolyRing<BigInt>> table;
  std::size_t idx(const Word& w) const { return space->index_of_word(w); }
};

inline G2Setup g2_setup() {
  auto rs = build_root_system("G2");
  auto space = coset_space(rs, {2});
  return {space, build_exact_table(space, space->dim())};
}

}  // namespace detail

/// Restriction vectors of Z_[], Z_[2], Z_[1,2,1,2] on G2/P2.
inline CriterionResult criterion_g2_restrictions() {
  return detail::run_criterion(1, "G2/P2 restriction table", 1.0, [](detail::Report& rep) {
    using detail::g2mono;
    auto g = detail::g2_setup();
    const std::vector<Word> listing = {{2, 1, 2, 1, 2}, {1, 2, 1, 2}, {2, 1, 2}, {1, 2}, {2}, {}};
    auto expect = [&](const Word& v, const std::vector<IntPoly>& vals) {
      for (std::size_t k = 0; k < listing.size(); ++k) {
        auto got = g.table.entry(g.idx(v), g.idx(listing[k]));
        rep.check(got == vals[k], "i_" + word_string(listing[k]) + "(Z" + word_string(v) + ") = " + got.to_string(omega_names(2)) +
                                      ", expected " + vals[k].to_string(omega_names(2)));
      }
    };
    IntPoly one = IntPoly::one(2), zero(2);
    expect({}, std::vector<IntPoly>(6, one));
    expect({2}, {g2mono(2, 0, 1), g2mono(3, 1, 0), g2mono(-3, 1, 0) + g2mono(3, 0, 1), g2mono(3, 1, 0) + g2mono(-1, 0, 1),
                 g2mono(-3, 1, 0) + g2mono(2, 0, 1), zero});
    expect({1, 2, 1, 2}, {g2mono(4, 2, 2) + g2mono(-3, 3, 1) + g2mono(-1, 1, 3), g2mono(6, 3, 1) + g2mono(-5, 2, 2) + g2mono(1, 1, 3),
                          zero, zero, zero, zero});
  });
}

/// Multiplication table, the equivariant square of Z_[2], Poincare duality.
inline CriterionResult criterion_g2_multiplication() {
  return detail::run_criterion(2, "G2/P2 multiplication", 1.0, [](detail::Report& rep) {
    using detail::g2mono;
    auto g = detail::g2_setup();
    const auto& X = g.space;
    auto table = multiplication_table(g.table);
    auto z2 = ChowClass<BigInt>::from_word(X, {2});
    rep.check(table[g.idx({2})][g.idx({2})] == ChowClass<BigInt>::from_word(X, {1, 2}).scaled(BigInt(3)),
              "Z[2]^2 = " + table[g.idx({2})][g.idx({2})].to_string());
    auto eq = detail::coeff_map(multiply_equivariant(g.table, z2, z2), g.table.ring());
    std::map<std::size_t, IntPoly> want{{g.idx({2}), g2mono(2, 0, 1) + g2mono(-3, 1, 0)}, {g.idx({1, 2}), g2mono(3, 0, 0)}};
    rep.check(eq == want, "equivariant square of Z[2]");
    for (std::size_t u = 0; u < X->size(); ++u)
      for (std::size_t w = 0; w < X->size(); ++w) {
        std::size_t a = X->x_to_z(u), b = w;
        const auto& prod = a <= b ? table[a][b] : table[b][a];
        rep.check(prod.degree() == (u == w ? 1 : 0),
                  "deg X" + word_string(X->rep(u).word) + " . Z" + word_string(X->rep(w).word) + " = " + prod.degree().get_str());
      }
  });
}

inline CriterionResult criterion_g2_steenrod() {
  return detail::run_criterion(3, "G2/P2 Steenrod operations mod 2", 1.0, [](detail::Report& rep) {
    auto g = detail::g2_setup();
    auto t2 = reduce_table(g.table, 2);
    const Fp z(0, 2);
    auto x = ChowClass<Fp>::from_word(g.space, {1, 2, 1, 2}, z);
    auto eq = detail::coeff_map(steenrod_equivariant(t2, 1, x), t2.ring());
    std::map<std::size_t, MultiPoly<Fp>> want{{g.idx({1, 2, 1, 2}), MultiPoly<Fp>::variable(2, 1, z)},
                                              {g.idx({2, 1, 2, 1, 2}), MultiPoly<Fp>::one(2, z)}};
    std::string got;
    for (const auto& [u, a] : eq) got += word_string(g.space->rep(u).word) + ":" + a.to_string(omega_names(2)) + " ";
    rep.check(eq == want, "equivariant S^1(Z[1,2,1,2]) = " + got);
    auto s = steenrod(t2, 1, x);
    rep.check(s == ChowClass<Fp>::point(g.space, z), "S^1(Z[1,2,1,2]) = " + s.to_string());
  });
}

inline CriterionResult criterion_g2_chern() {
  return detail::run_criterion(4, "G2/P2 Chern classes", 1.0, [](detail::Report& rep) {
    using detail::g2mono;
    auto g = detail::g2_setup();
    auto roots = tangent_roots(*g.space);
    auto eq = detail::coeff_map(chern_class_equivariant(g.table, roots, 2), g.table.ring());
    std::map<std::size_t, IntPoly> want{{g.idx({}), g2mono(10, 1, 1) + g2mono(-10, 2, 0) + g2mono(1, 0, 2)},
                                        {g.idx({2}), g2mono(-13, 1, 0)},
                                        {g.idx({1, 2}), g2mono(13, 0, 0)}};
    std::string got;
    for (const auto& [u, a] : eq) got += word_string(g.space->rep(u).word) + ":" + a.to_string(omega_names(2)) + " ";
    rep.check(eq == want, "c2^T = " + got);
    auto c2 = chern_class(g.table, roots, 2);
    rep.check(c2 == ChowClass<BigInt>::from_word(g.space, {1, 2}).scaled(BigInt(13)), "c2 = " + c2.to_string());
  });
}

/// Elimination-built tables against the subword formula.
inline CriterionResult criterion_oracle() {
  return detail::run_criterion(5, "elimination vs subword formula", 30.0, [](detail::Report& rep) {
    const std::vector<std::pair<std::string, IndexSet>> cases = {{"A2", {1, 2}}, {"A3", {1, 2, 3}}, {"B2", {1}},
                                                                 {"B2", {2}},    {"G2", {1}},       {"G2", {2}}};
    for (const auto& [type, theta] : cases) {
      auto X = coset_space(build_root_system(type), theta);
      auto t = build_exact_table(X, X->dim());
      int bad = 0;
      for (std::size_t v = 0; v < X->size(); ++v)
        for (std::size_t w = 0; w < X->size(); ++w)
          if (!(t.entry(v, w) == billey_restriction(*X, v, w))) ++bad;
      rep.check(bad == 0, type + "/P" + set_string(theta) + ": " + std::to_string(bad) + " entries differ");
    }
  });
}

/// Poincare polynomials and the E6 tables.
inline CriterionResult criterion_e6_poincare() {
  return detail::run_criterion(6, "E6 Poincare polynomial identities", 60.0, [](detail::Report& rep) {
    auto rs = build_root_system("E6");
    auto poincare = [&](const IndexSet& th) {
      if (th == IndexSet{2} || th == IndexSet{4}) return UPoly(coset_space(rs, th)->poincare());
      return poincare_by_heights(*rs, th);
    };
    for (const IndexSet& th : {IndexSet{2}, IndexSet{4}})
      rep.check(poincare_by_heights(*rs, th) == UPoly(coset_space(rs, th)->poincare()),
                "height formula vs enumeration for P" + set_string(th));
    for (const auto& c : verify_e6_tables(poincare))
      rep.check(c.pass, c.name + (c.residual.is_zero() ? "" : " residual " + c.residual.to_string()) +
                            (c.detail.empty() ? "" : " (" + c.detail + ")"));
  });
}

inline CriterionResult criterion_decompositions() {
  return detail::run_criterion(7, "product decompositions", 60.0, [](detail::Report& rep) {
    auto summary = [](const ProductDecomposition& d) {
      std::vector<std::pair<int, IndexSet>> s;
      for (const auto& x : d.summands) s.push_back({x.shift, x.type});
      return s;
    };
    auto show = [](const std::vector<std::pair<int, IndexSet>>& s) {
      std::string out;
      for (const auto& [k, th] : s) out += "(" + set_string(th) + "," + std::to_string(k) + ")";
      return out;
    };
    auto b2 = decompose_product(build_root_system("B2"), {1}, {1});
    std::vector<std::pair<int, IndexSet>> want_b2{{0, {1}}, {1, {1, 2}}, {3, {1}}};
    rep.check(summary(b2) == want_b2, "B2: " + show(summary(b2)));
    rep.check(decomposition_poincare(b2) == poly_trim(poly_mul(coset_space(b2.rs, {1})->poincare(), coset_space(b2.rs, {1})->poincare())),
              "B2 Poincare bookkeeping");
    auto e6 = decompose_product(build_root_system("E6"), {2}, {2});
    std::vector<std::pair<int, IndexSet>> want_e6{{0, {2}}, {1, {2, 4}}, {6, {1, 2, 6}}, {11, {2, 4}}, {21, {2}}};
    rep.check(summary(e6) == want_e6, "E6: " + show(summary(e6)));
    rep.check(decomposition_poincare(e6) == poly_trim(poly_mul(coset_space(e6.rs, {2})->poincare(), coset_space(e6.rs, {2})->poincare())),
              "E6 Poincare bookkeeping");
  });
}

/// E7/P7 mod 2: Ch^9 basis, top products with S^8, and h^9 against the
/// cycle dual to the Tate summand of degree 9.
inline CriterionResult criterion_e7(const VerifyOptions& opt = {}) {
  return detail::run_criterion(8, "E7/P7 mod 2 Steenrod pairings", 15 * 60.0, [&](detail::Report& rep) {
    auto rs = build_root_system("E7");
    auto X = coset_space(rs, {7});
    auto t = cached_table(X, ScalarRing<BigInt>(Frame::generic(*rs, 0)), X->dim(), opt.cache_dir, opt.log);
    auto ts = cached_table(X, SeriesRing<BigInt>(series_context(*rs, 2, 8)), 17, opt.cache_dir, opt.log);
    SeriesSteenrod S(ts);
    const Fp z(0, 2);
    auto mul = [&](const ChowClass<Fp>& a, const ChowClass<Fp>& b) {
      auto up = [](const Fp& c) { return BigInt(static_cast<unsigned long>(c.v)); };
      return reduce_class(multiply(t, a.mapped<BigInt>(up, BigInt(0)), b.mapped<BigInt>(up, BigInt(0))), 2);
    };
    auto h = ChowClass<Fp>::from_word(X, {7}, z);
    std::vector<ChowClass<Fp>> hp{ChowClass<Fp>::unit(X, z)};
    for (int i = 1; i <= 9; ++i) hp.push_back(mul(hp.back(), h));
    const auto pt = ChowClass<Fp>::point(X, z);
    const auto& deg9 = X->of_length(9);
    for (auto i5 : X->of_length(5))
      for (auto i9 : deg9) {
        auto e5 = ChowClass<Fp>::schubert(X, i5, z), e9 = ChowClass<Fp>::schubert(X, i9, z);
        std::string tag = "e5=" + word_string(X->rep(i5).word) + " e9=" + word_string(X->rep(i9).word);
        auto e5h4 = mul(e5, hp[4]);
        IncrementalEchelon<Fp> ech(deg9.size());
        for (const auto* c : {&hp[9], &e5h4, &e9}) {
          std::vector<Fp> row;
          for (auto v : deg9) row.push_back(c->coeff(v));
          ech.add(row);
        }
        rep.check(ech.rank() == 3 && deg9.size() == 3, tag + ": rank " + std::to_string(ech.rank()));
        auto e5h5 = mul(e5, hp[5]), e9h = mul(e9, h);
        rep.check(mul(e5h5, S.steenrod(8, e5h4)) == pt, tag + ": e5h^5 S^8(e5h^4)");
        rep.check(mul(e9h, S.steenrod(8, e9)) == pt, tag + ": e9h S^8(e9)");
        rep.check(mul(e5h5 + e9h, S.steenrod(8, e5h4 + e9)) == pt, tag + ": (e5h^5+e9h) S^8(e5h^4+e9)");
      }
    auto dual = ChowClass<Fp>::from_word(X, {1, 3, 4, 2, 5, 4, 3, 1, 7, 6, 5, 4, 2, 3, 4, 5, 6, 7}, z);
    auto prod = mul(hp[9], dual);
    rep.check(prod.degree().v == 0, "h^9 . Z[1,3,4,2,5,4,3,1,7,6,5,4,2,3,4,5,6,7] = " + prod.to_string());
  });
}

/// E6: alpha = h1^6 c9 on Y = E6/P{1,2,6} acting on Ch(E6/P2) mod 3.
inline CriterionResult criterion_cm(const VerifyOptions& opt = {}) {
  return detail::run_criterion(9, "E6 mod 3 projector from h1^6 c9", 60 * 60.0, [&](detail::Report& rep) {
    auto rs = build_root_system("E6");
    auto X = coset_space(rs, {2});
    auto d = decompose_product(rs, {2}, {2});
    const ProductSummand* s = nullptr;
    for (const auto& x : d.summands)
      if (x.type == IndexSet{1, 2, 6}) s = &x;
    rep.check(s != nullptr, "summand of type {1,2,6}");
    if (!s) return;
    auto Y = coset_space(rs, s->type);
    Frame f = Frame::generic(*rs, 0);
    auto tY = cached_table(Y, ScalarRing<BigInt>(f), Y->dim(), opt.cache_dir, opt.log);
    auto tX = cached_table(X, ScalarRing<BigInt>(f), X->dim(), opt.cache_dir, opt.log);
    auto h1 = ChowClass<BigInt>::from_word(Y, {1});
    auto alpha = multiply(tY, power(tY, h1, 6), chern_class(tY, tangent_roots(*Y), 9));
    rep.check(!alpha.is_zero() && alpha.grades() == std::vector<int>{15}, "alpha is a nonzero class of codimension 15");
    auto cols = parallel_map<ChowClass<Fp>>(X->size(), [&](std::size_t u) {
      return reduce_class(alpha_star(tY, alpha, s->w, ChowClass<BigInt>::schubert(X, u), X), 3);
    });
    auto m = EndoMatrix<Fp>::from_columns(X, cols, Fp(0, 3));
    rep.check(m.respects_shift(0), "alpha_* preserves codimension");
    for (std::size_t u = 0; u < X->size(); ++u)
      if (X->length(u) <= 3)
        rep.check(cols[u].is_zero(), "alpha_*(Z" + word_string(X->rep(u).word) + ") = " + cols[u].to_string());
    auto h2 = ChowClass<BigInt>::from_word(X, {2});
    auto h24 = reduce_class(power(tX, h2, 4), 3);
    auto img = m.apply(h24);
    rep.check(img == h24.scaled(Fp(2, 3)), "alpha_*(h2^4) = " + img.to_string() + ", h2^4 = " + h24.to_string());
    auto e = iterate_to_idempotent(m);
    rep.check(e.lowest_grade() == 4, "lowest grade of the projector is " + std::to_string(e.lowest_grade()));
  });
}

/// Property suites: GKM divisibility, positivity, Cartan formula, Rost test.
inline CriterionResult criterion_properties() {
  return detail::run_criterion(10, "property suites", 120.0, [](detail::Report& rep) {
    // GKM: i_w - i_{s_a w} divisible by a, Borel cases
    for (const std::string type : {"A2", "A3", "B2", "C3", "G2"}) {
      auto rs = build_root_system(type);
      IndexSet all;
      for (int i = 1; i <= rs->rank(); ++i) all.push_back(i);
      auto X = coset_space(rs, all);
      auto t = build_exact_table(X, X->dim());
      int bad = 0;
      for (std::size_t b = 0; b < rs->positive_roots().size(); ++b) {
        const Weight& a = rs->positive_roots()[b];
        auto ap = weight_poly(a);
        auto sa = reflection(rs, a);
        for (std::size_t w = 0; w < X->size(); ++w) {
          std::size_t w2 = X->coset_of(sa * X->element(w));
          for (std::size_t v = 0; v < X->size(); ++v) {
            auto diff = t.entry(v, w) - t.entry(v, w2);
            if (!diff.is_zero() && !diff.divisible_by(ap)) ++bad;
          }
        }
      }
      rep.check(bad == 0, "GKM divisibility on " + type + ": " + std::to_string(bad) + " failures");
    }
    // Schubert positivity of every structure constant
    const std::vector<std::pair<std::string, IndexSet>> pos_cases = {{"G2", {1}}, {"G2", {2}}, {"G2", {1, 2}}, {"B3", {1, 2, 3}},
                                                                     {"C3", {2}}, {"A4", {2}}, {"E6", {1}},     {"D4", {2}}};
    for (const auto& [type, theta] : pos_cases) {
      auto rs = build_root_system(type);
      auto X = coset_space(rs, theta);
      auto t = build_table(X, ScalarRing<BigInt>(Frame::generic(*rs, 0)), X->dim());
      auto table = multiplication_table(t);
      int neg = 0;
      for (const auto& row : table)
        for (const auto& c : row)
          for (const auto& [w, a] : c.coeffs())
            if (a < 0) ++neg;
      rep.check(neg == 0, "negative structure constants on " + type + "/P" + set_string(theta) + ": " + std::to_string(neg));
    }
    // Cartan formula S^k(xy) = sum S^i(x) S^{k-i}(y)
    struct CartanCase {
      std::string type;
      IndexSet theta;
      std::uint64_t p;
    };
    std::mt19937_64 rng(20240611);
    for (const auto& cc : {CartanCase{"G2", {2}, 2}, CartanCase{"G2", {1, 2}, 3}, CartanCase{"A3", {1, 2, 3}, 2},
                           CartanCase{"B3", {1, 3}, 2}}) {
      auto X = coset_space(build_root_system(cc.type), cc.theta);
      auto t = reduce_table(build_exact_table(X, X->dim()), cc.p);
      const Fp z(0, cc.p);
      auto random_class = [&](int grade) {
        ChowClass<Fp> x(X, z);
        for (auto v : X->of_length(grade)) x.add(v, Fp(rng() % cc.p, cc.p));
        return x;
      };
      int bad = 0;
      for (int trial = 0; trial < 100; ++trial) {
        int ga = static_cast<int>(rng() % (X->dim() + 1));
        int gb = static_cast<int>(rng() % (X->dim() - ga + 1));
        auto x = random_class(ga), y = random_class(gb);
        int k = static_cast<int>(rng() % (X->dim() + 1));
        auto lhs = steenrod(t, k, multiply(t, x, y));
        ChowClass<Fp> rhs(X, z);
        for (int i = 0; i <= k; ++i) rhs = rhs + multiply(t, steenrod(t, i, x), steenrod(t, k - i, y));
        if (!(lhs == rhs)) ++bad;
      }
      rep.check(bad == 0, "Cartan formula on " + cc.type + "/P" + set_string(cc.theta) + " mod " + std::to_string(cc.p) + ": " +
                              std::to_string(bad) + " of 100 pairs fail");
    }
    // Rost test against the list of (p^n - 1)/(p - 1)
    for (std::uint64_t p : {2, 3, 5}) {
      std::vector<bool> hit(1001, false);
      for (std::uint64_t q = p; (q - 1) / (p - 1) <= 1000; q *= p) hit[(q - 1) / (p - 1)] = true;
      int bad = 0;
      for (std::uint64_t b = 1; b <= 1000; ++b)
        if (rost_dim_test(b, p) != hit[b]) ++bad;
      rep.check(bad == 0, "Rost test mod " + std::to_string(p) + ": " + std::to_string(bad) + " mismatches");
    }
  });
}

inline std::vector<CriterionResult> verify_g2() {
  return {criterion_g2_restrictions(), criterion_g2_multiplication(), criterion_g2_steenrod(), criterion_g2_chern()};
}
inline std::vector<CriterionResult> verify_e6() { return {criterion_e6_poincare(), criterion_decompositions()}; }
inline std::vector<CriterionResult> verify_e7(const VerifyOptions& opt = {}) { return {criterion_e7(opt)}; }
inline std::vector<CriterionResult> verify_cm(const VerifyOptions& opt = {}) { return {criterion_cm(opt)}; }

}  // namespace gpchow
