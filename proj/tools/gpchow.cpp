// Command-line front end.
//
// Exit status: 0 success, 1 a verify command found a failing check,
// 2 bad input (configuration, depth or cache errors), 3 internal
// inconsistency.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "gpchow/gpchow.hpp"

using namespace gpchow;
using nlohmann::json;

namespace {

struct Options {
  std::string type;
  std::string theta;
  std::string theta2;
  std::uint64_t prime = 0;
  int max_degree = -1;
  std::string cache_dir = default_cache_dir();
  std::string output;
  std::string format = "json";
  std::string aliases;
  std::vector<std::string> exprs;
  int j = 1;
  int degree = -1;
  std::size_t summand = 0;
  bool extended = false;
  bool verbose = false;
};

std::function<void(const std::string&)> logger(const Options& o) {
  if (!o.verbose) return {};
  return [](const std::string& s) { std::cerr << s << "\n"; };
}

std::shared_ptr<const CosetSpace> variety(const std::string& type, const std::string& theta) {
  if (type.empty()) throw ConfigError("--type is required");
  if (theta.empty()) throw ConfigError("--theta is required");
  return coset_space(build_root_system(type), parse_index_set(theta));
}

std::string variety_name(const CosetSpace& X) { return X.root_system().name() + "/P" + set_string(X.theta()); }

json words(const CosetSpace& X) {
  json a = json::array();
  for (const auto& r : X.reps()) a.push_back(r.word);
  return a;
}

template <class C>
json class_json(const ChowClass<C>& x) {
  json a = json::array();
  for (const auto& [w, c] : x.coeffs()) a.push_back({{"word", x.space().rep(w).word}, {"coefficient", CoeffTraits<C>::str(c)}});
  return a;
}

/// Scalar table to the requested depth and the expression context over Z.
struct IntegralSetup {
  std::shared_ptr<const CosetSpace> X;
  RestrictionTable<ScalarRing<BigInt>> table;
  ExprContext<BigInt> ctx;

  IntegralSetup(const Options& o, const std::string& type, const std::string& theta, int depth)
      : X(variety(type, theta)),
        table(cached_table(X, ScalarRing<BigInt>(Frame::generic(X->root_system(), 0)), depth < 0 ? X->dim() : depth,
                           o.cache_dir, logger(o))) {
    ctx.space = X;
    ctx.mul = [this](const ChowClass<BigInt>& a, const ChowClass<BigInt>& b) { return multiply(table, a, b); };
    auto roots = tangent_roots(*X);
    ctx.chern = [this, roots](int d) { return chern_class(table, roots, d); };
    if (!o.aliases.empty()) ctx.aliases = load_aliases(o.aliases, variety_name(*X));
  }
  IntegralSetup(const IntegralSetup&) = delete;
};

json finish(const std::string& command, const CosetSpace& X, json rows, json extra = json::object()) {
  json out = {{"schema_version", kSchemaVersion}, {"command", command}, {"variety", variety_name(X)}, {"rows", std::move(rows)}};
  for (auto& [k, v] : extra.items()) out[k] = v;
  return out;
}

std::string csv_field(const json& v) {
  std::string s = v.is_string() ? v.get<std::string>() : v.dump();
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) q += c == '"' ? std::string("\"\"") : std::string(1, c);
  return q + "\"";
}

void emit(const Options& o, const json& out) {
  std::ostringstream os;
  if (o.format == "csv") {
    const auto& rows = out.at("rows");
    if (!rows.empty()) {
      std::vector<std::string> keys;
      for (auto& [k, v] : rows[0].items()) keys.push_back(k);
      for (std::size_t i = 0; i < keys.size(); ++i) os << (i ? "," : "") << keys[i];
      os << "\n";
      for (const auto& r : rows) {
        for (std::size_t i = 0; i < keys.size(); ++i) os << (i ? "," : "") << csv_field(r.value(keys[i], json()));
        os << "\n";
      }
    }
  } else {
    os << out.dump(2) << "\n";
  }
  if (o.output.empty() || o.output == "-") {
    std::cout << os.str();
  } else {
    std::ofstream f(o.output);
    if (!f) throw ConfigError("cannot write " + o.output);
    f << os.str();
  }
}

json cmd_poincare(const Options& o) {
  auto X = variety(o.type, o.theta);
  json rows = json::array();
  auto p = X->poincare();
  for (std::size_t i = 0; i < p.size(); ++i) rows.push_back({{"degree", i}, {"count", p[i]}});
  return finish("poincare", *X, rows, {{"size", X->size()}, {"dim", X->dim()}});
}

json cmd_table(const Options& o) {
  IntegralSetup s(o, o.type, o.theta, -1);
  auto table = multiplication_table(s.table);
  json rows = json::array();
  for (std::size_t u = 0; u < table.size(); ++u)
    for (std::size_t v = u; v < table.size(); ++v) {
      json prod;
      if (o.prime)
        prod = class_json(reduce_class(table[u][v], o.prime));
      else
        prod = class_json(table[u][v]);
      rows.push_back({{"u", s.X->rep(u).word}, {"v", s.X->rep(v).word}, {"product", prod}});
    }
  json extra = {{"classes", words(*s.X)}};
  if (o.prime) extra["prime"] = o.prime;
  return finish("table", *s.X, rows, extra);
}

json cmd_restrict(const Options& o) {
  auto X = variety(o.type, o.theta);
  int depth = o.max_degree < 0 ? X->dim() : std::min(o.max_degree, X->dim());
  PolyRing<BigInt> ring(Frame::identity(X->root_system().rank()));
  auto t = cached_table(X, ring, depth, o.cache_dir, logger(o));
  auto names = omega_names(X->root_system().rank());
  json rows = json::array();
  for (std::size_t v = 0; v < X->size(); ++v) {
    if (X->length(v) > depth) continue;
    for (const auto& [w, e] : t.row(v))
      rows.push_back({{"v", X->rep(v).word}, {"w", X->rep(w).word}, {"restriction", e.to_string(names)}});
  }
  return finish("restrict", *X, rows, {{"max_degree", depth}, {"variables", names}});
}

json cmd_product(const Options& o) {
  if (o.exprs.empty()) throw ConfigError("product needs at least one --expr");
  IntegralSetup s(o, o.type, o.theta, -1);
  json rows = json::array();
  for (const auto& e : o.exprs) {
    auto x = evaluate_expression(e, s.ctx);
    json c = o.prime ? class_json(reduce_class(x, o.prime)) : class_json(x);
    rows.push_back({{"expression", e}, {"value", c}});
  }
  json extra = json::object();
  if (o.prime) extra["prime"] = o.prime;
  return finish("product", *s.X, rows, extra);
}

json cmd_chern(const Options& o) {
  IntegralSetup s(o, o.type, o.theta, -1);
  auto roots = tangent_roots(*s.X);
  json rows = json::array();
  int lo = o.degree < 0 ? 1 : o.degree, hi = o.degree < 0 ? s.X->dim() : o.degree;
  for (int d = lo; d <= hi; ++d) {
    auto c = chern_class(s.table, roots, d);
    rows.push_back({{"degree", d}, {"value", o.prime ? class_json(reduce_class(c, o.prime)) : class_json(c)}});
  }
  return finish("chern", *s.X, rows);
}

json cmd_steenrod(const Options& o) {
  if (!o.prime) throw ConfigError("steenrod needs --prime");
  if (o.exprs.empty()) throw ConfigError("steenrod needs at least one --expr");
  if (o.j < 0) throw ConfigError("--j must be non-negative");
  IntegralSetup s(o, o.type, o.theta, -1);
  const auto& X = s.X;
  std::vector<ChowClass<Fp>> xs;
  int need = 0;
  for (const auto& e : o.exprs) {
    xs.push_back(reduce_class(evaluate_expression(e, s.ctx), o.prime));
    for (int g : xs.back().grades()) need = std::max(need, g + o.j * static_cast<int>(o.prime - 1));
  }
  need = std::min(need, X->dim());
  auto ctx = series_context(X->root_system(), o.prime, o.j);
  auto ts = cached_table(X, SeriesRing<BigInt>(ctx), need, o.cache_dir, logger(o));
  SeriesSteenrod S(ts);
  json rows = json::array();
  for (std::size_t i = 0; i < xs.size(); ++i)
    rows.push_back({{"expression", o.exprs[i]}, {"j", o.j}, {"value", class_json(S.steenrod(o.j, xs[i]))}});
  return finish("steenrod", *X, rows, {{"prime", o.prime}});
}

json cmd_alphastar(const Options& o) {
  if (!o.prime) throw ConfigError("alphastar needs --prime");
  if (o.exprs.size() != 1) throw ConfigError("alphastar needs exactly one --expr (the cycle on the summand)");
  auto X = variety(o.type, o.theta);
  auto X2 = variety(o.type, o.theta2.empty() ? o.theta : o.theta2);
  auto d = decompose_product(X->root_system_ptr(), X->theta(), X2->theta());
  if (o.summand >= d.summands.size())
    throw ConfigError("summand index out of range (" + std::to_string(d.summands.size()) + " summands)");
  const auto& sm = d.summands[o.summand];
  IntegralSetup y(o, o.type, set_string(sm.type), -1);
  auto alpha = evaluate_expression(o.exprs[0], y.ctx);
  auto cols = parallel_map<ChowClass<Fp>>(X->size(), [&](std::size_t u) {
    return reduce_class(alpha_star(y.table, alpha, sm.w, ChowClass<BigInt>::schubert(X, u), X2), o.prime);
  });
  json rows = json::array();
  for (std::size_t u = 0; u < X->size(); ++u) rows.push_back({{"source", X->rep(u).word}, {"image", class_json(cols[u])}});
  json extra = {{"target", variety_name(*X2)},
                {"summand", {{"w", sm.w.word()}, {"shift", sm.shift}, {"type", sm.type}}},
                {"prime", o.prime}};
  if (X2->theta() == X->theta()) {
    auto m = EndoMatrix<Fp>::from_columns(X, cols, Fp(0, o.prime));
    auto e = iterate_to_idempotent(m);
    extra["projector_lowest_grade"] = e.lowest_grade();
  }
  return finish("alphastar", *X, rows, extra);
}

int cmd_verify(const Options& o, const std::string& which) {
  VerifyOptions vo{o.cache_dir, logger(o)};
  std::vector<CriterionResult> res;
  if (which == "verify-g2") res = verify_g2();
  if (which == "verify-e6") {
    res = verify_e6();
    if (o.extended) res.push_back(criterion_cm(vo));
  }
  if (which == "verify-e7") res = verify_e7(vo);
  if (which == "verify-cm") res = verify_cm(vo);
  json rows = json::array();
  bool ok = true;
  for (const auto& r : res) {
    rows.push_back(to_json(r));
    ok = ok && r.pass;
    std::cerr << (r.pass ? "PASS " : "FAIL ") << r.id << " " << r.name << " (" << r.seconds << " s): " << r.detail << "\n";
  }
  json out = {{"schema_version", kSchemaVersion}, {"command", which}, {"rows", rows}, {"pass", ok}};
  emit(o, out);
  return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Chow rings of projective homogeneous varieties by localization"};
  app.require_subcommand(1);
  Options o;
  std::vector<std::pair<std::string, std::string>> commands = {
      {"table", "multiplication table of Schubert classes"},
      {"steenrod", "Steenrod operation S^j of class expressions"},
      {"chern", "Chern classes of the tangent bundle"},
      {"poincare", "Poincare polynomial"},
      {"restrict", "equivariant restrictions i_w(Z_v^T)"},
      {"product", "evaluate class expressions"},
      {"alphastar", "operator alpha_* attached to a summand of X x X'"},
      {"verify-g2", "G2 worked examples"},
      {"verify-e6", "E6 Poincare identities and product decompositions"},
      {"verify-e7", "E7/P7 mod 2 Steenrod pairings"},
      {"verify-cm", "E6 mod 3 projector"}};
  for (const auto& [name, help] : commands) {
    auto* sub = app.add_subcommand(name, help);
    bool needs_variety = name.rfind("verify", 0) != 0;
    if (needs_variety) {
      sub->add_option("--type", o.type, "Dynkin type, e.g. E6 or A2xG2")->required();
      sub->add_option("--theta", o.theta, "indices defining P, e.g. 2 or 1,2,6")->required();
      sub->add_option("--prime", o.prime, "reduce modulo this prime");
      sub->add_option("--max-degree", o.max_degree, "build the table up to this codimension");
      sub->add_option("--aliases", o.aliases, "JSON file of named class expressions");
    }
    if (name == "alphastar") {
      sub->add_option("--theta2", o.theta2, "indices defining P' (default: same as --theta)");
      sub->add_option("--summand", o.summand, "index of the summand of X x X'");
    }
    if (name == "product" || name == "steenrod" || name == "alphastar")
      sub->add_option("--expr", o.exprs, "class expression, e.g. \"Z[2]^2 - 3*Z[1,2]\"");
    if (name == "steenrod") sub->add_option("--j", o.j, "Steenrod degree");
    if (name == "chern") sub->add_option("--degree", o.degree, "only this degree");
    if (name == "verify-e6") sub->add_flag("--extended", o.extended, "also run the E6 mod 3 projector check");
    sub->add_option("--cache-dir", o.cache_dir, "table cache directory (default $GPCHOW_CACHE_DIR)");
    sub->add_option("--output", o.output, "output file (default stdout)");
    sub->add_option("--format", o.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
    sub->add_flag("-v,--verbose", o.verbose, "log table construction to stderr");
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }
  const std::string cmd = app.get_subcommands().front()->get_name();
  try {
    if (cmd.rfind("verify", 0) == 0) return cmd_verify(o, cmd);
    json out;
    if (cmd == "table") out = cmd_table(o);
    if (cmd == "steenrod") out = cmd_steenrod(o);
    if (cmd == "chern") out = cmd_chern(o);
    if (cmd == "poincare") out = cmd_poincare(o);
    if (cmd == "restrict") out = cmd_restrict(o);
    if (cmd == "product") out = cmd_product(o);
    if (cmd == "alphastar") out = cmd_alphastar(o);
    emit(o, out);
    return 0;
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const DepthError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const CacheError& e) {
    std::cerr << "cache error: " << e.what() << "\n";
    return 2;
  } catch (const InconsistencyError& e) {
    std::cerr << "internal inconsistency: " << e.what() << "\n";
    return 3;
  }
}
