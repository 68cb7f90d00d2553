#pragma once

// Class expressions for the command line:
//
//   expr   := term (('+' | '-') term)*
//   term   := unary ('*' unary)*
//   unary  := '-' unary | power
//   power  := atom ('^' integer)?
//   atom   := integer | 'pt' | 'h' | 'h'<i> | 'c'<d> | 'Z[' i,j,... ']' | alias | '(' expr ')'
//
// h is the divisor class when Theta has one element; h<i> is Z_[i].
// c<d> is the Chern class of the tangent bundle. Aliases map names to
// expressions and may refer to each other.

#include <algorithm>
#include <cctype>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <memory>
#include <string>

#include <nlohmann/json.hpp>

#include "gpchow/chow.hpp"
#include "gpchow/error.hpp"

namespace gpchow {

template <class C>
struct ExprContext {
  std::shared_ptr<const CosetSpace> space;
  C like{};
  std::function<ChowClass<C>(const ChowClass<C>&, const ChowClass<C>&)> mul;
  std::function<ChowClass<C>(int)> chern;
  std::map<std::string, std::string> aliases;
};

/// Aliases for one variety from a JSON file {"E7/P7": {"e5": "Z[2,4,5,6,7]"}}.
inline std::map<std::string, std::string> load_aliases(const std::filesystem::path& path, const std::string& variety) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read alias file " + path.string());
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError("alias file " + path.string() + ": " + e.what());
  }
  std::map<std::string, std::string> out;
  if (j.contains(variety))
    for (const auto& [k, v] : j[variety].items()) out[k] = v.get<std::string>();
  return out;
}

namespace detail {

template <class C>
class ExprParser {
 public:
  ExprParser(const std::string& src, const ExprContext<C>& ctx, int depth) : s_(src), ctx_(ctx), depth_(depth) {
    if (depth_ > 32) throw ConfigError("alias definitions are nested too deeply");
  }

  ChowClass<C> parse() {
    auto x = expr();
    skip();
    if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
    return x;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const {
    throw ConfigError("expression \"" + s_ + "\" at " + std::to_string(pos_) + ": " + msg);
  }
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool eat(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  long integer() {
    skip();
    std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_) fail("integer expected");
    if (pos_ - start > 9) fail("integer too large");
    return std::stol(s_.substr(start, pos_ - start));
  }
  ChowClass<C> constant(long n) const {
    return ChowClass<C>::unit(ctx_.space, ctx_.like).scaled(CoeffTraits<C>::from_int(n, ctx_.like));
  }

  ChowClass<C> expr() {
    auto x = term();
    for (;;) {
      if (eat('+'))
        x = x + term();
      else if (eat('-'))
        x = x + term().scaled(CoeffTraits<C>::from_int(-1, ctx_.like));
      else
        return x;
    }
  }
  ChowClass<C> term() {
    auto x = unary();
    while (eat('*')) x = ctx_.mul(x, unary());
    return x;
  }
  ChowClass<C> unary() {
    if (eat('-')) return unary().scaled(CoeffTraits<C>::from_int(-1, ctx_.like));
    auto x = atom();
    if (eat('^')) {
      long e = integer();
      auto r = ChowClass<C>::unit(ctx_.space, ctx_.like);
      for (long i = 0; i < e; ++i) r = ctx_.mul(r, x);
      return r;
    }
    return x;
  }
  ChowClass<C> atom() {
    skip();
    if (pos_ >= s_.size()) fail("unexpected end");
    char c = s_[pos_];
    if (eat('(')) {
      auto x = expr();
      if (!eat(')')) fail("')' expected");
      return x;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) return constant(integer());
    if (!std::isalpha(static_cast<unsigned char>(c)) && c != '_') fail("unexpected '" + std::string(1, c) + "'");
    std::size_t start = pos_;
    while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) ++pos_;
    std::string id = s_.substr(start, pos_ - start);
    if (auto it = ctx_.aliases.find(id); it != ctx_.aliases.end())
      return ExprParser(it->second, ctx_, depth_ + 1).parse();
    if (id == "Z") {
      if (!eat('[')) fail("'[' expected after Z");
      Word w;
      if (!eat(']')) {
        do w.push_back(static_cast<int>(integer()));
        while (eat(','));
        if (!eat(']')) fail("']' expected");
      }
      std::size_t idx = ctx_.space->index_of_word(w);
      if (ctx_.space->length(idx) != static_cast<int>(w.size()))
        fail(word_string(w) + " is not a minimal coset representative; use " + word_string(ctx_.space->rep(idx).word));
      return ChowClass<C>::schubert(ctx_.space, idx, ctx_.like);
    }
    if (id == "pt") return ChowClass<C>::point(ctx_.space, ctx_.like);
    if (id == "h") {
      const auto& th = ctx_.space->theta();
      if (th.size() != 1) fail("h needs a single element in Theta; use h<i>");
      return ChowClass<C>::from_word(ctx_.space, {th[0]}, ctx_.like);
    }
    auto suffix = [&](std::size_t k) -> int {
      std::string rest = id.substr(k);
      if (rest.empty() || rest.size() > 4 || !std::all_of(rest.begin(), rest.end(), ::isdigit)) fail("unknown name " + id);
      return std::stoi(rest);
    };
    if (id[0] == 'h') {
      int i = suffix(1);
      if (!contains(ctx_.space->theta(), i)) fail("h" + std::to_string(i) + " is not a divisor class here");
      return ChowClass<C>::from_word(ctx_.space, {i}, ctx_.like);
    }
    if (id[0] == 'c') {
      if (!ctx_.chern) fail("Chern classes are not available");
      return ctx_.chern(suffix(1));
    }
    fail("unknown name " + id);
  }

  const std::string& s_;
  const ExprContext<C>& ctx_;
  int depth_;
  std::size_t pos_ = 0;
};

}  // namespace detail

template <class C>
ChowClass<C> evaluate_expression(const std::string& src, const ExprContext<C>& ctx) {
  return detail::ExprParser<C>(src, ctx, 0).parse();
}

}  // namespace gpchow
