#pragma once

// Expression language shared by the CLI and the fixtures.
//
//   sum     := product (('+' | '-') product)*
//   product := unary ('*' unary)*
//   unary   := '-' unary | power
//   power   := primary ('^' INTEGER)?
//   primary := NUMBER | NUMBER '/' NUMBER | IDENT | '(' sum ')'
//
// Identifiers depend on the dialect: parameters only, parameters plus the
// tower generators b, a, a1..a9, or jet variables z, zJ (with ' or [k]),
// aN and AN (with ' or [k]).

#include <cctype>
#include <memory>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "chow_class.hpp"
#include "errors.hpp"
#include "jetdiff.hpp"
#include "param_scalar.hpp"
#include "rational.hpp"
#include "tower.hpp"

namespace jetsegre {

enum class Dialect { scalar, chow, jet };

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

struct Expr {
  enum class Op { number, param, generator, jet_var, add, sub, mul, neg, pow };
  Op op;
  Rational value;       // number
  Param param{};        // param
  Generator gen{0};     // generator
  JetVar jet{};         // jet_var
  unsigned exponent = 0;  // pow
  std::size_t offset = 0;
  std::vector<ExprPtr> args;

  /// Fully parenthesised form, for debugging and tests.
  std::string to_string() const {
    switch (op) {
      case Op::number: return jetsegre::to_string(value);
      case Op::param: return std::string(name_of(param));
      case Op::generator: return gen.name();
      case Op::jet_var: return jet.name();
      case Op::add: return "Add(" + args[0]->to_string() + ", " + args[1]->to_string() + ")";
      case Op::sub: return "Sub(" + args[0]->to_string() + ", " + args[1]->to_string() + ")";
      case Op::mul: return "Mul(" + args[0]->to_string() + ", " + args[1]->to_string() + ")";
      case Op::neg: return "Neg(" + args[0]->to_string() + ")";
      case Op::pow: return "Pow(" + args[0]->to_string() + ", " + std::to_string(exponent) + ")";
    }
    return "?";
  }
};

namespace detail {

class Parser {
 public:
  Parser(std::string_view text, Dialect dialect) : s_(text), dialect_(dialect) {}

  ExprPtr parse() {
    skip_ws();
    if (pos_ == s_.size()) throw ParseError("empty expression", pos_);
    ExprPtr e = sum();
    skip_ws();
    if (pos_ != s_.size()) {
      if (s_[pos_] == ')') throw ParseError("unbalanced ')'", pos_);
      throw ParseError(std::string("unexpected '") + s_[pos_] + "'", pos_);
    }
    return e;
  }

 private:
  static ExprPtr node(Expr::Op op, std::size_t at, std::vector<ExprPtr> args = {}) {
    auto e = std::make_shared<Expr>();
    e->op = op;
    e->offset = at;
    e->args = std::move(args);
    return e;
  }

  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_ws();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  ExprPtr sum() {
    ExprPtr lhs = product();
    for (;;) {
      skip_ws();
      const std::size_t at = pos_;
      if (accept('+'))
        lhs = node(Expr::Op::add, at, {lhs, product()});
      else if (accept('-'))
        lhs = node(Expr::Op::sub, at, {lhs, product()});
      else
        return lhs;
    }
  }

  ExprPtr product() {
    ExprPtr lhs = unary();
    for (;;) {
      skip_ws();
      const std::size_t at = pos_;
      if (!accept('*')) return lhs;
      lhs = node(Expr::Op::mul, at, {lhs, unary()});
    }
  }

  ExprPtr unary() {
    skip_ws();
    const std::size_t at = pos_;
    if (accept('-')) return node(Expr::Op::neg, at, {unary()});
    return power();
  }

  ExprPtr power() {
    ExprPtr base = primary();
    skip_ws();
    const std::size_t at = pos_;
    if (!accept('^')) return base;
    skip_ws();
    const std::size_t digits_at = pos_;
    if (pos_ >= s_.size() || !std::isdigit(static_cast<unsigned char>(s_[pos_])))
      throw ParseError("exponent must be a nonnegative integer literal", digits_at);
    const std::string digits = take_digits();
    if (digits.size() > 4) throw ParseError("exponent too large", digits_at);
    auto e = node(Expr::Op::pow, at, {base});
    std::const_pointer_cast<Expr>(e)->exponent = static_cast<unsigned>(std::stoul(digits));
    skip_ws();
    if (pos_ < s_.size() && s_[pos_] == '^') throw ParseError("chained '^' needs parentheses", pos_);
    return e;
  }

  std::string take_digits() {
    const std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    return std::string(s_.substr(start, pos_ - start));
  }

  ExprPtr primary() {
    skip_ws();
    const std::size_t at = pos_;
    if (pos_ >= s_.size()) throw ParseError("unexpected end of input", pos_);
    const char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      ExprPtr inner = sum();
      if (!accept(')')) throw ParseError("missing ')' for '(' at offset " + std::to_string(at), pos_);
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::string num = take_digits();
      std::string den = "1";
      if (pos_ < s_.size() && s_[pos_] == '/') {
        ++pos_;
        if (pos_ >= s_.size() || !std::isdigit(static_cast<unsigned char>(s_[pos_]))) throw ParseError("expected denominator after '/'", pos_);
        den = take_digits();
        if (Integer(den) == 0) throw ParseError("zero denominator", at);
      }
      auto e = node(Expr::Op::number, at);
      std::const_pointer_cast<Expr>(e)->value = make_rational(Integer(num), Integer(den));
      return e;
    }
    if (std::isalpha(static_cast<unsigned char>(c))) return identifier();
    throw ParseError(std::string("unexpected '") + c + "'", pos_);
  }

  ExprPtr identifier() {
    const std::size_t at = pos_;
    while (pos_ < s_.size() && std::isalnum(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    const std::string word(s_.substr(at, pos_ - at));

    if (dialect_ == Dialect::jet) return jet_identifier(word, at);

    if (auto p = param_from_name(word)) {
      auto e = node(Expr::Op::param, at);
      std::const_pointer_cast<Expr>(e)->param = *p;
      return e;
    }
    if (dialect_ == Dialect::chow) {
      std::optional<Generator> g;
      if (word == "b") g = Generator::beta();
      if (word == "a") g = Generator::alpha();
      if (word.size() == 2 && word[0] == 'a' && word[1] >= '1' && word[1] <= '9') g = Generator::alpha_k(word[1] - '0');
      if (g) {
        auto e = node(Expr::Op::generator, at);
        std::const_pointer_cast<Expr>(e)->gen = *g;
        return e;
      }
    }
    throw ParseError("unknown identifier '" + word + "'", at);
  }

  // z, z3, a2, A2 followed by primes or [k].
  ExprPtr jet_identifier(const std::string& word, std::size_t at) {
    auto bad = [&]() -> ExprPtr { throw ParseError("unknown identifier '" + word + "'", at); };
    if (word.empty()) return bad();
    const char head = word[0];
    const std::string tail = word.substr(1);
    for (char ch : tail)
      if (!std::isdigit(static_cast<unsigned char>(ch))) return bad();
    if (tail.size() > 3) return bad();
    const int index = tail.empty() ? -1 : std::stoi(tail);

    int order = 0;
    if (pos_ < s_.size() && s_[pos_] == '\'') {
      while (pos_ < s_.size() && s_[pos_] == '\'') {
        ++order;
        ++pos_;
      }
    } else if (pos_ < s_.size() && s_[pos_] == '[') {
      const std::size_t open = pos_++;
      if (pos_ >= s_.size() || !std::isdigit(static_cast<unsigned char>(s_[pos_]))) throw ParseError("expected derivative order in '[...]'", pos_);
      const std::string digits = take_digits();
      if (digits.size() > 3) throw ParseError("derivative order too large", open);
      order = std::stoi(digits);
      if (pos_ >= s_.size() || s_[pos_] != ']') throw ParseError("missing ']'", pos_);
      ++pos_;
    }

    JetVar v;
    if (head == 'z') {
      v = JetVar::z(order, index < 0 ? 0 : index);
    } else if (head == 'a' && index >= 0) {
      if (order != 0) throw ParseError("parameters a_k are constants and take no derivative marks", at);
      v = JetVar::param(index);
    } else if (head == 'A' && index >= 0) {
      v = JetVar::coeff(index, order);
    } else {
      return bad();
    }
    auto e = node(Expr::Op::jet_var, at);
    std::const_pointer_cast<Expr>(e)->jet = v;
    return e;
  }

  std::string_view s_;
  Dialect dialect_;
  std::size_t pos_ = 0;
};

}  // namespace detail

inline ExprPtr parse(std::string_view text, Dialect dialect = Dialect::chow) { return detail::Parser(text, dialect).parse(); }

/// Evaluates a scalar-dialect (or generator-free) expression.
inline ParamScalar eval_scalar(const Expr& e) {
  switch (e.op) {
    case Expr::Op::number: return ParamScalar(e.value);
    case Expr::Op::param: return ParamScalar::var(e.param);
    case Expr::Op::add: return eval_scalar(*e.args[0]) + eval_scalar(*e.args[1]);
    case Expr::Op::sub: return eval_scalar(*e.args[0]) - eval_scalar(*e.args[1]);
    case Expr::Op::mul: return eval_scalar(*e.args[0]) * eval_scalar(*e.args[1]);
    case Expr::Op::neg: return -eval_scalar(*e.args[0]);
    case Expr::Op::pow: return eval_scalar(*e.args[0]).pow(e.exponent);
    case Expr::Op::generator:
    case Expr::Op::jet_var: throw DomainError("expression at offset " + std::to_string(e.offset) + " is not a scalar");
  }
  throw DomainError("eval_scalar: bad node");
}

inline ParamScalar eval_scalar(std::string_view text) { return eval_scalar(*parse(text, Dialect::scalar)); }

/// Evaluates to a class on level ctx.depth().
inline ChowClass eval(const Expr& e, const TowerContext& ctx) {
  const int level = ctx.depth();
  switch (e.op) {
    case Expr::Op::number: return ChowClass::constant(ctx.n(), level, ParamScalar(e.value));
    case Expr::Op::param: return ChowClass::constant(ctx.n(), level, ParamScalar::var(e.param));
    case Expr::Op::generator:
      if (e.gen.level() > level)
        throw DomainError("generator " + e.gen.name() + " at offset " + std::to_string(e.offset) + " exceeds tower depth " + std::to_string(level));
      return ChowClass::generator(ctx.n(), level, e.gen);
    case Expr::Op::add: return eval(*e.args[0], ctx) + eval(*e.args[1], ctx);
    case Expr::Op::sub: return eval(*e.args[0], ctx) - eval(*e.args[1], ctx);
    case Expr::Op::mul: return eval(*e.args[0], ctx) * eval(*e.args[1], ctx);
    case Expr::Op::neg: return -eval(*e.args[0], ctx);
    case Expr::Op::pow: return eval(*e.args[0], ctx).pow(e.exponent);
    case Expr::Op::jet_var: throw DomainError("jet variable in a tower expression");
  }
  throw DomainError("eval: bad node");
}

inline ChowClass eval(std::string_view text, const TowerContext& ctx) { return eval(*parse(text, Dialect::chow), ctx); }

inline JetPoly eval_jet(const Expr& e) {
  switch (e.op) {
    case Expr::Op::number: return JetPoly(e.value);
    case Expr::Op::jet_var: return JetPoly(e.jet);
    case Expr::Op::add: return eval_jet(*e.args[0]) + eval_jet(*e.args[1]);
    case Expr::Op::sub: return eval_jet(*e.args[0]) - eval_jet(*e.args[1]);
    case Expr::Op::mul: return eval_jet(*e.args[0]) * eval_jet(*e.args[1]);
    case Expr::Op::neg: return -eval_jet(*e.args[0]);
    case Expr::Op::pow: return eval_jet(*e.args[0]).pow(e.exponent);
    case Expr::Op::param:
    case Expr::Op::generator: throw DomainError("not a jet expression");
  }
  throw DomainError("eval_jet: bad node");
}

inline JetPoly eval_jet(std::string_view text) { return eval_jet(*parse(text, Dialect::jet)); }

}  // namespace jetsegre
