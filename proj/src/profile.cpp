// SPDX-License-Identifier: Apache-2.0
#include "pbloch/profile.hpp"

#include <cctype>
#include <cmath>
#include <numbers>
#include <string_view>
#include <vector>

#include "pbloch/error.hpp"

namespace pbloch {

namespace detail {

struct Expression::Node {
  enum class Kind { Number, Variable, Neg, Add, Sub, Mul, Div, Pow, Call } kind;
  double number = 0.0;
  double (*fn)(double) = nullptr;
  std::shared_ptr<const Node> lhs, rhs;

  double eval(double t) const {
    switch (kind) {
      case Kind::Number: return number;
      case Kind::Variable: return t;
      case Kind::Neg: return -lhs->eval(t);
      case Kind::Add: return lhs->eval(t) + rhs->eval(t);
      case Kind::Sub: return lhs->eval(t) - rhs->eval(t);
      case Kind::Mul: return lhs->eval(t) * rhs->eval(t);
      case Kind::Div: return lhs->eval(t) / rhs->eval(t);
      case Kind::Pow: return std::pow(lhs->eval(t), rhs->eval(t));
      case Kind::Call: return fn(lhs->eval(t));
    }
    return 0.0;
  }
};

namespace {

using NodePtr = std::shared_ptr<const Expression::Node>;
using Kind = Expression::Node::Kind;

NodePtr make(Kind kind, NodePtr lhs = nullptr, NodePtr rhs = nullptr) {
  auto n = std::make_shared<Expression::Node>();
  n->kind = kind;
  n->lhs = std::move(lhs);
  n->rhs = std::move(rhs);
  return n;
}

// Recursive descent over: expr := term (('+'|'-') term)*
//                         term := unary (('*'|'/') unary)*
//                         unary := '-' unary | power
//                         power := atom ('^' unary)?
class Parser {
public:
  explicit Parser(std::string_view text) : s_(text) {}

  NodePtr parse() {
    NodePtr n = expr();
    skip();
    if (pos_ != s_.size()) fail("unexpected character");
    return n;
  }

private:
  std::string_view s_;
  std::size_t pos_ = 0;

  [[noreturn]] void fail(const std::string& what) const {
    throw ConfigError("expression '" + std::string(s_) + "': " + what + " at position " +
                      std::to_string(pos_));
  }

  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  NodePtr expr() {
    NodePtr n = term();
    for (;;) {
      if (accept('+')) n = make(Kind::Add, n, term());
      else if (accept('-')) n = make(Kind::Sub, n, term());
      else return n;
    }
  }

  NodePtr term() {
    NodePtr n = unary();
    for (;;) {
      if (accept('*')) n = make(Kind::Mul, n, unary());
      else if (accept('/')) n = make(Kind::Div, n, unary());
      else return n;
    }
  }

  NodePtr unary() {
    if (accept('-')) return make(Kind::Neg, unary());
    if (accept('+')) return unary();
    return power();
  }

  NodePtr power() {
    NodePtr base = atom();
    if (accept('^')) return make(Kind::Pow, base, unary());
    return base;
  }

  NodePtr atom() {
    skip();
    if (pos_ >= s_.size()) fail("unexpected end");
    if (accept('(')) {
      NodePtr n = expr();
      if (!accept(')')) fail("missing ')'");
      return n;
    }
    const char c = s_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      const std::string rest(s_.substr(pos_));
      std::size_t used = 0;
      double v = 0.0;
      try {
        v = std::stod(rest, &used);
      } catch (const std::exception&) {
        fail("bad number");
      }
      pos_ += used;
      auto n = std::make_shared<Expression::Node>();
      n->kind = Kind::Number;
      n->number = v;
      return n;
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      const std::size_t start = pos_;
      while (pos_ < s_.size() && std::isalnum(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      const std::string name(s_.substr(start, pos_ - start));
      if (name == "t" || name == "x") return make(Kind::Variable);
      if (name == "pi" || name == "e") {
        auto n = std::make_shared<Expression::Node>();
        n->kind = Kind::Number;
        n->number = name == "pi" ? std::numbers::pi : std::numbers::e;
        return n;
      }
      double (*fn)(double) = lookup(name);
      if (fn == nullptr) fail("unknown identifier '" + name + "'");
      if (!accept('(')) fail("expected '(' after " + name);
      NodePtr arg = expr();
      if (!accept(')')) fail("missing ')'");
      auto n = std::make_shared<Expression::Node>();
      n->kind = Kind::Call;
      n->fn = fn;
      n->lhs = arg;
      return n;
    }
    fail("unexpected character");
  }

  static double (*lookup(const std::string& name))(double) {
    struct Entry {
      const char* name;
      double (*fn)(double);
    };
    static const Entry table[] = {
        {"sin", [](double v) { return std::sin(v); }},
        {"cos", [](double v) { return std::cos(v); }},
        {"tan", [](double v) { return std::tan(v); }},
        {"exp", [](double v) { return std::exp(v); }},
        {"log", [](double v) { return std::log(v); }},
        {"sqrt", [](double v) { return std::sqrt(v); }},
        {"abs", [](double v) { return std::abs(v); }},
        {"sinh", [](double v) { return std::sinh(v); }},
        {"cosh", [](double v) { return std::cosh(v); }},
        {"tanh", [](double v) { return std::tanh(v); }},
        {"asin", [](double v) { return std::asin(v); }},
        {"acos", [](double v) { return std::acos(v); }},
        {"atan", [](double v) { return std::atan(v); }},
        {"cbrt", [](double v) { return std::cbrt(v); }},
    };
    for (const auto& e : table)
      if (name == e.name) return e.fn;
    return nullptr;
  }
};

}  // namespace

Expression::Expression(const std::string& text) : root_(Parser(text).parse()) {}

double Expression::operator()(double t) const { return root_->eval(t); }

}  // namespace detail

Profile Profile::constant(double c) {
  Profile p("flat:" + std::to_string(c), [c](double) { return c; }, [](double) { return 0.0; });
  p.is_zero_ = (c == 0.0);
  return p;
}

Profile Profile::from_id(const std::string& id) {
  using std::numbers::pi;
  if (id == "zero") {
    Profile p = constant(0.0);
    p.id_ = id;
    return p;
  }
  if (id.rfind("flat:", 0) == 0 || id.rfind("flat-", 0) == 0) {
    const std::string num = id.substr(5);
    std::size_t used = 0;
    double c = 0.0;
    try {
      c = std::stod(num, &used);
    } catch (const std::exception&) {
      throw ConfigError("profile '" + id + "': bad constant");
    }
    if (used != num.size()) throw ConfigError("profile '" + id + "': bad constant");
    Profile p = constant(c);
    p.id_ = id;
    return p;
  }
  if (id == "example2-zeta") {
    return Profile(
        id, [](double t) { return 1.5 + std::sin(t) / 3.0 - std::cos(2.0 * t) / 4.0; },
        [](double t) { return std::cos(t) / 3.0 + std::sin(2.0 * t) / 2.0; });
  }
  if (id == "example2-p") {
    return Profile(
        id, [](double t) { return std::sin(2.0 * t) / 20.0 + std::sin(pi * t + 0.1) / 20.0; },
        [](double t) { return std::cos(2.0 * t) / 10.0 + pi * std::cos(pi * t + 0.1) / 20.0; });
  }
  if (id == "example3-p") {
    return Profile(
        id, [](double t) { return std::sin(std::cbrt(4.0 + t * t)) / 20.0; },
        [](double t) {
          const double s = std::cbrt(4.0 + t * t);
          // d/dt (4+t^2)^{1/3} = (2t/3) (4+t^2)^{-2/3}
          return std::cos(s) * (2.0 * t / 3.0) / (s * s) / 20.0;
        });
  }
  if (id.rfind("expr:", 0) == 0) {
    auto expr = std::make_shared<detail::Expression>(id.substr(5));
    constexpr double step = 1e-6;
    return Profile(
        id, [expr](double t) { return (*expr)(t); },
        [expr](double t) { return ((*expr)(t + step) - (*expr)(t - step)) / (2.0 * step); });
  }
  throw ConfigError("unknown profile id '" + id + "'");
}

double surface_height(const std::string& profile_id, double x1) {
  return Profile::from_id(profile_id)(x1);
}

}  // namespace pbloch
