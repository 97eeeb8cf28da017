#include "leglab/expression.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>
#include <numbers>
#include <string>
#include <vector>

#include "leglab/error.hpp"

namespace leglab {

double smooth_bump(double s) {
  const double s2 = s * s;
  if (s2 >= 1.0) return 0.0;
  return std::exp(1.0 - 1.0 / (1.0 - s2));
}

enum class Func { sin, cos, tan, exp, log, sqrt, abs, min, max, atan2, bump, dot };

struct Expression::Node {
  enum class Kind { number, q, xi, theta, r, add, sub, mul, div, pow, neg, call };
  Kind kind = Kind::number;
  double value = 0.0;
  int index = 0;
  Func func = Func::sin;
  std::vector<std::unique_ptr<Node>> args;
};

namespace {

using Node = Expression::Node;
using NodePtr = std::unique_ptr<Node>;

struct FuncSpec {
  const char* name;
  Func func;
  int arity;  // -1: variadic (dot)
};

constexpr FuncSpec kFuncs[] = {
    {"sin", Func::sin, 1},   {"cos", Func::cos, 1},     {"tan", Func::tan, 1},
    {"exp", Func::exp, 1},   {"log", Func::log, 1},     {"sqrt", Func::sqrt, 1},
    {"abs", Func::abs, 1},   {"min", Func::min, 2},     {"max", Func::max, 2},
    {"atan2", Func::atan2, 2}, {"bump", Func::bump, 1}, {"dot", Func::dot, -1},
};

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  NodePtr parse() {
    auto node = expr();
    skip_ws();
    if (pos_ != text_.size()) fail("unexpected trailing input");
    return node;
  }

  int max_q = 0;
  int max_xi = 0;
  bool uses_r = false;
  bool uses_theta = false;

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError(what + " at column " + std::to_string(pos_ + 1) + " in '" +
                         std::string(text_) + "'",
                     0, "expr");
  }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  static NodePtr binary(Node::Kind kind, NodePtr lhs, NodePtr rhs) {
    auto n = std::make_unique<Node>();
    n->kind = kind;
    n->args.push_back(std::move(lhs));
    n->args.push_back(std::move(rhs));
    return n;
  }

  NodePtr expr() {
    auto lhs = term();
    for (;;) {
      if (accept('+')) {
        lhs = binary(Node::Kind::add, std::move(lhs), term());
      } else if (accept('-')) {
        lhs = binary(Node::Kind::sub, std::move(lhs), term());
      } else {
        return lhs;
      }
    }
  }

  NodePtr term() {
    auto lhs = unary();
    for (;;) {
      if (accept('*')) {
        lhs = binary(Node::Kind::mul, std::move(lhs), unary());
      } else if (accept('/')) {
        lhs = binary(Node::Kind::div, std::move(lhs), unary());
      } else {
        return lhs;
      }
    }
  }

  NodePtr unary() {
    if (accept('-')) {
      auto n = std::make_unique<Node>();
      n->kind = Node::Kind::neg;
      n->args.push_back(unary());
      return n;
    }
    if (accept('+')) return unary();
    return power();
  }

  // Right associative; binds tighter than unary minus on its left operand.
  NodePtr power() {
    auto base = primary();
    if (accept('^')) return binary(Node::Kind::pow, std::move(base), unary());
    return base;
  }

  NodePtr primary() {
    skip_ws();
    if (pos_ >= text_.size()) fail("unexpected end of expression");
    const char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      auto inner = expr();
      if (!accept(')')) fail("expected ')'");
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return identifier();
    fail(std::string("unexpected character '") + c + "'");
  }

  NodePtr number() {
    char* end = nullptr;
    const std::string copy(text_.substr(pos_));
    const double v = std::strtod(copy.c_str(), &end);
    const auto used = static_cast<std::size_t>(end - copy.c_str());
    if (used == 0) fail("malformed number");
    pos_ += used;
    auto n = std::make_unique<Node>();
    n->value = v;
    return n;
  }

  NodePtr identifier() {
    const std::size_t start = pos_;
    while (pos_ < text_.size() &&
           (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
      ++pos_;
    }
    const std::string name(text_.substr(start, pos_ - start));
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == '(') return call(name);

    auto n = std::make_unique<Node>();
    if (name == "pi") {
      n->value = std::numbers::pi;
    } else if (name == "theta") {
      n->kind = Node::Kind::theta;
      uses_theta = true;
    } else if (name == "r") {
      n->kind = Node::Kind::r;
      uses_r = true;
    } else if (auto idx = indexed(name, "xi"); idx > 0) {
      n->kind = Node::Kind::xi;
      n->index = idx - 1;
      max_xi = std::max(max_xi, idx);
    } else if (auto qi = indexed(name, "q"); qi > 0) {
      n->kind = Node::Kind::q;
      n->index = qi - 1;
      max_q = std::max(max_q, qi);
    } else {
      pos_ = start;
      fail("unknown variable '" + name + "'");
    }
    return n;
  }

  static int indexed(const std::string& name, const std::string& prefix) {
    if (name.size() <= prefix.size() || name.compare(0, prefix.size(), prefix) != 0) return 0;
    int v = 0;
    for (std::size_t i = prefix.size(); i < name.size(); ++i) {
      if (!std::isdigit(static_cast<unsigned char>(name[i]))) return 0;
      v = v * 10 + (name[i] - '0');
    }
    return v;
  }

  NodePtr call(const std::string& name) {
    const FuncSpec* spec = nullptr;
    for (const auto& f : kFuncs) {
      if (name == f.name) spec = &f;
    }
    if (spec == nullptr) fail("unknown function '" + name + "'");
    accept('(');
    auto n = std::make_unique<Node>();
    n->kind = Node::Kind::call;
    n->func = spec->func;
    if (!accept(')')) {
      do {
        n->args.push_back(expr());
      } while (accept(','));
      if (!accept(')')) fail("expected ')' after arguments of " + name);
    }
    const auto argc = static_cast<int>(n->args.size());
    if (spec->arity >= 0 && argc != spec->arity) {
      fail(name + " takes " + std::to_string(spec->arity) + " argument(s)");
    }
    if (spec->func == Func::dot) {
      if (argc == 0) fail("dot needs at least one component");
      max_q = std::max(max_q, argc);
    }
    return n;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

double eval(const Node& n, const ExprContext& ctx) {
  using K = Node::Kind;
  switch (n.kind) {
    case K::number:
      return n.value;
    case K::q:
      if (static_cast<std::size_t>(n.index) >= ctx.q.size()) {
        throw InvalidArgument("expression references q" + std::to_string(n.index + 1) +
                              " beyond point dimension");
      }
      return ctx.q[n.index];
    case K::xi:
      if (static_cast<std::size_t>(n.index) >= ctx.xi.size()) {
        throw InvalidArgument("expression references xi" + std::to_string(n.index + 1) +
                              " beyond auxiliary dimension");
      }
      return ctx.xi[n.index];
    case K::theta:
      if (ctx.q.size() != 2) throw InvalidArgument("theta is only defined on S^1");
      return std::atan2(ctx.q[1], ctx.q[0]);
    case K::r: {
      double s = 0.0;
      for (double x : ctx.xi) s += x * x;
      return std::sqrt(s);
    }
    case K::add:
      return eval(*n.args[0], ctx) + eval(*n.args[1], ctx);
    case K::sub:
      return eval(*n.args[0], ctx) - eval(*n.args[1], ctx);
    case K::mul:
      return eval(*n.args[0], ctx) * eval(*n.args[1], ctx);
    case K::div:
      return eval(*n.args[0], ctx) / eval(*n.args[1], ctx);
    case K::pow:
      return std::pow(eval(*n.args[0], ctx), eval(*n.args[1], ctx));
    case K::neg:
      return -eval(*n.args[0], ctx);
    case K::call:
      break;
  }
  auto arg = [&](std::size_t i) { return eval(*n.args[i], ctx); };
  switch (n.func) {
    case Func::sin: return std::sin(arg(0));
    case Func::cos: return std::cos(arg(0));
    case Func::tan: return std::tan(arg(0));
    case Func::exp: return std::exp(arg(0));
    case Func::log: return std::log(arg(0));
    case Func::sqrt: return std::sqrt(arg(0));
    case Func::abs: return std::abs(arg(0));
    case Func::min: return std::min(arg(0), arg(1));
    case Func::max: return std::max(arg(0), arg(1));
    case Func::atan2: return std::atan2(arg(0), arg(1));
    case Func::bump: return smooth_bump(arg(0));
    case Func::dot: {
      if (n.args.size() != ctx.q.size()) {
        throw InvalidArgument("dot(...) has " + std::to_string(n.args.size()) +
                              " components but the point has " + std::to_string(ctx.q.size()));
      }
      double s = 0.0;
      for (std::size_t i = 0; i < n.args.size(); ++i) s += arg(i) * ctx.q[i];
      return s;
    }
  }
  return 0.0;
}

}  // namespace

Expression Expression::parse(std::string_view text) {
  Parser parser(text);
  std::shared_ptr<Node> root = parser.parse();
  Expression e;
  e.root_ = std::move(root);
  e.source_ = std::string(text);
  e.max_q_ = parser.max_q;
  e.max_xi_ = parser.max_xi;
  e.uses_r_ = parser.uses_r;
  e.uses_theta_ = parser.uses_theta;
  return e;
}

double Expression::operator()(const ExprContext& ctx) const { return eval(*root_, ctx); }

}  // namespace leglab
