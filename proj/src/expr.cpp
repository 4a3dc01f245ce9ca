#include "lcfn/expr.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <numbers>
#include <string>

namespace lcfn {

struct RealExpr::Node {
  enum class Kind { Number, Var, Neg, Add, Sub, Mul, Div, Pow, Call };

  Kind kind;
  double value = 0.0;
  Variable var = Variable::T;
  Function fn = Function::Sin;
  std::shared_ptr<const Node> a;
  std::shared_ptr<const Node> b;
};

namespace {

using Node = RealExpr::Node;
using Kind = Node::Kind;
using NodePtr = std::shared_ptr<const Node>;

NodePtr number(double v) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Number;
  n->value = v;
  return n;
}

NodePtr var(Variable v) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Var;
  n->var = v;
  return n;
}

bool is_number(const NodePtr& n) { return n->kind == Kind::Number; }
bool is_value(const NodePtr& n, double v) { return is_number(n) && n->value == v; }

NodePtr node(Kind kind, NodePtr a, NodePtr b = nullptr) {
  auto n = std::make_shared<Node>();
  n->kind = kind;
  n->a = std::move(a);
  n->b = std::move(b);
  return n;
}

NodePtr fold_or(double folded, NodePtr otherwise) {
  return std::isfinite(folded) ? number(folded) : otherwise;
}

// Smart constructors: fold numeric subtrees and drop algebraic identities so
// that repeated differentiation stays small.

NodePtr make_neg(const NodePtr& a) {
  if (is_number(a)) return number(-a->value);
  if (a->kind == Kind::Neg) return a->a;
  return node(Kind::Neg, a);
}

NodePtr make_add(const NodePtr& a, const NodePtr& b) {
  if (is_number(a) && is_number(b)) return fold_or(a->value + b->value, node(Kind::Add, a, b));
  if (is_value(a, 0.0)) return b;
  if (is_value(b, 0.0)) return a;
  return node(Kind::Add, a, b);
}

NodePtr make_sub(const NodePtr& a, const NodePtr& b) {
  if (is_number(a) && is_number(b)) return fold_or(a->value - b->value, node(Kind::Sub, a, b));
  if (is_value(b, 0.0)) return a;
  if (is_value(a, 0.0)) return make_neg(b);
  return node(Kind::Sub, a, b);
}

NodePtr make_mul(const NodePtr& a, const NodePtr& b) {
  if (is_number(a) && is_number(b)) return fold_or(a->value * b->value, node(Kind::Mul, a, b));
  if (is_value(a, 0.0) || is_value(b, 0.0)) return number(0.0);
  if (is_value(a, 1.0)) return b;
  if (is_value(b, 1.0)) return a;
  if (is_value(a, -1.0)) return make_neg(b);
  if (is_value(b, -1.0)) return make_neg(a);
  return node(Kind::Mul, a, b);
}

NodePtr make_div(const NodePtr& a, const NodePtr& b) {
  if (is_number(a) && is_number(b) && b->value != 0.0) {
    return fold_or(a->value / b->value, node(Kind::Div, a, b));
  }
  if (is_value(b, 1.0)) return a;
  return node(Kind::Div, a, b);
}

NodePtr make_pow(const NodePtr& a, const NodePtr& b) {
  if (is_number(a) && is_number(b)) return fold_or(std::pow(a->value, b->value), node(Kind::Pow, a, b));
  if (is_value(b, 1.0)) return a;
  if (is_value(b, 0.0)) return number(1.0);
  return node(Kind::Pow, a, b);
}

double apply_fn(Function fn, double x, EvalFlags* flags) {
  switch (fn) {
    case Function::Sin: return std::sin(x);
    case Function::Cos: return std::cos(x);
    case Function::Exp: return std::exp(x);
    case Function::Log:
      if (!(x > 0.0)) throw Error(ErrorCode::DomainError, "log of a nonpositive value");
      return std::log(x);
    case Function::Abs: return std::abs(x);
    case Function::Sqrt:
      if (x < 0.0) throw Error(ErrorCode::DomainError, "sqrt of a negative value");
      return std::sqrt(x);
    case Function::Sign:
      if (x == 0.0) {
        if (flags) ++flags->kink_hits;
        return 0.0;
      }
      return x > 0.0 ? 1.0 : -1.0;
  }
  return 0.0;
}

NodePtr make_call(Function fn, const NodePtr& a) {
  if (is_number(a)) {
    try {
      const double v = apply_fn(fn, a->value, nullptr);
      if (std::isfinite(v)) return number(v);
    } catch (const Error&) {
      // left unfolded; the domain error surfaces at evaluation time
    }
  }
  auto n = std::make_shared<Node>();
  n->kind = Kind::Call;
  n->fn = fn;
  n->a = a;
  return n;
}

struct FunctionName {
  std::string_view name;
  Function fn;
};

constexpr FunctionName kFunctions[] = {
    {"sin", Function::Sin}, {"cos", Function::Cos}, {"exp", Function::Exp},   {"log", Function::Log},
    {"abs", Function::Abs}, {"sqrt", Function::Sqrt}, {"sign", Function::Sign},
};

std::string_view function_name(Function fn) {
  for (const auto& f : kFunctions) {
    if (f.fn == fn) return f.name;
  }
  return "?";
}

// ---- parser -----------------------------------------------------------------

class Parser {
 public:
  Parser(std::string_view src, ParseOptions options) : src_(src), options_(options) {}

  NodePtr run() {
    skip_ws();
    if (pos_ == src_.size()) fail("empty expression");
    auto e = expr();
    skip_ws();
    if (pos_ != src_.size()) fail(std::string("unexpected '") + src_[pos_] + "'");
    return e;
  }

 private:
  [[noreturn]] void fail(const std::string& what, ErrorCode code = ErrorCode::SyntaxError) const {
    throw Error(code, what + " at offset " + std::to_string(pos_) + " in '" + std::string(src_) + "'", pos_);
  }

  void skip_ws() {
    while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_ws();
    if (pos_ < src_.size() && src_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  NodePtr expr() {
    auto lhs = term();
    for (;;) {
      if (accept('+')) {
        lhs = make_add(lhs, term());
      } else if (accept('-')) {
        lhs = make_sub(lhs, term());
      } else {
        return lhs;
      }
    }
  }

  NodePtr term() {
    auto lhs = unary();
    for (;;) {
      if (accept('*')) {
        lhs = make_mul(lhs, unary());
      } else if (accept('/')) {
        lhs = make_div(lhs, unary());
      } else {
        return lhs;
      }
    }
  }

  NodePtr unary() {
    if (accept('-')) return make_neg(unary());
    return power();
  }

  NodePtr power() {
    auto base = atom();
    if (accept('^')) return make_pow(base, unary());
    return base;
  }

  NodePtr atom() {
    skip_ws();
    if (pos_ >= src_.size()) fail("unexpected end of input");
    const char c = src_[pos_];
    if (c == '(') {
      ++pos_;
      auto e = expr();
      if (!accept(')')) fail("expected ')'");
      return e;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      double v = 0.0;
      const auto res = std::from_chars(src_.data() + pos_, src_.data() + src_.size(), v);
      if (res.ec != std::errc()) fail("malformed number");
      pos_ = static_cast<std::size_t>(res.ptr - src_.data());
      return number(v);
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      const std::size_t start = pos_;
      while (pos_ < src_.size() &&
             (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_')) {
        ++pos_;
      }
      const std::string_view ident = src_.substr(start, pos_ - start);
      skip_ws();
      if (pos_ < src_.size() && src_[pos_] == '(') {
        for (const auto& f : kFunctions) {
          if (f.name == ident) {
            ++pos_;
            auto arg = expr();
            if (!accept(')')) fail("expected ')'");
            return make_call(f.fn, arg);
          }
        }
        pos_ = start;
        fail("unknown function '" + std::string(ident) + "'", ErrorCode::UnknownFunction);
      }
      if (ident == "t") return var(Variable::T);
      if (ident == "eps" && options_.allow_eps) return var(Variable::Eps);
      if (ident == "pi") return number(std::numbers::pi);
      pos_ = start;
      fail("unknown identifier '" + std::string(ident) + "'");
    }
    fail(std::string("unexpected '") + c + "'");
  }

  std::string_view src_;
  ParseOptions options_;
  std::size_t pos_ = 0;
};

// ---- evaluation ---------------------------------------------------------------

double eval_node(const Node& n, double t, double eps, EvalFlags* flags) {
  switch (n.kind) {
    case Kind::Number: return n.value;
    case Kind::Var: return n.var == Variable::T ? t : eps;
    case Kind::Neg: return -eval_node(*n.a, t, eps, flags);
    case Kind::Add: return eval_node(*n.a, t, eps, flags) + eval_node(*n.b, t, eps, flags);
    case Kind::Sub: return eval_node(*n.a, t, eps, flags) - eval_node(*n.b, t, eps, flags);
    case Kind::Mul: return eval_node(*n.a, t, eps, flags) * eval_node(*n.b, t, eps, flags);
    case Kind::Div: {
      const double num = eval_node(*n.a, t, eps, flags);
      const double den = eval_node(*n.b, t, eps, flags);
      if (den == 0.0) throw Error(ErrorCode::DivisionByZero, "division by zero at t = " + std::to_string(t));
      return num / den;
    }
    case Kind::Pow: {
      const double base = eval_node(*n.a, t, eps, flags);
      const double expo = eval_node(*n.b, t, eps, flags);
      if (base == 0.0 && expo < 0.0) {
        throw Error(ErrorCode::DivisionByZero, "zero raised to a negative power at t = " + std::to_string(t));
      }
      const double v = std::pow(base, expo);
      if (std::isnan(v)) throw Error(ErrorCode::DomainError, "negative base with non-integer exponent");
      return v;
    }
    case Kind::Call: return apply_fn(n.fn, eval_node(*n.a, t, eps, flags), flags);
  }
  return 0.0;
}

// ---- differentiation ----------------------------------------------------------



NodePtr call(Function fn, const NodePtr& a) { return make_call(fn, a); }

NodePtr derive(const NodePtr& n, Variable wrt) {
  switch (n->kind) {
    case Kind::Number: return number(0.0);
    case Kind::Var: return number(n->var == wrt ? 1.0 : 0.0);
    case Kind::Neg: return make_neg(derive(n->a, wrt));
    case Kind::Add: return make_add(derive(n->a, wrt), derive(n->b, wrt));
    case Kind::Sub: return make_sub(derive(n->a, wrt), derive(n->b, wrt));
    case Kind::Mul:
      return make_add(make_mul(derive(n->a, wrt), n->b), make_mul(n->a, derive(n->b, wrt)));
    case Kind::Div: {
      const auto du = derive(n->a, wrt);
      const auto dv = derive(n->b, wrt);
      return make_sub(make_div(du, n->b), make_div(make_mul(n->a, dv), make_pow(n->b, number(2.0))));
    }
    case Kind::Pow: {
      const auto du = derive(n->a, wrt);
      const auto dv = derive(n->b, wrt);
      if (is_value(dv, 0.0)) {
        // d(u^c) = c u^(c-1) u'
        return make_mul(make_mul(n->b, make_pow(n->a, make_sub(n->b, number(1.0)))), du);
      }
      // d(u^v) = u^v (v' log u + v u'/u)
      return make_mul(n, make_add(make_mul(dv, call(Function::Log, n->a)), make_div(make_mul(n->b, du), n->a)));
    }
    case Kind::Call: {
      const auto du = derive(n->a, wrt);
      if (is_value(du, 0.0)) return number(0.0);
      switch (n->fn) {
        case Function::Sin: return make_mul(call(Function::Cos, n->a), du);
        case Function::Cos: return make_neg(make_mul(call(Function::Sin, n->a), du));
        case Function::Exp: return make_mul(n, du);
        case Function::Log: return make_div(du, n->a);
        case Function::Sqrt: return make_div(du, make_mul(number(2.0), n));
        case Function::Abs: return make_mul(call(Function::Sign, n->a), du);
        case Function::Sign: return number(0.0);
      }
    }
  }
  return number(0.0);
}

// ---- printing -----------------------------------------------------------------

int precedence(const Node& n) {
  switch (n.kind) {
    case Kind::Number: return std::signbit(n.value) ? 3 : 5;
    case Kind::Var:
    case Kind::Call: return 5;
    case Kind::Pow: return 4;
    case Kind::Neg: return 3;
    case Kind::Mul:
    case Kind::Div: return 2;
    case Kind::Add:
    case Kind::Sub: return 1;
  }
  return 5;
}

void print_node(const Node& n, int min_prec, std::string& out) {
  const bool parens = precedence(n) < min_prec;
  if (parens) out += '(';
  switch (n.kind) {
    case Kind::Number: {
      char buf[64];
      const auto res = std::to_chars(buf, buf + sizeof buf, n.value);
      out.append(buf, res.ptr);
      break;
    }
    case Kind::Var: out += n.var == Variable::T ? "t" : "eps"; break;
    case Kind::Neg:
      out += '-';
      print_node(*n.a, 3, out);
      break;
    case Kind::Add:
    case Kind::Sub:
      print_node(*n.a, 1, out);
      out += n.kind == Kind::Add ? " + " : " - ";
      print_node(*n.b, 2, out);
      break;
    case Kind::Mul:
    case Kind::Div:
      print_node(*n.a, 2, out);
      out += n.kind == Kind::Mul ? '*' : '/';
      print_node(*n.b, 3, out);
      break;
    case Kind::Pow:
      print_node(*n.a, 5, out);
      out += '^';
      print_node(*n.b, 3, out);
      break;
    case Kind::Call:
      out += function_name(n.fn);
      out += '(';
      print_node(*n.a, 0, out);
      out += ')';
      break;
  }
  if (parens) out += ')';
}

bool depends(const Node& n, Variable v) {
  if (n.kind == Kind::Var) return n.var == v;
  return (n.a && depends(*n.a, v)) || (n.b && depends(*n.b, v));
}

bool same_tree(const Node& x, const Node& y) {
  if (x.kind != y.kind) return false;
  switch (x.kind) {
    case Kind::Number: return x.value == y.value && std::signbit(x.value) == std::signbit(y.value);
    case Kind::Var: return x.var == y.var;
    case Kind::Call: return x.fn == y.fn && same_tree(*x.a, *y.a);
    case Kind::Neg: return same_tree(*x.a, *y.a);
    default: return same_tree(*x.a, *y.a) && same_tree(*x.b, *y.b);
  }
}

}  // namespace

RealExpr RealExpr::parse(std::string_view src, ParseOptions options) {
  return RealExpr(Parser(src, options).run());
}

RealExpr RealExpr::constant(double value) { return RealExpr(number(value)); }

RealExpr RealExpr::variable(Variable v) { return RealExpr(var(v)); }

double RealExpr::eval(double t, double eps, EvalFlags* flags) const {
  return eval_node(*root_, t, eps, flags);
}

RealExpr RealExpr::diff(int order, Variable wrt) const {
  if (order < 1 || order > 3) throw Error(ErrorCode::ConfigError, "derivative order must be 1, 2 or 3");
  NodePtr n = root_;
  for (int i = 0; i < order; ++i) n = derive(n, wrt);
  return RealExpr(n);
}

std::string RealExpr::print() const {
  std::string out;
  print_node(*root_, 0, out);
  return out;
}

bool RealExpr::depends_on(Variable v) const { return depends(*root_, v); }

bool RealExpr::is_constant() const { return root_->kind == Kind::Number; }

RealExpr operator+(const RealExpr& a, const RealExpr& b) { return RealExpr(make_add(a.root_, b.root_)); }
RealExpr operator-(const RealExpr& a, const RealExpr& b) { return RealExpr(make_sub(a.root_, b.root_)); }
RealExpr operator*(const RealExpr& a, const RealExpr& b) { return RealExpr(make_mul(a.root_, b.root_)); }
RealExpr operator/(const RealExpr& a, const RealExpr& b) { return RealExpr(make_div(a.root_, b.root_)); }
RealExpr operator-(const RealExpr& a) { return RealExpr(make_neg(a.root_)); }
RealExpr pow(const RealExpr& base, const RealExpr& exponent) {
  return RealExpr(make_pow(base.root_, exponent.root_));
}
RealExpr apply(Function f, const RealExpr& arg) { return RealExpr(make_call(f, arg.root_)); }

bool operator==(const RealExpr& a, const RealExpr& b) { return same_tree(*a.root_, *b.root_); }

}  // namespace lcfn
