#ifndef LCFN_EXPR_HPP
#define LCFN_EXPR_HPP

#include <memory>
#include <string>
#include <string_view>

#include "lcfn/error.hpp"

namespace lcfn {

enum class Variable { T, Eps };

enum class Function { Sin, Cos, Exp, Log, Abs, Sqrt, Sign };

struct ParseOptions {
  /// Accept the second variable `eps` (two-parameter families only).
  bool allow_eps = false;
};

/// Counters filled in during evaluation.
struct EvalFlags {
  /// Number of times sign(0) was evaluated, i.e. abs was differentiated at
  /// its kink and the convention abs'(0) = 0 was applied.
  int kink_hits = 0;
};

/// Immutable expression tree for a real function of t (and optionally eps).
///
/// Grammar, lowest to highest precedence:
///
///     expr  := term (('+' | '-') term)*
///     term  := unary (('*' | '/') unary)*
///     unary := '-' unary | power
///     power := atom ('^' unary)?
///     atom  := number | 't' | 'eps' | 'pi' | ident '(' expr ')' | '(' expr ')'
///
/// so '^' is right-associative and `-t^2` is -(t^2).
class RealExpr {
 public:
  struct Node;

  static RealExpr parse(std::string_view src, ParseOptions options = {});
  static RealExpr constant(double value);
  static RealExpr variable(Variable v = Variable::T);

  RealExpr() : RealExpr(constant(0.0)) {}

  /// Throws Error with DivisionByZero or DomainError.
  double eval(double t, double eps = 0.0, EvalFlags* flags = nullptr) const;
  double operator()(double t) const { return eval(t); }

  /// Symbolic derivative of the given order (1, 2 or 3).
  RealExpr diff(int order = 1, Variable wrt = Variable::T) const;

  /// Text that parses back to the same tree.
  std::string print() const;

  bool depends_on(Variable v) const;
  bool is_constant() const;

  friend RealExpr operator+(const RealExpr& a, const RealExpr& b);
  friend RealExpr operator-(const RealExpr& a, const RealExpr& b);
  friend RealExpr operator*(const RealExpr& a, const RealExpr& b);
  friend RealExpr operator/(const RealExpr& a, const RealExpr& b);
  friend RealExpr operator-(const RealExpr& a);
  friend RealExpr pow(const RealExpr& base, const RealExpr& exponent);
  friend RealExpr apply(Function f, const RealExpr& arg);

  /// Structural identity of the trees.
  friend bool operator==(const RealExpr& a, const RealExpr& b);

 private:
  explicit RealExpr(std::shared_ptr<const Node> root) : root_(std::move(root)) {}
  std::shared_ptr<const Node> root_;
};

inline RealExpr operator*(double a, const RealExpr& b) { return RealExpr::constant(a) * b; }
inline RealExpr operator+(double a, const RealExpr& b) { return RealExpr::constant(a) + b; }
inline RealExpr operator+(const RealExpr& a, double b) { return a + RealExpr::constant(b); }
inline RealExpr operator-(const RealExpr& a, double b) { return a - RealExpr::constant(b); }

}  // namespace lcfn

#endif  // LCFN_EXPR_HPP
