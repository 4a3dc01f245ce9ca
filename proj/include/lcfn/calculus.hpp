#ifndef LCFN_CALCULUS_HPP
#define LCFN_CALCULUS_HPP

#include <cstdint>
#include <vector>

#include "lcfn/expr.hpp"
#include "lcfn/generator.hpp"
#include "lcfn/interval.hpp"
#include "lcfn/lcfn.hpp"
#include "lcfn/quadrature.hpp"

namespace lcfn {

/// t -> r(t) + q(t) A on a closed interval [a, b].
///
/// Components may also depend on `eps` for two-parameter families g(t, eps);
/// plain evaluation then uses eps = 0.
class FuzzyFn {
 public:
  FuzzyFn(RealExpr r, RealExpr q, GeneratorPtr generator, Interval<double> domain);

  const RealExpr& r() const { return r_; }
  const RealExpr& q() const { return q_; }
  const GeneratorPtr& generator() const { return generator_; }
  const Interval<double>& domain() const { return domain_; }
  double peak() const { return generator_->peak(); }

  LcfnD operator()(double t, double eps = 0.0) const;
  Eigen::Vector2d coords(double t, double eps = 0.0, EvalFlags* flags = nullptr) const;

  /// Componentwise symbolic derivative.
  FuzzyFn derivative(int order = 1, Variable wrt = Variable::T) const;

  /// The real function g = r + a_m q whose sign drives the order.
  RealExpr center_expr() const;

 private:
  RealExpr r_;
  RealExpr q_;
  GeneratorPtr generator_;
  Interval<double> domain_;
};

/// f + lambda g, pointwise.
FuzzyFn combine(const FuzzyFn& f, double lambda, const FuzzyFn& g);

/// t -> f(t) (.) g(t) as a symbolic coordinate pair.
FuzzyFn cross(const FuzzyFn& f, const FuzzyFn& g);

/// f'(t) = r'(t) + q'(t) A. Throws OutsideDomain unless a < t < b, and
/// NonDifferentiable when an abs kink is hit.
LcfnD deriv(const FuzzyFn& f, double t);

/// (f(t + h) - f(t)) / h.
LcfnD difference_quotient(const FuzzyFn& f, double t, double h);

/// Componentwise integral over the domain.
LcfnD integrate(const FuzzyFn& f, const QuadratureSpec& spec = {});

/// Componentwise integral over [lo, hi].
LcfnD integrate(const FuzzyFn& f, double lo, double hi, const QuadratureSpec& spec = {});

// ---- theorem checkers -------------------------------------------------------

struct SpotCheck {
  double t;
  double residual;
};

struct FtcReport {
  LcfnD integral_of_derivative;
  LcfnD endpoint_difference;
  double residual;
  double tolerance = 1e-8;
  /// F(t) = int_a^t f against F' = f at interior points.
  std::vector<SpotCheck> spot_checks;
  double spot_tolerance = 1e-6;
  bool passed;
};

FtcReport ftc_check(const FuzzyFn& f, const QuadratureSpec& spec = {}, std::uint64_t seed = 20240601);

struct ProductRuleReport {
  double t;
  LcfnD lhs;  ///< (f (.) g)'(t), symbolic
  LcfnD rhs;  ///< f(t) (.) g'(t) + f'(t) (.) g(t)
  double residual;
  double tolerance = 1e-8;
  bool passed;
};

ProductRuleReport product_rule_check(const FuzzyFn& f, const FuzzyFn& g, double t);

struct IbpReport {
  LcfnD lhs;  ///< int f (.) g'
  LcfnD rhs;  ///< [f (.) g]_a^b - int f' (.) g
  double residual;
  double tolerance = 1e-8;
  bool passed;
};

IbpReport ibp_check(const FuzzyFn& f, const FuzzyFn& g, const QuadratureSpec& spec = {});

struct SquareIntegralReport {
  LcfnD integral;         ///< int f(t)^2 dt from the coordinate integrands
  double center;          ///< center of the integral
  double direct_center;   ///< int (r + a_m q)^2 dt, second route
  double violation_fraction;  ///< share of grid points with |r + a_m q| > threshold
  int grid_points = 2048;
  double threshold = 1e-9;
  double abs_tol;
  bool nonnegative;       ///< center >= -abs_tol
  bool routes_agree;      ///< |center - direct_center| <= abs_tol
};

SquareIntegralReport square_integral(const FuzzyFn& f, const QuadratureSpec& spec = {});

struct InterchangeReport {
  double eps0;
  LcfnD derivative_of_integral;  ///< d/deps int g dt, Richardson central difference
  LcfnD integral_of_derivative;  ///< int dg/deps dt, symbolic partial
  double residual;
  double tolerance = 1e-6;
  bool passed;
};

/// g must have been parsed with eps allowed.
InterchangeReport interchange_check(const FuzzyFn& g, double eps0, const QuadratureSpec& spec = {});

}  // namespace lcfn

#endif  // LCFN_CALCULUS_HPP
