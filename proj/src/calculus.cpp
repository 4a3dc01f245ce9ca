#include "lcfn/calculus.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace lcfn {

namespace {

void require_compatible(const FuzzyFn& f, const FuzzyFn& g) {
  if (!same_generator(f.generator(), g.generator())) {
    throw Error(ErrorCode::GeneratorMismatch, "functions take values in different spaces R_F(A)");
  }
  if (!(f.domain() == g.domain())) {
    throw Error(ErrorCode::ConfigError, "functions are defined on different intervals");
  }
}

// Componentwise integral of a coordinate-valued integrand.
template <typename F>
Eigen::Vector2d integrate_coords(const F& integrand, double lo, double hi, const QuadratureSpec& spec) {
  return integrate([&](double t) -> Eigen::Vector2d { return integrand(t); }, lo, hi, spec);
}

}  // namespace

FuzzyFn::FuzzyFn(RealExpr r, RealExpr q, GeneratorPtr generator, Interval<double> domain)
    : r_(std::move(r)), q_(std::move(q)), generator_(std::move(generator)), domain_(domain) {
  if (!generator_) throw Error(ErrorCode::ConfigError, "fuzzy function needs a generator");
  if (!(std::isfinite(domain_.lower) && std::isfinite(domain_.upper) && domain_.lower < domain_.upper)) {
    throw Error(ErrorCode::ConfigError, "domain must be a finite interval [a, b] with a < b");
  }
}

Eigen::Vector2d FuzzyFn::coords(double t, double eps, EvalFlags* flags) const {
  return {r_.eval(t, eps, flags), q_.eval(t, eps, flags)};
}

LcfnD FuzzyFn::operator()(double t, double eps) const { return LcfnD(coords(t, eps), generator_); }

FuzzyFn FuzzyFn::derivative(int order, Variable wrt) const {
  return FuzzyFn(r_.diff(order, wrt), q_.diff(order, wrt), generator_, domain_);
}

RealExpr FuzzyFn::center_expr() const { return r_ + peak() * q_; }

FuzzyFn combine(const FuzzyFn& f, double lambda, const FuzzyFn& g) {
  require_compatible(f, g);
  return FuzzyFn(f.r() + lambda * g.r(), f.q() + lambda * g.q(), f.generator(), f.domain());
}

FuzzyFn cross(const FuzzyFn& f, const FuzzyFn& g) {
  require_compatible(f, g);
  const double am = f.peak();
  const RealExpr qq = f.q() * g.q();
  return FuzzyFn(f.r() * g.r() - (am * am) * qq, f.r() * g.q() + g.r() * f.q() + (2.0 * am) * qq,
                 f.generator(), f.domain());
}

LcfnD deriv(const FuzzyFn& f, double t) {
  if (!(t > f.domain().lower && t < f.domain().upper)) {
    throw Error(ErrorCode::OutsideDomain, "derivative requested outside the open domain");
  }
  EvalFlags flags;
  const auto d = f.derivative().coords(t, 0.0, &flags);
  if (flags.kink_hits > 0) {
    throw Error(ErrorCode::NonDifferentiable, "abs is not differentiable at t = " + std::to_string(t));
  }
  return LcfnD(d, f.generator());
}

LcfnD difference_quotient(const FuzzyFn& f, double t, double h) {
  return scale(1.0 / h, sub(f(t + h), f(t)));
}

LcfnD integrate(const FuzzyFn& f, double lo, double hi, const QuadratureSpec& spec) {
  return LcfnD(integrate_coords([&](double t) { return f.coords(t); }, lo, hi, spec), f.generator());
}

LcfnD integrate(const FuzzyFn& f, const QuadratureSpec& spec) {
  return integrate(f, f.domain().lower, f.domain().upper, spec);
}

FtcReport ftc_check(const FuzzyFn& f, const QuadratureSpec& spec, std::uint64_t seed) {
  const double a = f.domain().lower;
  const double b = f.domain().upper;
  const FuzzyFn df = f.derivative();

  FtcReport report{integrate(df, spec), sub(f(b), f(a)), 0.0, 1e-8, {}, 1e-6, false};
  report.residual = norm(sub(report.integral_of_derivative, report.endpoint_difference));

  // F'(t) by a Richardson-extrapolated central difference of F, where each
  // increment F(t + h) - F(t - h) is a short Gauss-Legendre integral.
  const double len = b - a;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> pick(a + 0.05 * len, b - 0.05 * len);
  const auto slope = [&](double t, double h) {
    return scale(0.5 / h, integrate(f, t - h, t + h, {QuadratureMethod::GaussLegendre, 32}));
  };
  bool spots_ok = true;
  for (int i = 0; i < 5; ++i) {
    const double t = pick(rng);
    const double h = 1e-3 * len;
    const LcfnD coarse = slope(t, h);
    const LcfnD fine = slope(t, 0.5 * h);
    const LcfnD extrapolated = scale(1.0 / 3.0, sub(scale(4.0, fine), coarse));
    const double r = norm(sub(extrapolated, f(t)));
    report.spot_checks.push_back({t, r});
    spots_ok = spots_ok && r < report.spot_tolerance;
  }
  report.passed = report.residual < report.tolerance && spots_ok;
  return report;
}

ProductRuleReport product_rule_check(const FuzzyFn& f, const FuzzyFn& g, double t) {
  const LcfnD lhs = deriv(cross(f, g), t);
  const LcfnD rhs = add(cross(f(t), deriv(g, t)), cross(deriv(f, t), g(t)));
  const double residual = norm(sub(lhs, rhs));
  return {t, lhs, rhs, residual, 1e-8, residual < 1e-8};
}

IbpReport ibp_check(const FuzzyFn& f, const FuzzyFn& g, const QuadratureSpec& spec) {
  require_compatible(f, g);
  const double a = f.domain().lower;
  const double b = f.domain().upper;
  const FuzzyFn df = f.derivative();
  const FuzzyFn dg = g.derivative();

  const LcfnD lhs(integrate_coords([&](double t) { return cross(f(t), dg(t)).coords(); }, a, b, spec),
                  f.generator());
  const LcfnD tail(integrate_coords([&](double t) { return cross(df(t), g(t)).coords(); }, a, b, spec),
                   f.generator());
  const LcfnD rhs = sub(sub(cross(f(b), g(b)), cross(f(a), g(a))), tail);
  const double residual = norm(sub(lhs, rhs));
  return {lhs, rhs, residual, 1e-8, residual < 1e-8};
}

SquareIntegralReport square_integral(const FuzzyFn& f, const QuadratureSpec& spec) {
  const double a = f.domain().lower;
  const double b = f.domain().upper;
  const double am = f.peak();

  SquareIntegralReport report{LcfnD::zero(f.generator()), 0.0, 0.0, 0.0, 2048, 1e-9, spec.abs_tol, false, false};
  // f(t)^2 = (r^2 - a_m^2 q^2) + (2 r q + 2 a_m q^2) A
  report.integral = LcfnD(integrate_coords(
                              [&](double t) {
                                const auto c = f.coords(t);
                                return Eigen::Vector2d(c[0] * c[0] - am * am * c[1] * c[1],
                                                       2.0 * c[0] * c[1] + 2.0 * am * c[1] * c[1]);
                              },
                              a, b, spec),
                          f.generator());
  report.center = center(report.integral);
  report.direct_center = integrate(
      [&](double t) {
        const double g = center(f(t));
        return g * g;
      },
      a, b, spec);

  int violations = 0;
  for (int i = 0; i < report.grid_points; ++i) {
    const double t = a + (b - a) * i / (report.grid_points - 1);
    if (std::abs(center(f(t))) > report.threshold) ++violations;
  }
  report.violation_fraction = static_cast<double>(violations) / report.grid_points;
  report.nonnegative = report.center >= -spec.abs_tol;
  report.routes_agree = std::abs(report.center - report.direct_center) <= spec.abs_tol;
  return report;
}

InterchangeReport interchange_check(const FuzzyFn& g, double eps0, const QuadratureSpec& spec) {
  const double a = g.domain().lower;
  const double b = g.domain().upper;
  const auto integral_at = [&](double eps) -> Eigen::Vector2d {
    return gauss_legendre([&](double t) { return g.coords(t, eps); }, a, b, 64);
  };
  const auto central = [&](double h) -> Eigen::Vector2d {
    return (integral_at(eps0 + h) - integral_at(eps0 - h)) / (2.0 * h);
  };
  const double h = 1e-3 * std::max(1.0, std::abs(eps0));
  const Eigen::Vector2d numeric = (4.0 * central(0.5 * h) - central(h)) / 3.0;

  const FuzzyFn partial = g.derivative(1, Variable::Eps);
  const Eigen::Vector2d symbolic = integrate_coords([&](double t) { return partial.coords(t, eps0); }, a, b, spec);

  InterchangeReport report{eps0, LcfnD(numeric, g.generator()), LcfnD(symbolic, g.generator()), 0.0, 1e-6, false};
  report.residual = norm(sub(report.derivative_of_integral, report.integral_of_derivative));
  report.passed = report.residual < report.tolerance;
  return report;
}

}  // namespace lcfn
