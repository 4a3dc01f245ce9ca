#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "lcfn/calculus.hpp"
#include "support.hpp"

using namespace lcfn;
using lcfn::test::tri;

namespace {

const GeneratorPtr A0 = tri(-1.0, 0.0, 2.0);
const GeneratorPtr Ahalf = tri(-1.0, 0.5, 3.0);

FuzzyFn fn(const char* r, const char* q, double a = 0.0, double b = 1.0, const GeneratorPtr& g = A0) {
  return FuzzyFn(RealExpr::parse(r, {true}), RealExpr::parse(q, {true}), g, {a, b});
}

}  // namespace

TEST_CASE("derivative") {
  const LcfnD d = deriv(fn("t^2", "t^3", 0, 2), 1.0);
  CHECK(d.r() == doctest::Approx(2.0));
  CHECK(d.q() == doctest::Approx(3.0));
  CHECK(deriv(fn("4", "-1"), 0.5) == LcfnD::zero(A0));
  CHECK_THROWS_AS(deriv(fn("t", "t"), 0.0), Error);
  CHECK_THROWS_AS(deriv(fn("t", "t"), 1.5), Error);
  try {
    deriv(fn("abs(t - 0.5)", "0"), 0.5);
    FAIL("expected NonDifferentiable");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NonDifferentiable);
  }
}

TEST_CASE("derivative matches the norm limit of difference quotients") {
  const FuzzyFn f = fn("sin(t)", "exp(t)", 0, 2);
  const double t = 0.8;
  const LcfnD exact = deriv(f, t);
  double prev = INFINITY;
  for (double h : {1e-2, 5e-3, 2.5e-3}) {
    const LcfnD central = scale(0.5, add(difference_quotient(f, t, h), difference_quotient(f, t, -h)));
    const double err = norm(sub(central, exact));
    CHECK(err < 1e-4);
    if (std::isfinite(prev)) CHECK(prev / err > 3.5);  // order 2: ratio near 4
    prev = err;
  }
  CHECK(norm(sub(scale(0.5, add(difference_quotient(f, t, 1e-5), difference_quotient(f, t, -1e-5))), exact)) <
        1e-6);
}

TEST_CASE("integrals") {
  const LcfnD i = integrate(fn("t", "t"));
  CHECK(i.r() == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(i.q() == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(integrate(fn("0", "0")) == LcfnD::zero(A0));
  const LcfnD c = integrate(fn("cos(t)", "0", 0, std::numbers::pi));
  CHECK(std::abs(c.r()) < 1e-10);
  CHECK(c.q() == 0.0);
}

TEST_CASE("integration is linear") {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> u(-3, 3);
  const QuadratureSpec spec;
  const FuzzyFn f = fn("exp(-t)*sin(4*t)", "t^2", 0, 2);
  const FuzzyFn g = fn("cos(t)", "sqrt(1 + t)", 0, 2);
  for (int i = 0; i < 20; ++i) {
    const double lambda = u(rng);
    const LcfnD lhs = integrate(combine(f, lambda, g), spec);
    const LcfnD rhs = add(integrate(f, spec), scale(lambda, integrate(g, spec)));
    CHECK(norm(sub(lhs, rhs)) < 2 * spec.abs_tol * std::max(1.0, std::abs(lambda)));
  }
}

TEST_CASE("fundamental theorem") {
  for (const auto& f : {fn("sin(t)", "t^2"), fn("3", "-2"), fn("exp(t)", "log(1 + t)", 0, 2)}) {
    const FtcReport r = ftc_check(f);
    CHECK(r.residual < 1e-8);
    CHECK(r.spot_checks.size() == 5);
    CHECK(r.passed);
  }
  CHECK(ftc_check(fn("3", "-2")).residual == 0.0);
}

TEST_CASE("product rule and integration by parts") {
  const FuzzyFn f = fn("t", "1");
  const FuzzyFn g = fn("1", "t");
  const ProductRuleReport p = product_rule_check(f, g, 0.7);
  CHECK(p.residual < 1e-8);
  CHECK(p.passed);
  // hand expansion, a_m = 0: f (.) g = t + (t^2 + 1) A, derivative (1, 2t)
  CHECK(p.lhs.r() == doctest::Approx(1.0));
  CHECK(p.lhs.q() == doctest::Approx(1.4));
  const ProductRuleReport pc = product_rule_check(fn("2", "3"), fn("sin(t)", "t^2"), 0.3);
  CHECK(pc.residual < 1e-12);

  const IbpReport ibp = ibp_check(fn("sin(t)", "t"), fn("cos(t)", "1"));
  CHECK(ibp.residual < 1e-8);
  CHECK(ibp.passed);
  const FuzzyFn h = fn("sin(t)", "t", 0, 1, Ahalf);
  CHECK_THROWS_AS(ibp_check(h, fn("cos(t)", "1")), Error);
}

TEST_CASE("symbolic cross of functions matches pointwise cross") {
  const FuzzyFn f = fn("sin(t)", "t^2", 0, 1, Ahalf);
  const FuzzyFn g = fn("exp(t)", "1 - t", 0, 1, Ahalf);
  const FuzzyFn fg = cross(f, g);
  for (double t = 0.0; t <= 1.0; t += 0.125) CHECK(approx_equal(fg(t), cross(f(t), g(t)), 1e-14));
}

TEST_CASE("integral of a square") {
  const SquareIntegralReport z = square_integral(fn("t", "-2*t", 0, 1, Ahalf));
  CHECK(std::abs(z.center) < 1e-10);
  CHECK(z.violation_fraction == 0.0);
  CHECK(z.nonnegative);
  const SquareIntegralReport zero = square_integral(fn("0", "0"));
  CHECK(zero.integral == LcfnD::zero(A0));
  const SquareIntegralReport one = square_integral(fn("1", "0"));
  CHECK(one.integral.r() == doctest::Approx(1.0));
  CHECK(one.integral.q() == 0.0);
  CHECK(one.center == doctest::Approx(1.0));
  CHECK(one.violation_fraction == 1.0);
  const SquareIntegralReport w = square_integral(fn("sin(5*t)", "cos(t)", -1, 2, Ahalf));
  CHECK(w.nonnegative);
  CHECK(w.routes_agree);
}

TEST_CASE("interchange of derivative and integral") {
  const InterchangeReport a = interchange_check(fn("t*eps", "eps^2"), 1.0);
  CHECK(a.integral_of_derivative.r() == doctest::Approx(0.5));
  CHECK(a.integral_of_derivative.q() == doctest::Approx(2.0));
  CHECK(a.residual < 1e-6);
  CHECK(a.passed);
  const InterchangeReport b = interchange_check(fn("sin(t)", "t"), 0.3);
  CHECK(norm(b.derivative_of_integral) < 1e-12);
  CHECK(norm(b.integral_of_derivative) == 0.0);
  CHECK(interchange_check(fn("sin(t*eps)", "0"), 0.5).passed);
}

TEST_CASE("bad domains") {
  CHECK_THROWS_AS(fn("t", "t", 1.0, 1.0), Error);
  CHECK_THROWS_AS(fn("t", "t", 0.0, INFINITY), Error);
}
