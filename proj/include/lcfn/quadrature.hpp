#ifndef LCFN_QUADRATURE_HPP
#define LCFN_QUADRATURE_HPP

#include <Eigen/Core>

#include <cmath>
#include <type_traits>

#include "lcfn/error.hpp"

namespace lcfn {

enum class QuadratureMethod { AdaptiveSimpson, GaussLegendre };

struct QuadratureSpec {
  QuadratureMethod method = QuadratureMethod::AdaptiveSimpson;
  int gauss_points = 64;
  double abs_tol = 1e-10;
  int max_depth = 40;
};

/// Nodes and weights of the n-point Gauss-Legendre rule on [-1, 1].
struct GaussRule {
  Eigen::VectorXd nodes;
  Eigen::VectorXd weights;
};

/// Golub-Welsch eigen-decomposition of the Jacobi matrix, nodes polished by
/// Newton on the Legendre recurrence. Cached per n; safe to call
/// concurrently.
const GaussRule& gauss_legendre_rule(int n);

namespace detail {

template <typename T>
double magnitude(const T& v) {
  if constexpr (std::is_arithmetic_v<T>) {
    return std::abs(v);
  } else {
    return v.cwiseAbs().maxCoeff();
  }
}

template <typename F, typename T>
T simpson_step(const F& f, double a, double b, const T& fa, const T& fm, const T& fb, const T& whole,
               double tol, int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const T flm = f(lm);
  const T frm = f(rm);
  const T left = ((m - a) / 6.0) * (fa + 4.0 * flm + fm);
  const T right = ((b - m) / 6.0) * (fm + 4.0 * frm + fb);
  const T delta = left + right - whole;
  if (magnitude(delta) <= 15.0 * tol) return T(left + right + delta / 15.0);
  if (depth <= 0 || !(m > a && m < b)) {
    throw Error(ErrorCode::QuadratureNonConvergent, "adaptive Simpson did not meet its tolerance");
  }
  return T(simpson_step(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
           simpson_step(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1));
}

}  // namespace detail

/// Adaptive Simpson with Richardson correction. The interval is first cut
/// into eight panels so that integrands vanishing at a few sample points
/// are not mistaken for zero. Works for scalar and Eigen vector integrands;
/// the tolerance applies to the largest component.
template <typename F>
auto adaptive_simpson(const F& f, double a, double b, double abs_tol = 1e-10, int max_depth = 40) {
  using T = std::decay_t<decltype(f(a))>;
  constexpr int kPanels = 8;
  const double h = (b - a) / kPanels;
  T total = f(a) * 0.0;
  T fa = f(a);
  for (int i = 0; i < kPanels; ++i) {
    const double lo = a + i * h;
    const double hi = (i + 1 == kPanels) ? b : a + (i + 1) * h;
    const double mid = 0.5 * (lo + hi);
    const T fm = f(mid);
    const T fb = f(hi);
    const T whole = ((hi - lo) / 6.0) * (fa + 4.0 * fm + fb);
    total = T(total + detail::simpson_step(f, lo, hi, fa, fm, fb, whole, abs_tol / kPanels, max_depth));
    fa = fb;
  }
  return total;
}

/// n-point Gauss-Legendre on [a, b].
template <typename F>
auto gauss_legendre(const F& f, double a, double b, int n = 64) {
  using T = std::decay_t<decltype(f(a))>;
  const auto& rule = gauss_legendre_rule(n);
  const double half = 0.5 * (b - a);
  const double mid = 0.5 * (a + b);
  T total = f(mid) * 0.0;
  for (Eigen::Index i = 0; i < rule.nodes.size(); ++i) {
    total = T(total + rule.weights[i] * f(mid + half * rule.nodes[i]));
  }
  return T(half * total);
}

/// Integral over [a, b] by the method the spec selects.
template <typename F>
auto integrate(const F& f, double a, double b, const QuadratureSpec& spec = {}) {
  if (!(spec.abs_tol > 0.0)) throw Error(ErrorCode::ConfigError, "quadrature tolerance must be positive");
  if (spec.method == QuadratureMethod::GaussLegendre) return gauss_legendre(f, a, b, spec.gauss_points);
  return adaptive_simpson(f, a, b, spec.abs_tol, spec.max_depth);
}

}  // namespace lcfn

#endif  // LCFN_QUADRATURE_HPP
