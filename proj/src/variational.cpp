#include "lcfn/variational.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "lcfn/parallel.hpp"

namespace lcfn {

std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::LocalMin: return "LocalMin";
    case Verdict::LocalMax: return "LocalMax";
    case Verdict::Inconclusive: return "Inconclusive";
  }
  return "Inconclusive";
}

namespace {

constexpr double kCenterThreshold = 1e-9;

void require_same_space(const FuzzyFn& f, const FuzzyFn& g) {
  if (!same_generator(f.generator(), g.generator())) {
    throw Error(ErrorCode::GeneratorMismatch, "functions take values in different spaces R_F(A)");
  }
}

double bisect(const RealExpr& d1, double lo, double hi, double root_tol) {
  double flo = d1(lo);
  for (;;) {
    const double mid = 0.5 * (lo + hi);
    if (!(mid > lo && mid < hi)) break;
    const double fm = d1(mid);
    if (fm == 0.0) return mid;
    const bool narrow = (hi - lo) <= root_tol * std::max(1.0, std::abs(mid));
    if (narrow && std::abs(fm) <= root_tol) return mid;
    if ((fm < 0.0) == (flo < 0.0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return std::abs(d1(lo)) <= std::abs(d1(hi)) ? lo : hi;
}

// Minimizes |d1| on [lo, hi] by golden-section search.
double touch_point(const RealExpr& d1, double lo, double hi, double root_tol) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double x1 = hi - inv_phi * (hi - lo);
  double x2 = lo + inv_phi * (hi - lo);
  double f1 = std::abs(d1(x1));
  double f2 = std::abs(d1(x2));
  while ((hi - lo) > root_tol * std::max(1.0, std::abs(lo))) {
    if (f1 <= f2) {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - inv_phi * (hi - lo);
      f1 = std::abs(d1(x1));
    } else {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + inv_phi * (hi - lo);
      f2 = std::abs(d1(x2));
    }
    if (!(x1 > lo && x2 < hi)) break;
  }
  return f1 <= f2 ? x1 : x2;
}

}  // namespace

std::vector<CriticalPoint> critical_points(const FuzzyFn& f, const CriticalPointOptions& options) {
  const RealExpr g = f.center_expr();
  const RealExpr d1 = g.diff(1);
  const RealExpr d2 = g.diff(2);
  const double a = f.domain().lower;
  const double b = f.domain().upper;
  const int n = std::max(3, options.grid);

  std::vector<double> ts(n);
  std::vector<double> ds(n);
  for (int i = 0; i < n; ++i) {
    ts[i] = (i + 1 == n) ? b : a + (b - a) * i / (n - 1);
    ds[i] = d1(ts[i]);
  }

  std::vector<double> roots;
  for (int i = 0; i < n; ++i) {
    if (ds[i] == 0.0) {
      roots.push_back(ts[i]);
    } else if (i + 1 < n && ds[i + 1] != 0.0 && (ds[i] < 0.0) != (ds[i + 1] < 0.0)) {
      roots.push_back(bisect(d1, ts[i], ts[i + 1], options.root_tol));
    }
  }
  for (int i = 1; i + 1 < n; ++i) {
    const bool same_sign = (ds[i - 1] > 0.0 && ds[i] > 0.0 && ds[i + 1] > 0.0) ||
                           (ds[i - 1] < 0.0 && ds[i] < 0.0 && ds[i + 1] < 0.0);
    if (!same_sign) continue;
    if (std::abs(ds[i]) > std::abs(ds[i - 1]) || std::abs(ds[i]) > std::abs(ds[i + 1])) continue;
    const double t = touch_point(d1, ts[i - 1], ts[i + 1], options.root_tol);
    if (std::abs(d1(t)) <= options.touch_tol) roots.push_back(t);
  }

  std::sort(roots.begin(), roots.end());
  std::vector<CriticalPoint> out;
  for (double t : roots) {
    if (!out.empty() && std::abs(t - out.back().t_star) <= 1e-9 * std::max(1.0, std::abs(t))) continue;
    if (options.newton_polish) {
      for (int it = 0; it < 3; ++it) {
        const double slope = d2(t);
        if (slope == 0.0) break;
        const double next = t - d1(t) / slope;
        if (!(next >= a && next <= b) || std::abs(d1(next)) >= std::abs(d1(t))) break;
        t = next;
      }
    }
    EvalFlags flags;
    CriticalPoint cp{t, d1.eval(t, 0.0, &flags), d2.eval(t, 0.0, &flags), Verdict::Inconclusive, false};
    cp.kink_hit = flags.kink_hits > 0;
    if (cp.center_d2 > options.classify_tol) {
      cp.verdict = Verdict::LocalMin;
    } else if (cp.center_d2 < -options.classify_tol) {
      cp.verdict = Verdict::LocalMax;
    }
    out.push_back(cp);
  }
  return out;
}

LocalOrderReport verify_local_order(const FuzzyFn& f, const CriticalPoint& cp, double radius, int n) {
  LocalOrderReport report;
  if (cp.verdict == Verdict::Inconclusive) {
    report.note = "no claim checked: second-order test is inconclusive at this point";
    return report;
  }
  report.checked = true;
  const bool is_min = cp.verdict == Verdict::LocalMin;
  const LcfnD at_star = f(cp.t_star);
  const RealExpr d1 = f.center_expr().diff(1);

  // Monotone basin: g' keeps the sign the extremum implies, walking outward.
  const auto in_basin = [&](double z) {
    const int steps = 64;
    for (int s = 1; s <= steps; ++s) {
      const double w = cp.t_star + (z - cp.t_star) * s / steps;
      const double slope = d1(w);
      const bool outward_rising = (z > cp.t_star) ? slope >= 0.0 : slope <= 0.0;
      if (is_min != outward_rising) return false;
    }
    return true;
  };

  for (int j = 0; j < n; ++j) {
    const double z = cp.t_star + radius * (2.0 * (j + 0.5) / n - 1.0);
    if (z < f.domain().lower || z > f.domain().upper) continue;
    ++report.samples;
    const LcfnD at_z = f(z);
    const bool holds = is_min ? leq(at_star, at_z) : leq(at_z, at_star);
    if (holds) continue;
    if (in_basin(z)) {
      ++report.violations;
      if (!report.first_violation) report.first_violation = z;
    } else {
      ++report.out_of_neighborhood;
    }
  }
  report.passed = report.violations == 0;
  std::ostringstream os;
  os << (is_min ? "f(t*) <= f(z)" : "f(z) <= f(t*)") << " checked at " << report.samples << " points";
  report.note = os.str();
  return report;
}

DiracKernel::DiracKernel(DiracParams params) : params_(params), c_k_(0.0) {
  if (!(params_.epsilon > 0.0) || params_.k < 1 || params_.l < 0) {
    throw Error(ErrorCode::ConfigError, "Dirac kernel needs epsilon > 0, k >= 1, l >= 0");
  }
  const double eps = params_.epsilon;
  const int power = exponent();
  c_k_ = adaptive_simpson(
      [&](double s) { return std::pow(0.5 * (std::cos(std::numbers::pi * s / eps) + 1.0), power); }, -eps, eps,
      1e-12 * eps, 50);
}

double DiracKernel::operator()(double x) const {
  const double ax = std::abs(x);
  if (ax >= params_.epsilon) return 0.0;
  return std::pow(0.5 * (std::cos(std::numbers::pi * ax / params_.epsilon) + 1.0), exponent()) / c_k_;
}

double clamp_window(const FuzzyFn& f, double t0, double epsilon) {
  return std::min(epsilon, 0.45 * std::min(t0 - f.domain().lower, f.domain().upper - t0));
}

LcfnD MollifiedFn::operator()(double z) const {
  const double w = kernel(z - t0);
  if (w == 0.0) return LcfnD::zero(base.generator());
  return scale(w, base(z));
}

LagrangeWitness lagrange_witness(const FuzzyFn& f, double t0, const HarnessConfig& config,
                                 const QuadratureSpec& spec) {
  if (!(t0 > f.domain().lower && t0 < f.domain().upper)) {
    throw Error(ErrorCode::WindowOutsideDomain, "t0 must lie strictly inside the domain");
  }
  const double c0 = center(f(t0));
  if (!(std::abs(c0) > kCenterThreshold)) {
    throw Error(ErrorCode::ZeroCenterAtT0, "the witness needs a nonzero center at t0");
  }
  const double eps = clamp_window(f, t0, config.epsilon);

  LagrangeWitness out{t0, c0 * c0, {}};
  for (int k : config.k) {
    MollifiedFn eta{f, DiracKernel({eps, config.l, k}), t0};
    const Eigen::Vector2d coords = integrate(
        [&](double z) -> Eigen::Vector2d { return cross(f(z), eta(z)).coords(); }, t0 - eps, t0 + eps, spec);
    const double collapsed = integrate(
        [&](double z) {
          const double g = center(f(z));
          return g * g * eta.kernel(z - t0);
        },
        t0 - eps, t0 + eps, spec);
    out.terms.push_back({k, eps, eta, center(LcfnD(coords, f.generator())), collapsed});
  }
  return out;
}

LagrangeScanReport lagrange_scan(const FuzzyFn& f, const HarnessConfig& config, const QuadratureSpec& spec) {
  if (config.k.empty() || config.grid < 1) throw Error(ErrorCode::ConfigError, "scan needs k values and a grid");
  const double a = f.domain().lower;
  const double b = f.domain().upper;
  const int k_last = *std::max_element(config.k.begin(), config.k.end());

  LagrangeScanReport report;
  report.records.resize(config.grid);
  parallel_for(static_cast<std::size_t>(config.grid), [&](std::size_t i) {
    LagrangeScanRecord rec{};
    rec.t0 = a + (b - a) * (static_cast<double>(i) + 0.5) / config.grid;
    rec.center = center(f(rec.t0));
    rec.epsilon = clamp_window(f, rec.t0, config.epsilon);
    const DiracKernel kernel({rec.epsilon, config.l, k_last});
    const double lo = rec.t0 - rec.epsilon;
    const double hi = rec.t0 + rec.epsilon;

    rec.witness_applicable = std::abs(rec.center) > report.center_threshold;
    rec.witness_ok = true;
    if (rec.witness_applicable) {
      const MollifiedFn eta{f, kernel, rec.t0};
      const Eigen::Vector2d bk = integrate(
          [&](double z) -> Eigen::Vector2d { return cross(f(z), eta(z)).coords(); }, lo, hi, spec);
      rec.b_last = center(LcfnD(bk, f.generator()));
      rec.witness_ok = rec.b_last > 0.0;
    }

    // crisp mollifier: eta~ = delta_k(z - t0) + 0 A
    rec.recovered = integrate(
        [&](double z) -> Eigen::Vector2d {
          return cross(f(z), LcfnD::crisp(kernel(z - rec.t0), f.generator())).coords();
        },
        lo, hi, spec);
    rec.direct = f.coords(rec.t0);
    rec.recovery_error = (rec.recovered - rec.direct).cwiseAbs().maxCoeff();
    rec.recovery_ok = rec.recovery_error <= report.recovery_tolerance;
    report.records[i] = rec;
  });

  for (const auto& rec : report.records) {
    report.admissible_witnesses += rec.witness_applicable ? 1 : 0;
    report.witness_failures += rec.witness_ok ? 0 : 1;
    report.recovery_failures += rec.recovery_ok ? 0 : 1;
  }
  report.passed = report.witness_failures == 0 && report.recovery_failures == 0;
  return report;
}

std::vector<TestFunction> sine_catalog(const GeneratorPtr& generator, Interval<double> domain, int modes) {
  const double a = domain.lower;
  const double len = domain.upper - domain.lower;
  const RealExpr t = RealExpr::variable();
  std::vector<TestFunction> out;
  for (int m = 1; m <= modes; ++m) {
    const RealExpr s = apply(Function::Sin, (m * std::numbers::pi / len) * (t - a));
    out.push_back({"sin" + std::to_string(m) + "|q=0", FuzzyFn(s, RealExpr::constant(0.0), generator, domain)});
    out.push_back({"sin" + std::to_string(m) + "|q=sin", FuzzyFn(s, s, generator, domain)});
  }
  return out;
}

DbrForwardReport dbr_forward_check(const FuzzyFn& f, const FuzzyFn& g, std::span<const TestFunction> catalog,
                                   const QuadratureSpec& spec) {
  require_same_space(f, g);
  const double a = f.domain().lower;
  const double b = f.domain().upper;

  DbrForwardReport report;
  std::ostringstream universe;
  universe << "finite catalog of " << catalog.size() << " test functions:";
  for (const auto& tf : catalog) {
    require_same_space(f, tf.eta);
    const double edge = std::max(tf.eta.coords(a).cwiseAbs().maxCoeff(), tf.eta.coords(b).cwiseAbs().maxCoeff());
    if (edge > 1e-12) {
      throw Error(ErrorCode::CatalogBoundaryViolation, "test function '" + tf.label + "' does not vanish at a and b");
    }
    universe << ' ' << tf.label;
  }
  report.universe = universe.str();

  report.records.resize(catalog.size(), {"", LcfnD::zero(f.generator()), 0.0});
  parallel_for(catalog.size(), [&](std::size_t i) {
    const FuzzyFn& eta = catalog[i].eta;
    const FuzzyFn d_eta = eta.derivative();
    const Eigen::Vector2d total = integrate(
        [&](double t) -> Eigen::Vector2d {
          return add(cross(f(t), eta(t)), cross(g(t), d_eta(t))).coords();
        },
        a, b, spec);
    const LcfnD integral(total, f.generator());
    report.records[i] = {catalog[i].label, integral, norm(integral)};
  });

  for (const auto& rec : report.records) {
    report.passed = report.passed && rec.residual < report.tolerance;
    report.violation_detected = report.violation_detected || rec.residual > report.detection_threshold;
  }
  return report;
}

ReconstructionResult dbr_reconstruct(const FuzzyFn& f, const QuadratureSpec& spec, int grid) {
  if (grid < 2) throw Error(ErrorCode::ConfigError, "reconstruction grid needs at least two points");
  const double a = f.domain().lower;
  const double b = f.domain().upper;

  const LcfnD u = scale(1.0 / (b - a), integrate(f, spec));
  ReconstructionResult result{u, {}, 0.0, 0.0, 1e-9, false, false};

  std::vector<double> ts(grid);
  for (int i = 0; i < grid; ++i) ts[i] = (i + 1 == grid) ? b : a + (b - a) * i / (grid - 1);
  std::vector<Eigen::Vector2d> cells(grid, Eigen::Vector2d::Zero());
  parallel_for(static_cast<std::size_t>(grid - 1), [&](std::size_t i) {
    cells[i + 1] = integrate(f, ts[i], ts[i + 1], spec).coords();
  });

  Eigen::Vector2d running = Eigen::Vector2d::Zero();
  for (int i = 0; i < grid; ++i) {
    running += cells[i];
    const LcfnD accumulated(running, f.generator());
    const LcfnD diff = sub(f(ts[i]), u);
    ReconstructionRecord rec{ts[i], accumulated, add(accumulated, u), center(diff), diff.coords()};
    result.max_center_residual = std::max(result.max_center_residual, std::abs(rec.center_residual));
    result.max_coordinate_residual = std::max(result.max_coordinate_residual, diff.coords().cwiseAbs().maxCoeff());
    result.grid.push_back(rec);
  }
  result.constant_modulo_zero_class = result.max_center_residual <= result.tolerance;
  result.constant = result.max_coordinate_residual <= result.tolerance;
  return result;
}

}  // namespace lcfn
