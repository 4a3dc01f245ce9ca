#ifndef LCFN_VARIATIONAL_HPP
#define LCFN_VARIATIONAL_HPP

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "lcfn/calculus.hpp"

namespace lcfn {

// ---- optimality conditions --------------------------------------------------

enum class Verdict { LocalMin, LocalMax, Inconclusive };

std::string_view to_string(Verdict v);

/// Stationary point of g = r + a_m q, the center of f.
struct CriticalPoint {
  double t_star;
  double center_d1;  ///< g'(t*)
  double center_d2;  ///< g''(t*)
  Verdict verdict;
  bool kink_hit = false;  ///< abs'(0) = 0 convention was used
};

struct CriticalPointOptions {
  int grid = 1024;
  double root_tol = 1e-12;      ///< final bracket width, relative to max(1, |t|)
  double classify_tol = 1e-9;   ///< |g''| below this is Inconclusive
  double touch_tol = 1e-10;     ///< |g'| accepted at a double root
  bool newton_polish = false;
};

/// Sign changes of g' on a uniform grid, refined by bisection, plus grid
/// minima of |g'| that touch zero without crossing (double roots such as
/// t^3 at 0). Classified by the sign of g''.
std::vector<CriticalPoint> critical_points(const FuzzyFn& f, const CriticalPointOptions& options = {});

struct LocalOrderReport {
  bool checked = false;   ///< false for Inconclusive points
  bool passed = true;
  int samples = 0;
  int violations = 0;     ///< inside the basin around t*
  int out_of_neighborhood = 0;  ///< beyond the monotone basin; not failures
  std::optional<double> first_violation;
  std::string note;
};

/// Checks f(t*) <= f(z) (LocalMin) or f(z) <= f(t*) (LocalMax) with the total
/// order at n points of (t* - radius, t* + radius) within the domain.
LocalOrderReport verify_local_order(const FuzzyFn& f, const CriticalPoint& cp, double radius, int n);

// ---- Dirac sequence ---------------------------------------------------------

struct DiracParams {
  double epsilon = 0.2;
  int l = 1;  ///< smoothness order
  int k = 1;  ///< sequence index
};

/// delta_k(x) = c_k^-1 [(cos(pi x / eps) + 1) / 2]^((l + 1) k) on [-eps, eps],
/// zero outside. Even, nonnegative, unit mass; l derivatives vanish at +-eps.
class DiracKernel {
 public:
  explicit DiracKernel(DiracParams params);

  double operator()(double x) const;
  /// c_k, by adaptive quadrature of the unnormalized kernel.
  double normalization() const { return c_k_; }
  int exponent() const { return (params_.l + 1) * params_.k; }
  const DiracParams& params() const { return params_; }

 private:
  DiracParams params_;
  double c_k_;
};

/// Harness settings shared by the Lagrange and du Bois-Reymond checks.
struct HarnessConfig {
  double epsilon = 0.2;
  int l = 1;
  std::vector<int> k{1, 2, 4, 8, 16};
  int grid = 1024;
};

/// Mollifier window eps clamped to 0.45 min(t0 - a, b - t0) so the test
/// function and its derivatives vanish at the interval ends.
double clamp_window(const FuzzyFn& f, double t0, double epsilon);

/// eta_k(z) = r(z) delta_k(z - t0) + q(z) delta_k(z - t0) A inside the window,
/// zero outside.
struct MollifiedFn {
  FuzzyFn base;
  DiracKernel kernel;
  double t0;

  LcfnD operator()(double z) const;
};

struct WitnessTerm {
  int k;
  double epsilon;
  MollifiedFn eta;
  double b_k;             ///< center of int f (.) eta_k
  double b_k_collapsed;   ///< int (r + a_m q)^2 delta_k, same value by algebra
};

struct LagrangeWitness {
  double t0;
  double limit;  ///< (r(t0) + a_m q(t0))^2
  std::vector<WitnessTerm> terms;
};

/// Throws WindowOutsideDomain unless a < t0 < b, ZeroCenterAtT0 when
/// |center(f(t0))| <= 1e-9.
LagrangeWitness lagrange_witness(const FuzzyFn& f, double t0, const HarnessConfig& config,
                                 const QuadratureSpec& spec = {});

struct LagrangeScanRecord {
  double t0;
  double center;
  double epsilon;
  bool witness_applicable;  ///< |center| > 1e-9
  double b_last;            ///< b_k at the largest k (0 when not applicable)
  bool witness_ok;          ///< b_last > 0, or not applicable
  Eigen::Vector2d recovered;  ///< (int r delta_k, int q delta_k), largest k
  Eigen::Vector2d direct;     ///< (r(t0), q(t0))
  double recovery_error;      ///< max coordinate gap
  bool recovery_ok;
};

struct LagrangeScanReport {
  std::vector<LagrangeScanRecord> records;
  int admissible_witnesses = 0;
  int witness_failures = 0;
  int recovery_failures = 0;
  double recovery_tolerance = 0.05;
  double center_threshold = 1e-9;
  bool passed = true;
};

/// Scans t0 over `config.grid` interior points: part (i) contrapositive via
/// the f-weighted mollifier, part (ii) via the crisp mollifier.
LagrangeScanReport lagrange_scan(const FuzzyFn& f, const HarnessConfig& config, const QuadratureSpec& spec = {});

// ---- du Bois-Reymond --------------------------------------------------------

struct TestFunction {
  std::string label;
  FuzzyFn eta;
};

/// sin(m pi (t - a) / (b - a)) for m = 1..modes, with q-component 0 and with
/// the same sine: 2 * modes functions vanishing at both ends.
std::vector<TestFunction> sine_catalog(const GeneratorPtr& generator, Interval<double> domain, int modes = 4);

struct DbrForwardRecord {
  std::string label;
  LcfnD integral;
  double residual;
};

struct DbrForwardReport {
  std::vector<DbrForwardRecord> records;
  double tolerance = 1e-7;
  double detection_threshold = 1e-3;
  bool passed = true;              ///< every residual below tolerance
  bool violation_detected = false;  ///< some residual above the detection threshold
  std::string universe;            ///< which test functions were used
};

/// int [f (.) eta + g (.) eta'] dt for each eta of the catalog. Throws
/// CatalogBoundaryViolation if some eta does not vanish at a and b.
DbrForwardReport dbr_forward_check(const FuzzyFn& f, const FuzzyFn& g, std::span<const TestFunction> catalog,
                                   const QuadratureSpec& spec = {});

struct ReconstructionRecord {
  double t;
  LcfnD accumulated;   ///< F(t) = int_a^t f
  LcfnD g_tilde;       ///< F(t) + u
  double center_residual;       ///< center(f(t) - u)
  Eigen::Vector2d coordinate_residual;  ///< f(t) - u
};

struct ReconstructionResult {
  LcfnD u;  ///< mean value (b - a)^-1 int f
  std::vector<ReconstructionRecord> grid;
  double max_center_residual = 0.0;
  double max_coordinate_residual = 0.0;
  double tolerance = 1e-9;
  bool constant_modulo_zero_class = false;  ///< f - u in R^0 on the grid
  bool constant = false;                    ///< f = u on the grid
};

ReconstructionResult dbr_reconstruct(const FuzzyFn& f, const QuadratureSpec& spec = {}, int grid = 1024);

}  // namespace lcfn

#endif  // LCFN_VARIATIONAL_HPP
