#include "lcfn/generator.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <sstream>

namespace lcfn {

namespace {

ValidationReport reject(ErrorCode code, std::string message) {
  ValidationReport report;
  report.error = code;
  report.message = std::move(message);
  return report;
}

// Left endpoint of [A]_alpha: inf { x : A(x) >= alpha } on the rising branch.
double left_endpoint(std::span<const Knot> k, std::size_t peak, double alpha) {
  if (alpha <= 0.0) return k.front().x;
  for (std::size_t i = 1; i <= peak; ++i) {
    if (k[i].mu >= alpha) {
      if (k[i].mu == alpha) return k[i].x;
      const double s = (alpha - k[i - 1].mu) / (k[i].mu - k[i - 1].mu);
      return k[i - 1].x + s * (k[i].x - k[i - 1].x);
    }
  }
  return k[peak].x;
}

// Right endpoint of [A]_alpha: sup { x : A(x) >= alpha } on the falling branch.
double right_endpoint(std::span<const Knot> k, std::size_t peak, double alpha) {
  if (alpha <= 0.0) return k.back().x;
  for (std::size_t j = k.size() - 1; j-- > peak;) {
    if (k[j].mu >= alpha) {
      if (k[j].mu == alpha) return k[j].x;
      const double s = (alpha - k[j + 1].mu) / (k[j].mu - k[j + 1].mu);
      return k[j + 1].x + s * (k[j].x - k[j + 1].x);
    }
  }
  return k[peak].x;
}

// Both branch-distance functions alpha -> a_m - left(alpha) and
// alpha -> right(alpha) - a_m are linear between consecutive knot levels,
// so comparing at every level and at two interior points of every gap
// decides mirror symmetry exactly.
double mirror_deviation(std::span<const Knot> k, std::size_t peak) {
  std::vector<double> levels;
  levels.reserve(k.size() + 2);
  for (const auto& knot : k) levels.push_back(knot.mu);
  std::sort(levels.begin(), levels.end());
  levels.erase(std::unique(levels.begin(), levels.end()), levels.end());

  std::vector<double> probes;
  for (std::size_t i = 0; i < levels.size(); ++i) {
    probes.push_back(levels[i]);
    if (i + 1 < levels.size()) {
      const double gap = levels[i + 1] - levels[i];
      probes.push_back(levels[i] + gap / 3.0);
      probes.push_back(levels[i] + 2.0 * gap / 3.0);
    }
  }

  const double am = k[peak].x;
  double worst = 0.0;
  for (double alpha : probes) {
    const double dl = am - left_endpoint(k, peak, alpha);
    const double dr = right_endpoint(k, peak, alpha) - am;
    worst = std::max(worst, std::abs(dl - dr));
  }
  return worst;
}

}  // namespace

ValidationReport Generator::validate(std::span<const Knot> knots, double asymmetry_tol) {
  if (knots.size() < 3) {
    return reject(ErrorCode::InvalidMembership, "a generator needs at least three knots");
  }
  for (std::size_t i = 0; i < knots.size(); ++i) {
    if (!std::isfinite(knots[i].x) || !std::isfinite(knots[i].mu)) {
      return reject(ErrorCode::InvalidMembership, "knot coordinates must be finite");
    }
    if (i > 0 && !(knots[i - 1].x < knots[i].x)) {
      std::ostringstream os;
      os << "knots must be sorted strictly by x (knot " << i << ")";
      return reject(ErrorCode::UnsortedKnots, os.str());
    }
    if (knots[i].mu < 0.0 || knots[i].mu > 1.0) {
      return reject(ErrorCode::InvalidMembership, "membership values must lie in [0, 1]");
    }
  }
  if (knots.front().mu != 0.0 || knots.back().mu != 0.0) {
    return reject(ErrorCode::InvalidMembership, "support must be bounded: end knots need mu = 0");
  }
  for (std::size_t i = 1; i + 1 < knots.size(); ++i) {
    if (knots[i].mu == 0.0) {
      return reject(ErrorCode::InvalidMembership, "interior knots must have mu > 0");
    }
  }

  const auto ones = std::count_if(knots.begin(), knots.end(), [](const Knot& k) { return k.mu == 1.0; });
  if (ones == 0) return reject(ErrorCode::NotNormal, "no knot reaches membership 1");
  if (ones > 1) return reject(ErrorCode::PlateauAtOne, "the 1-level is not a single point");

  const auto peak = static_cast<std::size_t>(
      std::find_if(knots.begin(), knots.end(), [](const Knot& k) { return k.mu == 1.0; }) - knots.begin());
  for (std::size_t i = 1; i <= peak; ++i) {
    if (knots[i].mu < knots[i - 1].mu) {
      return reject(ErrorCode::InvalidMembership, "membership must rise up to the peak");
    }
  }
  for (std::size_t i = peak + 1; i < knots.size(); ++i) {
    if (knots[i].mu > knots[i - 1].mu) {
      return reject(ErrorCode::InvalidMembership, "membership must fall after the peak");
    }
  }

  ValidationReport report;
  report.peak_index = peak;
  report.asymmetry_deviation = mirror_deviation(knots, peak);
  if (report.asymmetry_deviation < asymmetry_tol) {
    report.error = ErrorCode::Symmetric;
    report.message = "membership is mirror-symmetric about its peak; (r, q) -> r + qA is not injective";
  }
  return report;
}

Generator::Generator(GeneratorKind kind, std::vector<Knot> knots, double asymmetry_tol)
    : kind_(kind), knots_(std::move(knots)), asymmetry_tol_(asymmetry_tol) {
  const auto report = validate(knots_, asymmetry_tol);
  if (!report.ok()) throw Error(*report.error, report.message);
  peak_index_ = report.peak_index;
  asymmetry_deviation_ = report.asymmetry_deviation;
}

Generator Generator::triangular(double left, double peak, double right, double asymmetry_tol) {
  return Generator(GeneratorKind::Triangular, {{left, 0.0}, {peak, 1.0}, {right, 0.0}}, asymmetry_tol);
}

Generator Generator::piecewise_linear(std::vector<Knot> knots, double asymmetry_tol) {
  return Generator(GeneratorKind::PiecewiseLinear, std::move(knots), asymmetry_tol);
}

double Generator::membership(double x) const {
  if (x <= knots_.front().x || x >= knots_.back().x) return 0.0;
  const auto it = std::upper_bound(knots_.begin(), knots_.end(), x,
                                   [](double v, const Knot& k) { return v < k.x; });
  const auto& hi = *it;
  const auto& lo = *(it - 1);
  if (x == lo.x) return lo.mu;
  return lo.mu + (x - lo.x) / (hi.x - lo.x) * (hi.mu - lo.mu);
}

Interval<double> Generator::alpha_level(double alpha) const {
  if (!(alpha >= 0.0 && alpha <= 1.0)) {
    throw Error(ErrorCode::AlphaOutOfRange, "alpha must lie in [0, 1]");
  }
  return {left_endpoint(knots_, peak_index_, alpha), right_endpoint(knots_, peak_index_, alpha)};
}

Generator Generator::center_at_zero() const {
  const double shift = peak();
  if (shift == 0.0) return *this;
  std::vector<Knot> moved = knots_;
  for (auto& k : moved) k.x -= shift;
  moved[peak_index_].x = 0.0;
  return Generator(kind_, std::move(moved), asymmetry_tol_);
}

std::size_t Generator::hash() const {
  std::size_t h = knots_.size();
  const std::hash<double> hd;
  for (const auto& k : knots_) {
    h ^= hd(k.x) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    h ^= hd(k.mu) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  }
  return h;
}

}  // namespace lcfn
