#ifndef LCFN_GENERATOR_HPP
#define LCFN_GENERATOR_HPP

#include <cstddef>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "lcfn/error.hpp"
#include "lcfn/interval.hpp"

namespace lcfn {

enum class GeneratorKind { Triangular, PiecewiseLinear };

/// One vertex (x, A(x)) of a piecewise-linear membership function.
struct Knot {
  double x;
  double mu;
  friend bool operator==(const Knot&, const Knot&) = default;
};

/// Outcome of checking a knot sequence against the standing assumptions on A:
/// bounded support, a single point at membership 1, and no mirror symmetry.
struct ValidationReport {
  std::optional<ErrorCode> error;
  std::string message;
  /// Index of the unique knot with mu == 1 (valid only when error is empty).
  std::size_t peak_index = 0;
  /// Largest gap between the reflected left branch and the right branch.
  /// This is the asymmetry certificate; it must exceed the tolerance.
  double asymmetry_deviation = 0.0;

  bool ok() const { return !error.has_value(); }
};

/// The generator fuzzy number A of R_F(A). Immutable once constructed; every
/// constructor validates, so a Generator in hand is always asymmetric with a
/// singleton 1-level.
class Generator {
 public:
  static constexpr double kDefaultAsymmetryTol = 1e-12;

  static Generator triangular(double left, double peak, double right,
                              double asymmetry_tol = kDefaultAsymmetryTol);
  static Generator piecewise_linear(std::vector<Knot> knots,
                                    double asymmetry_tol = kDefaultAsymmetryTol);

  /// Checks without throwing. Knots must be sorted strictly by x.
  static ValidationReport validate(std::span<const Knot> knots,
                                   double asymmetry_tol = kDefaultAsymmetryTol);

  GeneratorKind kind() const { return kind_; }
  std::span<const Knot> knots() const { return knots_; }
  /// a_m, the single point of the 1-level.
  double peak() const { return knots_[peak_index_].x; }
  double asymmetry_deviation() const { return asymmetry_deviation_; }
  double asymmetry_tol() const { return asymmetry_tol_; }

  /// Membership value A(x).
  double membership(double x) const;

  /// [A]_alpha by linear interpolation on each branch; alpha = 0 gives the
  /// closure of the support.
  Interval<double> alpha_level(double alpha) const;

  /// Same fuzzy number shifted so that a_m = 0.
  Generator center_at_zero() const;

  std::size_t hash() const;
  friend bool operator==(const Generator& a, const Generator& b) { return a.knots_ == b.knots_; }

 private:
  Generator(GeneratorKind kind, std::vector<Knot> knots, double asymmetry_tol);

  GeneratorKind kind_;
  std::vector<Knot> knots_;
  std::size_t peak_index_ = 0;
  double asymmetry_deviation_ = 0.0;
  double asymmetry_tol_ = kDefaultAsymmetryTol;
};

using GeneratorPtr = std::shared_ptr<const Generator>;

inline GeneratorPtr share(Generator g) { return std::make_shared<const Generator>(std::move(g)); }

/// Same generator by reference or by structure (equal knots, equal hash).
inline bool same_generator(const GeneratorPtr& a, const GeneratorPtr& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  return a->hash() == b->hash() && *a == *b;
}

}  // namespace lcfn

#endif  // LCFN_GENERATOR_HPP
