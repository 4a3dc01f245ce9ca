#ifndef LCFN_LCFN_HPP
#define LCFN_LCFN_HPP

#include <Eigen/Core>

#include <cmath>
#include <compare>
#include <string>
#include <string_view>

#include "lcfn/error.hpp"
#include "lcfn/generator.hpp"
#include "lcfn/interval.hpp"

namespace lcfn {

/// Element r + qA of R_F(A), stored as its coordinate pair (r, q).
///
/// The pair is unique because the generator is asymmetric, so every
/// operation below works on coordinates only; the generator enters through
/// its peak a_m (center, order, cross product) and its alpha-levels
/// (realization as a fuzzy number).
template <typename Scalar>
class Lcfn {
 public:
  using Coords = Eigen::Matrix<Scalar, 2, 1>;

  Lcfn(Scalar r, Scalar q, GeneratorPtr generator) : Lcfn(Coords(r, q), std::move(generator)) {}

  Lcfn(const Coords& coords, GeneratorPtr generator)
      : coords_(coords), generator_(std::move(generator)) {
    if (!generator_) throw Error(ErrorCode::GeneratorMismatch, "element built without a generator");
    if (!std::isfinite(static_cast<double>(coords_[0])) || !std::isfinite(static_cast<double>(coords_[1])) ||
        !std::isfinite(static_cast<double>(coords_[0] + coords_[1] * peak()))) {
      throw Error(ErrorCode::NonFinite, "coordinates and center must be finite");
    }
  }

  static Lcfn crisp(Scalar r, GeneratorPtr generator) { return Lcfn(r, Scalar(0), std::move(generator)); }
  static Lcfn zero(GeneratorPtr generator) { return Lcfn(Scalar(0), Scalar(0), std::move(generator)); }

  Scalar r() const { return coords_[0]; }
  Scalar q() const { return coords_[1]; }
  const Coords& coords() const { return coords_; }
  const GeneratorPtr& generator() const { return generator_; }
  Scalar peak() const { return static_cast<Scalar>(generator_->peak()); }

 private:
  Coords coords_;
  GeneratorPtr generator_;
};

using LcfnD = Lcfn<double>;

template <typename Scalar>
void require_same_generator(const Lcfn<Scalar>& b, const Lcfn<Scalar>& c) {
  if (!same_generator(b.generator(), c.generator())) {
    throw Error(ErrorCode::GeneratorMismatch, "operands belong to different spaces R_F(A)");
  }
}

// ---- vector-space structure -------------------------------------------------

template <typename Scalar>
Lcfn<Scalar> add(const Lcfn<Scalar>& b, const Lcfn<Scalar>& c) {
  require_same_generator(b, c);
  return Lcfn<Scalar>(b.coords() + c.coords(), b.generator());
}

template <typename Scalar>
Lcfn<Scalar> scale(Scalar lambda, const Lcfn<Scalar>& b) {
  return Lcfn<Scalar>(lambda * b.coords(), b.generator());
}

template <typename Scalar>
Lcfn<Scalar> neg(const Lcfn<Scalar>& b) {
  return scale(Scalar(-1), b);
}

template <typename Scalar>
Lcfn<Scalar> sub(const Lcfn<Scalar>& b, const Lcfn<Scalar>& c) {
  return add(b, neg(c));
}

template <typename Scalar>
Lcfn<Scalar> operator+(const Lcfn<Scalar>& b, const Lcfn<Scalar>& c) { return add(b, c); }
template <typename Scalar>
Lcfn<Scalar> operator-(const Lcfn<Scalar>& b, const Lcfn<Scalar>& c) { return sub(b, c); }
template <typename Scalar>
Lcfn<Scalar> operator-(const Lcfn<Scalar>& b) { return neg(b); }
template <typename Scalar>
Lcfn<Scalar> operator*(Scalar lambda, const Lcfn<Scalar>& b) { return scale(lambda, b); }

/// Exact coordinate equality within the same space.
template <typename Scalar>
bool operator==(const Lcfn<Scalar>& b, const Lcfn<Scalar>& c) {
  return same_generator(b.generator(), c.generator()) && b.coords() == c.coords();
}

/// For test assertions only; the order never uses a tolerance.
template <typename Scalar>
bool approx_equal(const Lcfn<Scalar>& b, const Lcfn<Scalar>& c, Scalar abs_tol = Scalar(1e-12)) {
  return same_generator(b.generator(), c.generator()) &&
         (b.coords() - c.coords()).cwiseAbs().maxCoeff() <= abs_tol;
}

// ---- center, norm -----------------------------------------------------------

/// r + q a_m, the midpoint of the element's 1-level. Uses a fused
/// multiply-add, so the last bit may differ from a two-rounding evaluation.
template <typename Scalar>
Scalar center(const Lcfn<Scalar>& b) {
  return std::fma(b.q(), b.peak(), b.r());
}

/// |q| + |r + q a_m|
template <typename Scalar>
Scalar norm(const Lcfn<Scalar>& b) {
  return std::abs(b.q()) + std::abs(center(b));
}

// ---- total order ------------------------------------------------------------

/// Which clause of the order decided a comparison: I centers differ,
/// II centers tie and |q| differs, III centers and |q| tie.
enum class OrderTier { I, II, III };

struct Comparison {
  std::strong_ordering order;
  OrderTier tier;
};

/// Lexicographic comparison on (center, |q|, q).
///
/// Two distinct coordinate pairs can round to the same center; when the
/// whole key ties, r breaks the tie so Equal holds only for identical
/// coordinates and antisymmetry survives floating point.
template <typename Scalar>
Comparison compare(const Lcfn<Scalar>& b, const Lcfn<Scalar>& c) {
  require_same_generator(b, c);
  const Scalar cb = center(b);
  const Scalar cc = center(c);
  if (cb < cc) return {std::strong_ordering::less, OrderTier::I};
  if (cb > cc) return {std::strong_ordering::greater, OrderTier::I};
  const Scalar wb = std::abs(b.q());
  const Scalar wc = std::abs(c.q());
  if (wb < wc) return {std::strong_ordering::less, OrderTier::II};
  if (wb > wc) return {std::strong_ordering::greater, OrderTier::II};
  if (b.q() < c.q()) return {std::strong_ordering::less, OrderTier::III};
  if (b.q() > c.q()) return {std::strong_ordering::greater, OrderTier::III};
  if (b.r() < c.r()) return {std::strong_ordering::less, OrderTier::III};
  if (b.r() > c.r()) return {std::strong_ordering::greater, OrderTier::III};
  return {std::strong_ordering::equal, OrderTier::III};
}

template <typename Scalar>
std::strong_ordering operator<=>(const Lcfn<Scalar>& b, const Lcfn<Scalar>& c) {
  return compare(b, c).order;
}

/// B <= C in the total order.
template <typename Scalar>
bool leq(const Lcfn<Scalar>& b, const Lcfn<Scalar>& c) {
  return compare(b, c).order != std::strong_ordering::greater;
}

/// Both directions of the comparison between a real lambda and B.
struct ScalarComparison {
  bool scalar_le_element;  ///< lambda <= B
  bool element_le_scalar;  ///< B <= lambda
};

/// lambda <= B iff lambda <= center(B); B <= lambda iff lambda > center(B)
/// or B is the crisp number lambda.
template <typename Scalar>
ScalarComparison compare_scalar(Scalar lambda, const Lcfn<Scalar>& b) {
  const Scalar cb = center(b);
  return {lambda <= cb, lambda > cb || (b.q() == Scalar(0) && b.r() == lambda)};
}

// ---- Psi-cross product ------------------------------------------------------

/// B (.) C = (r_B r_C - a_m^2 q_B q_C) + (r_B q_C + r_C q_B + 2 a_m q_B q_C) A
template <typename Scalar>
Lcfn<Scalar> cross(const Lcfn<Scalar>& b, const Lcfn<Scalar>& c) {
  require_same_generator(b, c);
  const Scalar am = b.peak();
  const Scalar qq = b.q() * c.q();
  return Lcfn<Scalar>(b.r() * c.r() - am * am * qq, b.r() * c.q() + c.r() * b.q() + Scalar(2) * am * qq,
                      b.generator());
}

/// c B + b C - bc with b, c the 1-level points of B and C, built from the
/// vector-space operations only. Independent route to cross().
template <typename Scalar>
Lcfn<Scalar> cross_oracle(const Lcfn<Scalar>& b, const Lcfn<Scalar>& c) {
  require_same_generator(b, c);
  const Scalar pb = center(b);
  const Scalar pc = center(c);
  return sub(add(scale(pc, b), scale(pb, c)), Lcfn<Scalar>::crisp(pb * pc, b.generator()));
}

template <typename Scalar>
Lcfn<Scalar> square(const Lcfn<Scalar>& b) {
  return cross(b, b);
}

/// The witness C outside R^0 with B (.) C != 0, for B != 0. Returns B's
/// generator-crisp zero when B = 0 (no witness exists).
template <typename Scalar>
Lcfn<Scalar> annihilator_witness(const Lcfn<Scalar>& b) {
  if (b.r() != Scalar(0)) return Lcfn<Scalar>::crisp(b.r(), b.generator());
  if (b.peak() != Scalar(0)) return Lcfn<Scalar>(Scalar(0), b.q(), b.generator());
  return Lcfn<Scalar>::crisp(b.q(), b.generator());
}

// ---- sign classes -----------------------------------------------------------

enum class SignClass { ZeroClass, Positive, Negative };

inline std::string_view to_string(SignClass s) {
  switch (s) {
    case SignClass::ZeroClass: return "zero";
    case SignClass::Positive: return "positive";
    case SignClass::Negative: return "negative";
  }
  return "zero";
}

template <typename Scalar>
SignClass classify(const Lcfn<Scalar>& b) {
  const Scalar c = center(b);
  if (c > Scalar(0)) return SignClass::Positive;
  if (c < Scalar(0)) return SignClass::Negative;
  return SignClass::ZeroClass;
}

// ---- realization as a fuzzy number ------------------------------------------

/// [B]_alpha = r + q [A]_alpha, endpoints swapped when q < 0.
template <typename Scalar>
Interval<Scalar> realize_alpha(const Lcfn<Scalar>& b, Scalar alpha) {
  const auto level = b.generator()->alpha_level(static_cast<double>(alpha));
  const Scalar lo = b.r() + b.q() * static_cast<Scalar>(level.lower);
  const Scalar hi = b.r() + b.q() * static_cast<Scalar>(level.upper);
  if (b.q() >= Scalar(0)) return {lo, hi};
  return {hi, lo};
}

// ---- text literals ----------------------------------------------------------

/// Parses "r+q*A" style literals: "3+2A", "-1.5A", "4", "3 - 2*A", "A".
/// Throws Error(SyntaxError) carrying the byte offset of the problem.
LcfnD parse_literal(std::string_view text, GeneratorPtr generator);

/// Shortest round-trip form, e.g. "3+2A", "-1.5A", "4".
std::string format_literal(const LcfnD& b);

}  // namespace lcfn

#endif  // LCFN_LCFN_HPP
