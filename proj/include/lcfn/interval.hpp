#ifndef LCFN_INTERVAL_HPP
#define LCFN_INTERVAL_HPP

namespace lcfn {

// Closed interval [lower, upper]; lower <= upper is the caller's contract.
template <typename Scalar>
struct Interval {
  Scalar lower;
  Scalar upper;

  Scalar width() const { return upper - lower; }
  bool contains(const Interval& other) const {
    return lower <= other.lower && other.upper <= upper;
  }
  bool contains(Scalar x) const { return lower <= x && x <= upper; }
  friend bool operator==(const Interval&, const Interval&) = default;
};

}  // namespace lcfn

#endif  // LCFN_INTERVAL_HPP
