#pragma once

#include <numbers>
#include <span>
#include <string>
#include <vector>

namespace pwriesz {

inline constexpr double kPi = std::numbers::pi;

// A closed interval of the frequency axis (radians).
struct Interval {
  double lo = 0.0;
  double hi = 0.0;

  double length() const { return hi - lo; }
  double midpoint() const { return 0.5 * (lo + hi); }
  bool contains(double t) const { return lo <= t && t <= hi; }

  friend bool operator==(const Interval&, const Interval&) = default;
};

// Finite union of disjoint closed intervals, ordered by lower endpoint.
//
// Overlapping inputs are merged. Intervals that merely touch (hi == lo of
// the next part) are rejected: gluing two parts that way would silently
// turn a two-component spectrum into one interval.
class IntervalUnion {
 public:
  explicit IntervalUnion(std::vector<Interval> parts);

  static IntervalUnion single(double lo, double hi) { return IntervalUnion({{lo, hi}}); }
  // [-pi, a] u [b, pi].
  static IntervalUnion two_interval(double a, double b);
  static IntervalUnion symmetric(double half_width) { return single(-half_width, half_width); }

  std::span<const Interval> parts() const { return parts_; }
  std::size_t size() const { return parts_.size(); }
  double measure() const;
  // Length of the convex hull.
  double diameter() const { return parts_.back().hi - parts_.front().lo; }
  bool contains(double t) const;
  // Every part widened by `margin` on both sides (parts merged if they meet).
  IntervalUnion dilated(double margin) const;

  std::string describe() const;

  friend bool operator==(const IntervalUnion&, const IntervalUnion&) = default;

 private:
  std::vector<Interval> parts_;
};

// The gap I = [a, b] between the two parts of [-pi, a] u [b, pi].
Interval gap(const IntervalUnion& e);

// Glued interval E^g = [-pi + b, a + pi]. Requires the two-interval shape
// with outer endpoints -pi and pi; throws ShapeError otherwise.
Interval glue(const IntervalUnion& e);

}  // namespace pwriesz
