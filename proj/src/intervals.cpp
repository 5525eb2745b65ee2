#include "pwriesz/intervals.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "pwriesz/errors.hpp"

namespace pwriesz {
namespace {

constexpr double kEndpointTol = 1e-12;

void check_interval(const Interval& iv) {
  if (!std::isfinite(iv.lo) || !std::isfinite(iv.hi)) throw DomainError("interval endpoints must be finite");
  if (!(iv.lo < iv.hi)) throw DomainError("interval requires lo < hi");
}

}  // namespace

IntervalUnion::IntervalUnion(std::vector<Interval> parts) {
  if (parts.empty()) throw DomainError("interval union must have positive total length");
  for (const auto& iv : parts) check_interval(iv);
  std::sort(parts.begin(), parts.end(), [](const Interval& a, const Interval& b) { return a.lo < b.lo; });

  for (const auto& iv : parts) {
    if (!parts_.empty()) {
      auto& last = parts_.back();
      if (iv.lo == last.hi) {
        throw DomainError("adjacent intervals are not allowed; the union would lose a component");
      }
      if (iv.lo < last.hi) {
        last.hi = std::max(last.hi, iv.hi);
        continue;
      }
    }
    parts_.push_back(iv);
  }
}

IntervalUnion IntervalUnion::two_interval(double a, double b) {
  if (!(-kPi < a && a < b && b < kPi)) throw DomainError("two-interval set needs -pi < a < b < pi");
  return IntervalUnion({{-kPi, a}, {b, kPi}});
}

double IntervalUnion::measure() const {
  double total = 0.0;
  for (const auto& iv : parts_) total += iv.length();
  return total;
}

bool IntervalUnion::contains(double t) const {
  return std::any_of(parts_.begin(), parts_.end(), [t](const Interval& iv) { return iv.contains(t); });
}

IntervalUnion IntervalUnion::dilated(double margin) const {
  std::vector<Interval> out;
  for (const auto& iv : parts_) {
    Interval w{iv.lo - margin, iv.hi + margin};
    if (!out.empty() && w.lo <= out.back().hi) {
      out.back().hi = std::max(out.back().hi, w.hi);
    } else {
      out.push_back(w);
    }
  }
  return IntervalUnion(std::move(out));
}

std::string IntervalUnion::describe() const {
  std::ostringstream os;
  os.precision(17);
  for (std::size_t i = 0; i < parts_.size(); ++i) {
    if (i) os << " u ";
    os << '[' << parts_[i].lo << ", " << parts_[i].hi << ']';
  }
  return os.str();
}

Interval gap(const IntervalUnion& e) {
  if (e.size() != 2) throw ShapeError("expected a union of exactly two intervals");
  return {e.parts()[0].hi, e.parts()[1].lo};
}

Interval glue(const IntervalUnion& e) {
  if (e.size() != 2) throw ShapeError("glue needs a union of exactly two intervals");
  const auto lower = e.parts()[0];
  const auto upper = e.parts()[1];
  if (std::abs(lower.lo + kPi) > kEndpointTol || std::abs(upper.hi - kPi) > kEndpointTol) {
    throw ShapeError("glue needs the form [-pi, a] u [b, pi]");
  }
  return {-kPi + upper.lo, lower.hi + kPi};
}

}  // namespace pwriesz
