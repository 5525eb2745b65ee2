#include "pwriesz/kernels.hpp"

#include <cmath>

namespace pwriesz {
namespace {

constexpr double kSwitch = 0.5;
constexpr int kMaxSeriesTerms = 20;

// sin(u)/u by its Taylor series; only called with |u| < 1/4.
cplx sinc_series(cplx u) {
  const cplx u2 = u * u;
  cplx term = 1.0;
  cplx sum = 1.0;
  for (int k = 1; k < kMaxSeriesTerms; ++k) {
    term *= -u2 / static_cast<double>((2 * k) * (2 * k + 1));
    sum += term;
    if (std::abs(term) < 1e-17 * std::abs(sum)) break;
  }
  return sum;
}

}  // namespace

cplx interval_integral(const Interval& iv, cplx w, double switch_length) {
  const cplx i(0.0, 1.0);
  if (std::abs(w) * switch_length < kSwitch) {
    const double half = 0.5 * iv.length();
    return std::exp(i * w * iv.midpoint()) * (2.0 * half) * sinc_series(w * half);
  }
  return (std::exp(i * iv.hi * w) - std::exp(i * iv.lo * w)) / (i * w);
}

cplx kernel(const IntervalUnion& s, cplx lambda, cplx z) {
  const cplx w = z - std::conj(lambda);
  const double diam = s.diameter();
  cplx total = 0.0;
  for (const auto& iv : s.parts()) total += interval_integral(iv, w, diam);
  return total;
}

double kernel_norm_sq(const IntervalUnion& s, cplx lambda) { return kernel(s, lambda, lambda).real(); }

}  // namespace pwriesz
