#pragma once

// Slow, independent reference computations used only by the tests.

#include <cmath>
#include <complex>

#include "pwriesz/rational.hpp"
#include "pwriesz/sequence.hpp"

namespace oracle {

// z prod_{k=1}^{K} (1 - z^2/(k+delta)^2) in long double, times the tail factor
// exp(-z^2 sum_{k>K} (k+delta)^{-2}) with the sum estimated by 1/(K + 1/2 + delta).
inline std::complex<double> f_delta_product(double delta, std::complex<double> z, long terms = 1000000) {
  const long double zr = z.real();
  const long double zi = z.imag();
  const long double z2r = zr * zr - zi * zi;
  const long double z2i = 2 * zr * zi;
  long double pr = zr;
  long double pi = zi;
  for (long k = 1; k <= terms; ++k) {
    const long double a = k + static_cast<long double>(delta);
    const long double inv = 1.0L / (a * a);
    const long double fr = 1.0L - z2r * inv;
    const long double fi = -z2i * inv;
    const long double nr = pr * fr - pi * fi;
    pi = pr * fi + pi * fr;
    pr = nr;
  }
  const long double tail = 1.0L / (terms + 0.5L + static_cast<long double>(delta));
  const std::complex<long double> t = std::exp(std::complex<long double>(-z2r * tail, -z2i * tail));
  const std::complex<long double> p = std::complex<long double>(pr, pi) * t;
  return {static_cast<double>(p.real()), static_cast<double>(p.imag())};
}

// Five-point central difference.
template <class F>
std::complex<double> central_difference(F&& f, std::complex<double> z, double h) {
  return (-f(z + 2.0 * h) + 8.0 * f(z + h) - 8.0 * f(z - h) + f(z - 2.0 * h)) / (12.0 * h);
}

// The three shifted-lattice sequences written out by hand.
inline pwriesz::SequenceSpec example_sequence(pwriesz::Rational a, pwriesz::Rational b) {
  using pwriesz::Rational;
  using pwriesz::SequenceSpec;
  return SequenceSpec::progression(a, 4, 1, true) | SequenceSpec::progression(b, 4, 1, true) |
         SequenceSpec::points({Rational(-2, 3), 0});
}
inline pwriesz::SequenceSpec lambda_minus() { return example_sequence({1, 2}, {2, 3}); }
inline pwriesz::SequenceSpec lambda_plus() { return example_sequence({-1, 2}, {-2, 3}); }
inline pwriesz::SequenceSpec lambda_zero() { return example_sequence({1, 3}, {2, 3}); }

}  // namespace oracle
