#include "pwriesz/special.hpp"

#include <array>
#include <cmath>
#include <numbers>

namespace pwriesz {
namespace {

constexpr double kPi = std::numbers::pi;

// Reduces x modulo 2 into [-1, 1]; exact in binary floating point.
double reduce_mod2(double x) { return x - 2.0 * std::nearbyint(0.5 * x); }

constexpr double kLanczosG = 7.0;
constexpr std::array<double, 9> kLanczos = {
    0.99999999999980993,  676.5203681218851,     -1259.1392167224028,
    771.32342877765313,   -176.61502916214059,   12.507343278686905,
    -0.13857109526572012, 9.9843695780195716e-6, 1.5056327351493116e-7};

}  // namespace

cplx sinpi(cplx u) {
  const double x = reduce_mod2(u.real());
  const double y = kPi * u.imag();
  // sin(pi x) is exactly zero at integer x after reduction.
  const double s = (x == 0.0 || std::abs(x) == 1.0) ? 0.0 : std::sin(kPi * x);
  const double c = (std::abs(x) == 0.5) ? 0.0 : std::cos(kPi * x);
  return {s * std::cosh(y), c * std::sinh(y)};
}

cplx cospi(cplx u) {
  const double x = reduce_mod2(u.real());
  const double y = kPi * u.imag();
  const double s = (x == 0.0 || std::abs(x) == 1.0) ? 0.0 : std::sin(kPi * x);
  const double c = (std::abs(x) == 0.5) ? 0.0 : std::cos(kPi * x);
  return {c * std::cosh(y), -s * std::sinh(y)};
}

cplx exp_i_pi(cplx u) {
  const double x = reduce_mod2(u.real());
  const double s = (x == 0.0 || std::abs(x) == 1.0) ? 0.0 : std::sin(kPi * x);
  const double c = (std::abs(x) == 0.5) ? 0.0 : std::cos(kPi * x);
  return std::exp(-kPi * u.imag()) * cplx(c, s);
}

cplx log_gamma(cplx z) {
  if (z.real() < 0.5) {
    // Gamma(z) Gamma(1 - z) = pi / sin(pi z)
    return std::log(kPi) - std::log(sinpi(z)) - log_gamma(1.0 - z);
  }
  z -= 1.0;
  cplx x = kLanczos[0];
  for (std::size_t i = 1; i < kLanczos.size(); ++i) x += kLanczos[i] / (z + static_cast<double>(i));
  const cplx t = z + kLanczosG + 0.5;
  return 0.5 * std::log(2.0 * kPi) + (z + 0.5) * std::log(t) - t + std::log(x);
}

}  // namespace pwriesz
