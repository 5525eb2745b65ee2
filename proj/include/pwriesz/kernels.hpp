#pragma once

#include <complex>

#include "pwriesz/intervals.hpp"

namespace pwriesz {

using cplx = std::complex<double>;

// \int_iv e^{i w t} dt. Uses the midpoint Taylor series of sin(u)/u when
// |w| * switch_length < 1/2, the closed form otherwise.
cplx interval_integral(const Interval& iv, cplx w, double switch_length);

// Reproducing kernel of PW_S: k^S_lambda(z) = \int_S e^{i (z - conj(lambda)) t} dt.
cplx kernel(const IntervalUnion& s, cplx lambda, cplx z);

// ||k^S_lambda||^2 = k^S_lambda(lambda); strictly positive.
double kernel_norm_sq(const IntervalUnion& s, cplx lambda);

// <e^{i lambda t}, e^{i mu t}>_{L^2(S)} = k^S_mu(lambda).
inline cplx exp_inner(const IntervalUnion& s, cplx lambda, cplx mu) { return kernel(s, mu, lambda); }

}  // namespace pwriesz
