#pragma once

#include <complex>

namespace pwriesz {

using cplx = std::complex<double>;

// sin(pi u) and cos(pi u) with exact argument reduction of Re u, so zeros at
// integers (resp. half-integers) stay sharp for large |u|.
cplx sinpi(cplx u);
cplx cospi(cplx u);
// exp(i pi u).
cplx exp_i_pi(cplx u);

// Principal-ish branch of log Gamma(z) for complex z away from the poles.
// Lanczos approximation (g = 7, 9 terms) with reflection for Re z < 1/2.
// Only exp(log_gamma(.)) differences are used downstream, so the branch of
// the imaginary part does not matter.
cplx log_gamma(cplx z);

}  // namespace pwriesz
