#pragma once

#include <complex>
#include <functional>
#include <string>
#include <vector>

#include <json.hpp>

#include "pwriesz/entire.hpp"
#include "pwriesz/intervals.hpp"
#include "pwriesz/sequence.hpp"

namespace pwriesz {

// F(z)/(z - lambda) = phi(z) + kernel_coeff * k^I_{conj(lambda)}(z) for a zero lambda of F,
// with phi in PW_E and I the gap of E.
class DivisionParts {
 public:
  DivisionParts(GeneratingFunction f, IntervalUnion e, cplx lambda);

  cplx lambda() const { return lambda_; }
  cplx kernel_coeff() const { return kernel_coeff_; }
  const Interval& gap_interval() const { return gap_; }

  cplx phi(cplx z) const;
  // kernel_coeff * k^I_{conj(lambda)}(z)
  cplx remainder(cplx z) const;
  // F(z)/(z - lambda); F'(lambda) at z = lambda.
  cplx quotient(cplx z) const;

  // Below this |z - lambda| phi switches to its Taylor expansion.
  static constexpr double kNearRadius = 1e-3;

 private:
  // (F^s(z) - F^s(lambda) e^{ic(z - lambda)})/(z - lambda) for one side.
  cplx phi_side(Side side, cplx z) const;

  GeneratingFunction f_;
  Interval gap_;
  cplx lambda_;
  cplx f_plus_;
  cplx f_minus_;
  cplx kernel_coeff_;
  // Taylor coefficients of phi_side at lambda, index 0 is the value there.
  std::vector<cplx> near_plus_;
  std::vector<cplx> near_minus_;
};

// Throws PreconditionError unless |F(lambda)| <= 1e-8 max(1, |F'(lambda)|).
DivisionParts divide(const GeneratingFunction& f, const IntervalUnion& e, cplx lambda);

// Samples f(x_j) on x_j = -L + j h, j = 0..n-1, n = round(2L/h) + 1.
struct SampledFunction {
  double half_length = 0.0;
  double step = 0.0;
  std::vector<cplx> values;

  double x(std::size_t j) const { return -half_length + static_cast<double>(j) * step; }
};

SampledFunction sample(const std::function<cplx(double)>& f, double half_length, double step);

// Fraction of the energy of the trapezoid Fourier transform lying outside E
// widened by `guard`. Throws GridTooCoarseError for step > 1/4.
double spectral_mass_outside(const SampledFunction& f, const IntervalUnion& e, double guard = 0.05);

struct ConditionIIIRow {
  cplx t;
  double f_plus = 0.0;
  double f_prime = 0.0;
  double ratio = 0.0;
  double weighted = 0.0;
};

struct ConditionIIIReport {
  double inf_weighted = 0.0;
  double inf_ratio = 0.0;
  cplx argmin;
  double radius = 0.0;
  std::vector<ConditionIIIRow> rows;

  // columns: t, |F+(t)|, |F'(t)|, ratio, weighted ratio
  std::string to_csv() const;
  nlohmann::json to_json() const;
};

// min over t in T, |Re t| <= R, of |F^+(t)/F'(t)| ||k^pi_t|| ||k^I_{conj t}||.
ConditionIIIReport condition_iii_inf(const GeneratingFunction& f, const SequenceSpec& t, const IntervalUnion& e,
                                     double radius);
inline ConditionIIIReport condition_iii_inf(const Family& fam, double radius) {
  return condition_iii_inf(fam.f, fam.t(), fam.domain, radius);
}

}  // namespace pwriesz
