#pragma once

#include <complex>
#include <functional>
#include <string>
#include <vector>

#include <json.hpp>

#include "pwriesz/sequence.hpp"

namespace pwriesz {

struct WeightSample {
  double x = 0.0;
  double w = 0.0;
};

// Logarithmic grid with `per_decade` points per decade on [lo, hi].
std::vector<double> log_grid(double lo = 10.0, double hi = 1e4, int per_decade = 512);

// w(x) = |F(x)|^2 / dist(x, zeros)^2 on the grid points at distance >= min_distance
// from every zero. Throws EmptyGridError if nothing survives the filter.
std::vector<WeightSample> weight_samples(const std::function<std::complex<double>(std::complex<double>)>& f,
                                         const SequenceSpec& zeros, const std::vector<double>& xs,
                                         double min_distance = 0.05);

// log w = slope log(1 + |x|) + intercept, with 95% half-widths.
struct ExponentFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r2 = 0.0;
  double slope_halfwidth = 0.0;
  double intercept_halfwidth = 0.0;
  std::size_t count = 0;

  nlohmann::json to_json() const;
};

// Needs >= 100 samples spanning >= 2 decades of 1 + |x|; InsufficientSpanError otherwise.
ExponentFit exponent_fit(const std::vector<WeightSample>& samples);

enum class A2Case { case1, case2, case3, case4, out_of_range };
std::string to_string(A2Case c);

struct Classification {
  A2Case which = A2Case::out_of_range;
  double difference = 0.0;  // alpha - beta
  bool near_boundary = false;
};

// Case 1: alpha - beta in (-1, 1); 2: in (-2, -1); 3: in (1, 2); 4: |alpha - beta| = 1.
// Open intervals are shrunk by tol; case 4 when ||alpha - beta| - 1| <= tol.
// Throws DomainError when alpha or beta leaves (-1, 1) by more than tol.
Classification a2_classify(double alpha, double beta, double tol = 0.03);

// sup over intervals of (avg w)(avg 1/w), with trapezoid averages. The family
// is [x_0, x_0 + 2^k] for k >= 0 plus the dyadic blocks [2^k, 2^{k+1}];
// intervals holding fewer than `min_points` samples are skipped.
double a2_constant_estimate(const std::vector<WeightSample>& samples, std::size_t min_points = 20);

struct WeightReport {
  std::string name;
  ExponentFit alpha;
  ExponentFit beta;
  Classification classification;
  double tol = 0.03;
  double grid_lo = 10.0;
  double grid_hi = 1e4;
  int per_decade = 512;
  std::vector<std::string> warnings;

  nlohmann::json to_json() const;
};

// Scatter data for plotting: x, w, log(1+x), log(w).
std::string samples_to_csv(const std::vector<WeightSample>& samples);

}  // namespace pwriesz
