#pragma once

#include <complex>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <json.hpp>

#include "pwriesz/intervals.hpp"
#include "pwriesz/sequence.hpp"

namespace pwriesz {

using cplx = std::complex<double>;

inline constexpr std::size_t kDefaultGramCap = 1200;

// Normalized Gram matrix G_jk = <e^{i l_j t}, e^{i l_k t}>_{L2(S)} / (||.|| ||.||).
struct GramSection {
  IntervalUnion domain = IntervalUnion::single(-kPi, kPi);
  std::vector<cplx> points;
  Eigen::MatrixXcd matrix;
  double eig_min = 0.0;
  double eig_max = 0.0;
};

// Throws DuplicatePointError on repeated points and CapExceededError above `cap`.
GramSection gram(const IntervalUnion& s, const std::vector<cplx>& points, std::size_t cap = kDefaultGramCap);

// Extreme eigenvalues of a Hermitian matrix (real solver when the imaginary part vanishes).
std::pair<double, double> extreme_eigenvalues(const Eigen::MatrixXcd& m);

// Least-squares line y = slope x + intercept with its coefficient of determination.
struct LineFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r2 = 0.0;
};
LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y);

enum class TrendVerdict { stable, decaying, indeterminate };
std::string to_string(TrendVerdict v);

struct TrendCriteria {
  double floor = 0.0;
  double stable_ratio = 0.8;
  double decay_slope = -0.3;
  double min_r2 = 0.9;
};

// Windows are radii R; the section for R holds the points with |Re| <= R.
struct TrendReport {
  std::string domain;
  std::vector<double> windows;
  std::vector<std::size_t> counts;
  std::vector<double> eig_min;
  std::vector<double> eig_max;
  double ratio = 0.0;  // eig_min(last) / eig_min(windows[n/2])
  LineFit fit;         // log eig_min against log R
  TrendCriteria criteria;
  TrendVerdict verdict = TrendVerdict::indeterminate;
  bool nested_monotone = true;

  nlohmann::json to_json() const;
  std::string to_csv() const;
};

TrendReport bound_trend(const SequenceSpec& spec, const IntervalUnion& s, const std::vector<double>& windows,
                        const TrendCriteria& criteria, std::size_t cap = kDefaultGramCap);

enum class DefectVerdict { in_closed_span, outside_span, indeterminate };
std::string to_string(DefectVerdict v);

struct DefectCriteria {
  double outside_floor = 0.02;
  double flat_slope = -0.1;
  double decay_slope = -0.3;
  double min_r2 = 0.9;
};

struct DefectReport {
  std::string domain;
  cplx probe;
  std::vector<double> windows;
  std::vector<std::size_t> counts;
  std::vector<double> residual;
  LineFit fit;        // log residual against log R, all windows
  double tail_slope = 0.0;  // same, from windows[n/2] on
  DefectCriteria criteria;
  DefectVerdict verdict = DefectVerdict::indeterminate;
  bool regularized = false;
  std::vector<std::string> warnings;

  nlohmann::json to_json() const;
  std::string to_csv() const;
};

// Distance from the normalized exponential at `probe` to the span of the
// section, for each window. Throws PreconditionError if probe is in spec.
DefectReport defect_residual(const IntervalUnion& s, const SequenceSpec& spec, const RationalComplex& probe,
                             const std::vector<double>& windows, const DefectCriteria& criteria,
                             std::size_t cap = kDefaultGramCap);

// Row j holds the coefficients of the j-th dual vector in the normalized system: C G = I.
struct Biorthogonal {
  Eigen::MatrixXcd rows;
  double condition = 0.0;
};
// Throws SingularSectionError when eig_min <= 1e-10.
Biorthogonal biorthogonal_coeffs(const GramSection& g);

struct Interpolation {
  Eigen::VectorXcd coefficients;
  double ratio = 0.0;  // ||f||^2 / sum |a~|^2
  double lower = 0.0;  // 1/eig_max
  double upper = 0.0;  // 1/eig_min
};
// f = sum_k c_k k_k/||k_k|| with f(l_j) = data_j; data normalized by ||k_j||.
Interpolation interpolate(const GramSection& g, const std::vector<cplx>& data);

}  // namespace pwriesz
