#include "pwriesz/weights.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "pwriesz/errors.hpp"
#include "pwriesz/io.hpp"

namespace pwriesz {
namespace {

constexpr std::size_t kMinSamples = 100;
constexpr double kMinDecades = 2.0;
constexpr double kZ95 = 1.959963984540054;

// Distance from x to the nearest point of `zeros` (sorted by real part).
double distance_to(const std::vector<std::complex<double>>& zeros, double x) {
  auto it = std::lower_bound(zeros.begin(), zeros.end(), x,
                             [](const std::complex<double>& z, double v) { return z.real() < v; });
  double best = std::numeric_limits<double>::infinity();
  for (auto r = it; r != zeros.end() && r->real() - x < best; ++r) best = std::min(best, std::abs(*r - x));
  for (auto l = it; l != zeros.begin();) {
    --l;
    if (x - l->real() >= best) break;
    best = std::min(best, std::abs(*l - x));
  }
  return best;
}

// Trapezoid mean of g over samples [i0, i1].
template <class G>
double mean(const std::vector<WeightSample>& s, std::size_t i0, std::size_t i1, G g) {
  double acc = 0.0;
  for (std::size_t i = i0; i < i1; ++i) acc += 0.5 * (g(s[i].w) + g(s[i + 1].w)) * (s[i + 1].x - s[i].x);
  return acc / (s[i1].x - s[i0].x);
}

}  // namespace

std::vector<double> log_grid(double lo, double hi, int per_decade) {
  if (!(lo > 0.0 && hi > lo && per_decade > 0)) throw DomainError("log_grid needs 0 < lo < hi and per_decade > 0");
  const double decades = std::log10(hi / lo);
  const auto n = static_cast<std::size_t>(std::llround(decades * per_decade));
  std::vector<double> xs(n + 1);
  for (std::size_t i = 0; i <= n; ++i) xs[i] = lo * std::pow(10.0, static_cast<double>(i) / per_decade);
  xs.back() = hi;
  return xs;
}

std::vector<WeightSample> weight_samples(const std::function<std::complex<double>(std::complex<double>)>& f,
                                         const SequenceSpec& zeros, const std::vector<double>& xs,
                                         double min_distance) {
  if (xs.empty()) throw EmptyGridError("weight_samples: empty grid");
  double reach = 0.0;
  for (double x : xs) reach = std::max(reach, std::abs(x));
  auto z = to_complex(zeros.materialize(reach + 64.0));
  std::sort(z.begin(), z.end(), [](auto a, auto b) { return a.real() < b.real(); });

  std::vector<WeightSample> out;
  for (double x : xs) {
    const double d = distance_to(z, x);
    if (d < min_distance) continue;
    out.push_back({x, std::norm(f(x)) / (d * d)});
  }
  if (out.empty()) throw EmptyGridError("weight_samples: every grid point is within the zero filter");
  return out;
}

ExponentFit exponent_fit(const std::vector<WeightSample>& samples) {
  if (samples.size() < kMinSamples) {
    throw InsufficientSpanError("exponent_fit: " + std::to_string(samples.size()) + " samples, need " +
                                std::to_string(kMinSamples));
  }
  double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
  std::vector<double> lx, ly;
  for (const auto& s : samples) {
    if (!(s.w > 0.0) || !std::isfinite(s.w)) continue;
    const double t = std::log1p(std::abs(s.x));
    lx.push_back(t);
    ly.push_back(std::log(s.w));
    lo = std::min(lo, 1.0 + std::abs(s.x));
    hi = std::max(hi, 1.0 + std::abs(s.x));
  }
  if (lx.size() < kMinSamples || std::log10(hi / lo) < kMinDecades) {
    throw InsufficientSpanError("exponent_fit: samples span less than two decades");
  }
  const auto n = static_cast<double>(lx.size());
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    mx += lx[i];
    my += ly[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0, sxy = 0, syy = 0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    sxx += (lx[i] - mx) * (lx[i] - mx);
    sxy += (lx[i] - mx) * (ly[i] - my);
    syy += (ly[i] - my) * (ly[i] - my);
  }
  ExponentFit fit;
  fit.count = lx.size();
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  const double sse = std::max(0.0, syy - fit.slope * sxy);
  fit.r2 = syy == 0.0 ? 1.0 : 1.0 - sse / syy;
  const double s2 = sse / (n - 2.0);
  fit.slope_halfwidth = kZ95 * std::sqrt(s2 / sxx);
  fit.intercept_halfwidth = kZ95 * std::sqrt(s2 * (1.0 / n + mx * mx / sxx));
  return fit;
}

std::string to_string(A2Case c) {
  switch (c) {
    case A2Case::case1:
      return "1";
    case A2Case::case2:
      return "2";
    case A2Case::case3:
      return "3";
    case A2Case::case4:
      return "4";
    default:
      return "out-of-range";
  }
}

Classification a2_classify(double alpha, double beta, double tol) {
  if (std::abs(alpha) >= 1.0 + tol || std::abs(beta) >= 1.0 + tol) {
    throw DomainError("a2_classify: exponents must lie in (-1, 1), got alpha = " + format_number(alpha) +
                      ", beta = " + format_number(beta));
  }
  Classification c;
  const double d = alpha - beta;
  c.difference = d;
  if (std::abs(std::abs(d) - 1.0) <= tol) {
    c.which = A2Case::case4;
  } else if (-1.0 + tol < d && d < 1.0 - tol) {
    c.which = A2Case::case1;
  } else if (-2.0 + tol < d && d < -1.0 - tol) {
    c.which = A2Case::case2;
  } else if (1.0 + tol < d && d < 2.0 - tol) {
    c.which = A2Case::case3;
  } else {
    c.which = A2Case::out_of_range;
    c.near_boundary = std::abs(std::abs(d) - 2.0) <= tol;
  }
  return c;
}

double a2_constant_estimate(const std::vector<WeightSample>& samples, std::size_t min_points) {
  if (samples.size() < 2) throw EmptyGridError("a2_constant_estimate: need at least two samples");
  auto s = samples;
  std::sort(s.begin(), s.end(), [](const auto& a, const auto& b) { return a.x < b.x; });
  const double x0 = s.front().x;
  const double x1 = s.back().x;

  std::vector<std::pair<double, double>> family;
  for (double len = 1.0; x0 + len <= x1 * (1 + 1e-12); len *= 2.0) family.emplace_back(x0, x0 + len);
  if (x0 > 0.0) {
    for (double a = std::exp2(std::floor(std::log2(x0))); a < x1; a *= 2.0) family.emplace_back(a, 2.0 * a);
  }

  double best = 0.0;
  for (const auto& [lo, hi] : family) {
    const auto i0 = static_cast<std::size_t>(
        std::lower_bound(s.begin(), s.end(), lo, [](const auto& p, double v) { return p.x < v; }) - s.begin());
    const auto i1 = static_cast<std::size_t>(
        std::upper_bound(s.begin(), s.end(), hi, [](double v, const auto& p) { return v < p.x; }) - s.begin());
    if (i1 <= i0 || i1 - i0 < min_points) continue;
    const double mw = mean(s, i0, i1 - 1, [](double w) { return w; });
    const double mi = mean(s, i0, i1 - 1, [](double w) { return 1.0 / w; });
    best = std::max(best, mw * mi);
  }
  return best;
}

nlohmann::json ExponentFit::to_json() const {
  return {{"slope", slope},
          {"slope_halfwidth", slope_halfwidth},
          {"intercept", intercept},
          {"intercept_halfwidth", intercept_halfwidth},
          {"r2", r2},
          {"count", count}};
}

nlohmann::json WeightReport::to_json() const {
  return {{"name", name},
          {"alpha", alpha.to_json()},
          {"beta", beta.to_json()},
          {"difference", classification.difference},
          {"case", to_string(classification.which)},
          {"tol", tol},
          {"grid", {{"lo", grid_lo}, {"hi", grid_hi}, {"per_decade", per_decade}}},
          {"warnings", warnings}};
}

std::string samples_to_csv(const std::vector<WeightSample>& samples) {
  std::string out = csv_row({"x", "w", "log1p_x", "log_w"});
  for (const auto& s : samples) {
    out += csv_row({format_number(s.x), format_number(s.w), format_number(std::log1p(std::abs(s.x))),
                    format_number(std::log(s.w))});
  }
  return out;
}

}  // namespace pwriesz
