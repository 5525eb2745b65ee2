#include "pwriesz/riesz.hpp"

#include <algorithm>
#include <cmath>

#include "pwriesz/errors.hpp"
#include "pwriesz/io.hpp"
#include "pwriesz/kernels.hpp"

namespace pwriesz {
namespace {

constexpr double kSingular = 1e-10;
constexpr double kRidge = 1e-10;
constexpr double kMonotoneSlack = 1e-12;

void check_windows(const std::vector<double>& windows) {
  if (windows.empty()) throw DomainError("no windows given");
  for (std::size_t i = 1; i < windows.size(); ++i) {
    if (!(windows[i] > windows[i - 1])) throw DomainError("windows must be increasing");
  }
}

// Indices of points with |Re| <= r.
std::vector<Eigen::Index> window_indices(const std::vector<cplx>& pts, double r) {
  std::vector<Eigen::Index> idx;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    if (std::abs(pts[i].real()) <= r) idx.push_back(static_cast<Eigen::Index>(i));
  }
  return idx;
}

Eigen::MatrixXcd principal(const Eigen::MatrixXcd& m, const std::vector<Eigen::Index>& idx) {
  const auto n = static_cast<Eigen::Index>(idx.size());
  Eigen::MatrixXcd out(n, n);
  for (Eigen::Index j = 0; j < n; ++j)
    for (Eigen::Index k = 0; k < n; ++k) out(j, k) = m(idx[j], idx[k]);
  return out;
}

nlohmann::json doubles(const std::vector<double>& v) { return v; }

}  // namespace

std::pair<double, double> extreme_eigenvalues(const Eigen::MatrixXcd& m) {
  if (m.rows() == 0) return {0.0, 0.0};
  if (m.imag().cwiseAbs().maxCoeff() == 0.0) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m.real(), Eigen::EigenvaluesOnly);
    return {es.eigenvalues().minCoeff(), es.eigenvalues().maxCoeff()};
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(m, Eigen::EigenvaluesOnly);
  return {es.eigenvalues().minCoeff(), es.eigenvalues().maxCoeff()};
}

GramSection gram(const IntervalUnion& s, const std::vector<cplx>& points, std::size_t cap) {
  if (points.size() > cap) {
    throw CapExceededError("gram: " + std::to_string(points.size()) + " points exceed the cap " + std::to_string(cap));
  }
  {
    auto sorted = points;
    const auto less = [](cplx a, cplx b) { return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag(); };
    std::sort(sorted.begin(), sorted.end(), less);
    const auto dup = std::adjacent_find(sorted.begin(), sorted.end());
    if (dup != sorted.end()) throw DuplicatePointError("gram: repeated point " + format_complex(*dup));
  }

  const auto n = static_cast<Eigen::Index>(points.size());
  std::vector<double> norms(points.size());
  for (std::size_t i = 0; i < points.size(); ++i) norms[i] = std::sqrt(kernel_norm_sq(s, points[i]));

  GramSection g;
  g.domain = s;
  g.points = points;
  g.matrix.resize(n, n);
  const bool symmetric_domain = s == IntervalUnion([&s] {
    std::vector<Interval> m;
    for (const auto& iv : s.parts()) m.push_back({-iv.hi, -iv.lo});
    return m;
  }());
  const bool all_real = std::all_of(points.begin(), points.end(), [](cplx z) { return z.imag() == 0.0; });
  for (Eigen::Index j = 0; j < n; ++j) {
    g.matrix(j, j) = 1.0;
    for (Eigen::Index k = j + 1; k < n; ++k) {
      cplx v = exp_inner(s, points[j], points[k]) / (norms[j] * norms[k]);
      // real points on a symmetric set: the integral is real up to round-off
      if (all_real && symmetric_domain) v = v.real();
      g.matrix(j, k) = v;
      g.matrix(k, j) = std::conj(v);
    }
  }
  std::tie(g.eig_min, g.eig_max) = extreme_eigenvalues(g.matrix);
  return g;
}

LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y) {
  const auto n = static_cast<double>(x.size());
  if (x.size() < 2 || x.size() != y.size()) throw InsufficientSpanError("fit_line needs two or more points");
  double sx = 0, sy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
  }
  const double mx = sx / n, my = sy / n;
  double sxx = 0, sxy = 0, syy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
    syy += (y[i] - my) * (y[i] - my);
  }
  if (sxx == 0.0) throw InsufficientSpanError("fit_line: abscissae do not vary");
  LineFit f;
  f.slope = sxy / sxx;
  f.intercept = my - f.slope * mx;
  f.r2 = syy == 0.0 ? 1.0 : (sxy * sxy) / (sxx * syy);
  return f;
}

std::string to_string(TrendVerdict v) {
  switch (v) {
    case TrendVerdict::stable:
      return "stable";
    case TrendVerdict::decaying:
      return "decaying";
    default:
      return "indeterminate";
  }
}

std::string to_string(DefectVerdict v) {
  switch (v) {
    case DefectVerdict::in_closed_span:
      return "in-closed-span";
    case DefectVerdict::outside_span:
      return "outside-span";
    default:
      return "indeterminate";
  }
}

TrendReport bound_trend(const SequenceSpec& spec, const IntervalUnion& s, const std::vector<double>& windows,
                        const TrendCriteria& criteria, std::size_t cap) {
  check_windows(windows);
  const auto pts = to_complex(spec.materialize(windows.back()));
  const GramSection big = gram(s, pts, cap);

  TrendReport rep;
  rep.domain = s.describe();
  rep.windows = windows;
  rep.criteria = criteria;
  for (double r : windows) {
    const auto idx = window_indices(pts, r);
    const auto [lo, hi] = idx.size() == pts.size() ? std::pair{big.eig_min, big.eig_max}
                                                   : extreme_eigenvalues(principal(big.matrix, idx));
    rep.counts.push_back(idx.size());
    rep.eig_min.push_back(lo);
    rep.eig_max.push_back(hi);
  }
  for (std::size_t i = 1; i < windows.size(); ++i) {
    if (rep.eig_min[i] > rep.eig_min[i - 1] + kMonotoneSlack || rep.eig_max[i] < rep.eig_max[i - 1] - kMonotoneSlack)
      rep.nested_monotone = false;
  }

  const std::size_t mid = windows.size() / 2;
  rep.ratio = rep.eig_min.back() / rep.eig_min[mid];
  if (windows.size() >= 2) {
    std::vector<double> lx, ly;
    for (std::size_t i = 0; i < windows.size(); ++i) {
      lx.push_back(std::log(windows[i]));
      ly.push_back(std::log(std::max(rep.eig_min[i], 1e-300)));
    }
    rep.fit = fit_line(lx, ly);
  }

  if (rep.ratio >= criteria.stable_ratio && rep.eig_min.back() >= criteria.floor) {
    rep.verdict = TrendVerdict::stable;
  } else if (windows.size() >= 2 && rep.fit.slope <= criteria.decay_slope && rep.fit.r2 >= criteria.min_r2) {
    rep.verdict = TrendVerdict::decaying;
  }
  return rep;
}

nlohmann::json TrendReport::to_json() const {
  return {{"domain", domain},
          {"windows", doubles(windows)},
          {"counts", counts},
          {"eig_min", doubles(eig_min)},
          {"eig_max", doubles(eig_max)},
          {"ratio", ratio},
          {"slope", fit.slope},
          {"r2", fit.r2},
          {"floor", criteria.floor},
          {"nested_monotone", nested_monotone},
          {"verdict", to_string(verdict)}};
}

std::string TrendReport::to_csv() const {
  std::string out = csv_row({"window", "count", "eig_min", "eig_max"});
  for (std::size_t i = 0; i < windows.size(); ++i) {
    out += csv_row({format_number(windows[i]), std::to_string(counts[i]), format_number(eig_min[i]),
                    format_number(eig_max[i])});
  }
  return out;
}

DefectReport defect_residual(const IntervalUnion& s, const SequenceSpec& spec, const RationalComplex& probe,
                             const std::vector<double>& windows, const DefectCriteria& criteria, std::size_t cap) {
  check_windows(windows);
  if (spec.contains(probe)) throw PreconditionError("defect_residual: probe " + to_string(probe) + " is in the sequence");
  const auto pts = to_complex(spec.materialize(windows.back()));
  const GramSection big = gram(s, pts, cap);
  const cplx p = probe.value();
  const double np = std::sqrt(kernel_norm_sq(s, p));
  // b_j = <e_j, e_p> normalized
  Eigen::VectorXcd b(static_cast<Eigen::Index>(pts.size()));
  for (std::size_t j = 0; j < pts.size(); ++j) {
    b(static_cast<Eigen::Index>(j)) = exp_inner(s, pts[j], p) / (np * std::sqrt(kernel_norm_sq(s, pts[j])));
  }

  DefectReport rep;
  rep.domain = s.describe();
  rep.probe = p;
  rep.windows = windows;
  rep.criteria = criteria;
  for (double r : windows) {
    const auto idx = window_indices(pts, r);
    const Eigen::MatrixXcd m = principal(big.matrix, idx);
    Eigen::VectorXcd bw(static_cast<Eigen::Index>(idx.size()));
    for (std::size_t j = 0; j < idx.size(); ++j) bw(static_cast<Eigen::Index>(j)) = b(idx[j]);
    // distance^2 = 1 - b^H G^{-1} b
    Eigen::LLT<Eigen::MatrixXcd> llt(m);
    if (llt.info() != Eigen::Success || llt.rcond() < 1e-13) {
      const Eigen::MatrixXcd reg = m + kRidge * Eigen::MatrixXcd::Identity(m.rows(), m.cols());
      llt.compute(reg);
      if (!rep.regularized) {
        rep.warnings.push_back("ill-conditioned section at window " + format_number(r) + "; ridge " +
                               format_number(kRidge) + " applied");
      }
      rep.regularized = true;
    }
    const Eigen::VectorXcd x = llt.solve(bw);
    const double proj = bw.dot(x).real();
    rep.counts.push_back(idx.size());
    rep.residual.push_back(std::sqrt(std::clamp(1.0 - proj, 0.0, 1.0)));
  }

  std::vector<double> lx, ly, tx, ty;
  const std::size_t mid = windows.size() / 2;
  for (std::size_t i = 0; i < windows.size(); ++i) {
    lx.push_back(std::log(windows[i]));
    ly.push_back(std::log(std::max(rep.residual[i], 1e-300)));
    if (i >= mid) {
      tx.push_back(lx.back());
      ty.push_back(ly.back());
    }
  }
  if (windows.size() >= 2) {
    rep.fit = fit_line(lx, ly);
    rep.tail_slope = tx.size() >= 2 ? fit_line(tx, ty).slope : rep.fit.slope;
    if (rep.fit.slope <= criteria.decay_slope && rep.fit.r2 >= criteria.min_r2) {
      rep.verdict = DefectVerdict::in_closed_span;
    } else if (rep.residual.back() >= criteria.outside_floor && rep.tail_slope > criteria.flat_slope) {
      rep.verdict = DefectVerdict::outside_span;
    }
  }
  return rep;
}

nlohmann::json DefectReport::to_json() const {
  return {{"domain", domain},
          {"probe", complex_to_json(probe)},
          {"windows", doubles(windows)},
          {"counts", counts},
          {"residual", doubles(residual)},
          {"slope", fit.slope},
          {"r2", fit.r2},
          {"tail_slope", tail_slope},
          {"floor", criteria.outside_floor},
          {"regularized", regularized},
          {"warnings", warnings},
          {"verdict", to_string(verdict)}};
}

std::string DefectReport::to_csv() const {
  std::string out = csv_row({"window", "count", "residual"});
  for (std::size_t i = 0; i < windows.size(); ++i) {
    out += csv_row({format_number(windows[i]), std::to_string(counts[i]), format_number(residual[i])});
  }
  return out;
}

Biorthogonal biorthogonal_coeffs(const GramSection& g) {
  if (g.eig_min <= kSingular) {
    throw SingularSectionError("biorthogonal_coeffs: eig_min " + format_number(g.eig_min) + " <= 1e-10");
  }
  Biorthogonal out;
  Eigen::LLT<Eigen::MatrixXcd> llt(g.matrix);
  out.rows = llt.solve(Eigen::MatrixXcd::Identity(g.matrix.rows(), g.matrix.cols()));
  out.condition = g.eig_max / g.eig_min;
  return out;
}

Interpolation interpolate(const GramSection& g, const std::vector<cplx>& data) {
  if (data.size() != g.points.size()) throw DomainError("interpolate: one data value per point required");
  if (g.eig_min <= kSingular) {
    throw SingularSectionError("interpolate: eig_min " + format_number(g.eig_min) + " <= 1e-10");
  }
  const auto n = static_cast<Eigen::Index>(data.size());
  Eigen::VectorXcd a(n);
  for (Eigen::Index j = 0; j < n; ++j) {
    a(j) = data[static_cast<std::size_t>(j)] / std::sqrt(kernel_norm_sq(g.domain, g.points[static_cast<std::size_t>(j)]));
  }
  Interpolation out;
  Eigen::LLT<Eigen::MatrixXcd> llt(g.matrix);
  out.coefficients = llt.solve(a);
  const double denom = a.squaredNorm();
  out.ratio = denom == 0.0 ? 0.0 : a.dot(out.coefficients).real() / denom;
  out.lower = 1.0 / g.eig_max;
  out.upper = 1.0 / g.eig_min;
  return out;
}

}  // namespace pwriesz
