#include "pwriesz/division.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "pwriesz/errors.hpp"
#include "pwriesz/io.hpp"
#include "pwriesz/kernels.hpp"

namespace pwriesz {
namespace {

constexpr int kNearTerms = 6;
constexpr double kZeroTol = 1e-8;

// Coefficients of (h(w))/w where h(w) = F^s(lambda + w) - F^s(lambda) e^{i sigma w}.
std::vector<cplx> near_expansion(const GeneratingFunction& f, Side side, cplx lambda, cplx value, double sigma) {
  const auto a = taylor_coefficients([&f, side](cplx z) { return f.component(side, z); }, lambda, kNearTerms + 1);
  std::vector<cplx> c(kNearTerms);
  const cplx is(0.0, sigma);
  cplx pw = 1.0;
  for (int n = 1; n <= kNearTerms; ++n) {
    pw *= is / static_cast<double>(n);  // (i sigma)^n / n!
    c[n - 1] = a[n] - value * pw;
  }
  return c;
}

cplx horner(const std::vector<cplx>& c, cplx w) {
  cplx s = 0.0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) s = s * w + *it;
  return s;
}

}  // namespace

DivisionParts::DivisionParts(GeneratingFunction f, IntervalUnion e, cplx lambda)
    : f_(std::move(f)), gap_(gap(e)), lambda_(lambda) {
  f_plus_ = f_.component(Side::plus, lambda_);
  f_minus_ = f_.component(Side::minus, lambda_);
  kernel_coeff_ = cplx(0.0, 1.0) * f_plus_;
  near_plus_ = near_expansion(f_, Side::plus, lambda_, f_plus_, gap_.hi);
  near_minus_ = near_expansion(f_, Side::minus, lambda_, f_minus_, gap_.lo);
}

cplx DivisionParts::phi_side(Side side, cplx z) const {
  const cplx w = z - lambda_;
  if (std::abs(w) < kNearRadius) return horner(side == Side::plus ? near_plus_ : near_minus_, w);
  const double sigma = side == Side::plus ? gap_.hi : gap_.lo;
  const cplx value = side == Side::plus ? f_plus_ : f_minus_;
  return (f_.component(side, z) - value * std::exp(cplx(0.0, sigma) * w)) / w;
}

cplx DivisionParts::phi(cplx z) const { return phi_side(Side::plus, z) + phi_side(Side::minus, z); }

cplx DivisionParts::remainder(cplx z) const {
  return kernel_coeff_ * kernel(IntervalUnion::single(gap_.lo, gap_.hi), std::conj(lambda_), z);
}

cplx DivisionParts::quotient(cplx z) const {
  if (z == lambda_) return f_.derivative(z);
  return f_.eval(z) / (z - lambda_);
}

DivisionParts divide(const GeneratingFunction& f, const IntervalUnion& e, cplx lambda) {
  const double value = std::abs(f.eval(lambda));
  const double scale = std::max(1.0, std::abs(f.derivative(lambda)));
  if (value > kZeroTol * scale) {
    throw PreconditionError("divide: F(" + format_complex(lambda) + ") = " + format_number(value) +
                            " is not a zero");
  }
  return DivisionParts(f, e, lambda);
}

SampledFunction sample(const std::function<cplx(double)>& f, double half_length, double step) {
  if (!(step > 0.0) || !(half_length > 0.0)) throw DomainError("sample: need L > 0 and h > 0");
  SampledFunction s;
  s.half_length = half_length;
  s.step = step;
  const auto n = static_cast<std::size_t>(std::llround(2.0 * half_length / step)) + 1;
  s.values.resize(n);
  for (std::size_t j = 0; j < n; ++j) s.values[j] = f(s.x(j));
  return s;
}

double spectral_mass_outside(const SampledFunction& f, const IntervalUnion& e, double guard) {
  if (f.step > 0.25) throw GridTooCoarseError("spectral_mass_outside: step " + format_number(f.step) + " > 1/4");
  if (f.values.empty()) throw EmptyGridError("spectral_mass_outside: no samples");

  double norm2 = 0.0;
  for (const auto& v : f.values) norm2 += std::norm(v);
  // Parseval for the trapezoid transform over one period 2 pi/h
  const double total = 2.0 * kPi * f.step * norm2;
  if (total == 0.0) return 0.0;

  const double length = f.half_length + 0.5 * f.step;
  const double dt_target = kPi / (8.0 * length);
  double inside = 0.0;
  const IntervalUnion widened = e.dilated(guard);
  for (const auto& iv : widened.parts()) {
    const auto panels = static_cast<std::size_t>(std::ceil(iv.length() / dt_target));
    const double dt = iv.length() / static_cast<double>(panels);
    for (std::size_t p = 0; p <= panels; ++p) {
      const double t = iv.lo + static_cast<double>(p) * dt;
      // hat f(t) = h sum f_j e^{-i x_j t}, phase advanced by recurrence
      const cplx step_phase = std::polar(1.0, -f.step * t);
      cplx phase = std::polar(1.0, f.half_length * t);
      cplx acc = 0.0;
      for (std::size_t j = 0; j < f.values.size(); ++j) {
        acc += f.values[j] * phase;
        phase *= step_phase;
        if ((j & 1023u) == 1023u) phase /= std::abs(phase);
      }
      const double weight = (p == 0 || p == panels) ? 0.5 * dt : dt;
      inside += weight * std::norm(f.step * acc);
    }
  }
  return std::clamp(1.0 - inside / total, 0.0, 1.0);
}

ConditionIIIReport condition_iii_inf(const GeneratingFunction& f, const SequenceSpec& t, const IntervalUnion& e,
                                     double radius) {
  const auto pts = to_complex(t.materialize(radius));
  if (pts.empty()) throw PreconditionError("condition_iii_inf: T is empty in the window");
  const Interval g = gap(e);
  const auto gap_set = IntervalUnion::single(g.lo, g.hi);
  const auto full = IntervalUnion::symmetric(kPi);

  ConditionIIIReport rep;
  rep.radius = radius;
  rep.inf_weighted = std::numeric_limits<double>::infinity();
  rep.inf_ratio = std::numeric_limits<double>::infinity();
  for (const auto& z : pts) {
    ConditionIIIRow row;
    row.t = z;
    row.f_plus = std::abs(f.component(Side::plus, z));
    row.f_prime = std::abs(f.derivative(z));
    row.ratio = row.f_plus / row.f_prime;
    row.weighted = row.ratio * std::sqrt(kernel_norm_sq(full, z)) * std::sqrt(kernel_norm_sq(gap_set, std::conj(z)));
    if (row.weighted < rep.inf_weighted) {
      rep.inf_weighted = row.weighted;
      rep.argmin = z;
    }
    rep.inf_ratio = std::min(rep.inf_ratio, row.ratio);
    rep.rows.push_back(row);
  }
  return rep;
}

std::string ConditionIIIReport::to_csv() const {
  std::string out = csv_row({"t", "abs_f_plus", "abs_f_prime", "ratio", "weighted_ratio"});
  for (const auto& r : rows) {
    out += csv_row({format_complex(r.t), format_number(r.f_plus), format_number(r.f_prime), format_number(r.ratio),
                    format_number(r.weighted)});
  }
  return out;
}

nlohmann::json ConditionIIIReport::to_json() const {
  return {{"radius", radius},
          {"inf_weighted", inf_weighted},
          {"inf_ratio", inf_ratio},
          {"argmin", complex_to_json(argmin)},
          {"count", rows.size()}};
}

}  // namespace pwriesz
