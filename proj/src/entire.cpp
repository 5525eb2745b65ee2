#include "pwriesz/entire.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "pwriesz/errors.hpp"
#include "pwriesz/special.hpp"

namespace pwriesz {
namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

// Points within this distance of an inverse_affine pole are evaluated by the
// mean-value property on a small circle (the singularity is removable).
constexpr double kRemovableTol = 1e-6;
constexpr double kRemovableRadius = 1e-3;
constexpr int kRemovableNodes = 16;

void check_delta(const Rational& delta) {
  if (!(boost::abs(delta) < Rational(1, 4))) throw DomainError("f_delta needs |delta| < 1/4, got " + to_string(delta));
}

// True when real z hits one of +-(N + delta) up to the rounding of z itself.
bool on_lattice_zero(double d, cplx z) {
  if (z.imag() != 0.0) return false;
  const double u = z.real() - d;
  const double n = std::nearbyint(u);
  return n >= 1.0 && std::abs(u - n) <= 4.0 * kEps * std::max(1.0, std::abs(z.real()));
}

// Gamma(1 + d)^2 with d real.
double gamma_sq(double d) {
  const double g = std::tgamma(1.0 + d);
  return g * g;
}

// f_delta(z)/z for Re z >= 0, z not a declared zero.
cplx reduced_right(double d, cplx z) {
  if (z.real() <= 0.5 + std::abs(d)) {
    return gamma_sq(d) * std::exp(-log_gamma(1.0 + d + z) - log_gamma(1.0 + d - z));
  }
  return gamma_sq(d) / std::numbers::pi * sinpi(z - d) * std::exp(log_gamma(z - d) - log_gamma(z + 1.0 + d));
}

nlohmann::json rc_json(const RationalComplex& z) { return to_string(z); }

RationalComplex rc_from(const nlohmann::json& j, const char* key, RationalComplex fallback) {
  if (!j.contains(key)) return fallback;
  const auto& v = j.at(key);
  if (v.is_number_integer()) return RationalComplex(v.get<std::int64_t>());
  return parse_rational_complex(v.get<std::string>());
}

Rational r_from(const nlohmann::json& j, const char* key, Rational fallback) {
  if (!j.contains(key)) return fallback;
  const auto& v = j.at(key);
  if (v.is_number_integer()) return Rational(v.get<std::int64_t>());
  return parse_rational(v.get<std::string>());
}

cplx circle_mean(const std::function<cplx(cplx)>& f, cplx z) {
  cplx sum = 0.0;
  for (int j = 0; j < kRemovableNodes; ++j) {
    const double theta = 2.0 * std::numbers::pi * (j + 0.5) / kRemovableNodes;
    sum += f(z + kRemovableRadius * std::polar(1.0, theta));
  }
  return sum / static_cast<double>(kRemovableNodes);
}

}  // namespace

cplx f_delta_over_z(const Rational& delta, cplx z) {
  check_delta(delta);
  const double d = to_double(delta);
  if (z.real() < 0.0) z = -z;  // even function
  if (on_lattice_zero(d, z)) return 0.0;
  return reduced_right(d, z);
}

cplx f_delta(const Rational& delta, cplx z) {
  check_delta(delta);
  const double d = to_double(delta);
  if (z.real() < 0.0) return -f_delta(delta, -z);
  if (z == 0.0 || on_lattice_zero(d, z)) return 0.0;
  return z * reduced_right(d, z);
}

// ---------------------------------------------------------------- FactorSpec

FactorSpec FactorSpec::constant(RationalComplex c) {
  FactorSpec f;
  f.kind = FactorKind::constant;
  f.value = c;
  return f;
}

FactorSpec FactorSpec::affine(RationalComplex a) {
  FactorSpec f;
  f.kind = FactorKind::affine;
  f.value = a;
  return f;
}

FactorSpec FactorSpec::inverse_affine(RationalComplex a) {
  FactorSpec f;
  f.kind = FactorKind::inverse_affine;
  f.value = a;
  return f;
}

FactorSpec FactorSpec::sine(Rational frequency, RationalComplex center) {
  if (frequency <= 0) throw DomainError("sine factor needs a positive frequency");
  FactorSpec f;
  f.kind = FactorKind::sine;
  f.frequency = frequency;
  f.center = center;
  return f;
}

FactorSpec FactorSpec::cosine(Rational frequency, RationalComplex center) {
  if (frequency <= 0) throw DomainError("cosine factor needs a positive frequency");
  FactorSpec f;
  f.kind = FactorKind::cosine;
  f.frequency = frequency;
  f.center = center;
  return f;
}

FactorSpec FactorSpec::shifted_lattice(Rational delta, Rational scale, bool drop_origin, RationalComplex center) {
  check_delta(delta);
  if (scale <= 0) throw DomainError("shifted lattice needs a positive scale");
  FactorSpec f;
  f.kind = FactorKind::shifted_lattice;
  f.delta = delta;
  f.scale = scale;
  f.drop_origin = drop_origin;
  f.center = center;
  return f;
}

FactorSpec FactorSpec::dirichlet(Rational frequency, int order) {
  if (frequency <= 0 || order < 1) throw DomainError("dirichlet factor needs frequency > 0 and order >= 1");
  FactorSpec f;
  f.kind = FactorKind::dirichlet;
  f.frequency = frequency;
  f.order = order;
  return f;
}

cplx FactorSpec::eval(cplx z) const {
  switch (kind) {
    case FactorKind::constant:
      return value.value();
    case FactorKind::affine:
      return z - value.value();
    case FactorKind::inverse_affine:
      return 1.0 / (z - value.value());
    case FactorKind::sine:
      return sinpi(to_double(frequency) * (z - center.value()));
    case FactorKind::cosine:
      return cospi(to_double(frequency) * (z - center.value()));
    case FactorKind::shifted_lattice: {
      const cplx u = (z - center.value()) / to_double(scale);
      return drop_origin ? f_delta_over_z(delta, u) : f_delta(delta, u);
    }
    case FactorKind::dirichlet: {
      cplx sum = 1.0;
      for (int k = 1; k <= order; ++k) sum += 2.0 * cospi(2.0 * k * to_double(frequency) * z);
      return sum;
    }
  }
  return 0.0;
}

double FactorSpec::type() const {
  switch (kind) {
    case FactorKind::sine:
    case FactorKind::cosine:
      return kPi * to_double(frequency);
    case FactorKind::shifted_lattice:
      return kPi / to_double(scale);
    case FactorKind::dirichlet:
      return 2.0 * order * kPi * to_double(frequency);
    default:
      return 0.0;
  }
}

SequenceSpec FactorSpec::zeros() const {
  switch (kind) {
    case FactorKind::affine:
      return SequenceSpec::points({value});
    case FactorKind::sine:
      return SequenceSpec::lattice(center, 1 / frequency);
    case FactorKind::cosine:
      return SequenceSpec::lattice(center + RationalComplex(1 / (2 * frequency)), 1 / frequency);
    case FactorKind::shifted_lattice: {
      const Rational first = scale * (1 + delta);
      auto z = SequenceSpec::progression(center + RationalComplex(first), scale) |
               SequenceSpec::progression(center - RationalComplex(first), -scale);
      if (!drop_origin) z = z | SequenceSpec::points({center});
      return z;
    }
    case FactorKind::dirichlet: {
      const Rational fine = 1 / (frequency * (2 * order + 1));
      return SequenceSpec::lattice({}, fine) - SequenceSpec::lattice({}, 1 / frequency);
    }
    default:
      return {};
  }
}

nlohmann::json FactorSpec::to_json() const {
  switch (kind) {
    case FactorKind::constant:
      return {{"kind", "constant"}, {"value", rc_json(value)}};
    case FactorKind::affine:
      return {{"kind", "affine"}, {"root", rc_json(value)}};
    case FactorKind::inverse_affine:
      return {{"kind", "inverse_affine"}, {"pole", rc_json(value)}};
    case FactorKind::sine:
      return {{"kind", "sine"}, {"frequency", to_string(frequency)}, {"center", rc_json(center)}};
    case FactorKind::cosine:
      return {{"kind", "cosine"}, {"frequency", to_string(frequency)}, {"center", rc_json(center)}};
    case FactorKind::shifted_lattice:
      return {{"kind", "shifted_lattice"},
              {"delta", to_string(delta)},
              {"scale", to_string(scale)},
              {"drop_origin", drop_origin},
              {"center", rc_json(center)}};
    case FactorKind::dirichlet:
      return {{"kind", "dirichlet"}, {"frequency", to_string(frequency)}, {"order", order}};
  }
  return {};
}

FactorSpec FactorSpec::from_json(const nlohmann::json& j) {
  const auto kind = j.at("kind").get<std::string>();
  if (kind == "constant") return constant(rc_from(j, "value", {1}));
  if (kind == "affine") return affine(rc_from(j, "root", {0}));
  if (kind == "inverse_affine") return inverse_affine(rc_from(j, "pole", {0}));
  if (kind == "sine") return sine(r_from(j, "frequency", 0), rc_from(j, "center", {0}));
  if (kind == "cosine") return cosine(r_from(j, "frequency", 0), rc_from(j, "center", {0}));
  if (kind == "shifted_lattice") {
    return shifted_lattice(r_from(j, "delta", 0), r_from(j, "scale", 1), j.value("drop_origin", false),
                           rc_from(j, "center", {0}));
  }
  if (kind == "dirichlet") return dirichlet(r_from(j, "frequency", 0), j.value("order", 1));
  throw ConfigError("unknown factor kind '" + kind + "'");
}

std::string FactorSpec::describe() const {
  std::ostringstream os;
  switch (kind) {
    case FactorKind::constant:
      os << to_string(value);
      break;
    case FactorKind::affine:
      os << "(z - " << to_string(value) << ")";
      break;
    case FactorKind::inverse_affine:
      os << "1/(z - " << to_string(value) << ")";
      break;
    case FactorKind::sine:
      os << "sin(" << to_string(frequency) << " pi (z - " << to_string(center) << "))";
      break;
    case FactorKind::cosine:
      os << "cos(" << to_string(frequency) << " pi (z - " << to_string(center) << "))";
      break;
    case FactorKind::shifted_lattice:
      os << "f_{" << to_string(delta) << "}((z - " << to_string(center) << ")/" << to_string(scale) << ")"
         << (drop_origin ? "/origin" : "");
      break;
    case FactorKind::dirichlet:
      os << "D_" << order << "(" << to_string(frequency) << " pi z)";
      break;
  }
  return os.str();
}

// ------------------------------------------------------- GeneratingFunction

GeneratingFunction::GeneratingFunction(std::vector<FactorSpec> factors, std::string name)
    : factors_(std::move(factors)), name_(std::move(name)) {
  Rational best{0};
  for (std::size_t i = 0; i < factors_.size(); ++i) {
    if (!factors_[i].is_trigonometric()) continue;
    if (!carrier_ || factors_[i].frequency > best) {
      carrier_ = i;
      best = factors_[i].frequency;
      ambiguous_carrier_ = false;
    } else if (factors_[i].frequency == best) {
      ambiguous_carrier_ = true;
    }
  }
}

cplx GeneratingFunction::eval_product(cplx z, std::optional<std::size_t> skip) const {
  cplx p = 1.0;
  for (std::size_t i = 0; i < factors_.size(); ++i) {
    if (skip && *skip == i) continue;
    p *= factors_[i].eval(z);
  }
  return p;
}

namespace {

bool near_pole(std::span<const FactorSpec> factors, cplx z) {
  for (const auto& f : factors) {
    if (f.kind != FactorKind::inverse_affine) continue;
    const cplx a = f.value.value();
    if (std::abs(z - a) < kRemovableTol * (1.0 + std::abs(a))) return true;
  }
  return false;
}

}  // namespace

cplx GeneratingFunction::eval(cplx z) const {
  if (near_pole(factors_, z)) return circle_mean([this](cplx w) { return eval_product(w, std::nullopt); }, z);
  return eval_product(z, std::nullopt);
}

cplx GeneratingFunction::component(Side side, cplx z) const {
  if (!carrier_ || ambiguous_carrier_) {
    throw StructureError("no unique sine/cosine factor carries the outer spectrum of " +
                         (name_.empty() ? std::string("F") : name_));
  }
  const auto& c = factors_[*carrier_];
  auto piece = [this, &c, side](cplx w) {
    const cplx phase = to_double(c.frequency) * (w - c.center.value());
    const cplx e = side == Side::plus ? exp_i_pi(phase) : exp_i_pi(-phase);
    const cplx rest = eval_product(w, carrier_);
    if (c.kind == FactorKind::cosine) return 0.5 * rest * e;
    const cplx two_i(0.0, 2.0);
    return (side == Side::plus ? 1.0 : -1.0) * rest * e / two_i;
  };
  if (near_pole(factors_, z)) return circle_mean(piece, z);
  return piece(z);
}

cplx GeneratingFunction::derivative(cplx z) const {
  return contour_derivative([this](cplx w) { return eval(w); }, z);
}

double GeneratingFunction::type() const {
  double t = 0.0;
  for (const auto& f : factors_) t += f.type();
  return t;
}

SequenceSpec GeneratingFunction::zeros() const {
  SequenceSpec z;
  std::vector<RationalComplex> poles;
  for (const auto& f : factors_) {
    if (f.kind == FactorKind::inverse_affine) {
      poles.push_back(f.value);
    } else {
      z = z | f.zeros();
    }
  }
  if (!poles.empty()) z = z - SequenceSpec::points(std::move(poles));
  return z;
}

GeneratingFunction GeneratingFunction::times(const FactorSpec& f) const {
  auto factors = factors_;
  factors.push_back(f);
  return GeneratingFunction(std::move(factors), name_);
}

nlohmann::json GeneratingFunction::to_json() const {
  auto arr = nlohmann::json::array();
  for (const auto& f : factors_) arr.push_back(f.to_json());
  return {{"name", name_}, {"factors", arr}};
}

// ---------------------------------------------------------- contour rules

cplx contour_derivative(const std::function<cplx(cplx)>& f, cplx z, double radius, int nodes) {
  const double r = radius > 0.0 ? radius : std::min(1e-2 * (1.0 + std::abs(z)), 0.25);
  cplx sum = 0.0;
  for (int j = 0; j < nodes; ++j) {
    const cplx w = std::polar(1.0, 2.0 * std::numbers::pi * j / nodes);
    sum += f(z + r * w) / w;
  }
  return sum / (static_cast<double>(nodes) * r);
}

std::vector<cplx> taylor_coefficients(const std::function<cplx(cplx)>& f, cplx z0, int count, double radius,
                                      int nodes) {
  std::vector<cplx> values(nodes);
  std::vector<cplx> roots(nodes);
  for (int j = 0; j < nodes; ++j) {
    roots[j] = std::polar(1.0, 2.0 * std::numbers::pi * j / nodes);
    values[j] = f(z0 + radius * roots[j]);
  }
  std::vector<cplx> coeffs(count);
  double rn = 1.0;
  for (int n = 0; n < count; ++n) {
    cplx sum = 0.0;
    for (int j = 0; j < nodes; ++j) sum += values[j] * std::pow(std::conj(roots[j]), n);
    coeffs[n] = sum / (static_cast<double>(nodes) * rn);
    rn *= radius;
  }
  return coeffs;
}

// ---------------------------------------------------------------- families

namespace {

// Window used for the exact set identities Lambda u T = Z_F, Lambda n T = {}.
constexpr double kCheckRadius = 100.0;
constexpr double kSeparationTol = 1e-9;

void check_factorization(const Family& fam) {
  const auto zf = fam.f.zeros().materialize(kCheckRadius);
  const auto lt = (fam.lambda() | fam.t()).materialize(kCheckRadius);
  const auto overlap = (fam.lambda() - (fam.lambda() - fam.t())).materialize(kCheckRadius);
  const auto zs = fam.factorization.s.zeros().materialize(kCheckRadius);
  const auto lam = fam.lambda().materialize(kCheckRadius);
  if (zf != lt || !overlap.empty() || zs != lam) {
    throw Error("factorization of " + fam.name + " does not split Z_F into Lambda and T");
  }
}

}  // namespace

Family build_section52(const Rational& delta) {
  check_delta(delta);
  if (delta == Rational(1, 6) || delta == Rational(-1, 6)) {
    throw SeparationError("delta = +-1/6: zeros of g_delta and cos(3 pi z/4) coincide");
  }
  const auto g = FactorSpec::shifted_lattice(delta, 4);
  const auto outer = FactorSpec::cosine(Rational(3, 4));
  if (separation(g.zeros(), outer.zeros(), kCheckRadius) <= kSeparationTol) {
    throw SeparationError("zeros of g_delta and cos(3 pi z/4) are not separated");
  }

  const bool missing_point = delta >= 0;
  const Rational g_shift = missing_point ? Rational(-1, 6) : Rational(1, 6);

  Family fam;
  fam.name = "section52(delta=" + to_string(delta) + ")";
  fam.domain = IntervalUnion::two_interval(-kPi / 2, kPi / 2);
  fam.f = GeneratingFunction({g, outer}, "F");
  fam.factorization.g = GeneratingFunction(
      {FactorSpec::affine(Rational(2, 3)), FactorSpec::cosine(Rational(1, 4)),
       FactorSpec::shifted_lattice(g_shift, 4, true)},
      "G");
  // (z + 2/3)(z - 2/3) = -(4/9)(1 - 9z^2/4), hence the -9/4.
  fam.factorization.s = GeneratingFunction(
      {FactorSpec::constant(Rational(-9, 4)), FactorSpec::affine(Rational(-2, 3)),
       FactorSpec::shifted_lattice(-g_shift, 4, true), g},
      "S");
  fam.factorization.t = fam.factorization.g.zeros();
  fam.factorization.lambda = fam.f.zeros() - fam.factorization.t;
  check_factorization(fam);
  return fam;
}

Family build_section51(const FactorSpec& h) {
  if (std::abs(h.type() - kPi / 4) > 1e-12) throw DomainError("H must have exponential type pi/4");
  const auto coarse = SequenceSpec::lattice({}, Rational(4, 3));
  if (separation(h.zeros(), coarse, kCheckRadius) <= kSeparationTol) {
    throw SeparationError("zeros of H are not separated from (4/3)Z");
  }

  Family fam;
  fam.name = "section51(H=" + h.describe() + ")";
  fam.domain = IntervalUnion::two_interval(-kPi / 2, kPi / 2);
  fam.f = GeneratingFunction({h, FactorSpec::sine(Rational(3, 4))}, "F");
  fam.factorization.s = GeneratingFunction({h, FactorSpec::sine(Rational(1, 4))}, "S");
  fam.factorization.g = GeneratingFunction({FactorSpec::dirichlet(Rational(1, 4), 1)}, "G");
  fam.factorization.t = fam.factorization.g.zeros();
  fam.factorization.lambda = fam.f.zeros() - fam.factorization.t;
  check_factorization(fam);
  return fam;
}

Family swap_points(const Family& family, const RationalComplex& lambda0, const RationalComplex& t0) {
  if (!family.lambda().contains(lambda0)) throw PreconditionError(to_string(lambda0) + " is not in Lambda");
  if (!family.t().contains(t0)) throw PreconditionError(to_string(t0) + " is not in T");

  Family out = family;
  out.name = family.name + " swap(" + to_string(lambda0) + "<->" + to_string(t0) + ")";
  out.factorization.s =
      family.factorization.s.times(FactorSpec::affine(t0)).times(FactorSpec::inverse_affine(lambda0));
  out.factorization.g =
      family.factorization.g.times(FactorSpec::affine(lambda0)).times(FactorSpec::inverse_affine(t0));
  out.factorization.lambda = (family.lambda() - SequenceSpec::points({lambda0})) | SequenceSpec::points({t0});
  out.factorization.t = (family.t() - SequenceSpec::points({t0})) | SequenceSpec::points({lambda0});
  check_factorization(out);
  return out;
}

cplx g_factor_product(bool missing_point_variant, cplx z, int terms) {
  using lcplx = std::complex<long double>;
  const lcplx zl(z.real(), z.imag());
  const lcplx z2 = zl * zl;
  const long double shift = missing_point_variant ? -2.0L / 3.0L : 2.0L / 3.0L;
  lcplx p = zl - 2.0L / 3.0L;
  long double tail = 0.0L;
  for (int k = 0; k <= terms; ++k) {
    const long double a = 2.0L + 4.0L * k;
    p *= 1.0L - z2 / (a * a);
  }
  for (int k = 1; k <= terms; ++k) {
    const long double a = shift + 4.0L * k;
    p *= 1.0L - z2 / (a * a);
  }
  // Euler-Maclaurin estimate of sum_{k > K} 1/(4k + c)^2 for both products.
  const long double kk = terms + 0.5L;
  tail += 1.0L / (4.0L * (4.0L * kk + 2.0L)) + 1.0L / (4.0L * (4.0L * kk + shift));
  p *= std::exp(-z2 * tail);
  return {static_cast<double>(p.real()), static_cast<double>(p.imag())};
}

}  // namespace pwriesz
