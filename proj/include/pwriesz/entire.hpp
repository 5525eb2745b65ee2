#pragma once

#include <complex>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "pwriesz/intervals.hpp"
#include "pwriesz/rational.hpp"
#include "pwriesz/sequence.hpp"

namespace pwriesz {

using cplx = std::complex<double>;

// f_delta(z) = z prod_{k>=1} (1 - z^2/(k+delta)^2), |delta| < 1/4.
//
// Evaluated through f_delta(z) = z Gamma(1+delta)^2 / (Gamma(1+delta+z) Gamma(1+delta-z)),
// switching to the reflected form sin(pi(z-delta)) z Gamma(z-delta)/Gamma(z+1+delta)
// for Re z > 1/2 + |delta| so no Gamma pole is ever approached. Returns exactly
// zero on the declared zeros {0} u +-(N + delta). Throws DomainError if |delta| >= 1/4.
cplx f_delta(const Rational& delta, cplx z);

// f_delta(z) / z (entire; equals 1 at the origin).
cplx f_delta_over_z(const Rational& delta, cplx z);

enum class FactorKind { constant, affine, inverse_affine, sine, cosine, shifted_lattice, dirichlet };

// One factor of a product-form entire function. Frequencies are stored in
// units of pi (c = pi * frequency), so every zero set is exactly rational.
struct FactorSpec {
  FactorKind kind = FactorKind::constant;
  RationalComplex value{1};   // constant: the constant itself; affine / inverse_affine: the point a
  Rational frequency{0};      // sine, cosine, dirichlet
  RationalComplex center{0};  // shift z0 for sine, cosine, shifted_lattice
  Rational delta{0};          // shifted_lattice
  Rational scale{1};          // shifted_lattice: f_delta((z - z0)/scale)
  bool drop_origin = false;   // shifted_lattice: divide out the zero at z0
  int order = 1;              // dirichlet: sin((2n+1)cz)/sin(cz)

  static FactorSpec constant(RationalComplex c);
  // (z - a)
  static FactorSpec affine(RationalComplex a);
  // 1/(z - a); only meaningful when another factor vanishes at a.
  static FactorSpec inverse_affine(RationalComplex a);
  // sin(pi f (z - z0))
  static FactorSpec sine(Rational frequency, RationalComplex center = {});
  // cos(pi f (z - z0))
  static FactorSpec cosine(Rational frequency, RationalComplex center = {});
  // f_delta((z - z0)/s), or f_delta((z - z0)/s) / ((z - z0)/s) with drop_origin.
  static FactorSpec shifted_lattice(Rational delta, Rational scale, bool drop_origin = false,
                                    RationalComplex center = {});
  // 1 + 2 sum_{k=1}^n cos(2 k pi f z) = sin((2n+1) pi f z) / sin(pi f z).
  static FactorSpec dirichlet(Rational frequency, int order = 1);

  cplx eval(cplx z) const;
  // Exponential type of the factor (0 for affine and constant factors).
  double type() const;
  // Zeros of the factor; inverse_affine factors report an empty set.
  SequenceSpec zeros() const;
  bool is_trigonometric() const { return kind == FactorKind::sine || kind == FactorKind::cosine; }

  nlohmann::json to_json() const;
  static FactorSpec from_json(const nlohmann::json& j);
  std::string describe() const;
};

enum class Side { minus, plus };

// Product of factors F = prod_j factor_j.
//
// The split F = F^- + F^+ takes the trigonometric factor of largest frequency
// (the one carrying the outer spectrum) and expands it into exponentials:
// cos(cw) = (e^{icw} + e^{-icw})/2, sin(cw) = (e^{icw} - e^{-icw})/(2i).
class GeneratingFunction {
 public:
  GeneratingFunction() = default;
  explicit GeneratingFunction(std::vector<FactorSpec> factors, std::string name = {});

  cplx eval(cplx z) const;
  cplx operator()(cplx z) const { return eval(z); }
  // F^+ or F^-; throws StructureError without a unique carrier factor.
  cplx component(Side side, cplx z) const;
  cplx derivative(cplx z) const;

  double type() const;
  // Union of factor zeros minus the points removed by inverse_affine factors.
  SequenceSpec zeros() const;
  std::span<const FactorSpec> factors() const { return factors_; }
  const std::string& name() const { return name_; }
  std::optional<std::size_t> carrier() const { return carrier_; }

  GeneratingFunction times(const FactorSpec& f) const;

  nlohmann::json to_json() const;

 private:
  cplx eval_product(cplx z, std::optional<std::size_t> skip) const;

  std::vector<FactorSpec> factors_;
  std::string name_;
  std::optional<std::size_t> carrier_;
  bool ambiguous_carrier_ = false;
};

// Holomorphic derivative by the trapezoidal Cauchy rule on a circle.
// Radius defaults to min(1e-2 (1 + |z|), 0.25), with 16 nodes.
cplx contour_derivative(const std::function<cplx(cplx)>& f, cplx z, double radius = 0.0, int nodes = 16);

// Taylor coefficients a_0..a_{count-1} of f at z0 by the discrete Cauchy
// formula (radius r, m nodes).
std::vector<cplx> taylor_coefficients(const std::function<cplx(cplx)>& f, cplx z0, int count, double radius = 0.25,
                                      int nodes = 32);

// F = S * G with Lambda = Z_S and T = Z_G.
struct Factorization {
  GeneratingFunction s;
  GeneratingFunction g;
  SequenceSpec lambda;
  SequenceSpec t;
};

// A generating function together with its spectrum and factorization.
struct Family {
  std::string name;
  IntervalUnion domain = IntervalUnion::two_interval(-kPi / 2, kPi / 2);
  GeneratingFunction f;
  Factorization factorization;

  const SequenceSpec& lambda() const { return factorization.lambda; }
  const SequenceSpec& t() const { return factorization.t; }
};

// F = g_delta(z) cos(3 pi z/4), g_delta(z) = f_delta(z/4), on
// E = [-pi, -pi/2] u [pi/2, pi]. delta >= 0 uses the G of the "missing point"
// construction (G built with f_{-1/6}), delta < 0 the "extra point" one
// (f_{1/6}). Rejects |delta| >= 1/4 and delta = +-1/6.
Family build_section52(const Rational& delta);

// F = H(z) sin(3 pi z/4) with S = H sin(pi z/4), G = 1 + 2 cos(pi z/2).
// H must have type pi/4 and zeros separated from (4/3)Z.
Family build_section51(const FactorSpec& h);

// Moves lambda0 from Lambda into T and t0 from T into Lambda (F unchanged).
Family swap_points(const Family& family, const RationalComplex& lambda0, const RationalComplex& t0);

// Product form of the G factor used by build_section52, truncated after
// `terms` factors per product (slow reference path).
cplx g_factor_product(bool missing_point_variant, cplx z, int terms);

}  // namespace pwriesz
