#include <doctest.h>

#include <cmath>
#include <algorithm>
#include <random>

#include "pwriesz/division.hpp"
#include "pwriesz/errors.hpp"
#include "pwriesz/kernels.hpp"

using namespace pwriesz;

namespace {

const IntervalUnion kE = IntervalUnion::two_interval(-kPi / 2, kPi / 2);

double identity_residual(const DivisionParts& d, cplx z) {
  const cplx q = d.quotient(z);
  return std::abs(q - d.phi(z) - d.remainder(z)) / std::max(1.0, std::abs(q));
}

}  // namespace

TEST_CASE("division identity on random points") {
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> re(-40.0, 40.0);
  std::uniform_real_distribution<double> im(-2.0, 2.0);
  for (const Rational d : {Rational(1, 8), Rational(-1, 8)}) {
    const auto fam = build_section52(d);
    for (const Rational lam : {Rational(2, 3), Rational(-2, 3), Rational(0), Rational(2), Rational(-26, 3)}) {
      const auto parts = divide(fam.f, kE, to_double(lam));
      double worst = 0.0;
      for (int k = 0; k < 100; ++k) worst = std::max(worst, identity_residual(parts, cplx(re(rng), im(rng))));
      // close to lambda, on both sides of the series switch
      for (double r : {2e-4, 5e-4, 9.9e-4, 1.01e-3, 3e-3}) {
        for (int j = 0; j < 8; ++j) worst = std::max(worst, identity_residual(parts, parts.lambda() + std::polar(r, j * 0.785)));
      }
      CAPTURE(to_string(lam));
      CHECK(worst <= 1e-10);
    }
  }
}

TEST_CASE("limit at the divided zero") {
  for (const Rational d : {Rational(1, 8), Rational(-1, 8), Rational(1, 12)}) {
    const auto fam = build_section52(d);
    for (double lam : {2.0 / 3.0, -2.0 / 3.0, 2.0, 10.0}) {
      const auto parts = divide(fam.f, kE, lam);
      const cplx lhs = parts.phi(lam) + parts.kernel_coeff() * (kPi / 2 - (-kPi / 2));
      const cplx fp = fam.f.derivative(lam);
      CHECK(std::abs(lhs - fp) <= 1e-8 * std::abs(fp));
    }
  }
}

TEST_CASE("opposite components at zeros") {
  for (const Rational d : {Rational(1, 8), Rational(-1, 8)}) {
    const auto fam = build_section52(d);
    for (const auto& lam : fam.f.zeros().materialize(40)) {
      const cplx z = lam.value();
      const cplx p = fam.f.component(Side::plus, z);
      const cplx m = fam.f.component(Side::minus, z);
      CHECK(std::abs(p + m) <= 1e-10 * std::max(1e-300, std::abs(p)) + 1e-300);
    }
  }
}

TEST_CASE("zero of g gives a PW_E quotient") {
  const auto fam = build_section52(Rational(1, 8));
  const auto parts = divide(fam.f, kE, 4.5);
  CHECK(parts.kernel_coeff() == cplx(0.0));
  CHECK(std::abs(parts.remainder(1.7)) == 0.0);
}

TEST_CASE("divide needs a zero") {
  const auto fam = build_section52(Rational(1, 8));
  CHECK_THROWS_AS(divide(fam.f, kE, 0.3), PreconditionError);
  CHECK_THROWS_AS(divide(fam.f, IntervalUnion::symmetric(kPi), 2.0 / 3.0), ShapeError);
}

TEST_CASE("spectral mass of a kernel") {
  const auto f = sample([](double x) { return kernel(kE, 0.0, x); }, 400, 0.05);
  CHECK(f.values.size() == 16001);
  CHECK(spectral_mass_outside(f, kE) < 0.02);
  // and a set it does not live in
  CHECK(spectral_mass_outside(f, IntervalUnion::symmetric(kPi / 2 - 0.2)) > 0.9);
}

TEST_CASE("spectral mass of a windowed pure tone") {
  const auto f = sample([](double x) { return std::polar(std::exp(-std::pow(x / 100.0, 2)), 0.9 * kPi * x); }, 400,
                        0.05);
  CHECK(spectral_mass_outside(f, kE) < 0.05);
  CHECK(spectral_mass_outside(f, IntervalUnion::single(-1.0, 1.0)) > 0.99);
}

TEST_CASE("spectral mass of phi") {
  const auto fam = build_section52(Rational(1, 8));
  const auto parts = divide(fam.f, kE, 2.0 / 3.0);
  const auto f = sample([&](double x) { return parts.phi(x); }, 400, 0.05);
  const double mass = spectral_mass_outside(f, kE);
  MESSAGE("phi mass outside E: " << mass);
  CHECK(mass < 0.02);
  // the full quotient carries the gap kernel and is visibly outside
  const auto q = sample([&](double x) { return parts.quotient(x); }, 400, 0.05);
  CHECK(spectral_mass_outside(q, kE) > 0.1);
}

TEST_CASE("coarse grids are rejected") {
  const auto f = sample([](double) { return cplx(1.0); }, 10, 0.3);
  CHECK_THROWS_AS(spectral_mass_outside(f, kE), GridTooCoarseError);
}

TEST_CASE("condition (iii) closed form on the real line") {
  // |F^+(t)/F'(t)| = 2/(3 pi) at every t in T, weights sqrt(2 pi) sqrt(pi)
  const double expected = 2.0 / (3.0 * kPi) * std::sqrt(2.0 * kPi * kPi);
  const auto s51 = build_section51(FactorSpec::sine(Rational(1, 4), Rational(1)));
  const auto s52 = build_section52(Rational(1, 8));
  for (const auto* fam : {&s51, &s52}) {
    const auto rep = condition_iii_inf(*fam, 200);
    CHECK(rep.rows.size() > 100);
    for (const auto& row : rep.rows) CHECK(row.weighted == doctest::Approx(expected).epsilon(1e-9));
    CHECK(rep.inf_weighted == doctest::Approx(expected).epsilon(1e-9));
    // kernel weights are bounded on the real line, so the two infima are comparable
    CHECK(rep.inf_weighted / rep.inf_ratio < 10.0);
    CHECK(rep.inf_weighted / rep.inf_ratio > 0.1);
  }
}

TEST_CASE("condition (iii) fails after the swap") {
  const auto fam = build_section51(FactorSpec::sine(Rational(1, 4), Rational(1)));
  const auto sw = swap_points(fam, Rational(1), Rational(4, 3));
  const auto rep = condition_iii_inf(sw, 200);
  CHECK(rep.inf_weighted < 1e-8);
  CHECK(rep.argmin == cplx(1.0));
  const auto csv = rep.to_csv();
  CHECK(csv.rfind("t,abs_f_plus,abs_f_prime,ratio,weighted_ratio\n", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == static_cast<long>(rep.rows.size()) + 1);
}

TEST_CASE("condition (iii) needs points") {
  const auto fam = build_section52(Rational(1, 8));
  CHECK_THROWS_AS(condition_iii_inf(fam.f, SequenceSpec(), kE, 10), PreconditionError);
}
