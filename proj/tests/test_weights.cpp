#include <doctest.h>

#include <cmath>

#include "pwriesz/entire.hpp"
#include "pwriesz/errors.hpp"
#include "pwriesz/weights.hpp"

using namespace pwriesz;

namespace {

std::vector<WeightSample> power_samples(double c, double lo, double hi, int per_decade = 512) {
  std::vector<WeightSample> out;
  for (double x : log_grid(lo, hi, per_decade)) out.push_back({x, std::pow(1.0 + x, c)});
  return out;
}

double fitted(const std::function<cplx(cplx)>& f, const SequenceSpec& zeros) {
  return exponent_fit(weight_samples(f, zeros, log_grid())).slope;
}

}  // namespace

TEST_CASE("log grid") {
  const auto g = log_grid();
  CHECK(g.size() == 3 * 512 + 1);
  CHECK(g.front() == 10.0);
  CHECK(g.back() == 1e4);
  CHECK(std::is_sorted(g.begin(), g.end()));
  CHECK_THROWS_AS(log_grid(0.0, 1.0), DomainError);
}

TEST_CASE("weight samples") {
  const auto f0 = [](cplx z) { return f_delta(Rational(0), z); };
  const auto s = weight_samples(f0, SequenceSpec::lattice(0, 1), {0.5});
  REQUIRE(s.size() == 1);
  CHECK(s[0].w == doctest::Approx(4.0 / (kPi * kPi)).epsilon(1e-14));
  // 2.03 is 0.03 from a zero and gets filtered
  const auto t = weight_samples(f0, SequenceSpec::lattice(0, 1), {0.5, 2.03, 3.5});
  CHECK(t.size() == 2);
  CHECK_THROWS_AS(weight_samples(f0, SequenceSpec::lattice(0, 1), {1.01, 2.0}), EmptyGridError);
}

TEST_CASE("fit recovers exact powers") {
  for (double c : {-0.9, -0.5, 0.0, 1.0 / 3.0, 0.75, 1.5}) {
    const auto fit = exponent_fit(power_samples(c, 10, 1e4));
    CHECK(std::abs(fit.slope - c) < 1e-3);
    CHECK(fit.r2 > 0.999999);
  }
}

TEST_CASE("fit needs enough data") {
  CHECK_THROWS_AS(exponent_fit(power_samples(0.5, 10, 1e4, 20)), InsufficientSpanError);
  CHECK_THROWS_AS(exponent_fit(power_samples(0.5, 10, 100, 512)), InsufficientSpanError);
}

TEST_CASE("f_delta weights follow -4 delta") {
  for (const Rational d : {Rational(1, 8), Rational(-1, 8), Rational(1, 12)}) {
    const auto fl = FactorSpec::shifted_lattice(d, 1);
    const double slope = fitted([&](cplx z) { return fl.eval(z); }, fl.zeros());
    CAPTURE(to_string(d));
    CHECK(std::abs(slope + 4 * to_double(d)) < 0.05);
  }
  const auto f0 = FactorSpec::shifted_lattice(Rational(0), 1);
  CHECK(std::abs(fitted([&](cplx z) { return f0.eval(z); }, f0.zeros())) < 0.05);
}

TEST_CASE("G weights are +-2/3") {
  const auto gp = build_section52(Rational(1, 8)).factorization.g;
  const auto gm = build_section52(Rational(-1, 8)).factorization.g;
  CHECK(std::abs(fitted([&](cplx z) { return gp.eval(z); }, gp.zeros()) - 2.0 / 3.0) < 0.05);
  CHECK(std::abs(fitted([&](cplx z) { return gm.eval(z); }, gm.zeros()) + 2.0 / 3.0) < 0.05);
}

TEST_CASE("scaling F leaves the exponent") {
  const auto fam = build_section52(Rational(1, 8));
  const auto zeros = fam.f.zeros();
  const double a = fitted([&](cplx z) { return fam.f.eval(z); }, zeros);
  const double b = fitted([&](cplx z) { return -7.5 * fam.f.eval(z); }, zeros);
  CHECK(std::abs(a - b) < 1e-10);
  const double beta = fitted([&](cplx z) { return fam.factorization.g.eval(z); }, fam.t());
  CHECK(a2_classify(a, beta).which == a2_classify(b, beta).which);
}

TEST_CASE("classification") {
  CHECK(a2_classify(-0.5, 2.0 / 3.0).which == A2Case::case2);
  CHECK(a2_classify(0.5, -2.0 / 3.0).which == A2Case::case3);
  CHECK(a2_classify(-1.0 / 3.0, 2.0 / 3.0).which == A2Case::case4);
  CHECK(a2_classify(0.0, 0.0).which == A2Case::case1);
  CHECK(a2_classify(0.5, 0.48).which == A2Case::case1);
  // within tol of the +-1 boundary counts as case 4, beyond tol elsewhere is out of range
  CHECK(a2_classify(-0.35, 0.67).which == A2Case::case4);
  const auto near = a2_classify(-0.995, 0.99);
  CHECK(near.which == A2Case::out_of_range);
  CHECK(near.near_boundary);
  CHECK_THROWS_AS(a2_classify(1.2, 0.0), DomainError);
  CHECK_THROWS_AS(a2_classify(0.0, -1.05), DomainError);
  CHECK(to_string(A2Case::case3) == "3");
}

TEST_CASE("A2 constant estimates") {
  std::vector<WeightSample> flat;
  for (double x : log_grid(1, 1e4, 256)) flat.push_back({x, 1.0});
  CHECK(a2_constant_estimate(flat) == doctest::Approx(1.0).epsilon(1e-12));

  // inside A2: bounded as the range grows
  const double half_small = a2_constant_estimate(power_samples(0.5, 1, 1e3, 256));
  const double half_large = a2_constant_estimate(power_samples(0.5, 1, 1e4, 256));
  CHECK(half_large < 2.0);
  CHECK(half_large / half_small < 1.1);

  // outside A2: grows with the largest interval
  const double steep_small = a2_constant_estimate(power_samples(1.5, 1, 1e3, 256));
  const double steep_large = a2_constant_estimate(power_samples(1.5, 1, 1e4, 256));
  CHECK(steep_large / steep_small > 2.0);
}

TEST_CASE("weight csv") {
  const auto csv = samples_to_csv({{1.0, 2.0}});
  CHECK(csv.rfind("x,w,log1p_x,log_w\n1,2,", 0) == 0);
}
