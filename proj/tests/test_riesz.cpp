#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "oracles.hpp"
#include "pwriesz/entire.hpp"
#include "pwriesz/errors.hpp"
#include "pwriesz/kernels.hpp"
#include "pwriesz/riesz.hpp"

using namespace pwriesz;

namespace {

const IntervalUnion kE = IntervalUnion::two_interval(-kPi / 2, kPi / 2);
const IntervalUnion kFull = IntervalUnion::symmetric(kPi);
const IntervalUnion kGlued = IntervalUnion::symmetric(kPi / 2);

std::vector<cplx> integers(int r) {
  std::vector<cplx> out;
  for (int k = -r; k <= r; ++k) out.emplace_back(k);
  return out;
}

}  // namespace

TEST_CASE("integer lattice gives the identity") {
  const auto g = gram(kFull, integers(20));
  CHECK(g.matrix.rows() == 41);
  CHECK((g.matrix - Eigen::MatrixXcd::Identity(41, 41)).cwiseAbs().maxCoeff() < 1e-15);
  CHECK(g.eig_min == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(g.eig_max == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("two by two closed form") {
  const auto g = gram(kFull, {0.0, 0.5});
  const double c = 2.0 / kPi;
  CHECK(std::abs(g.matrix(0, 1) - c) < 1e-15);
  CHECK(g.eig_min == doctest::Approx(1 - c).epsilon(1e-14));
  CHECK(g.eig_max == doctest::Approx(1 + c).epsilon(1e-14));
}

TEST_CASE("gram errors") {
  CHECK_THROWS_AS(gram(kFull, {0.0, 1.0, 0.0}), DuplicatePointError);
  CHECK_THROWS_AS(gram(kFull, integers(10), 20), CapExceededError);
}

TEST_CASE("Lambda^- section on E is positive definite") {
  const auto pts = to_complex(oracle::lambda_minus().materialize(30));
  const auto g = gram(kE, pts);
  CHECK(g.eig_min > 0.01);
  CHECK(g.eig_max >= 1.0);
  CHECK(g.eig_min <= 1.0);
}

TEST_CASE("gram invariants on complex points") {
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> u(-15.0, 15.0);
  std::vector<cplx> pts;
  for (int k = 0; k < 40; ++k) pts.emplace_back(u(rng), u(rng) / 10);
  const auto g = gram(kE, pts);
  CHECK((g.matrix - g.matrix.adjoint()).cwiseAbs().maxCoeff() <= 1e-14);
  for (Eigen::Index j = 0; j < g.matrix.rows(); ++j) CHECK(std::abs(g.matrix(j, j) - 1.0) < 1e-15);
  CHECK(g.eig_min >= -1e-12);
  CHECK(g.eig_min <= 1.0);
  CHECK(g.eig_max >= 1.0);
  // eigenvalues do not depend on the order of the points
  auto shuffled = pts;
  std::shuffle(shuffled.begin(), shuffled.end(), rng);
  const auto h = gram(kE, shuffled);
  CHECK(h.eig_min == doctest::Approx(g.eig_min).epsilon(1e-10));
  CHECK(h.eig_max == doctest::Approx(g.eig_max).epsilon(1e-10));
}

TEST_CASE("nested sections interlace") {
  const auto pts = to_complex(oracle::lambda_zero().materialize(120));
  const auto full = gram(kGlued, pts);
  double prev_min = 2.0, prev_max = 0.0;
  for (double r : {10.0, 30.0, 60.0, 120.0}) {
    std::vector<cplx> sub;
    for (auto p : pts)
      if (std::abs(p.real()) <= r) sub.push_back(p);
    const auto g = gram(kGlued, sub);
    CHECK(g.eig_min <= prev_min + 1e-12);
    CHECK(g.eig_max >= prev_max - 1e-12);
    prev_min = g.eig_min;
    prev_max = g.eig_max;
  }
  CHECK(prev_min == doctest::Approx(full.eig_min).epsilon(1e-12));
}

TEST_CASE("line fit") {
  const auto f = fit_line({0, 1, 2, 3}, {1, 3, 5, 7});
  CHECK(f.slope == doctest::Approx(2.0));
  CHECK(f.intercept == doctest::Approx(1.0));
  CHECK(f.r2 == doctest::Approx(1.0));
  CHECK_THROWS_AS(fit_line({1}, {1}), InsufficientSpanError);
}

TEST_CASE("trend: integer lattice is stable") {
  const auto rep = bound_trend(SequenceSpec::lattice(0, 1), kFull, {25, 50, 100}, TrendCriteria{0.5});
  CHECK(rep.verdict == TrendVerdict::stable);
  for (double v : rep.eig_min) CHECK(v == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(rep.counts == std::vector<std::size_t>{51, 101, 201});
  CHECK(rep.nested_monotone);
  CHECK_THROWS_AS(bound_trend(SequenceSpec::lattice(0, 1), kFull, {50, 25}, TrendCriteria{}), DomainError);
}

TEST_CASE("trend: a doubled lattice decays") {
  // Z u (Z + 1/n) on [-pi, pi] has excess; eig_min falls like a power of the window
  const auto spec = SequenceSpec::lattice(0, 1) | SequenceSpec::points({Rational(1, 2)});
  const auto rep = bound_trend(spec, IntervalUnion::symmetric(kPi * 0.9), {25, 50, 100, 200}, TrendCriteria{0.05});
  CHECK(rep.verdict != TrendVerdict::stable);
  CHECK(rep.nested_monotone);
}

TEST_CASE("trend verdict logic") {
  TrendCriteria c;
  c.floor = 1e-3;
  const auto fam = build_section52(Rational(-1, 8));
  const std::vector<double> w{25, 50, 100, 200};
  const auto plus = bound_trend(fam.lambda(), kGlued, w, c);
  CHECK(plus.verdict == TrendVerdict::decaying);
  CHECK(plus.fit.slope < -0.3);
  const auto removed = bound_trend(fam.lambda() - SequenceSpec::points({0}), kGlued, w, c);
  CHECK(removed.verdict == TrendVerdict::stable);
  // a floor above eig_min blocks "stable"
  c.floor = 0.5;
  CHECK(bound_trend(fam.lambda() - SequenceSpec::points({0}), kGlued, w, c).verdict != TrendVerdict::stable);
}

TEST_CASE("trend report serialization") {
  const auto rep = bound_trend(SequenceSpec::lattice(0, 1), kFull, {5, 10}, TrendCriteria{0.5});
  const auto j = rep.to_json();
  CHECK(j.at("verdict") == "stable");
  CHECK(j.at("counts").size() == 2);
  CHECK(rep.to_csv().rfind("window,count,eig_min,eig_max\n5,11,", 0) == 0);
}

TEST_CASE("defect: lattice is complete") {
  const auto rep = defect_residual(kFull, SequenceSpec::lattice(0, 1), Rational(1, 2), {25, 50, 100, 200, 400},
                                   DefectCriteria{});
  CHECK(rep.verdict == DefectVerdict::in_closed_span);
  for (std::size_t i = 0; i < rep.residual.size(); ++i) {
    CHECK(rep.residual[i] >= 0.0);
    CHECK(rep.residual[i] <= 1.0);
    if (i) CHECK(rep.residual[i] <= rep.residual[i - 1] + 1e-12);
  }
  CHECK_THROWS_AS(defect_residual(kFull, SequenceSpec::lattice(0, 1), 3, {10, 20}, DefectCriteria{}),
                  PreconditionError);
}

TEST_CASE("defect: probe outside a deficient span") {
  // Lambda^- misses one point on the glued interval
  const auto rep = defect_residual(kGlued, oracle::lambda_minus(), Rational(1, 5), {25, 50, 100, 200}, DefectCriteria{});
  CHECK(rep.verdict == DefectVerdict::outside_span);
  const auto plus = defect_residual(kGlued, oracle::lambda_plus(), Rational(1, 5), {25, 50, 100, 200}, DefectCriteria{});
  CHECK(plus.verdict == DefectVerdict::in_closed_span);
  CHECK(plus.to_json().at("verdict") == "in-closed-span");
}

TEST_CASE("defect: singular sections are regularized") {
  // nearly coincident points make the section numerically singular
  const auto spec = SequenceSpec::lattice(0, 1) | SequenceSpec::points({RationalComplex(Rational(1, 1000000000))});
  const auto rep = defect_residual(IntervalUnion::symmetric(0.5), spec, Rational(1, 2), {10, 20}, DefectCriteria{});
  CHECK(rep.regularized);
  CHECK_FALSE(rep.warnings.empty());
  for (double r : rep.residual) CHECK((r >= 0.0 && r <= 1.0));
}

TEST_CASE("biorthogonal rows") {
  const auto id = gram(kFull, integers(5));
  const auto b = biorthogonal_coeffs(id);
  CHECK((b.rows - Eigen::MatrixXcd::Identity(11, 11)).cwiseAbs().maxCoeff() < 1e-14);

  const auto g2 = gram(kE, {0.0, 0.5});
  const cplx c = g2.matrix(0, 1);
  const auto b2 = biorthogonal_coeffs(g2);
  const double det = 1.0 - std::norm(c);
  CHECK(std::abs(b2.rows(0, 0) - 1.0 / det) < 1e-13);
  CHECK(std::abs(b2.rows(0, 1) + c / det) < 1e-13);
  CHECK(std::abs(b2.rows(1, 0) + std::conj(c) / det) < 1e-13);

  const auto sec = gram(kE, to_complex(oracle::lambda_minus().materialize(50)));
  const auto bo = biorthogonal_coeffs(sec);
  const Eigen::MatrixXcd prod = bo.rows * sec.matrix;
  const Eigen::MatrixXcd off = prod - Eigen::MatrixXcd::Identity(prod.rows(), prod.cols());
  CHECK(off.cwiseAbs().maxCoeff() < 1e-8);
  CHECK(bo.condition == doctest::Approx(sec.eig_max / sec.eig_min));

  CHECK_THROWS_AS(biorthogonal_coeffs(gram(kFull, {0.0, 1e-9})), SingularSectionError);
}

TEST_CASE("interpolation") {
  auto pts = integers(20);
  std::vector<cplx> data(pts.size(), 0.0);
  data[20] = 1.0;  // delta at 0
  const auto g = gram(kFull, pts);
  const auto it = interpolate(g, data);
  CHECK(it.ratio == doctest::Approx(1.0));
  CHECK(std::abs(it.coefficients(20) - 1.0 / std::sqrt(2 * kPi)) < 1e-14);

  const auto lm = to_complex(oracle::lambda_minus().materialize(100));
  std::vector<cplx> d2(lm.size(), 0.0);
  for (std::size_t i = 0; i < lm.size(); ++i)
    if (lm[i] == 0.0) d2[i] = 1.0;
  const auto sec = gram(kE, lm);
  const auto it2 = interpolate(sec, d2);
  CHECK(it2.ratio >= it2.lower * (1 - 1e-12));
  CHECK(it2.ratio <= it2.upper * (1 + 1e-12));
  CHECK_THROWS_AS(interpolate(sec, {1.0}), DomainError);
}

TEST_CASE("interpolation of the worst data tracks 1/eig_min") {
  const auto lz = to_complex(oracle::lambda_zero().materialize(150));
  const auto sec = gram(kGlued, lz);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(sec.matrix);
  // normalized data along the bottom eigenvector
  std::vector<cplx> data(lz.size());
  for (std::size_t i = 0; i < lz.size(); ++i)
    data[i] = es.eigenvectors()(static_cast<Eigen::Index>(i), 0) * std::sqrt(kernel_norm_sq(kGlued, lz[i]));
  const auto it = interpolate(sec, data);
  CHECK(it.ratio == doctest::Approx(it.upper).epsilon(1e-8));
}
