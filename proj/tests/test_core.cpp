#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <limits>

#include "pwriesz/errors.hpp"
#include "pwriesz/intervals.hpp"
#include "pwriesz/io.hpp"
#include "pwriesz/rational.hpp"
#include "pwriesz/sequence.hpp"

using namespace pwriesz;

namespace {

// +-(4N + 1/2) u +-(4N + 2/3) u {-2/3, 0}
SequenceSpec lambda_minus() {
  return SequenceSpec::progression(Rational(1, 2), 4, 1, true) | SequenceSpec::progression(Rational(2, 3), 4, 1, true) |
         SequenceSpec::points({Rational(-2, 3), 0});
}

std::vector<RationalComplex> reals(std::initializer_list<Rational> xs) {
  std::vector<RationalComplex> out;
  for (const auto& x : xs) out.emplace_back(x);
  return out;
}

}  // namespace

TEST_CASE("rational parsing") {
  CHECK(parse_rational("3/6") == Rational(1, 2));
  CHECK(parse_rational(" -7 ") == Rational(-7));
  CHECK_THROWS_AS(parse_rational("1/0"), ConfigError);
  CHECK_THROWS_AS(parse_rational("x"), ConfigError);
  CHECK(to_string(Rational(-2, 3)) == "-2/3");
  const auto z = parse_rational_complex("1/2,-3");
  CHECK(z.re == Rational(1, 2));
  CHECK(z.im == Rational(-3));
  CHECK(parse_rational_complex(to_string(z)) == z);
}

TEST_CASE("interval unions") {
  const auto e = IntervalUnion::two_interval(-kPi / 2, kPi / 2);
  CHECK(e.size() == 2);
  CHECK(e.measure() == doctest::Approx(kPi).epsilon(1e-15));
  CHECK(e.diameter() == doctest::Approx(2 * kPi));

  // overlaps merge, adjacency is rejected
  const IntervalUnion merged({{2.0, 3.0}, {0.0, 1.5}, {1.0, 2.5}});
  CHECK(merged.size() == 1);
  CHECK(merged.parts()[0] == Interval{0.0, 3.0});
  CHECK_THROWS_AS(IntervalUnion({{0.0, 1.0}, {1.0, 2.0}}), DomainError);
  CHECK_THROWS_AS(IntervalUnion({{1.0, 1.0}}), DomainError);
  CHECK_THROWS_AS(IntervalUnion(std::vector<Interval>{}), DomainError);
}

TEST_CASE("glue") {
  const auto g = glue(IntervalUnion::two_interval(-kPi / 2, kPi / 2));
  CHECK(g.lo == doctest::Approx(-kPi / 2));
  CHECK(g.hi == doctest::Approx(kPi / 2));

  const double eps = 0.25;
  const auto g2 = glue(IntervalUnion::two_interval(0.0, eps));
  CHECK(g2.lo == doctest::Approx(-kPi + eps));
  CHECK(g2.hi == doctest::Approx(kPi));

  const auto g3 = glue(IntervalUnion::two_interval(-1.0, 1.0));
  CHECK(g3.lo == doctest::Approx(-kPi + 1));
  CHECK(g3.hi == doctest::Approx(kPi - 1));

  for (double a : {-2.5, -1.0, 0.0, 0.7}) {
    const auto e = IntervalUnion::two_interval(a, a + 1.3);
    CHECK(std::abs(glue(e).length() - e.measure()) <= 1e-15 * 8);
  }
  CHECK_THROWS_AS(glue(IntervalUnion::single(-1, 1)), ShapeError);
  CHECK_THROWS_AS(glue(IntervalUnion({{-3.0, -1.0}, {1.0, kPi}})), ShapeError);
}

TEST_CASE("interval union json") {
  const auto j = nlohmann::json::parse(R"([["-pi", "-1/2pi"], ["1/2*pi", "pi"]])");
  const auto e = interval_union_from_json(j);
  CHECK(e == IntervalUnion::two_interval(-kPi / 2, kPi / 2));
  CHECK(interval_union_from_json(to_json(e)) == e);
}

TEST_CASE("materialize Lambda^- on a small window") {
  const auto pts = lambda_minus().materialize(5);
  CHECK(pts == reals({Rational(-14, 3), Rational(-9, 2), Rational(-2, 3), 0, Rational(9, 2), Rational(14, 3)}));
}

TEST_CASE("materialize edge cases") {
  CHECK(SequenceSpec::points({1, 2}).materialize(0).empty());
  CHECK(SequenceSpec::lattice(Rational(1, 2), 1).materialize(0).empty());
  const auto u = SequenceSpec::points({0, 1}) | SequenceSpec::points({1, 2});
  CHECK(u.materialize(10) == reals({0, 1, 2}));
  CHECK(SequenceSpec().materialize(100).empty());
  // complex points filtered by |Re| only
  const auto c = SequenceSpec::points({RationalComplex(1, 50)});
  CHECK(c.materialize(1).size() == 1);
  CHECK_THROWS_AS(SequenceSpec::progression(0, 0), DomainError);
}

TEST_CASE("materialize is monotone in the window") {
  const auto s = lambda_minus() - SequenceSpec::points({0});
  std::vector<RationalComplex> prev;
  for (double r : {0.0, 1.0, 4.5, 7.3, 20.0, 101.0}) {
    const auto cur = s.materialize(r);
    CHECK(std::includes(cur.begin(), cur.end(), prev.begin(), prev.end()));
    CHECK(std::is_sorted(cur.begin(), cur.end()));
    CHECK(std::adjacent_find(cur.begin(), cur.end()) == cur.end());
    prev = cur;
  }
}

TEST_CASE("difference then union restores the set") {
  const auto base = SequenceSpec::lattice(0, Rational(4, 3));
  const auto removed = SequenceSpec::lattice(Rational(4, 3), 4) | SequenceSpec::lattice(Rational(-4, 3), 4);
  const auto rebuilt = (base - removed) | removed;
  for (double r : {3.0, 50.0, 333.0}) CHECK(rebuilt.materialize(r) == base.materialize(r));
  // 4Z is what remains
  CHECK((base - removed).materialize(60) == SequenceSpec::lattice(0, 4).materialize(60));
}

TEST_CASE("exact membership") {
  const auto s = lambda_minus();
  CHECK(s.contains(Rational(-2, 3)));
  CHECK(s.contains(Rational(4001, 2)));
  CHECK_FALSE(s.contains(Rational(2, 3)));
  CHECK_FALSE(s.contains(Rational(1, 2)));
  CHECK(s.contains(Rational(-9, 2)));
  CHECK_FALSE((s - SequenceSpec::points({0})).contains(0));
}

TEST_CASE("separation") {
  // image of the delta = 1/8 lattice under z -> 4z, against +-2/3 + (4/3)Z
  const auto a = SequenceSpec::progression(Rational(1, 2), 4, 1, true) | SequenceSpec::points({0});
  const auto b = SequenceSpec::lattice(Rational(2, 3), Rational(4, 3));
  const double sep = separation(a, b, 100);
  // brute force
  const auto pa = to_complex(a.materialize(100));
  const auto pb = to_complex(b.materialize(100));
  double brute = std::numeric_limits<double>::infinity();
  for (auto x : pa)
    for (auto y : pb) brute = std::min(brute, std::abs(x - y));
  CHECK(sep > 0);
  CHECK(sep == doctest::Approx(brute).epsilon(1e-14));
  CHECK(sep == doctest::Approx(1.0 / 6.0));

  CHECK(separation(b, b, 10) == 0.0);
  CHECK(separation(SequenceSpec::points({0}), SequenceSpec::points({1}), 5) == 1.0);
  CHECK(std::isinf(separation(SequenceSpec(), b, 5)));
}

TEST_CASE("sequence json round trip") {
  const auto s = (lambda_minus() - SequenceSpec::points({0})) | SequenceSpec::lattice(Rational(1, 5), 7);
  const auto back = SequenceSpec::from_json(s.to_json());
  CHECK(back.materialize(80) == s.materialize(80));
  CHECK(back.fingerprint() == s.fingerprint());
  CHECK_THROWS_AS(SequenceSpec::from_json(nlohmann::json::parse(R"({"kind":"spiral"})")), ConfigError);
}
