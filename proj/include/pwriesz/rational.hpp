#pragma once

#include <boost/rational.hpp>

#include <complex>
#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

namespace pwriesz {

using Rational = boost::rational<std::int64_t>;

// Parses "p", "-p", "p/q" (whitespace tolerated around the tokens).
// Throws ConfigError on malformed text or a zero denominator.
Rational parse_rational(std::string_view text);

std::string to_string(const Rational& r);

inline double to_double(const Rational& r) {
  return static_cast<double>(r.numerator()) / static_cast<double>(r.denominator());
}

// Exact complex rational. Point sequences are generated and deduplicated in
// this representation; conversion to floating point happens only when a
// point is handed to an evaluator.
struct RationalComplex {
  Rational re{0};
  Rational im{0};

  RationalComplex() = default;
  RationalComplex(Rational real, Rational imag = Rational{0}) : re(real), im(imag) {}
  RationalComplex(std::int64_t real) : re(real) {}

  std::complex<double> value() const { return {to_double(re), to_double(im)}; }
  bool is_real() const { return im.numerator() == 0; }

  RationalComplex operator-() const { return {-re, -im}; }
  friend RationalComplex operator+(const RationalComplex& a, const RationalComplex& b) {
    return {a.re + b.re, a.im + b.im};
  }
  friend RationalComplex operator-(const RationalComplex& a, const RationalComplex& b) {
    return {a.re - b.re, a.im - b.im};
  }
  friend RationalComplex operator*(const RationalComplex& a, const Rational& s) {
    return {a.re * s, a.im * s};
  }

  friend bool operator==(const RationalComplex& a, const RationalComplex& b) {
    return a.re == b.re && a.im == b.im;
  }
  // Sequences are ordered by real part, ties broken by imaginary part.
  friend bool operator<(const RationalComplex& a, const RationalComplex& b) {
    if (a.re != b.re) return a.re < b.re;
    return a.im < b.im;
  }
};

// "p/q" for real values, otherwise "p/q+r/si" style.
std::string to_string(const RationalComplex& z);

// Accepts "p/q" (real) or "re,im" with rational components.
RationalComplex parse_rational_complex(std::string_view text);

}  // namespace pwriesz
