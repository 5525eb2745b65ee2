#include "pwriesz/rational.hpp"

#include <charconv>
#include <string>

#include "pwriesz/errors.hpp"

namespace pwriesz {
namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  return s;
}

std::int64_t parse_int(std::string_view s, std::string_view whole) {
  s = trim(s);
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  std::int64_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc{} || ptr != s.data() + s.size()) {
    throw ConfigError("malformed rational '" + std::string(whole) + "'");
  }
  return v;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  const auto s = trim(text);
  const auto slash = s.find('/');
  if (slash == std::string_view::npos) return Rational(parse_int(s, text));
  const auto num = parse_int(s.substr(0, slash), text);
  const auto den = parse_int(s.substr(slash + 1), text);
  if (den == 0) throw ConfigError("zero denominator in '" + std::string(text) + "'");
  return Rational(num, den);
}

std::string to_string(const Rational& r) {
  if (r.denominator() == 1) return std::to_string(r.numerator());
  return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

std::string to_string(const RationalComplex& z) {
  if (z.is_real()) return to_string(z.re);
  return to_string(z.re) + "," + to_string(z.im);
}

RationalComplex parse_rational_complex(std::string_view text) {
  const auto comma = text.find(',');
  if (comma == std::string_view::npos) return {parse_rational(text)};
  return {parse_rational(text.substr(0, comma)), parse_rational(text.substr(comma + 1))};
}

}  // namespace pwriesz
