#include "pwriesz/io.hpp"

#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>

#include "pwriesz/errors.hpp"
#include "pwriesz/rational.hpp"

namespace pwriesz {

double parse_endpoint(std::string_view text) {
  std::string s;
  for (char c : text) {
    if (c != ' ' && c != '*') s.push_back(c);
  }
  double scale = 1.0;
  if (s.size() >= 2 && s.compare(s.size() - 2, 2, "pi") == 0) {
    scale = kPi;
    s.resize(s.size() - 2);
    if (s.empty() || s == "+") s = "1";
    if (s == "-") s = "-1";
  }
  if (s.find('/') != std::string::npos || s.find('.') == std::string::npos) {
    return scale * to_double(parse_rational(s));
  }
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size()) {
    throw ConfigError("malformed endpoint '" + std::string(text) + "'");
  }
  return scale * v;
}

double endpoint_from_json(const nlohmann::json& j) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) return parse_endpoint(j.get<std::string>());
  throw ConfigError("interval endpoint must be a number or a string like \"-1/2pi\"");
}

IntervalUnion interval_union_from_json(const nlohmann::json& j) {
  if (!j.is_array()) throw ConfigError("interval union must be a JSON array");
  std::vector<Interval> parts;
  for (const auto& item : j) {
    if (item.is_array() && item.size() == 2) {
      parts.push_back({endpoint_from_json(item[0]), endpoint_from_json(item[1])});
    } else if (item.is_object()) {
      parts.push_back({endpoint_from_json(item.at("lo")), endpoint_from_json(item.at("hi"))});
    } else {
      throw ConfigError("interval must be [lo, hi] or {\"lo\":..,\"hi\":..}");
    }
  }
  return IntervalUnion(std::move(parts));
}

nlohmann::json to_json(const IntervalUnion& u) {
  auto arr = nlohmann::json::array();
  for (const auto& iv : u.parts()) arr.push_back({iv.lo, iv.hi});
  return arr;
}

void write_text_file(const std::string& path, const std::string& text) {
  const std::filesystem::path p(path);
  if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
  std::ofstream out(p, std::ios::binary);
  if (!out) throw ConfigError("cannot write " + path);
  out << text;
}

std::string format_number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, end);
}

std::string format_complex(std::complex<double> z) {
  if (z.imag() == 0.0) return format_number(z.real());
  const std::string im = format_number(z.imag());
  return format_number(z.real()) + (im.front() == '-' ? "" : "+") + im + "i";
}

std::string csv_row(const std::vector<std::string>& cells) {
  std::string out;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) out += ',';
    out += cells[i];
  }
  out += '\n';
  return out;
}

nlohmann::json complex_to_json(std::complex<double> z) {
  if (z.imag() == 0.0) return z.real();
  return nlohmann::json::array({z.real(), z.imag()});
}

}  // namespace pwriesz
