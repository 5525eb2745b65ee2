#pragma once

#include <complex>
#include <string>
#include <vector>
#include <string_view>

#include <json.hpp>

#include "pwriesz/intervals.hpp"

namespace pwriesz {

// Parses an endpoint: a JSON number, or a string holding a rational
// optionally followed by "pi" ("-pi", "1/2pi", "-3/4*pi", "0.5").
double parse_endpoint(std::string_view text);
double endpoint_from_json(const nlohmann::json& j);

// [[lo, hi], ...] or [{"lo": .., "hi": ..}, ...].
IntervalUnion interval_union_from_json(const nlohmann::json& j);
nlohmann::json to_json(const IntervalUnion& u);

// Writes `text` to `path`, creating parent directories.
void write_text_file(const std::string& path, const std::string& text);

// Shortest round-trip decimal text ('.' separator, locale independent).
std::string format_number(double x);
// "re" for real values, "re+imi" otherwise.
std::string format_complex(std::complex<double> z);
// Comma-joined cells followed by '\n'.
std::string csv_row(const std::vector<std::string>& cells);
// A JSON number for real values, [re, im] otherwise.
nlohmann::json complex_to_json(std::complex<double> z);

}  // namespace pwriesz
