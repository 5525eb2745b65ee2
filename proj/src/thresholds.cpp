#include "pwriesz/thresholds.hpp"

#include <fstream>

#include "pwriesz/errors.hpp"

#ifndef PWRIESZ_THRESHOLDS_FILE
#define PWRIESZ_THRESHOLDS_FILE "config/thresholds.json"
#endif

namespace pwriesz {

TrendCriteria Thresholds::trend(const std::string& domain_key) const {
  const auto it = floors.find(domain_key);
  if (it == floors.end()) throw ConfigError("thresholds: no floor for domain '" + domain_key + "'");
  TrendCriteria c;
  c.floor = it->second;
  c.stable_ratio = stable_ratio;
  c.decay_slope = decay_slope;
  c.min_r2 = min_r2;
  return c;
}

nlohmann::json Thresholds::to_json() const {
  return {{"version", version},
          {"trend", {{"stable_ratio", stable_ratio}, {"decay_slope", decay_slope}, {"min_r2", min_r2}}},
          {"defect",
           {{"outside_floor", defect.outside_floor},
            {"flat_slope", defect.flat_slope},
            {"decay_slope", defect.decay_slope},
            {"min_r2", defect.min_r2}}},
          {"floors", floors},
          {"condition_iii_floor", condition_iii_floor},
          {"condition_iii_zero", condition_iii_zero},
          {"spectral_mass_max", spectral_mass_max},
          {"a2_tol", a2_tol},
          {"exponent_tol", exponent_tol},
          {"calibration", calibration}};
}

Thresholds Thresholds::from_json(const nlohmann::json& j) {
  try {
    Thresholds t;
    t.version = j.at("version").get<std::string>();
    const auto& tr = j.at("trend");
    t.stable_ratio = tr.at("stable_ratio").get<double>();
    t.decay_slope = tr.at("decay_slope").get<double>();
    t.min_r2 = tr.at("min_r2").get<double>();
    const auto& d = j.at("defect");
    t.defect.outside_floor = d.at("outside_floor").get<double>();
    t.defect.flat_slope = d.at("flat_slope").get<double>();
    t.defect.decay_slope = d.at("decay_slope").get<double>();
    t.defect.min_r2 = d.at("min_r2").get<double>();
    t.floors = j.at("floors").get<std::map<std::string, double>>();
    t.condition_iii_floor = j.at("condition_iii_floor").get<double>();
    t.condition_iii_zero = j.value("condition_iii_zero", 1e-8);
    t.spectral_mass_max = j.at("spectral_mass_max").get<double>();
    t.a2_tol = j.at("a2_tol").get<double>();
    t.exponent_tol = j.at("exponent_tol").get<double>();
    t.calibration = j.value("calibration", nlohmann::json::object());
    return t;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("thresholds: ") + e.what());
  }
}

Thresholds Thresholds::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open thresholds file " + path);
  try {
    return from_json(nlohmann::json::parse(in));
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError("thresholds file " + path + ": " + e.what());
  }
}

std::string Thresholds::default_path() { return PWRIESZ_THRESHOLDS_FILE; }

}  // namespace pwriesz
