#pragma once

#include <map>
#include <string>

#include <json.hpp>

#include "pwriesz/riesz.hpp"

namespace pwriesz {

// Frozen calibration constants (config/thresholds.json).
struct Thresholds {
  std::string version = "uncalibrated";
  double stable_ratio = 0.8;
  double decay_slope = -0.3;
  double min_r2 = 0.9;
  DefectCriteria defect;
  // eig_min floors keyed by domain: "E", "glued", "gap", "full"
  std::map<std::string, double> floors;
  double condition_iii_floor = 0.0;
  double condition_iii_zero = 1e-8;
  double spectral_mass_max = 0.02;
  double a2_tol = 0.03;
  double exponent_tol = 0.05;
  nlohmann::json calibration;  // how the floors were produced

  TrendCriteria trend(const std::string& domain_key) const;

  nlohmann::json to_json() const;
  static Thresholds from_json(const nlohmann::json& j);
  // Throws ConfigError if the file is missing or malformed.
  static Thresholds load(const std::string& path);
  // The committed file next to the sources.
  static std::string default_path();
};

}  // namespace pwriesz
