#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "pwriesz/entire.hpp"
#include "pwriesz/rational.hpp"
#include "pwriesz/thresholds.hpp"

namespace pwriesz {

inline constexpr const char* kToolVersion = "pwriesz 1.0.0";

struct WeightGridConfig {
  double lo = 10.0;
  double hi = 1e4;
  int per_decade = 512;
  double zero_filter = 0.05;
};

struct DivisionConfig {
  int random_points = 100;
  int zeros_per_family = 5;
  double box_re = 40.0;  // random points in [-box_re, box_re] x [-box_im, box_im]
  double box_im = 2.0;
  RationalComplex spectral_lambda = Rational(2, 3);
  double half_length = 400.0;
  double step = 0.05;
};

// Everything an experiment run depends on, apart from the thresholds file.
struct ExperimentConfig {
  std::string preset = "example1";  // example1 | section51 | sweep
  // example1: the families playing minus, plus, zero (in that order); sweep: the list to classify
  std::vector<Rational> deltas = {Rational(1, 8), Rational(-1, 8), Rational(1, 12)};
  std::vector<double> windows_e = {25, 50, 100, 200};
  std::vector<double> windows_glued = {25, 50, 100, 200};
  std::vector<double> windows_gap = {25, 50, 100, 200};
  std::vector<double> windows_full = {25, 50, 100, 200};
  RationalComplex added_point = Rational(1, 5);
  RationalComplex removed_point = Rational(0);
  double condition_iii_radius = 200.0;
  FactorSpec h = FactorSpec::sine(Rational(1, 4), Rational(1));
  bool swap = false;
  RationalComplex swap_lambda = Rational(1);
  RationalComplex swap_t = Rational(4, 3);
  WeightGridConfig grid;
  DivisionConfig division;
  std::string thresholds_file = Thresholds::default_path();
  std::string thresholds_version;  // empty: accept whatever the file holds
  std::string output_dir = "output";
  std::uint64_t seed = 20240611;
  int workers = 1;

  nlohmann::json to_json() const;
  // Missing keys keep their defaults; unknown keys and bad values raise ConfigError.
  static ExperimentConfig from_json(const nlohmann::json& j, ExperimentConfig base);
  static ExperimentConfig from_json(const nlohmann::json& j);
  static ExperimentConfig load(const std::string& path, ExperimentConfig base);
  static ExperimentConfig load(const std::string& path);
  // FNV-1a of the fields that influence results (not output_dir or workers).
  std::string hash() const;
};

enum class CheckVerdict { pass, fail, info, error };
std::string to_string(CheckVerdict v);

struct Check {
  std::string name;
  nlohmann::json value;  // number, string or object
  std::string observed;  // verdict word reported by the module, if any
  std::string expected;
  nlohmann::json threshold;
  std::string source;  // claim | identity | computed
  CheckVerdict verdict = CheckVerdict::info;
  nlohmann::json detail;

  nlohmann::json to_json() const;
};

struct RunReport {
  std::string experiment;
  std::string tool_version = kToolVersion;
  nlohmann::json config;
  std::string thresholds_version;
  std::vector<Check> checks;  // sorted by name
  std::vector<std::string> notes;
  std::map<std::string, std::string> tables;  // file name -> CSV text
  std::map<std::string, double> timing;       // seconds, kept out of the report body

  // True when no check failed or errored.
  bool all_expected() const;
  nlohmann::json to_json() const;
  nlohmann::json timing_json() const;
  // Fixed-width verdict table for terminals.
  std::string table() const;
};

RunReport run_example1(const ExperimentConfig& cfg, const Thresholds& th);
RunReport run_section51(const ExperimentConfig& cfg, const Thresholds& th);
RunReport run_classification_sweep(const ExperimentConfig& cfg, const Thresholds& th);
// Dispatch on cfg.preset; ConfigError for unknown presets.
RunReport run_experiment(const ExperimentConfig& cfg, const Thresholds& th);

// Writes report.json, timing.json and the CSV tables to
// <output_dir>/<experiment>/<config hash>/run-NNNN/, never touching earlier runs.
// Returns the directory written.
std::string persist(const RunReport& report, const ExperimentConfig& cfg);

}  // namespace pwriesz
