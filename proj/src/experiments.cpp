#include "pwriesz/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <mutex>
#include <random>
#include <thread>

#include "pwriesz/division.hpp"
#include "pwriesz/errors.hpp"
#include "pwriesz/io.hpp"
#include "pwriesz/riesz.hpp"
#include "pwriesz/weights.hpp"

namespace pwriesz {
namespace {

using json = nlohmann::json;

const char* kHilbertNote =
    "Not checked: boundedness of the Hilbert-type operator attached to the pair (Lambda, T). "
    "It is left undefined in the source construction, so no numerical test stands in for it.";

std::vector<double> doubles_from(const json& j, const char* key) {
  auto v = j.get<std::vector<double>>();
  if (v.size() < 2) throw ConfigError(std::string(key) + ": need at least two windows");
  if (!std::is_sorted(v.begin(), v.end()) || v.front() <= 0.0) {
    throw ConfigError(std::string(key) + ": windows must be positive and increasing");
  }
  return v;
}

json string_list(const std::vector<Rational>& v) {
  json out = json::array();
  for (const auto& r : v) out.push_back(to_string(r));
  return out;
}

// ---- checks -------------------------------------------------------------

struct TaskOutput {
  std::vector<Check> checks;
  std::map<std::string, std::string> tables;
  std::map<std::size_t, std::string> rows;
};

struct Task {
  std::string name;
  std::function<TaskOutput()> run;
};

Check error_check(const std::string& name, const std::string& what) {
  Check c;
  c.name = name;
  c.verdict = CheckVerdict::error;
  c.observed = "error";
  c.value = what;
  c.source = "computed";
  return c;
}

// Runs the tasks on up to `workers` threads and merges the results in name order.
RunReport execute(const std::string& experiment, std::vector<Task> tasks, int workers) {
  RunReport report;
  report.experiment = experiment;
  std::vector<TaskOutput> outputs(tasks.size());
  std::vector<double> seconds(tasks.size());
  std::atomic<std::size_t> next{0};
  const auto t0 = std::chrono::steady_clock::now();

  auto worker = [&] {
    for (std::size_t i = next++; i < tasks.size(); i = next++) {
      const auto start = std::chrono::steady_clock::now();
      try {
        outputs[i] = tasks[i].run();
      } catch (const Error& e) {
        outputs[i] = {};
        outputs[i].checks.push_back(error_check(tasks[i].name, e.what()));
      }
      seconds[i] = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    }
  };
  const auto n = static_cast<std::size_t>(std::clamp(workers, 1, 64));
  if (n == 1 || tasks.size() <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (std::size_t k = 0; k < std::min(n, tasks.size()); ++k) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }

  std::map<std::size_t, std::string> rows;
  for (std::size_t i = 0; i < tasks.size(); ++i) {
    for (auto& c : outputs[i].checks) report.checks.push_back(std::move(c));
    for (auto& [k, v] : outputs[i].tables) report.tables[k] = std::move(v);
    for (auto& [k, v] : outputs[i].rows) rows[k] = std::move(v);
    report.timing[tasks[i].name] = seconds[i];
  }
  if (!rows.empty()) {
    std::string body;
    for (const auto& [k, v] : rows) body += v;
    report.tables["rows"] = body;
  }
  report.timing["total"] = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  std::sort(report.checks.begin(), report.checks.end(),
            [](const Check& a, const Check& b) { return a.name < b.name; });
  return report;
}

std::string file_stem(const std::string& name) {
  std::string s = name;
  for (char& c : s) {
    if (c == '/') c = '_';
  }
  return s;
}

json trend_threshold(const TrendCriteria& c) {
  return {{"floor", c.floor}, {"stable_ratio", c.stable_ratio}, {"decay_slope", c.decay_slope}, {"min_r2", c.min_r2}};
}

// Trend check whose verdict must (or, with `negate`, must not) be `want`.
TaskOutput trend_task(const std::string& name, const SequenceSpec& spec, const IntervalUnion& domain,
                      const std::vector<double>& windows, const TrendCriteria& criteria, TrendVerdict want,
                      bool negate, const std::string& source, json extra = json::object()) {
  const auto r = bound_trend(spec, domain, windows, criteria);
  Check c;
  c.name = name;
  c.value = r.eig_min.back();
  c.observed = to_string(r.verdict);
  c.expected = (negate ? "not " : "") + to_string(want);
  c.threshold = trend_threshold(criteria);
  c.source = source;
  c.verdict = ((r.verdict == want) != negate) ? CheckVerdict::pass : CheckVerdict::fail;
  c.detail = r.to_json();
  for (auto& [k, v] : extra.items()) c.detail[k] = v;
  TaskOutput out;
  out.checks.push_back(std::move(c));
  out.tables[file_stem(name) + ".csv"] = r.to_csv();
  return out;
}

TaskOutput defect_task(const std::string& name, const SequenceSpec& spec, const IntervalUnion& domain,
                       const RationalComplex& probe, const std::vector<double>& windows,
                       const DefectCriteria& criteria, const DefectVerdict* want, const std::string& source) {
  const auto r = defect_residual(domain, spec, probe, windows, criteria);
  Check c;
  c.name = name;
  c.value = r.residual.back();
  c.observed = to_string(r.verdict);
  c.expected = want ? to_string(*want) : "";
  c.threshold = {{"outside_floor", criteria.outside_floor},
                 {"flat_slope", criteria.flat_slope},
                 {"decay_slope", criteria.decay_slope},
                 {"min_r2", criteria.min_r2}};
  c.source = source;
  c.verdict = !want ? CheckVerdict::info : (r.verdict == *want ? CheckVerdict::pass : CheckVerdict::fail);
  c.detail = r.to_json();
  TaskOutput out;
  out.checks.push_back(std::move(c));
  out.tables[file_stem(name) + ".csv"] = r.to_csv();
  return out;
}

// The `count` zeros of F closest to the origin.
std::vector<RationalComplex> nearest_zeros(const GeneratingFunction& f, int count) {
  for (double r = 8.0;; r *= 2.0) {
    auto z = f.zeros().materialize(r);
    if (static_cast<int>(z.size()) >= count || r > 1e4) {
      std::stable_sort(z.begin(), z.end(),
                       [](const auto& a, const auto& b) { return std::abs(a.value()) < std::abs(b.value()); });
      z.resize(std::min<std::size_t>(z.size(), static_cast<std::size_t>(count)));
      return z;
    }
  }
}

TaskOutput division_task(const std::string& role, const Family& fam, const DivisionConfig& dc,
                         std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> re(-dc.box_re, dc.box_re);
  std::uniform_real_distribution<double> im(-dc.box_im, dc.box_im);
  double worst = 0.0, worst_limit = 0.0;
  json per_zero = json::array();
  for (const auto& lam : nearest_zeros(fam.f, dc.zeros_per_family)) {
    const auto parts = divide(fam.f, fam.domain, lam.value());
    double w = 0.0;
    for (int k = 0; k < dc.random_points; ++k) {
      const cplx z(re(rng), im(rng));
      const cplx q = parts.quotient(z);
      w = std::max(w, std::abs(q - parts.phi(z) - parts.remainder(z)) / std::max(1.0, std::abs(q)));
    }
    const cplx fp = fam.f.derivative(lam.value());
    const cplx lim = parts.phi(lam.value()) + parts.kernel_coeff() * parts.gap_interval().length();
    const double lw = std::abs(lim - fp) / std::max(1e-300, std::abs(fp));
    worst = std::max(worst, w);
    worst_limit = std::max(worst_limit, lw);
    per_zero.push_back({{"lambda", to_string(lam)}, {"residual", w}, {"limit_error", lw}});
  }
  TaskOutput out;
  Check id;
  id.name = "division." + role + ".identity";
  id.value = worst;
  id.expected = "<= 1e-10";
  id.threshold = 1e-10;
  id.source = "identity";
  id.verdict = worst <= 1e-10 ? CheckVerdict::pass : CheckVerdict::fail;
  id.detail = {{"seed", seed}, {"points_per_zero", dc.random_points}, {"zeros", per_zero}};
  Check lim;
  lim.name = "division." + role + ".limit";
  lim.value = worst_limit;
  lim.expected = "<= 1e-8";
  lim.threshold = 1e-8;
  lim.source = "identity";
  lim.verdict = worst_limit <= 1e-8 ? CheckVerdict::pass : CheckVerdict::fail;
  out.checks.push_back(std::move(id));
  out.checks.push_back(std::move(lim));
  return out;
}

TaskOutput spectral_task(const Family& fam, const DivisionConfig& dc, double max_mass) {
  const auto parts = divide(fam.f, fam.domain, dc.spectral_lambda.value());
  const auto s = sample([&](double x) { return parts.phi(x); }, dc.half_length, dc.step);
  const double mass = spectral_mass_outside(s, fam.domain);
  Check c;
  c.name = "division.spectral_mass";
  c.value = mass;
  c.expected = "< " + format_number(max_mass);
  c.threshold = max_mass;
  c.source = "claim";
  c.verdict = mass < max_mass ? CheckVerdict::pass : CheckVerdict::fail;
  c.detail = {{"family", fam.name},
              {"lambda", to_string(dc.spectral_lambda)},
              {"half_length", dc.half_length},
              {"step", dc.step}};
  TaskOutput out;
  out.checks.push_back(std::move(c));
  return out;
}

IntervalUnion glued(const IntervalUnion& e) {
  const auto g = glue(e);
  return IntervalUnion::single(g.lo, g.hi);
}

Family build_or_reject(const std::function<Family()>& build) {
  try {
    return build();
  } catch (const SeparationError& e) {
    throw ConfigError(std::string("family rejected: ") + e.what());
  } catch (const DomainError& e) {
    throw ConfigError(std::string("family rejected: ") + e.what());
  }
}

void check_thresholds_version(const ExperimentConfig& cfg, const Thresholds& th) {
  if (!cfg.thresholds_version.empty() && cfg.thresholds_version != th.version) {
    throw ConfigError("thresholds version mismatch: config wants " + cfg.thresholds_version + ", file has " +
                      th.version);
  }
}

void stamp(RunReport& r, const ExperimentConfig& cfg, const Thresholds& th) {
  r.config = cfg.to_json();
  r.config.erase("output_dir");
  r.config.erase("workers");
  r.config.erase("thresholds_file");
  r.config["hash"] = cfg.hash();
  r.thresholds_version = th.version;
}

}  // namespace

// ---- config ---------------------------------------------------------------

nlohmann::json ExperimentConfig::to_json() const {
  return {{"preset", preset},
          {"deltas", string_list(deltas)},
          {"windows",
           {{"E", windows_e}, {"glued", windows_glued}, {"gap", windows_gap}, {"full", windows_full}}},
          {"added_point", to_string(added_point)},
          {"removed_point", to_string(removed_point)},
          {"condition_iii_radius", condition_iii_radius},
          {"h", h.to_json()},
          {"swap", swap},
          {"swap_lambda", to_string(swap_lambda)},
          {"swap_t", to_string(swap_t)},
          {"grid",
           {{"lo", grid.lo}, {"hi", grid.hi}, {"per_decade", grid.per_decade}, {"zero_filter", grid.zero_filter}}},
          {"division",
           {{"random_points", division.random_points},
            {"zeros_per_family", division.zeros_per_family},
            {"box_re", division.box_re},
            {"box_im", division.box_im},
            {"spectral_lambda", to_string(division.spectral_lambda)},
            {"half_length", division.half_length},
            {"step", division.step}}},
          {"thresholds_file", thresholds_file},
          {"thresholds_version", thresholds_version},
          {"output_dir", output_dir},
          {"seed", seed},
          {"workers", workers}};
}

ExperimentConfig ExperimentConfig::from_json(const nlohmann::json& j, ExperimentConfig c) {
  if (!j.is_object()) throw ConfigError("config must be a JSON object");
  try {
    for (const auto& [key, v] : j.items()) {
      if (key == "preset") {
        c.preset = v.get<std::string>();
      } else if (key == "deltas") {
        c.deltas.clear();
        for (const auto& d : v) c.deltas.push_back(parse_rational(d.is_string() ? d.get<std::string>() : d.dump()));
      } else if (key == "windows") {
        for (const auto& [w, list] : v.items()) {
          if (w == "E") c.windows_e = doubles_from(list, "windows.E");
          else if (w == "glued") c.windows_glued = doubles_from(list, "windows.glued");
          else if (w == "gap") c.windows_gap = doubles_from(list, "windows.gap");
          else if (w == "full") c.windows_full = doubles_from(list, "windows.full");
          else throw ConfigError("unknown window set '" + w + "'");
        }
      } else if (key == "added_point") {
        c.added_point = parse_rational_complex(v.get<std::string>());
      } else if (key == "removed_point") {
        c.removed_point = parse_rational_complex(v.get<std::string>());
      } else if (key == "condition_iii_radius") {
        c.condition_iii_radius = v.get<double>();
      } else if (key == "h") {
        c.h = FactorSpec::from_json(v);
      } else if (key == "swap") {
        c.swap = v.get<bool>();
      } else if (key == "swap_lambda") {
        c.swap_lambda = parse_rational_complex(v.get<std::string>());
      } else if (key == "swap_t") {
        c.swap_t = parse_rational_complex(v.get<std::string>());
      } else if (key == "grid") {
        c.grid.lo = v.value("lo", c.grid.lo);
        c.grid.hi = v.value("hi", c.grid.hi);
        c.grid.per_decade = v.value("per_decade", c.grid.per_decade);
        c.grid.zero_filter = v.value("zero_filter", c.grid.zero_filter);
      } else if (key == "division") {
        auto& d = c.division;
        d.random_points = v.value("random_points", d.random_points);
        d.zeros_per_family = v.value("zeros_per_family", d.zeros_per_family);
        d.box_re = v.value("box_re", d.box_re);
        d.box_im = v.value("box_im", d.box_im);
        if (v.contains("spectral_lambda")) d.spectral_lambda = parse_rational_complex(v["spectral_lambda"].get<std::string>());
        d.half_length = v.value("half_length", d.half_length);
        d.step = v.value("step", d.step);
      } else if (key == "thresholds_file") {
        c.thresholds_file = v.get<std::string>();
      } else if (key == "thresholds_version") {
        c.thresholds_version = v.get<std::string>();
      } else if (key == "output_dir") {
        c.output_dir = v.get<std::string>();
      } else if (key == "seed") {
        c.seed = v.get<std::uint64_t>();
      } else if (key == "workers") {
        c.workers = v.get<int>();
      } else if (key == "hash") {
        // written back by reports; ignored
      } else {
        throw ConfigError("unknown config key '" + key + "'");
      }
    }
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
  if (c.workers < 1) throw ConfigError("workers must be >= 1");
  if (c.deltas.empty()) throw ConfigError("deltas must not be empty");
  return c;
}

ExperimentConfig ExperimentConfig::load(const std::string& path, ExperimentConfig base) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path);
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError("config file " + path + ": " + e.what());
  }
  return from_json(j, std::move(base));
}

ExperimentConfig ExperimentConfig::from_json(const nlohmann::json& j) { return from_json(j, ExperimentConfig{}); }

ExperimentConfig ExperimentConfig::load(const std::string& path) { return load(path, ExperimentConfig{}); }

std::string ExperimentConfig::hash() const {
  json j = to_json();
  j.erase("output_dir");
  j.erase("workers");
  j.erase("thresholds_file");
  const std::string text = j.dump();
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char ch : text) {
    h ^= ch;
    h *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

// ---- report ---------------------------------------------------------------

std::string to_string(CheckVerdict v) {
  switch (v) {
    case CheckVerdict::pass:
      return "pass";
    case CheckVerdict::fail:
      return "fail";
    case CheckVerdict::info:
      return "info";
    default:
      return "error";
  }
}

nlohmann::json Check::to_json() const {
  return {{"name", name},
          {"value", value},
          {"observed", observed},
          {"expected", expected},
          {"threshold", threshold},
          {"source", source},
          {"verdict", to_string(verdict)},
          {"detail", detail}};
}

bool RunReport::all_expected() const {
  return std::none_of(checks.begin(), checks.end(), [](const Check& c) {
    return c.verdict == CheckVerdict::fail || c.verdict == CheckVerdict::error;
  });
}

nlohmann::json RunReport::to_json() const {
  json cs = json::array();
  for (const auto& c : checks) cs.push_back(c.to_json());
  return {{"experiment", experiment},
          {"tool_version", tool_version},
          {"config", config},
          {"thresholds_version", thresholds_version},
          {"checks", cs},
          {"overall", all_expected() ? "pass" : "fail"},
          {"notes", notes}};
}

nlohmann::json RunReport::timing_json() const { return timing; }

std::string RunReport::table() const {
  std::string out;
  char line[256];
  std::snprintf(line, sizeof line, "%-34s %-8s %-16s %-18s %s\n", "check", "verdict", "observed", "expected",
                "value");
  out += line;
  for (const auto& c : checks) {
    const std::string v = c.value.is_number() ? format_number(c.value.get<double>()) : c.value.dump();
    std::snprintf(line, sizeof line, "%-34s %-8s %-16s %-18s %s\n", c.name.c_str(), to_string(c.verdict).c_str(),
                  c.observed.c_str(), c.expected.c_str(), v.c_str());
    out += line;
  }
  out += std::string("overall: ") + (all_expected() ? "pass" : "fail") + "\n";
  for (const auto& n : notes) out += "note: " + n + "\n";
  return out;
}

// ---- experiments ------------------------------------------------------------

RunReport run_example1(const ExperimentConfig& cfg, const Thresholds& th) {
  check_thresholds_version(cfg, th);
  if (cfg.deltas.size() != 3) throw ConfigError("example1 needs exactly three deltas (minus, plus, zero)");
  const char* roles[3] = {"minus", "plus", "zero"};
  std::vector<Family> fams;
  for (const auto& d : cfg.deltas) fams.push_back(build_or_reject([&] { return build_section52(d); }));

  const IntervalUnion e = fams[0].domain;
  const IntervalUnion eg = glued(e);
  const auto te = th.trend("E");
  const auto tg = th.trend("glued");
  const auto add = SequenceSpec::points({cfg.added_point});
  const auto rem = SequenceSpec::points({cfg.removed_point});
  const auto stable = TrendVerdict::stable;

  std::vector<Task> tasks;
  for (int i = 0; i < 3; ++i) {
    const std::string name = std::string("E.") + roles[i] + ".trend";
    const auto lam = fams[i].lambda();
    tasks.push_back({name, [=, &cfg] { return trend_task(name, lam, e, cfg.windows_e, te, stable, false, "claim"); }});
  }
  const auto& lm = fams[0].lambda();
  const auto& lp = fams[1].lambda();
  const auto& l0 = fams[2].lambda();

  tasks.push_back({"glued.minus.defect", [&, lm] {
                     static const DefectVerdict want = DefectVerdict::outside_span;
                     return defect_task("glued.minus.defect", lm, eg, cfg.added_point, cfg.windows_glued, th.defect,
                                        &want, "claim");
                   }});
  tasks.push_back({"glued.minus.add.trend", [&, lm] {
                     return trend_task("glued.minus.add.trend", lm | add, eg, cfg.windows_glued, tg, stable, false,
                                       "claim", {{"added", to_string(cfg.added_point)}});
                   }});
  tasks.push_back({"glued.plus.trend", [&, lp] {
                     return trend_task("glued.plus.trend", lp, eg, cfg.windows_glued, tg, TrendVerdict::decaying,
                                       false, "claim", {{"excess", 1}});
                   }});
  tasks.push_back({"glued.plus.remove.trend", [&, lp] {
                     return trend_task("glued.plus.remove.trend", lp - rem, eg, cfg.windows_glued, tg, stable, false,
                                       "claim", {{"removed", to_string(cfg.removed_point)}});
                   }});
  tasks.push_back({"glued.zero.trend", [&, l0] {
                     return trend_task("glued.zero.trend", l0, eg, cfg.windows_glued, tg, stable, true, "claim");
                   }});
  tasks.push_back({"glued.zero.add.trend", [&, l0] {
                     return trend_task("glued.zero.add.trend", l0 | add, eg, cfg.windows_glued, tg, stable, true,
                                       "claim", {{"added", to_string(cfg.added_point)}});
                   }});
  tasks.push_back({"glued.zero.remove.trend", [&, l0] {
                     return trend_task("glued.zero.remove.trend", l0 - rem, eg, cfg.windows_glued, tg, stable, true,
                                       "claim", {{"removed", to_string(cfg.removed_point)}});
                   }});
  tasks.push_back({"glued.zero.remove.defect", [&, l0] {
                     return defect_task("glued.zero.remove.defect", l0 - rem, eg, cfg.removed_point,
                                        cfg.windows_glued, th.defect, nullptr, "computed");
                   }});
  for (int i = 0; i < 3; ++i) {
    const std::uint64_t seed = cfg.seed + 0x9E3779B97F4A7C15ULL * static_cast<std::uint64_t>(i + 1);
    tasks.push_back({std::string("division.") + roles[i],
                     [&, i, seed] { return division_task(roles[i], fams[i], cfg.division, seed); }});
  }
  tasks.push_back({"division.spectral_mass",
                   [&] { return spectral_task(fams[0], cfg.division, th.spectral_mass_max); }});

  RunReport r = execute("example1", std::move(tasks), cfg.workers);
  stamp(r, cfg, th);
  r.notes.push_back(kHilbertNote);
  return r;
}

RunReport run_section51(const ExperimentConfig& cfg, const Thresholds& th) {
  check_thresholds_version(cfg, th);
  Family fam = build_or_reject([&] { return build_section51(cfg.h); });
  if (cfg.swap) fam = swap_points(fam, cfg.swap_lambda, cfg.swap_t);
  const IntervalUnion full = IntervalUnion::symmetric(kPi);
  const Interval gi = gap(fam.domain);
  const IntervalUnion gu = IntervalUnion::single(gi.lo, gi.hi);
  const auto stable = TrendVerdict::stable;

  std::vector<Task> tasks;
  tasks.push_back({"condition_i.full.trend", [&] {
                     return trend_task("condition_i.full.trend", fam.lambda() | fam.t(), full, cfg.windows_full,
                                       th.trend("full"), stable, false, "claim");
                   }});
  tasks.push_back({"condition_ii.gap.trend", [&] {
                     return trend_task("condition_ii.gap.trend", fam.t(), gu, cfg.windows_gap, th.trend("gap"), stable,
                                       false, "claim");
                   }});
  tasks.push_back({"condition_iii.inf", [&] {
                     const auto rep = condition_iii_inf(fam, cfg.condition_iii_radius);
                     Check c;
                     c.name = "condition_iii.inf";
                     c.value = rep.inf_weighted;
                     c.source = "claim";
                     if (cfg.swap) {
                       c.expected = "< " + format_number(th.condition_iii_zero);
                       c.threshold = th.condition_iii_zero;
                       c.verdict = rep.inf_weighted < th.condition_iii_zero ? CheckVerdict::pass : CheckVerdict::fail;
                     } else {
                       c.expected = ">= " + format_number(th.condition_iii_floor);
                       c.threshold = th.condition_iii_floor;
                       c.verdict = rep.inf_weighted >= th.condition_iii_floor ? CheckVerdict::pass : CheckVerdict::fail;
                     }
                     c.observed = c.verdict == CheckVerdict::pass ? (cfg.swap ? "vanishes" : "bounded below")
                                                                  : (cfg.swap ? "bounded below" : "vanishes");
                     c.detail = {{"argmin", format_complex(rep.argmin)},
                                 {"inf_ratio", rep.inf_ratio},
                                 {"radius", rep.radius},
                                 {"count", rep.rows.size()}};
                     TaskOutput out;
                     out.checks.push_back(std::move(c));
                     out.tables["condition_iii.csv"] = rep.to_csv();
                     return out;
                   }});
  tasks.push_back({"E.lambda.trend", [&] {
                     return trend_task("E.lambda.trend", fam.lambda(), fam.domain, cfg.windows_e, th.trend("E"),
                                       cfg.swap ? TrendVerdict::decaying : stable, false, "claim");
                   }});

  RunReport r = execute("section51", std::move(tasks), cfg.workers);
  stamp(r, cfg, th);
  r.notes.push_back("family: " + fam.name);
  return r;
}

RunReport run_classification_sweep(const ExperimentConfig& cfg, const Thresholds& th) {
  check_thresholds_version(cfg, th);
  const auto xs = log_grid(cfg.grid.lo, cfg.grid.hi, cfg.grid.per_decade);
  std::vector<Task> tasks;
  for (std::size_t i = 0; i < cfg.deltas.size(); ++i) {
    const Rational d = cfg.deltas[i];
    const std::string key = "sweep." + to_string(d);
    tasks.push_back({key, [&, i, d, key] {
                       TaskOutput out;
                       Family fam;
                       try {
                         fam = build_section52(d);
                       } catch (const Error& e) {
                         out.checks.push_back(error_check(key + ".build", e.what()));
                         return out;
                       }
                       const auto& g = fam.factorization.g;
                       const auto ws_f =
                           weight_samples([&](cplx z) { return fam.f.eval(z); }, fam.f.zeros(), xs,
                                          cfg.grid.zero_filter);
                       const auto ws_g =
                           weight_samples([&](cplx z) { return g.eval(z); }, fam.t(), xs, cfg.grid.zero_filter);
                       WeightReport wr;
                       wr.name = fam.name;
                       wr.alpha = exponent_fit(ws_f);
                       wr.beta = exponent_fit(ws_g);
                       wr.tol = th.a2_tol;
                       wr.grid_lo = cfg.grid.lo;
                       wr.grid_hi = cfg.grid.hi;
                       wr.per_decade = cfg.grid.per_decade;
                       const double alpha_th = -4.0 * to_double(d);
                       const double beta_th = d.numerator() >= 0 ? 2.0 / 3.0 : -2.0 / 3.0;
                       const auto expected_case = a2_classify(alpha_th, beta_th, th.a2_tol).which;

                       Check cc;
                       cc.name = key + ".case";
                       cc.source = "claim";
                       cc.expected = to_string(expected_case);
                       cc.threshold = th.a2_tol;
                       try {
                         wr.classification = a2_classify(wr.alpha.slope, wr.beta.slope, th.a2_tol);
                         if (wr.classification.near_boundary) wr.warnings.push_back("difference within tol of a case boundary");
                         cc.observed = to_string(wr.classification.which);
                         cc.value = wr.classification.difference;
                         cc.verdict = wr.classification.which == expected_case ? CheckVerdict::pass : CheckVerdict::fail;
                       } catch (const DomainError& e) {
                         cc.observed = "out-of-range";
                         cc.value = e.what();
                         cc.verdict = CheckVerdict::fail;
                       }
                       cc.detail = wr.to_json();

                       auto exp_check = [&](const std::string& which, const ExponentFit& fit, double want) {
                         Check c;
                         c.name = key + "." + which;
                         c.value = fit.slope;
                         c.expected = format_number(want) + " +- " + format_number(th.exponent_tol);
                         c.threshold = th.exponent_tol;
                         c.source = "claim";
                         c.verdict = std::abs(fit.slope - want) <= th.exponent_tol ? CheckVerdict::pass
                                                                                   : CheckVerdict::fail;
                         c.detail = fit.to_json();
                         return c;
                       };
                       out.checks.push_back(exp_check("alpha", wr.alpha, alpha_th));
                       out.checks.push_back(exp_check("beta", wr.beta, beta_th));
                       out.checks.push_back(std::move(cc));
                       out.rows[i] = csv_row({to_string(d), format_number(wr.alpha.slope),
                                              format_number(wr.alpha.slope_halfwidth), format_number(wr.beta.slope),
                                              format_number(wr.beta.slope_halfwidth),
                                              format_number(wr.classification.difference),
                                              out.checks.back().observed, to_string(expected_case)});
                       const std::string stem = "weights_" + file_stem(to_string(d));
                       out.tables[stem + "_F.csv"] = samples_to_csv(ws_f);
                       out.tables[stem + "_G.csv"] = samples_to_csv(ws_g);
                       return out;
                     }});
  }
  RunReport r = execute("sweep", std::move(tasks), cfg.workers);
  if (auto it = r.tables.find("rows"); it != r.tables.end()) {
    r.tables["classification.csv"] =
        csv_row({"delta", "alpha", "alpha_halfwidth", "beta", "beta_halfwidth", "difference", "case", "expected_case"}) +
        it->second;
    r.tables.erase(it);
  }
  stamp(r, cfg, th);
  r.notes.push_back(kHilbertNote);
  return r;
}

RunReport run_experiment(const ExperimentConfig& cfg, const Thresholds& th) {
  if (cfg.preset == "example1") return run_example1(cfg, th);
  if (cfg.preset == "section51") return run_section51(cfg, th);
  if (cfg.preset == "sweep") return run_classification_sweep(cfg, th);
  throw ConfigError("unknown preset '" + cfg.preset + "'");
}

std::string persist(const RunReport& report, const ExperimentConfig& cfg) {
  namespace fs = std::filesystem;
  const fs::path base = fs::path(cfg.output_dir) / report.experiment / cfg.hash();
  fs::create_directories(base);
  fs::path dir;
  for (int k = 1;; ++k) {
    char name[16];
    std::snprintf(name, sizeof name, "run-%04d", k);
    dir = base / name;
    if (fs::create_directory(dir)) break;
  }
  write_text_file((dir / "report.json").string(), report.to_json().dump(2) + "\n");
  write_text_file((dir / "timing.json").string(), report.timing_json().dump(2) + "\n");
  write_text_file((dir / "config.json").string(), cfg.to_json().dump(2) + "\n");
  for (const auto& [name, text] : report.tables) write_text_file((dir / name).string(), text);
  return dir.string();
}

}  // namespace pwriesz
