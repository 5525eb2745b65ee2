#include <CLI11.hpp>
#include <filesystem>
#include <fstream>

#include <iostream>
#include <optional>

#include "pwriesz/division.hpp"
#include "pwriesz/errors.hpp"
#include "pwriesz/experiments.hpp"
#include "pwriesz/io.hpp"
#include "pwriesz/kernels.hpp"
#include "pwriesz/riesz.hpp"
#include "pwriesz/weights.hpp"

using namespace pwriesz;
using json = nlohmann::json;

namespace {

constexpr int kExitMismatch = 1;
constexpr int kExitConfig = 2;

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

double to_number(const std::string& s) {
  try {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used != s.size()) throw ConfigError("bad number '" + s + "'");
    return v;
  } catch (const std::logic_error&) {
    throw ConfigError("bad number '" + s + "'");
  }
}

// "x" or "x,y"
cplx parse_point(const std::string& s) {
  const auto p = split(s, ',');
  if (p.size() == 1) return to_number(p[0]);
  if (p.size() == 2) return {to_number(p[0]), to_number(p[1])};
  throw ConfigError("bad point '" + s + "' (expected x or x,y)");
}

json window_list(const std::string& s) {
  json out = json::array();
  for (const auto& w : split(s, ',')) out.push_back(to_number(w));
  return out;
}

// Named domains, or a JSON list of intervals such as [["-pi","-1/2pi"],["1/2pi","pi"]].
IntervalUnion parse_domain(const std::string& s) {
  const auto e = IntervalUnion::two_interval(-kPi / 2, kPi / 2);
  if (s == "E") return e;
  if (s == "glued") {
    const auto g = glue(e);
    return IntervalUnion::single(g.lo, g.hi);
  }
  if (s == "gap") {
    const auto g = gap(e);
    return IntervalUnion::single(g.lo, g.hi);
  }
  if (s == "full") return IntervalUnion::symmetric(kPi);
  try {
    return interval_union_from_json(json::parse(s));
  } catch (const json::exception&) {
    throw ConfigError("unknown domain '" + s + "' (E, glued, gap, full or a JSON interval list)");
  }
}

// Options that pick a family and a point set derived from it.
struct SequenceOptions {
  std::string family = "section52";
  std::string delta = "1/8";
  std::string h;
  std::string set = "lambda";
  std::vector<std::string> add;
  std::vector<std::string> remove;
  std::string file;

  void attach(CLI::App* app) {
    app->add_option("--family", family, "section52 or section51")->capture_default_str();
    app->add_option("--delta", delta, "delta for section52")->capture_default_str();
    app->add_option("--h-factor", h, "H factor as JSON for section51 (default sine, frequency 1/4, center 1)");
    app->add_option("--set", set, "lambda, t or zeros")->capture_default_str();
    app->add_option("--add", add, "points to add (rational)");
    app->add_option("--remove", remove, "points to remove (rational)");
    app->add_option("--sequence", file, "sequence spec JSON file (overrides --family)");
  }

  Family build() const {
    if (family == "section52") return build_section52(parse_rational(delta));
    if (family == "section51") {
      const auto hf = h.empty() ? FactorSpec::sine(Rational(1, 4), Rational(1)) : FactorSpec::from_json(json::parse(h));
      return build_section51(hf);
    }
    throw ConfigError("unknown family '" + family + "'");
  }

  SequenceSpec spec() const {
    SequenceSpec s;
    if (!file.empty()) {
      std::ifstream in(file);
      if (!in) throw ConfigError("cannot open " + file);
      s = SequenceSpec::from_json(json::parse(in));
    } else {
      const auto fam = build();
      if (set == "lambda") s = fam.lambda();
      else if (set == "t") s = fam.t();
      else if (set == "zeros") s = fam.f.zeros();
      else throw ConfigError("unknown set '" + set + "'");
    }
    std::vector<RationalComplex> a, r;
    for (const auto& p : add) a.push_back(parse_rational_complex(p));
    for (const auto& p : remove) r.push_back(parse_rational_complex(p));
    if (!a.empty()) s = s | SequenceSpec::points(a);
    if (!r.empty()) s = s - SequenceSpec::points(r);
    return s;
  }
};

std::string thresholds_path_or_default(const std::string& p) { return p.empty() ? Thresholds::default_path() : p; }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Finite-section diagnostics for exponential systems on unions of intervals"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kToolVersion);

  // ---- eval
  auto* eval = app.add_subcommand("eval", "evaluate a generating function or its parts");
  SequenceOptions eval_seq;
  std::string eval_part = "F";
  std::vector<std::string> eval_z;
  eval->add_option("--family", eval_seq.family)->capture_default_str();
  eval->add_option("--delta", eval_seq.delta)->capture_default_str();
  eval->add_option("--h-factor", eval_seq.h);
  eval->add_option("--part", eval_part, "F, plus, minus, S, G or derivative")->capture_default_str();
  eval->add_option("-z,--z", eval_z, "points x or x,y")->required();

  // ---- kernel
  auto* kern = app.add_subcommand("kernel", "reproducing kernel k^S_lambda(z)");
  std::string kern_domain = "E", kern_lambda;
  std::vector<std::string> kern_z;
  kern->add_option("--domain", kern_domain)->capture_default_str();
  kern->add_option("--lambda", kern_lambda, "x or x,y")->required();
  kern->add_option("-z,--z", kern_z, "points x or x,y")->required();

  // ---- gram
  auto* gcmd = app.add_subcommand("gram", "extreme eigenvalues of one normalized Gram section");
  SequenceOptions gram_seq;
  std::string gram_domain = "E";
  double gram_radius = 100.0;
  gram_seq.attach(gcmd);
  gcmd->add_option("--domain", gram_domain)->capture_default_str();
  gcmd->add_option("-R,--radius", gram_radius)->capture_default_str();

  // ---- trend
  auto* tcmd = app.add_subcommand("trend", "eig_min trend over nested sections");
  SequenceOptions trend_seq;
  std::string trend_domain = "E", trend_windows = "25,50,100,200", trend_thresholds;
  std::optional<double> trend_floor;
  bool trend_csv = false;
  trend_seq.attach(tcmd);
  tcmd->add_option("--domain", trend_domain)->capture_default_str();
  tcmd->add_option("--windows", trend_windows, "comma separated radii")->capture_default_str();
  tcmd->add_option("--floor", trend_floor, "eig_min floor (default: frozen floor of a named domain)");
  tcmd->add_option("--thresholds", trend_thresholds, "thresholds file");
  tcmd->add_flag("--csv", trend_csv, "print CSV instead of JSON");

  // ---- defect
  auto* dcmd = app.add_subcommand("defect", "distance of one exponential to the span of a section");
  SequenceOptions defect_seq;
  std::string defect_domain = "glued", defect_windows = "25,50,100,200", defect_probe = "1/5", defect_thresholds;
  bool defect_csv = false;
  defect_seq.attach(dcmd);
  dcmd->add_option("--domain", defect_domain)->capture_default_str();
  dcmd->add_option("--windows", defect_windows)->capture_default_str();
  dcmd->add_option("--probe", defect_probe)->capture_default_str();
  dcmd->add_option("--thresholds", defect_thresholds, "thresholds file");
  dcmd->add_flag("--csv", defect_csv, "print CSV instead of JSON");

  // ---- a2
  auto* acmd = app.add_subcommand("a2", "fit weight exponents and classify");
  std::string a2_delta = "1/8";
  std::optional<double> a2_alpha, a2_beta;
  double a2_tol = 0.03;
  std::string a2_csv;
  acmd->add_option("--delta", a2_delta, "section52 family")->capture_default_str();
  acmd->add_option("--alpha", a2_alpha, "classify given exponents instead of fitting");
  acmd->add_option("--beta", a2_beta);
  acmd->add_option("--tol", a2_tol)->capture_default_str();
  acmd->add_option("--samples-csv", a2_csv, "write the F weight scatter to this file");

  // ---- experiments
  struct ExperimentFlags {
    std::string config, thresholds, output, deltas, windows_e, windows_glued, windows_gap, windows_full;
    std::string added, removed, h, swap_lambda, swap_t, thresholds_version;
    std::optional<std::uint64_t> seed;
    std::optional<int> workers;
    std::optional<double> radius;
    bool swap = false, no_write = false, json_out = false;
  };
  std::map<std::string, ExperimentFlags> flags;
  auto add_experiment = [&](const std::string& name, const std::string& help) {
    auto* sc = app.add_subcommand(name, help);
    auto& f = flags[name];
    sc->add_option("--config", f.config, "JSON config file");
    sc->add_option("--thresholds", f.thresholds, "thresholds file");
    sc->add_option("--thresholds-version", f.thresholds_version, "required thresholds version");
    sc->add_option("--output", f.output, "output directory");
    sc->add_option("--seed", f.seed);
    sc->add_option("--workers", f.workers);
    sc->add_option("--deltas", f.deltas, "comma separated rationals");
    sc->add_option("--windows-e", f.windows_e);
    sc->add_option("--windows-glued", f.windows_glued);
    sc->add_option("--windows-gap", f.windows_gap);
    sc->add_option("--windows-full", f.windows_full);
    sc->add_option("--added-point", f.added);
    sc->add_option("--removed-point", f.removed);
    sc->add_option("--h-factor", f.h, "H factor as JSON");
    sc->add_flag("--swap", f.swap, "move one point between Lambda and T");
    sc->add_option("--swap-lambda", f.swap_lambda);
    sc->add_option("--swap-t", f.swap_t);
    sc->add_option("--radius", f.radius, "condition (iii) radius");
    sc->add_flag("--no-write", f.no_write, "do not persist the report");
    sc->add_flag("--json", f.json_out, "print the JSON report instead of the table");
    return sc;
  };
  auto* ex1 = add_experiment("example1", "extra point effect for the three shifted-lattice families");
  auto* s51 = add_experiment("section51", "hypothesis checks for the H sin(3 pi z/4) family");
  auto* swp = add_experiment("sweep", "A2 exponent classification over a list of deltas");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }

  try {
    if (eval->parsed()) {
      const auto fam = eval_seq.build();
      json out = json::array();
      for (const auto& zs : eval_z) {
        const cplx z = parse_point(zs);
        cplx v;
        if (eval_part == "F") v = fam.f.eval(z);
        else if (eval_part == "plus") v = fam.f.component(Side::plus, z);
        else if (eval_part == "minus") v = fam.f.component(Side::minus, z);
        else if (eval_part == "S") v = fam.factorization.s.eval(z);
        else if (eval_part == "G") v = fam.factorization.g.eval(z);
        else if (eval_part == "derivative") v = fam.f.derivative(z);
        else throw ConfigError("unknown part '" + eval_part + "'");
        out.push_back({{"z", complex_to_json(z)}, {"value", complex_to_json(v)}});
      }
      std::cout << json{{"family", fam.name}, {"part", eval_part}, {"values", out}}.dump(2) << "\n";
      return 0;
    }
    if (kern->parsed()) {
      const auto s = parse_domain(kern_domain);
      const cplx lam = parse_point(kern_lambda);
      json out = json::array();
      for (const auto& zs : kern_z) {
        const cplx z = parse_point(zs);
        out.push_back({{"z", complex_to_json(z)}, {"value", complex_to_json(kernel(s, lam, z))}});
      }
      std::cout << json{{"domain", s.describe()}, {"lambda", complex_to_json(lam)}, {"norm_sq", kernel_norm_sq(s, lam)},
                        {"values", out}}
                       .dump(2)
                << "\n";
      return 0;
    }
    if (gcmd->parsed()) {
      const auto s = parse_domain(gram_domain);
      const auto g = gram(s, to_complex(gram_seq.spec().materialize(gram_radius)));
      std::cout << json{{"domain", s.describe()},
                        {"radius", gram_radius},
                        {"count", g.points.size()},
                        {"eig_min", g.eig_min},
                        {"eig_max", g.eig_max}}
                       .dump(2)
                << "\n";
      return 0;
    }
    if (tcmd->parsed()) {
      const auto s = parse_domain(trend_domain);
      TrendCriteria c;
      if (trend_floor) {
        c.floor = *trend_floor;
      } else {
        c = Thresholds::load(thresholds_path_or_default(trend_thresholds)).trend(trend_domain);
      }
      std::vector<double> w = window_list(trend_windows).get<std::vector<double>>();
      const auto r = bound_trend(trend_seq.spec(), s, w, c);
      std::cout << (trend_csv ? r.to_csv() : r.to_json().dump(2) + "\n");
      return 0;
    }
    if (dcmd->parsed()) {
      const auto s = parse_domain(defect_domain);
      DefectCriteria c;
      if (!defect_thresholds.empty() || std::ifstream(Thresholds::default_path())) {
        c = Thresholds::load(thresholds_path_or_default(defect_thresholds)).defect;
      }
      std::vector<double> w = window_list(defect_windows).get<std::vector<double>>();
      const auto r = defect_residual(s, defect_seq.spec(), parse_rational_complex(defect_probe), w, c);
      std::cout << (defect_csv ? r.to_csv() : r.to_json().dump(2) + "\n");
      return 0;
    }
    if (acmd->parsed()) {
      if (a2_alpha || a2_beta) {
        if (!(a2_alpha && a2_beta)) throw ConfigError("--alpha and --beta go together");
        const auto c = a2_classify(*a2_alpha, *a2_beta, a2_tol);
        std::cout << json{{"alpha", *a2_alpha},
                          {"beta", *a2_beta},
                          {"difference", c.difference},
                          {"case", to_string(c.which)},
                          {"near_boundary", c.near_boundary}}
                         .dump(2)
                  << "\n";
        return 0;
      }
      const auto d = parse_rational(a2_delta);
      const auto fam = build_section52(d);
      const auto xs = log_grid();
      const auto wf = weight_samples([&](cplx z) { return fam.f.eval(z); }, fam.f.zeros(), xs);
      const auto wg = weight_samples([&](cplx z) { return fam.factorization.g.eval(z); }, fam.t(), xs);
      WeightReport wr;
      wr.name = fam.name;
      wr.alpha = exponent_fit(wf);
      wr.beta = exponent_fit(wg);
      wr.tol = a2_tol;
      wr.classification = a2_classify(wr.alpha.slope, wr.beta.slope, a2_tol);
      if (wr.classification.near_boundary) wr.warnings.push_back("difference within tol of a case boundary");
      if (!a2_csv.empty()) write_text_file(a2_csv, samples_to_csv(wf));
      std::cout << wr.to_json().dump(2) << "\n";
      return 0;
    }

    for (auto* sc : {ex1, s51, swp}) {
      if (!sc->parsed()) continue;
      const auto& f = flags[sc->get_name()];
      ExperimentConfig cfg;
      cfg.preset = sc->get_name();
      if (!f.config.empty()) cfg = ExperimentConfig::load(f.config, cfg);
      cfg.preset = sc->get_name();
      json over = json::object();
      if (!f.thresholds.empty()) over["thresholds_file"] = f.thresholds;
      if (!f.thresholds_version.empty()) over["thresholds_version"] = f.thresholds_version;
      if (!f.output.empty()) over["output_dir"] = f.output;
      if (f.seed) over["seed"] = *f.seed;
      if (f.workers) over["workers"] = *f.workers;
      if (!f.deltas.empty()) over["deltas"] = split(f.deltas, ',');
      if (!f.windows_e.empty()) over["windows"]["E"] = window_list(f.windows_e);
      if (!f.windows_glued.empty()) over["windows"]["glued"] = window_list(f.windows_glued);
      if (!f.windows_gap.empty()) over["windows"]["gap"] = window_list(f.windows_gap);
      if (!f.windows_full.empty()) over["windows"]["full"] = window_list(f.windows_full);
      if (!f.added.empty()) over["added_point"] = f.added;
      if (!f.removed.empty()) over["removed_point"] = f.removed;
      if (!f.h.empty()) over["h"] = json::parse(f.h);
      if (f.swap) over["swap"] = true;
      if (!f.swap_lambda.empty()) over["swap_lambda"] = f.swap_lambda;
      if (!f.swap_t.empty()) over["swap_t"] = f.swap_t;
      if (f.radius) over["condition_iii_radius"] = *f.radius;
      if (over.contains("windows")) {
        // keep window sets that were not given on the command line
        json base = cfg.to_json()["windows"];
        for (auto& [k, v] : over["windows"].items()) base[k] = v;
        over["windows"] = base;
      }
      cfg = ExperimentConfig::from_json(over, cfg);

      const auto th = Thresholds::load(cfg.thresholds_file);
      const auto report = run_experiment(cfg, th);
      std::cout << (f.json_out ? report.to_json().dump(2) + "\n" : report.table());
      if (!f.no_write) std::cerr << "report written to " << persist(report, cfg) << "\n";
      return report.all_expected() ? 0 : kExitMismatch;
    }
  } catch (const ConfigError& e) {
    std::cerr << "configuration error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const json::exception& e) {
    std::cerr << "configuration error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitMismatch;
  } catch (const std::filesystem::filesystem_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitMismatch;
  }
  return 0;
}
