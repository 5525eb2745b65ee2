// Produces config/thresholds.json: every eig_min floor is half the smallest
// eig_min seen at radius R over the reference sequences of that domain.
#include <CLI11.hpp>

#include <iostream>

#include "pwriesz/division.hpp"
#include "pwriesz/errors.hpp"
#include "pwriesz/io.hpp"
#include "pwriesz/riesz.hpp"
#include "pwriesz/thresholds.hpp"

using namespace pwriesz;
using json = nlohmann::json;

namespace {

struct Reference {
  std::string name;
  SequenceSpec spec;
};

double section_eig_min(const IntervalUnion& domain, const SequenceSpec& spec, double radius) {
  return gram(domain, to_complex(spec.materialize(radius))).eig_min;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Recompute the frozen diagnostic floors"};
  std::string out = Thresholds::default_path();
  double radius = 400.0;
  double factor = 0.5;
  app.add_option("-o,--output", out, "thresholds file to write");
  app.add_option("-R,--radius", radius, "section radius used for calibration");
  app.add_option("--factor", factor, "floor = factor * min eig_min");
  CLI11_PARSE(app, argc, argv);

  try {
    const auto f_minus = build_section52(Rational(1, 8));
    const auto f_plus = build_section52(Rational(-1, 8));
    const auto f_zero = build_section52(Rational(1, 12));
    const auto f51 = build_section51(FactorSpec::sine(Rational(1, 4), Rational(1)));
    const std::vector<const Family*> fams = {&f_minus, &f_plus, &f_zero, &f51};

    const IntervalUnion e = f_minus.domain;
    const auto g = glue(e);
    const auto gi = gap(e);
    const auto pt = SequenceSpec::points({Rational(1, 5)});
    const auto origin = SequenceSpec::points({Rational(0)});

    std::map<std::string, std::pair<IntervalUnion, std::vector<Reference>>> domains = {
        {"E", {e, {}}},
        {"glued", {IntervalUnion::single(g.lo, g.hi), {}}},
        {"gap", {IntervalUnion::single(gi.lo, gi.hi), {}}},
        {"full", {IntervalUnion::symmetric(kPi), {}}},
    };
    for (const auto* f : fams) {
      domains.at("E").second.push_back({f->name + " lambda", f->lambda()});
      domains.at("gap").second.push_back({f->name + " T", f->t()});
      domains.at("full").second.push_back({f->name + " lambda+T", f->lambda() | f->t()});
    }
    domains.at("glued").second.push_back({f_plus.name + " lambda minus 0", f_plus.lambda() - origin});
    domains.at("glued").second.push_back({f_minus.name + " lambda plus 1/5", f_minus.lambda() | pt});

    Thresholds th;
    th.version = "r" + format_number(radius) + "-f" + format_number(factor);
    json cal = {{"radius", radius}, {"factor", factor}, {"rule", "floor = factor * min eig_min over references"}};
    for (auto& [key, entry] : domains) {
      double lo = std::numeric_limits<double>::infinity();
      json refs = json::array();
      for (const auto& r : entry.second) {
        const double v = section_eig_min(entry.first, r.spec, radius);
        std::cerr << key << "  " << r.name << "  eig_min = " << format_number(v) << "\n";
        refs.push_back({{"name", r.name}, {"eig_min", v}});
        lo = std::min(lo, v);
      }
      th.floors[key] = factor * lo;
      cal["references"][key] = refs;
    }
    double lo = std::numeric_limits<double>::infinity();
    json refs = json::array();
    for (const auto* f : fams) {
      const double v = condition_iii_inf(*f, radius).inf_weighted;
      std::cerr << "condition_iii  " << f->name << "  inf = " << format_number(v) << "\n";
      refs.push_back({{"name", f->name}, {"inf_weighted", v}});
      lo = std::min(lo, v);
    }
    th.condition_iii_floor = factor * lo;
    cal["references"]["condition_iii"] = refs;
    th.calibration = cal;

    write_text_file(out, th.to_json().dump(2) + "\n");
    std::cout << out << "\n";
  } catch (const Error& e) {
    std::cerr << "calibrate: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
