#include "pwriesz/sequence.hpp"

#include <algorithm>
#include <cmath>
#include <iterator>
#include <variant>

#include "pwriesz/errors.hpp"

namespace pwriesz {

namespace {

struct Empty {};

struct Progression {
  RationalComplex offset;
  Rational step;
  std::int64_t first = 0;
  bool symmetric = false;
};

struct Points {
  std::vector<RationalComplex> pts;
};

struct UnionOf {
  std::vector<std::shared_ptr<const SequenceSpec::Node>> parts;
};

struct Difference {
  std::shared_ptr<const SequenceSpec::Node> keep;
  std::shared_ptr<const SequenceSpec::Node> drop;
};

// Guard against windows that would materialize an absurd number of points.
constexpr double kMaxTermsPerProgression = 5e7;

void sort_unique(std::vector<RationalComplex>& v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
}

bool in_window(const RationalComplex& z, double radius) { return std::abs(to_double(z.re)) <= radius; }

}  // namespace

struct SequenceSpec::Node {
  std::variant<Empty, Progression, Points, UnionOf, Difference> v;
};

namespace {

using NodePtr = std::shared_ptr<const SequenceSpec::Node>;

std::vector<RationalComplex> materialize_node(const SequenceSpec::Node& node, double radius);

std::vector<RationalComplex> materialize_progression(const Progression& p, double radius) {
  std::vector<RationalComplex> out;
  const double off = to_double(p.offset.re);
  const double step = to_double(p.step);
  double lo_k = (-radius - off) / step;
  double hi_k = (radius - off) / step;
  if (lo_k > hi_k) std::swap(lo_k, hi_k);
  lo_k = std::max(std::floor(lo_k) - 1.0, static_cast<double>(p.first));
  hi_k = std::ceil(hi_k) + 1.0;
  if (hi_k < lo_k) return out;
  if (hi_k - lo_k > kMaxTermsPerProgression) throw DomainError("materialization window too large");
  for (auto k = static_cast<std::int64_t>(lo_k); k <= static_cast<std::int64_t>(hi_k); ++k) {
    const RationalComplex z = p.offset + RationalComplex(p.step * Rational(k));
    if (in_window(z, radius)) {
      out.push_back(z);
      if (p.symmetric) out.push_back(-z);
    }
  }
  sort_unique(out);
  return out;
}

std::vector<RationalComplex> materialize_node(const SequenceSpec::Node& node, double radius) {
  return std::visit(
      [radius](const auto& n) -> std::vector<RationalComplex> {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, Empty>) {
          return {};
        } else if constexpr (std::is_same_v<T, Progression>) {
          return materialize_progression(n, radius);
        } else if constexpr (std::is_same_v<T, Points>) {
          std::vector<RationalComplex> out;
          std::copy_if(n.pts.begin(), n.pts.end(), std::back_inserter(out),
                       [radius](const RationalComplex& z) { return in_window(z, radius); });
          sort_unique(out);
          return out;
        } else if constexpr (std::is_same_v<T, UnionOf>) {
          std::vector<RationalComplex> acc;
          for (const auto& part : n.parts) {
            auto pts = materialize_node(*part, radius);
            std::vector<RationalComplex> merged;
            merged.reserve(acc.size() + pts.size());
            std::set_union(acc.begin(), acc.end(), pts.begin(), pts.end(), std::back_inserter(merged));
            acc = std::move(merged);
          }
          return acc;
        } else {
          const auto keep = materialize_node(*n.keep, radius);
          const auto drop = materialize_node(*n.drop, radius);
          std::vector<RationalComplex> out;
          std::set_difference(keep.begin(), keep.end(), drop.begin(), drop.end(), std::back_inserter(out));
          return out;
        }
      },
      node.v);
}

bool progression_contains(const Progression& p, const RationalComplex& z) {
  auto hit = [&p](const RationalComplex& w) {
    const RationalComplex d = w - p.offset;
    if (d.im.numerator() != 0) return false;
    const Rational k = d.re / p.step;
    return k.denominator() == 1 && k.numerator() >= p.first;
  };
  return hit(z) || (p.symmetric && hit(-z));
}

bool node_contains(const SequenceSpec::Node& node, const RationalComplex& z) {
  return std::visit(
      [&z](const auto& n) -> bool {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, Empty>) {
          return false;
        } else if constexpr (std::is_same_v<T, Progression>) {
          return progression_contains(n, z);
        } else if constexpr (std::is_same_v<T, Points>) {
          return std::find(n.pts.begin(), n.pts.end(), z) != n.pts.end();
        } else if constexpr (std::is_same_v<T, UnionOf>) {
          return std::any_of(n.parts.begin(), n.parts.end(),
                             [&z](const NodePtr& part) { return node_contains(*part, z); });
        } else {
          return node_contains(*n.keep, z) && !node_contains(*n.drop, z);
        }
      },
      node.v);
}

nlohmann::json complex_to_json(const RationalComplex& z) { return to_string(z); }

RationalComplex complex_from_json(const nlohmann::json& j) {
  if (j.is_string()) return parse_rational_complex(j.get<std::string>());
  if (j.is_number_integer()) return RationalComplex(j.get<std::int64_t>());
  if (j.is_object()) {
    return {parse_rational(j.at("re").get<std::string>()),
            j.contains("im") ? parse_rational(j.at("im").get<std::string>()) : Rational{0}};
  }
  throw ConfigError("points must be rational strings such as \"-2/3\"");
}

Rational rational_from_json(const nlohmann::json& j) {
  if (j.is_string()) return parse_rational(j.get<std::string>());
  if (j.is_number_integer()) return Rational(j.get<std::int64_t>());
  throw ConfigError("expected a rational written as a \"p/q\" string");
}

nlohmann::json node_to_json(const SequenceSpec::Node& node) {
  return std::visit(
      [](const auto& n) -> nlohmann::json {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, Empty>) {
          return {{"points", nlohmann::json::array()}};
        } else if constexpr (std::is_same_v<T, Progression>) {
          return {{"progression",
                   {{"offset", complex_to_json(n.offset)},
                    {"step", to_string(n.step)},
                    {"first", n.first},
                    {"symmetric", n.symmetric}}}};
        } else if constexpr (std::is_same_v<T, Points>) {
          auto arr = nlohmann::json::array();
          for (const auto& z : n.pts) arr.push_back(complex_to_json(z));
          return {{"points", arr}};
        } else if constexpr (std::is_same_v<T, UnionOf>) {
          auto arr = nlohmann::json::array();
          for (const auto& part : n.parts) arr.push_back(node_to_json(*part));
          return {{"union", arr}};
        } else {
          return {{"difference", {node_to_json(*n.keep), node_to_json(*n.drop)}}};
        }
      },
      node.v);
}

}  // namespace

SequenceSpec::SequenceSpec() : node_(std::make_shared<Node>(Node{Empty{}})) {}

SequenceSpec SequenceSpec::progression(RationalComplex offset, Rational step, std::int64_t first, bool symmetric) {
  if (step.numerator() == 0) throw DomainError("progression step must be nonzero");
  return SequenceSpec(std::make_shared<Node>(Node{Progression{offset, step, first, symmetric}}));
}

SequenceSpec SequenceSpec::lattice(RationalComplex offset, Rational step) {
  return progression(offset, step, 0) | progression(offset, -step, 1);
}

SequenceSpec SequenceSpec::points(std::vector<RationalComplex> pts) {
  return SequenceSpec(std::make_shared<Node>(Node{Points{std::move(pts)}}));
}

SequenceSpec SequenceSpec::unite(const SequenceSpec& other) const {
  UnionOf u;
  for (const auto* side : {this, &other}) {
    if (const auto* inner = std::get_if<UnionOf>(&side->node_->v)) {
      u.parts.insert(u.parts.end(), inner->parts.begin(), inner->parts.end());
    } else if (!std::holds_alternative<Empty>(side->node_->v)) {
      u.parts.push_back(side->node_);
    }
  }
  return SequenceSpec(std::make_shared<Node>(Node{std::move(u)}));
}

SequenceSpec SequenceSpec::minus(const SequenceSpec& other) const {
  return SequenceSpec(std::make_shared<Node>(Node{Difference{node_, other.node_}}));
}

std::vector<RationalComplex> SequenceSpec::materialize(double radius) const {
  if (!(radius >= 0.0) || !std::isfinite(radius)) throw DomainError("window radius must be finite and >= 0");
  return materialize_node(*node_, radius);
}

bool SequenceSpec::contains(const RationalComplex& z) const { return node_contains(*node_, z); }

nlohmann::json SequenceSpec::to_json() const { return node_to_json(*node_); }

SequenceSpec SequenceSpec::from_json(const nlohmann::json& j) {
  if (!j.is_object() || j.size() != 1) throw ConfigError("sequence node must be an object with one key");
  const auto& [key, body] = *j.items().begin();
  if (key == "points") {
    std::vector<RationalComplex> pts;
    for (const auto& p : body) pts.push_back(complex_from_json(p));
    return points(std::move(pts));
  }
  if (key == "progression") {
    return progression(complex_from_json(body.value("offset", nlohmann::json("0"))),
                       rational_from_json(body.at("step")), body.value("first", std::int64_t{0}),
                       body.value("symmetric", false));
  }
  if (key == "lattice") {
    return lattice(complex_from_json(body.value("offset", nlohmann::json("0"))), rational_from_json(body.at("step")));
  }
  if (key == "union") {
    SequenceSpec acc;
    for (const auto& part : body) acc = acc | from_json(part);
    return acc;
  }
  if (key == "difference") {
    if (!body.is_array() || body.size() != 2) throw ConfigError("difference takes exactly two operands");
    return from_json(body[0]) - from_json(body[1]);
  }
  throw ConfigError("unknown sequence node '" + key + "'");
}

std::vector<std::complex<double>> to_complex(const std::vector<RationalComplex>& pts) {
  std::vector<std::complex<double>> out;
  out.reserve(pts.size());
  for (const auto& p : pts) out.push_back(p.value());
  return out;
}

double separation(const SequenceSpec& a, const SequenceSpec& b, double radius) {
  const auto pa = to_complex(a.materialize(radius));
  const auto pb = to_complex(b.materialize(radius));
  double best = std::numeric_limits<double>::infinity();
  if (pa.empty() || pb.empty()) return best;
  // pb is sorted by real part (materialize order), so scan outwards from the
  // insertion point until the real-part gap alone exceeds the current best.
  for (const auto& z : pa) {
    const auto it = std::lower_bound(pb.begin(), pb.end(), z.real(),
                                     [](const std::complex<double>& w, double x) { return w.real() < x; });
    for (auto r = it; r != pb.end() && r->real() - z.real() < best; ++r) best = std::min(best, std::abs(*r - z));
    for (auto l = it; l != pb.begin();) {
      --l;
      if (z.real() - l->real() >= best) break;
      best = std::min(best, std::abs(*l - z));
    }
  }
  return best;
}

}  // namespace pwriesz
