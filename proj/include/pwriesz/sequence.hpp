#pragma once

#include <cstdint>
#include <limits>
#include <memory>
#include <string>
#include <vector>

#include <json.hpp>

#include "pwriesz/rational.hpp"

namespace pwriesz {

// Symbolic description of a discrete point set.
//
// Leaves are arithmetic progressions {offset + step*k : k >= first}
// (optionally symmetrized to +-(...)) and finite point lists; inner nodes are
// union and set difference. Values are immutable and cheap to copy (shared
// tree), so specs can be freely combined.
class SequenceSpec {
 public:
  // Empty set.
  SequenceSpec();

  static SequenceSpec progression(RationalComplex offset, Rational step, std::int64_t first = 0,
                                  bool symmetric = false);
  // offset + step*Z.
  static SequenceSpec lattice(RationalComplex offset, Rational step);
  static SequenceSpec points(std::vector<RationalComplex> pts);

  SequenceSpec unite(const SequenceSpec& other) const;
  SequenceSpec minus(const SequenceSpec& other) const;

  friend SequenceSpec operator|(const SequenceSpec& a, const SequenceSpec& b) { return a.unite(b); }
  friend SequenceSpec operator-(const SequenceSpec& a, const SequenceSpec& b) { return a.minus(b); }

  // Points with |Re| <= radius, sorted, exact duplicates removed.
  std::vector<RationalComplex> materialize(double radius) const;

  // Exact membership test (works on the infinite set, no window).
  bool contains(const RationalComplex& z) const;

  nlohmann::json to_json() const;
  static SequenceSpec from_json(const nlohmann::json& j);

  // Stable textual key, used for cache and report naming.
  std::string fingerprint() const { return to_json().dump(); }

  struct Node;

 private:
  explicit SequenceSpec(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

std::vector<std::complex<double>> to_complex(const std::vector<RationalComplex>& pts);

// Smallest distance between a point of `a` and a point of `b`, both
// materialized over [-radius, radius]. +infinity if either side is empty.
double separation(const SequenceSpec& a, const SequenceSpec& b, double radius);

}  // namespace pwriesz
