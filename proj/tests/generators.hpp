#pragma once

// Deterministic random-instance generators for the property suites. All
// tests seed their own mt19937 so failures reproduce exactly.

#include <random>
#include <string>
#include <vector>

#include <json.hpp>

#include "claimlattice/claim_graph.hpp"
#include "claimlattice/scoring.hpp"

namespace testgen {

using claimlattice::BasisPoints;
using claimlattice::ClaimDag;
using claimlattice::ScoreTable;

inline std::string random_type(std::mt19937& rng) {
  static const char* kTypes[] = {"preamble", "structural", "functional",
                                 "quantitative", "wherein", "coupling",
                                 "signal"};
  return kTypes[rng() % 7];
}

// Random DAG with 1..max_nodes nodes; each node depends on a random subset
// of earlier nodes, so acyclicity holds by construction.
inline ClaimDag random_dag(std::mt19937& rng, int max_nodes = 12,
                           bool random_weights = false) {
  std::uniform_int_distribution<int> node_count(1, max_nodes);
  int n = node_count(rng);
  nlohmann::json nodes = nlohmann::json::array();
  for (int i = 0; i < n; ++i) {
    nlohmann::json deps = nlohmann::json::array();
    for (int j = 0; j < i; ++j) {
      if (rng() % 3 == 0) deps.push_back("N" + std::to_string(j));
    }
    nodes.push_back({{"id", "N" + std::to_string(i)},
                     {"type", random_type(rng)},
                     {"text", "limitation " + std::to_string(i)},
                     {"deps", std::move(deps)}});
  }
  nlohmann::json doc{{"schema_version", 1}, {"nodes", std::move(nodes)}};
  if (random_weights) {
    // Positive decimals with two fractional digits in (0, 40].
    nlohmann::json weights = nlohmann::json::object();
    for (const char* t : {"preamble", "structural", "functional",
                          "quantitative", "wherein", "coupling", "signal"}) {
      int hundredths = 1 + int(rng() % 4000);
      weights[t] = std::to_string(hundredths / 100) + "." +
                   (hundredths % 100 < 10 ? "0" : "") +
                   std::to_string(hundredths % 100);
    }
    doc["weights"] = std::move(weights);
  }
  return ClaimDag::from_json(doc);
}

inline ScoreTable random_scores(std::mt19937& rng, const ClaimDag& dag) {
  ScoreTable t;
  t.construction_id = "random";
  std::uniform_int_distribution<int> bp(0, 10000);
  for (const auto& node : dag.nodes()) {
    t.scores.emplace(node.id, BasisPoints(bp(rng)));
  }
  return t;
}

// Second table pointwise >= the first, for monotonicity properties.
inline ScoreTable raise_scores(std::mt19937& rng, const ScoreTable& base) {
  ScoreTable t;
  t.construction_id = "raised";
  for (const auto& [id, s] : base.scores) {
    std::uniform_int_distribution<int> bp(s.value(), 10000);
    t.scores.emplace(id, BasisPoints(bp(rng)));
  }
  return t;
}

inline BasisPoints random_theta(std::mt19937& rng) {
  std::uniform_int_distribution<int> bp(1, 10000);
  return BasisPoints(bp(rng));
}

}  // namespace testgen
