#include "claimlattice/propagation.hpp"

namespace claimlattice {

const BasisPoints& EffTable::at(const std::string& id) const {
  auto it = eff.find(id);
  if (it == eff.end()) throw IncompleteEff("no effective score for '" + id + "'");
  return it->second;
}

const BasisPoints& StrengthTable::at(const std::string& id) const {
  auto it = strength.find(id);
  if (it == strength.end()) {
    throw IncompleteScores("no strength for '" + id + "'");
  }
  return it->second;
}

namespace {

void check_theta(BasisPoints theta) {
  if (theta == BasisPoints::bottom()) {
    throw OutOfRange("threshold must be positive");
  }
}

}  // namespace

EffTable compute_eff(const ClaimDag& dag, const ScoreTable& scores,
                     BasisPoints theta) {
  check_theta(theta);
  scores.require_complete(dag);
  EffTable out;
  out.theta = theta;
  for (const std::string& id : dag.topo_order()) {
    const ClaimNode& n = dag.node(id);
    bool deps_met = true;
    for (const std::string& u : n.deps) {
      if (out.eff.at(u) < theta) {
        deps_met = false;
        break;
      }
    }
    out.eff.emplace(id, deps_met ? scores.at(id) : BasisPoints::bottom());
  }
  return out;
}

StrengthTable claim_strength(const ClaimDag& dag, const ScoreTable& scores) {
  scores.require_complete(dag);
  StrengthTable out;
  for (const std::string& id : dag.topo_order()) {
    const ClaimNode& n = dag.node(id);
    BasisPoints acc = scores.at(id);
    for (const std::string& u : n.deps) {
      acc = meet(acc, out.strength.at(u));
    }
    out.strength.emplace(id, acc);
  }
  return out;
}

FixpointResult kleene_fixpoint(const ClaimDag& dag, const ScoreTable& scores,
                               BasisPoints theta) {
  check_theta(theta);
  scores.require_complete(dag);

  std::map<std::string, BasisPoints> prev;
  for (const ClaimNode& n : dag.nodes()) prev.emplace(n.id, BasisPoints::bottom());

  const int guard = int(dag.nodes().size()) + 2;
  int passes = 0;
  while (true) {
    if (passes >= guard) {
      // The bound is depth + 2 <= |V| + 1; exceeding |V| + 2 means the
      // propagation step itself is broken.
      throw IterationOverflow("fixed-point iteration exceeded |V| + 2 passes");
    }
    ++passes;
    std::map<std::string, BasisPoints> next;
    for (const ClaimNode& n : dag.nodes()) {
      bool deps_met = true;
      for (const std::string& u : n.deps) {
        if (prev.at(u) < theta) {
          deps_met = false;
          break;
        }
      }
      next.emplace(n.id, deps_met ? scores.at(n.id) : BasisPoints::bottom());
    }
    if (next == prev) break;
    prev = std::move(next);
  }

  FixpointResult res;
  res.eff.theta = theta;
  res.eff.eff = std::move(prev);
  res.iterations = passes;
  return res;
}

}  // namespace claimlattice
