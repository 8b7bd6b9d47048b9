#pragma once

#include <map>
#include <string>

#include "claimlattice/claim_graph.hpp"
#include "claimlattice/lattice.hpp"
#include "claimlattice/scoring.hpp"

namespace claimlattice {

/// Effective scores under the threshold model. For every node the value is
/// either the raw best-match score or exactly zero; a node is zeroed iff
/// some dependency's effective score falls below theta.
struct EffTable {
  std::map<std::string, BasisPoints> eff;
  BasisPoints theta;

  const BasisPoints& at(const std::string& id) const;
};

/// Meet-based claim strength: the weakest score across the node and all of
/// its transitive dependencies.
struct StrengthTable {
  std::map<std::string, BasisPoints> strength;

  const BasisPoints& at(const std::string& id) const;
};

struct FixpointResult {
  EffTable eff;
  // Total passes executed, including the final pass that observes no
  // change. Bounded by depth + 2.
  int iterations = 0;
};

/// Single topological pass: eff(v) = score(v) when every dependency has
/// eff >= theta, else 0. Theta must be positive.
EffTable compute_eff(const ClaimDag& dag, const ScoreTable& scores,
                     BasisPoints theta);

/// Weakest-link recursion in topological order:
/// strength(v) = score(v) meet the strengths of all dependencies.
StrengthTable claim_strength(const ClaimDag& dag, const ScoreTable& scores);

/// Iterates the propagation step from bottom until two consecutive tables
/// agree. The least fixed point equals the compute_eff output; the pass
/// count is reported for the convergence-bound checks.
FixpointResult kleene_fixpoint(const ClaimDag& dag, const ScoreTable& scores,
                               BasisPoints theta);

}  // namespace claimlattice
