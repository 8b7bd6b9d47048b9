#pragma once

#include <string>
#include <vector>

#include "claimlattice/claim_graph.hpp"
#include "claimlattice/propagation.hpp"
#include "claimlattice/rational.hpp"
#include "claimlattice/scoring.hpp"

namespace claimlattice {

/// A coverage percentage held as an exact rational in [0,100]. Rounding to
/// one decimal place happens only in display().
struct CoverageValue {
  Rational value;

  std::string display() const { return value.to_decimal(1); }
};

struct WaterfallRow {
  enum class Kind { Direct, Cascade };
  std::string node;
  Kind kind = Kind::Direct;
  Rational delta_pp;  // positive = coverage lost moving base -> alt

  std::string display_pp() const { return delta_pp.to_decimal(3); }
  const char* kind_name() const {
    return kind == Kind::Direct ? "direct" : "cascade";
  }
};

/// Per-node decomposition of a coverage gap between two constructions.
/// The rows sum exactly (as rationals) to coverage(base) - coverage(alt):
/// the direct component of a node is its weighted raw-score drop under the
/// counterfactual that its dependencies stayed met, and the cascade
/// component is the remaining effective-score loss caused by zeroing.
struct WaterfallReport {
  std::vector<WaterfallRow> rows;
  Rational total_pp;
  CoverageValue coverage_base;
  CoverageValue coverage_alt;
};

/// Weight-normalized average of effective scores, times 100.
CoverageValue weighted_coverage(const ClaimDag& dag, const EffTable& eff);

/// Unweighted mean of the raw best-match scores, times 100.
CoverageValue flat_coverage(const ScoreTable& scores);

WaterfallReport waterfall(const ClaimDag& dag, const ScoreTable& base,
                          const ScoreTable& alt, BasisPoints theta);

}  // namespace claimlattice
