#include "claimlattice/coverage.hpp"

namespace claimlattice {

namespace {

const Rational kHundred = Rational::from_int(100);

}  // namespace

CoverageValue weighted_coverage(const ClaimDag& dag, const EffTable& eff) {
  Rational achieved;
  for (const ClaimNode& n : dag.nodes()) {
    achieved += dag.weight_of(n.id) * eff.at(n.id).as_fraction();
  }
  Rational value = achieved / dag.total_weight() * kHundred;
  // coverage_in_range: a weighted average of values in [0,1] scaled by 100.
  if (value.is_negative() || value > kHundred) {
    throw Error("Internal", "coverage escaped [0,100]: " +
                                value.to_fraction_string());
  }
  return CoverageValue{value};
}

CoverageValue flat_coverage(const ScoreTable& scores) {
  if (scores.scores.empty()) throw EmptyInput("flat coverage of empty table");
  Rational sum;
  for (const auto& [id, bp] : scores.scores) sum += bp.as_fraction();
  Rational value = sum / Rational::from_int(Int128(scores.scores.size())) * kHundred;
  return CoverageValue{value};
}

WaterfallReport waterfall(const ClaimDag& dag, const ScoreTable& base,
                          const ScoreTable& alt, BasisPoints theta) {
  base.require_complete(dag);
  alt.require_complete(dag);

  EffTable eff_base = compute_eff(dag, base, theta);
  EffTable eff_alt = compute_eff(dag, alt, theta);

  WaterfallReport report;
  report.coverage_base = weighted_coverage(dag, eff_base);
  report.coverage_alt = weighted_coverage(dag, eff_alt);

  const Rational total_weight = dag.total_weight();
  for (const ClaimNode& n : dag.nodes()) {
    const Rational w = dag.weight_of(n.id);
    Rational d_beta = base.at(n.id).as_fraction() - alt.at(n.id).as_fraction();
    Rational d_eff =
        eff_base.at(n.id).as_fraction() - eff_alt.at(n.id).as_fraction();
    Rational direct = w * d_beta / total_weight * kHundred;
    Rational cascade = w * (d_eff - d_beta) / total_weight * kHundred;
    if (!direct.is_zero()) {
      report.rows.push_back({n.id, WaterfallRow::Kind::Direct, direct});
      report.total_pp += direct;
    }
    if (!cascade.is_zero()) {
      report.rows.push_back({n.id, WaterfallRow::Kind::Cascade, cascade});
      report.total_pp += cascade;
    }
  }
  // Exactness check: rows account for the whole gap, to the last rational.
  Rational gap = report.coverage_base.value - report.coverage_alt.value;
  if (report.total_pp != gap) {
    throw Error("Internal", "waterfall rows do not sum to the coverage gap");
  }
  return report;
}

}  // namespace claimlattice
