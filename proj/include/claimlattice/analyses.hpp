#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "claimlattice/certificate.hpp"
#include "claimlattice/claim_graph.hpp"
#include "claimlattice/coverage.hpp"

namespace claimlattice {

/// Freedom-to-operate: a Clear result carries the first node whose best
/// match falls below threshold, plus a verifiable coverage certificate for
/// the analyzed table. Clear means no evidence assignment can satisfy
/// every limitation at the threshold.
struct FtoClear {
  std::string node;
  BasisPoints beta;
  BasisPoints theta;
  Certificate certificate;
};

struct FtoGapEntry {
  std::string node;
  BasisPoints beta;
  int margin_bp = 0;  // beta - theta, >= 0 in a Risk result
  // Dependency chain from the node down through its weakest ancestors;
  // diagnostic only, never part of a certificate.
  std::vector<std::string> constraining_path;
};

/// Risk is not an infringement finding: it records only that per-element
/// impossibility could not be established. The gap entries rank nodes by
/// ascending margin above threshold.
struct FtoRisk {
  std::vector<FtoGapEntry> gap;
};

using FtoResult = std::variant<FtoClear, FtoRisk>;

FtoResult fto(const ClaimDag& dag, const ScoreTable& scores, BasisPoints theta);

struct ConstructionOutcome {
  std::string id;
  CoverageValue coverage;
  bool satisfied = false;
  int scope_size = 0;  // |{v : eff(v) >= theta}|
  // Coverage certificate for this construction's table; the sensitivity
  // verdicts themselves are uncertified diagnostics.
  Certificate certificate;
};

struct MonotonicityFlag {
  std::string term;
  std::string node;
  BasisPoints base;
  BasisPoints perturbed;  // perturbed > base: the audit caught an increase
};

struct SensitivityReport {
  std::vector<ConstructionOutcome> constructions;  // base first, then alts
  std::vector<std::string> determinative;          // sorted term names
  std::map<std::string, CoverageValue> perturbation_coverage;  // per term
  std::map<std::string, std::vector<std::string>> breakers;  // per unsatisfied id
  std::optional<std::string> threshold_construction;  // nullopt = none satisfied
  std::vector<MonotonicityFlag> monotonicity_flags;
};

/// Evaluates every construction and every single-term perturbation of the
/// base table. A term is determinative iff its perturbation alone flips
/// the satisfaction outcome of the base construction. Perturbations are
/// partial score overrides keyed by node id; the nodes must carry the term
/// in their annotations when the claim declares any.
SensitivityReport sensitivity(
    const ClaimDag& dag, const ScoreTable& base,
    const std::vector<ScoreTable>& alts,
    const std::map<std::string, std::map<std::string, BasisPoints>>&
        term_perturbations,
    BasisPoints theta, const Rational& threshold_cov);

struct PortfolioEntry {
  std::string label;
  ClaimDag dag;
  std::map<std::string, std::string> interpretations;
};

struct CheckedPair {
  std::string term;
  std::string first;
  std::string second;
};

struct Consistent {
  std::vector<CheckedPair> checked;
};

struct Inconsistent {
  std::string first;
  std::string second;
  std::string term;
  std::string interpretation_first;
  std::string interpretation_second;
};

using ConsistencyResult = std::variant<Consistent, Inconsistent>;

/// Exhaustive pairwise check of every shared term, terms in lexicographic
/// order and pairs by portfolio index. Interpretations compare as
/// normalized strings (trimmed, whitespace collapsed, ASCII-lowercased);
/// the first mismatch is returned.
ConsistencyResult consistency(const std::vector<PortfolioEntry>& portfolio,
                              const std::set<std::string>& vocabulary);

/// Trim + collapse internal whitespace runs + ASCII casefold.
std::string normalize_interpretation(const std::string& s);

}  // namespace claimlattice
