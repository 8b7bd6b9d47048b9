#pragma once

#include <array>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "claimlattice/certificate.hpp"
#include "claimlattice/claim_graph.hpp"
#include "claimlattice/coverage.hpp"
#include "claimlattice/propagation.hpp"
#include "claimlattice/scoring.hpp"

namespace claimlattice {

struct ScopeImplementation {
  std::string id;
  std::string text;
};

/// Scope regions for one amendment: the implementations covered before the
/// amendment and the narrower set covered after it. amend is always a
/// subset of orig; the difference is the surrendered territory.
struct AmendmentRegion {
  int k = 0;
  std::set<std::string> orig;
  std::set<std::string> amend;
};

/// Candidate implementations of one claim element, in a fixed order used
/// for projection tie-breaking, plus the per-amendment scope regions.
struct NodeScope {
  std::vector<ScopeImplementation> implementations;
  std::vector<AmendmentRegion> regions;

  const AmendmentRegion* region_for(int k) const;
};

enum class AmendmentReason { Patentability, S112, Other };

struct Amendment {
  std::string node;
  int k = 0;
  AmendmentReason reason = AmendmentReason::Patentability;
};

struct ArgumentDisclaimer {
  std::string node;
  std::set<std::string> disclaimed;  // implementation ids given up
};

struct Rebuttal {
  bool unforeseeable = false;
  bool tangential = false;
  bool alternative_justification = false;

  bool any() const {
    return unforeseeable || tangential || alternative_justification;
  }
};

/// Amendments, argument-based disclaimers, and per-(node, segment,
/// amendment) rebuttal findings. Absent rebuttal keys default to false —
/// the conservative direction. Amendments made for reasons outside
/// patentability and s112 admit no rebuttal at all, so any true rebuttal
/// attached to such an amendment is rejected at load.
struct ProsecutionHistory {
  std::vector<Amendment> amendments;
  std::vector<ArgumentDisclaimer> arguments;
  std::map<std::tuple<std::string, int, int>, Rebuttal> rebuttals;

  bool mentions(const std::string& node) const;
  bool rebutted(const std::string& node, int segment, int k) const;
};

struct DoeParams {
  BasisPoints theta_lit{7000};
  BasisPoints theta_eq{4500};
  BasisPoints theta_vit{0};  // 0 disables the vitiation check
  BasisPoints theta_prop{7000};
  Rational delta = Rational::from_int(1);

  void validate() const;
};

struct FwrScores {
  BasisPoints function;
  BasisPoints way;
  BasisPoints result;

  BasisPoints min() const {
    return meet(function, meet(way, result));
  }
};

/// Everything Algorithm-level DOE analysis consumes beyond the claim and
/// the score table. All similarity numbers are inputs; the engine only
/// applies threshold logic to them.
struct DoeContext {
  std::map<std::string, NodeScope> scope_spaces;
  ProsecutionHistory prosecution;
  // projection_scores[node][impl id][segment] — how strongly each evidence
  // segment resembles each candidate implementation.
  std::map<std::string, std::map<std::string, std::vector<BasisPoints>>>
      projection_scores;
  // fwr_scores[node][segment] — function/way/result prong scores.
  std::map<std::string, std::map<int, FwrScores>> fwr_scores;
  // Per-segment match scores for nodes that may enter equivalence
  // analysis; rows must be consistent with the score table's maxima.
  ScoreMatrix match_scores;
  DoeParams params;

  static DoeContext load(const std::string& json_bytes,
                         const EvidenceSet& evidence);
  static DoeContext from_json(const nlohmann::json& doc,
                              const EvidenceSet& evidence);
};

enum class MatchTag { Literal, Equivalent, NoMatch };

std::string to_string(MatchTag t);

struct NodeClassification {
  MatchTag tag = MatchTag::NoMatch;
  BasisPoints beta;
  std::set<int> estopped;                 // segment indices removed
  std::optional<int> witness;             // s*, when one was selected
  std::optional<BasisPoints> witness_score;  // M(v, s*)
  std::optional<FwrScores> fwr;
  bool vitiated = false;
  BasisPoints eff_phase1;  // before dependency enforcement
  BasisPoints eff_final;   // after Phase 2
  std::string note;
};

struct DoeResult {
  std::map<std::string, NodeClassification> classifications;
  EffTable eff;  // final DOE-adjusted effective scores at theta_prop
  CoverageValue w_doe;
  Certificate certificate;
};

/// Segments whose projected implementation falls in surrendered or
/// disclaimed scope. Empty when the prosecution history never mentions
/// the node.
std::set<int> estopped_region(const std::string& node_id,
                              const EvidenceSet& evidence,
                              const DoeContext& ctx);

/// Phase-1 classification of a single node (no dependency enforcement).
NodeClassification classify(const ClaimNode& node, const ScoreTable& scores,
                            const EvidenceSet& evidence, const DoeContext& ctx);

/// Full analysis: classify every node, enforce dependencies at theta_prop
/// in topological order (classifications are never altered by Phase 2,
/// only effective scores), and certify the resulting coverage.
DoeResult doe_analyze(const ClaimDag& dag, const ScoreTable& scores,
                      const EvidenceSet& evidence, const DoeContext& ctx);

}  // namespace claimlattice
