#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "claimlattice/claim_graph.hpp"
#include "claimlattice/lattice.hpp"
#include "claimlattice/rational.hpp"

namespace claimlattice {

struct EvidenceSegment {
  int index = 0;
  std::string text;
};

/// Ordered, non-empty evidence segments; indices 0..m-1 in document order.
/// The index order is the canonical tie-break everywhere downstream.
class EvidenceSet {
 public:
  static EvidenceSet load(const std::string& json_bytes);
  static EvidenceSet from_json(const nlohmann::json& doc);
  explicit EvidenceSet(std::vector<EvidenceSegment> segments);

  const std::vector<EvidenceSegment>& segments() const { return segments_; }
  size_t size() const { return segments_.size(); }

 private:
  std::vector<EvidenceSegment> segments_;
};

/// Best-match scores for one construction: a complete, bounded map from
/// node id to basis points, with an optional witness segment per node.
struct ScoreTable {
  std::string construction_id;
  std::map<std::string, BasisPoints> scores;
  std::map<std::string, int> witness;

  static ScoreTable load(const std::string& json_bytes, const ClaimDag& dag);
  static ScoreTable from_json(const nlohmann::json& doc, const ClaimDag& dag);
  nlohmann::json to_json() const;

  const BasisPoints& at(const std::string& id) const;
  /// Throws IncompleteScores unless every DAG node has an entry.
  void require_complete(const ClaimDag& dag) const;
};

/// Per-node rows of per-segment match scores M(v, s).
struct ScoreMatrix {
  std::map<std::string, std::vector<BasisPoints>> rows;

  static ScoreMatrix from_json(const nlohmann::json& doc, size_t segment_count);
  bool has_row(const std::string& id) const { return rows.count(id) > 0; }
  const std::vector<BasisPoints>& row(const std::string& id) const;
};

/// TF-IDF lexical similarity over a shared corpus.
///
/// Tokenization: ASCII-lowercase, split on non-alphanumeric bytes, no
/// stemming. IDF uses the rational variant N - df + 1 (N = corpus document
/// count) rather than a logarithm, and the cosine is evaluated at basis-
/// point resolution with exact integer square-root bounds, so identical
/// inputs produce identical scores on every platform.
class TfIdfScorer {
 public:
  explicit TfIdfScorer(const std::vector<std::string>& corpus_docs);
  /// Builds the shared corpus from every claim node text plus every
  /// evidence segment text.
  TfIdfScorer(const ClaimDag& dag, const EvidenceSet& evidence);

  /// Cosine similarity in [0,1] at basis-point resolution. Symmetric;
  /// zero when either vector is empty or the texts share no vocabulary.
  Rational lexical_score(const std::string& t1, const std::string& t2) const;

 private:
  std::map<std::string, int> df_;
  int doc_count_ = 0;
};

/// discretize(alpha * lex + (1 - alpha) * sem). Both inputs must lie in
/// [0,1]; the result is bounded by construction.
BasisPoints fuse(const Rational& lex, const Rational& sem,
                 const Rational& alpha);

/// Lexical/semantic fusion configuration. Semantic scores are external
/// data keyed by (node id, segment index); the engine never computes them.
/// With no semantic table, alpha is forced to 1 (pure lexical).
class Matcher {
 public:
  Matcher(const TfIdfScorer& scorer, Rational alpha,
          std::map<std::pair<std::string, int>, Rational> semantic_scores = {});

  /// Fused score of one node against one segment.
  BasisPoints score(const ClaimNode& node, const EvidenceSegment& seg) const;
  const Rational& alpha() const { return alpha_; }

 private:
  const TfIdfScorer& scorer_;
  Rational alpha_;
  std::map<std::pair<std::string, int>, Rational> semantic_;
};

struct BestMatch {
  BasisPoints score;
  int witness = 0;  // lowest segment index attaining the maximum
};

/// Maximum fused score over all evidence segments, ties resolved to the
/// lowest segment index.
BestMatch best_match(const ClaimNode& node, const EvidenceSet& evidence,
                     const Matcher& matcher);

}  // namespace claimlattice
