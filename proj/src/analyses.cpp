#include "claimlattice/analyses.hpp"

#include <algorithm>
#include <cctype>

#include "claimlattice/propagation.hpp"

namespace claimlattice {

namespace {

// Walks from the node down its weakest dependency at each step. The chain
// shows which upstream scores cap this node.
std::vector<std::string> constraining_path(const ClaimDag& dag,
                                           const ScoreTable& scores,
                                           const std::string& start) {
  std::vector<std::string> path{start};
  const ClaimNode* cur = &dag.node(start);
  while (!cur->deps.empty()) {
    const std::string* weakest = &cur->deps.front();
    for (const std::string& d : cur->deps) {
      if (scores.at(d) < scores.at(*weakest)) weakest = &d;
    }
    path.push_back(*weakest);
    cur = &dag.node(*weakest);
  }
  return path;
}

}  // namespace

FtoResult fto(const ClaimDag& dag, const ScoreTable& scores, BasisPoints theta) {
  scores.require_complete(dag);
  // Per-element impossibility: the first below-threshold node in input
  // order already rules out every assignment.
  for (const ClaimNode& n : dag.nodes()) {
    if (scores.at(n.id) < theta) {
      FtoClear clear;
      clear.node = n.id;
      clear.beta = scores.at(n.id);
      clear.theta = theta;
      clear.certificate = generate_certificate(dag, scores, theta);
      return clear;
    }
  }
  FtoRisk risk;
  for (const ClaimNode& n : dag.nodes()) {
    FtoGapEntry e;
    e.node = n.id;
    e.beta = scores.at(n.id);
    e.margin_bp = e.beta.value() - theta.value();
    e.constraining_path = constraining_path(dag, scores, n.id);
    risk.gap.push_back(std::move(e));
  }
  std::stable_sort(risk.gap.begin(), risk.gap.end(),
                   [](const FtoGapEntry& a, const FtoGapEntry& b) {
                     return a.margin_bp < b.margin_bp;
                   });
  return risk;
}

namespace {

ConstructionOutcome evaluate_construction(const ClaimDag& dag,
                                          const ScoreTable& table,
                                          BasisPoints theta,
                                          const Rational& threshold_cov,
                                          const std::string& id,
                                          bool with_certificate) {
  EffTable eff = compute_eff(dag, table, theta);
  ConstructionOutcome out;
  out.id = id;
  out.coverage = weighted_coverage(dag, eff);
  out.satisfied = out.coverage.value >= threshold_cov;
  for (const auto& [node, bp] : eff.eff) {
    if (bp >= theta) out.scope_size += 1;
  }
  if (with_certificate) out.certificate = generate_certificate(dag, table, theta);
  return out;
}

}  // namespace

SensitivityReport sensitivity(
    const ClaimDag& dag, const ScoreTable& base,
    const std::vector<ScoreTable>& alts,
    const std::map<std::string, std::map<std::string, BasisPoints>>&
        term_perturbations,
    BasisPoints theta, const Rational& threshold_cov) {
  base.require_complete(dag);
  for (const ScoreTable& t : alts) t.require_complete(dag);

  const std::set<std::string> claim_terms = dag.terms();
  for (const auto& [term, overrides] : term_perturbations) {
    if (overrides.empty()) {
      throw UnknownTerm("perturbation for '" + term + "' overrides no nodes");
    }
    for (const auto& [node, bp] : overrides) {
      if (!dag.contains(node)) {
        throw UnknownNode("perturbation for '" + term +
                          "' targets unknown node '" + node + "'");
      }
    }
    // When the claim carries annotations, a perturbed term must be one of
    // them and may only touch nodes annotated with it.
    if (!claim_terms.empty()) {
      if (!claim_terms.count(term)) {
        throw UnknownTerm("term '" + term + "' does not appear in the claim");
      }
      for (const auto& [node, bp] : overrides) {
        const ClaimNode& n = dag.node(node);
        if (!std::binary_search(n.ann.begin(), n.ann.end(), term)) {
          throw UnknownTerm("node '" + node + "' is not annotated with term '" +
                            term + "'");
        }
      }
    }
  }

  SensitivityReport report;
  std::string base_id = base.construction_id.empty() ? "I1" : base.construction_id;
  report.constructions.push_back(
      evaluate_construction(dag, base, theta, threshold_cov, base_id, true));
  const bool base_satisfied = report.constructions.front().satisfied;
  for (size_t j = 0; j < alts.size(); ++j) {
    std::string id = alts[j].construction_id.empty()
                         ? "I" + std::to_string(j + 2)
                         : alts[j].construction_id;
    report.constructions.push_back(
        evaluate_construction(dag, alts[j], theta, threshold_cov, id, true));
  }

  // Single-term perturbations of the base table, one term at a time.
  for (const auto& [term, overrides] : term_perturbations) {
    ScoreTable perturbed = base;
    perturbed.construction_id = base_id + "+" + term;
    for (const auto& [node, bp] : overrides) {
      BasisPoints before = base.at(node);
      if (bp > before) {
        report.monotonicity_flags.push_back({term, node, before, bp});
      }
      perturbed.scores[node] = bp;
      perturbed.witness.erase(node);
    }
    ConstructionOutcome out =
        evaluate_construction(dag, perturbed, theta, threshold_cov, term, false);
    report.perturbation_coverage.emplace(term, out.coverage);
    if (out.satisfied != base_satisfied) {
      report.determinative.push_back(term);
    }
  }
  std::sort(report.determinative.begin(), report.determinative.end());

  // Breakers: nodes a construction pushes below threshold relative to base.
  EffTable eff_base = compute_eff(dag, base, theta);
  for (size_t j = 0; j < alts.size(); ++j) {
    const ConstructionOutcome& out = report.constructions[j + 1];
    if (out.satisfied) continue;
    EffTable eff_j = compute_eff(dag, alts[j], theta);
    std::vector<std::string> nodes;
    for (const ClaimNode& n : dag.nodes()) {
      if (eff_j.at(n.id) < theta && eff_base.at(n.id) >= theta) {
        nodes.push_back(n.id);
      }
    }
    report.breakers.emplace(out.id, std::move(nodes));
  }

  // Threshold construction: smallest satisfied scope, ties to lowest index.
  const ConstructionOutcome* best = nullptr;
  for (const ConstructionOutcome& c : report.constructions) {
    if (!c.satisfied) continue;
    if (!best || c.scope_size < best->scope_size) best = &c;
  }
  if (best) report.threshold_construction = best->id;
  return report;
}

std::string normalize_interpretation(const std::string& s) {
  std::string out;
  bool pending_space = false;
  for (unsigned char c : s) {
    if (std::isspace(c)) {
      if (!out.empty()) pending_space = true;
    } else {
      if (pending_space) {
        out.push_back(' ');
        pending_space = false;
      }
      out.push_back(char(std::tolower(c)));
    }
  }
  return out;
}

ConsistencyResult consistency(const std::vector<PortfolioEntry>& portfolio,
                              const std::set<std::string>& vocabulary) {
  // Preconditions: every term a claim uses must carry an interpretation.
  for (const PortfolioEntry& p : portfolio) {
    for (const std::string& t : p.dag.terms()) {
      if (!p.interpretations.count(t)) {
        throw MissingInterpretation("portfolio entry '" + p.label +
                                    "' has no interpretation for term '" + t +
                                    "'");
      }
    }
  }

  std::set<std::string> terms = vocabulary;
  if (terms.empty()) {
    for (const PortfolioEntry& p : portfolio) {
      auto t = p.dag.terms();
      terms.insert(t.begin(), t.end());
    }
  }

  Consistent ledger;
  for (const std::string& term : terms) {  // lexicographic by std::set
    std::vector<size_t> users;
    for (size_t i = 0; i < portfolio.size(); ++i) {
      if (portfolio[i].dag.terms().count(term)) users.push_back(i);
    }
    for (size_t a = 0; a < users.size(); ++a) {
      for (size_t b = a + 1; b < users.size(); ++b) {
        const PortfolioEntry& pi = portfolio[users[a]];
        const PortfolioEntry& pj = portfolio[users[b]];
        const std::string& raw_i = pi.interpretations.at(term);
        const std::string& raw_j = pj.interpretations.at(term);
        if (normalize_interpretation(raw_i) != normalize_interpretation(raw_j)) {
          return Inconsistent{pi.label, pj.label, term, raw_i, raw_j};
        }
        ledger.checked.push_back({term, pi.label, pj.label});
      }
    }
  }
  return ledger;
}

}  // namespace claimlattice
