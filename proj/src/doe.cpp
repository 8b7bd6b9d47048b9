#include "claimlattice/doe.hpp"

#include <algorithm>

namespace claimlattice {

using nlohmann::json;

const AmendmentRegion* NodeScope::region_for(int k) const {
  for (const AmendmentRegion& r : regions) {
    if (r.k == k) return &r;
  }
  return nullptr;
}

bool ProsecutionHistory::mentions(const std::string& node) const {
  for (const Amendment& a : amendments) {
    if (a.node == node) return true;
  }
  for (const ArgumentDisclaimer& d : arguments) {
    if (d.node == node) return true;
  }
  return false;
}

bool ProsecutionHistory::rebutted(const std::string& node, int segment,
                                  int k) const {
  auto it = rebuttals.find({node, segment, k});
  return it != rebuttals.end() && it->second.any();
}

void DoeParams::validate() const {
  if (!(BasisPoints::bottom() < theta_eq && theta_eq < theta_lit)) {
    throw InvalidInput("DOE thresholds require 0 < theta_eq < theta_lit");
  }
  if (!(theta_vit < theta_eq)) {
    throw InvalidInput("vitiation threshold must satisfy theta_vit < theta_eq");
  }
  if (theta_prop != theta_lit && theta_prop != theta_eq) {
    throw InvalidInput("theta_prop must equal theta_lit or theta_eq");
  }
  if (!(delta > Rational()) || delta > Rational::from_int(1)) {
    throw InvalidInput("delta must lie in (0,1]");
  }
}

namespace {

BasisPoints read_bp(const json& j, const std::string& ctx) {
  if (!j.is_number_integer()) {
    throw SchemaError(ctx + " must be an integer 0..10000");
  }
  long long v = j.get<long long>();
  if (v < 0 || v > 10000) throw OutOfRange(ctx + " outside 0..10000");
  return BasisPoints(int(v));
}

AmendmentReason reason_from_string(const std::string& s) {
  if (s == "patentability") return AmendmentReason::Patentability;
  if (s == "s112") return AmendmentReason::S112;
  if (s == "other") return AmendmentReason::Other;
  throw SchemaError("unknown amendment reason '" + s + "'");
}

}  // namespace

DoeContext DoeContext::load(const std::string& json_bytes,
                            const EvidenceSet& evidence) {
  json doc = json::parse(json_bytes, nullptr, false);
  if (doc.is_discarded()) throw SchemaError("DOE context is not valid JSON");
  return from_json(doc, evidence);
}

DoeContext DoeContext::from_json(const json& doc, const EvidenceSet& evidence) {
  if (!doc.is_object()) throw SchemaError("DOE context must be a JSON object");
  if (!doc.contains("schema_version") ||
      !doc["schema_version"].is_number_integer() ||
      doc["schema_version"].get<int>() != 1) {
    throw SchemaError("DOE context needs schema_version = 1");
  }
  DoeContext ctx;
  const size_t m = evidence.size();

  if (doc.contains("params")) {
    const json& p = doc["params"];
    if (!p.is_object()) throw SchemaError("'params' must be an object");
    if (p.contains("theta_lit")) ctx.params.theta_lit = read_bp(p["theta_lit"], "theta_lit");
    if (p.contains("theta_eq")) ctx.params.theta_eq = read_bp(p["theta_eq"], "theta_eq");
    if (p.contains("theta_vit")) ctx.params.theta_vit = read_bp(p["theta_vit"], "theta_vit");
    if (p.contains("theta_prop")) {
      ctx.params.theta_prop = read_bp(p["theta_prop"], "theta_prop");
    } else {
      ctx.params.theta_prop = ctx.params.theta_lit;
    }
    if (p.contains("delta")) {
      if (!p["delta"].is_string()) {
        throw SchemaError("'delta' must be a decimal string");
      }
      ctx.params.delta = Rational::from_decimal(p["delta"].get<std::string>());
    }
  }
  ctx.params.validate();

  if (doc.contains("scope_spaces")) {
    if (!doc["scope_spaces"].is_object()) {
      throw SchemaError("'scope_spaces' must be an object");
    }
    for (const auto& [node, js] : doc["scope_spaces"].items()) {
      NodeScope scope;
      if (!js.is_object() || !js.contains("implementations") ||
          !js["implementations"].is_array() || js["implementations"].empty()) {
        throw SchemaError("scope space for '" + node +
                          "' needs a non-empty 'implementations' array");
      }
      std::set<std::string> impl_ids;
      for (const json& ji : js["implementations"]) {
        if (!ji.is_object() || !ji.contains("id") || !ji["id"].is_string() ||
            !ji.contains("text") || !ji["text"].is_string()) {
          throw SchemaError("implementation entries need string id and text");
        }
        ScopeImplementation impl{ji["id"].get<std::string>(),
                                 ji["text"].get<std::string>()};
        if (!impl_ids.insert(impl.id).second) {
          throw SchemaError("duplicate implementation id '" + impl.id + "'");
        }
        scope.implementations.push_back(std::move(impl));
      }
      if (js.contains("regions")) {
        if (!js["regions"].is_array()) {
          throw SchemaError("'regions' must be an array");
        }
        for (const json& jr : js["regions"]) {
          if (!jr.is_object() || !jr.contains("k") ||
              !jr["k"].is_number_integer() || !jr.contains("orig") ||
              !jr["orig"].is_array() || !jr.contains("amend") ||
              !jr["amend"].is_array()) {
            throw SchemaError("scope region needs k, orig, amend");
          }
          AmendmentRegion region;
          region.k = jr["k"].get<int>();
          for (const json& v : jr["orig"]) {
            if (!v.is_string() || !impl_ids.count(v.get<std::string>())) {
              throw SchemaError("orig region references unknown implementation");
            }
            region.orig.insert(v.get<std::string>());
          }
          for (const json& v : jr["amend"]) {
            if (!v.is_string() || !impl_ids.count(v.get<std::string>())) {
              throw SchemaError("amend region references unknown implementation");
            }
            region.amend.insert(v.get<std::string>());
          }
          // Narrowing inclusion: amend within orig within the space.
          for (const std::string& id : region.amend) {
            if (!region.orig.count(id)) {
              throw SchemaError("amend region for '" + node +
                                "' k=" + std::to_string(region.k) +
                                " is not a subset of orig");
            }
          }
          scope.regions.push_back(std::move(region));
        }
      }
      ctx.scope_spaces.emplace(node, std::move(scope));
    }
  }

  if (doc.contains("prosecution_history")) {
    const json& ph = doc["prosecution_history"];
    if (!ph.is_object()) throw SchemaError("'prosecution_history' must be an object");
    if (ph.contains("amendments")) {
      if (!ph["amendments"].is_array()) throw SchemaError("'amendments' must be an array");
      for (const json& ja : ph["amendments"]) {
        if (!ja.is_object() || !ja.contains("node") || !ja["node"].is_string() ||
            !ja.contains("k") || !ja["k"].is_number_integer() ||
            !ja.contains("reason") || !ja["reason"].is_string()) {
          throw SchemaError("amendment entries need node, k, reason");
        }
        ctx.prosecution.amendments.push_back(
            {ja["node"].get<std::string>(), ja["k"].get<int>(),
             reason_from_string(ja["reason"].get<std::string>())});
      }
    }
    if (ph.contains("arguments")) {
      if (!ph["arguments"].is_array()) throw SchemaError("'arguments' must be an array");
      for (const json& jd : ph["arguments"]) {
        if (!jd.is_object() || !jd.contains("node") || !jd["node"].is_string() ||
            !jd.contains("disclaimed") || !jd["disclaimed"].is_array()) {
          throw SchemaError("argument entries need node and disclaimed list");
        }
        ArgumentDisclaimer d;
        d.node = jd["node"].get<std::string>();
        for (const json& v : jd["disclaimed"]) {
          if (!v.is_string()) throw SchemaError("disclaimed ids must be strings");
          d.disclaimed.insert(v.get<std::string>());
        }
        ctx.prosecution.arguments.push_back(std::move(d));
      }
    }
    if (ph.contains("rebuttals")) {
      if (!ph["rebuttals"].is_array()) throw SchemaError("'rebuttals' must be an array");
      for (const json& jr : ph["rebuttals"]) {
        if (!jr.is_object() || !jr.contains("node") || !jr["node"].is_string() ||
            !jr.contains("segment") || !jr["segment"].is_number_integer() ||
            !jr.contains("k") || !jr["k"].is_number_integer()) {
          throw SchemaError("rebuttal entries need node, segment, k");
        }
        int segment = jr["segment"].get<int>();
        if (segment < 0 || size_t(segment) >= m) {
          throw SchemaError("rebuttal segment index out of range");
        }
        Rebuttal r;
        auto flag = [&](const char* key, bool& out) {
          if (jr.contains(key)) {
            if (!jr[key].is_boolean()) {
              throw SchemaError(std::string("rebuttal '") + key + "' must be a boolean");
            }
            out = jr[key].get<bool>();
          }
        };
        flag("unforeseeable", r.unforeseeable);
        flag("tangential", r.tangential);
        flag("alternative_justification", r.alternative_justification);
        ctx.prosecution.rebuttals.emplace(
            std::make_tuple(jr["node"].get<std::string>(), segment,
                            jr["k"].get<int>()),
            r);
      }
    }
  }

  // Amendments outside the patentability / s112 reasons admit no rebuttal;
  // a context asserting one is contradictory and refused outright.
  for (const Amendment& a : ctx.prosecution.amendments) {
    if (a.reason != AmendmentReason::Other) continue;
    for (const auto& [key, r] : ctx.prosecution.rebuttals) {
      if (std::get<0>(key) == a.node && std::get<2>(key) == a.k && r.any()) {
        throw InvalidInput("amendment to '" + a.node +
                           "' with reason 'other' cannot carry rebuttals");
      }
    }
  }

  if (doc.contains("projection_scores")) {
    if (!doc["projection_scores"].is_object()) {
      throw SchemaError("'projection_scores' must be an object");
    }
    for (const auto& [node, jp] : doc["projection_scores"].items()) {
      if (!jp.is_object()) {
        throw SchemaError("projection scores for '" + node + "' must be an object");
      }
      for (const auto& [impl, row] : jp.items()) {
        if (!row.is_array() || row.size() != m) {
          throw SchemaError("projection row for '" + node + "'/'" + impl +
                            "' must list one score per segment");
        }
        std::vector<BasisPoints> vals;
        for (const json& v : row) vals.push_back(read_bp(v, "projection score"));
        ctx.projection_scores[node].emplace(impl, std::move(vals));
      }
    }
  }

  if (doc.contains("fwr_scores")) {
    if (!doc["fwr_scores"].is_object()) {
      throw SchemaError("'fwr_scores' must be an object");
    }
    for (const auto& [node, jf] : doc["fwr_scores"].items()) {
      if (!jf.is_object()) {
        throw SchemaError("fwr scores for '" + node + "' must be an object");
      }
      for (const auto& [seg, triple] : jf.items()) {
        int idx;
        try {
          idx = std::stoi(seg);
        } catch (...) {
          throw SchemaError("fwr segment key '" + seg + "' is not an index");
        }
        if (idx < 0 || size_t(idx) >= m) {
          throw SchemaError("fwr segment index out of range: " + seg);
        }
        if (!triple.is_array() || triple.size() != 3) {
          throw SchemaError("fwr entry must be [function, way, result]");
        }
        FwrScores f{read_bp(triple[0], "fwr function"),
                    read_bp(triple[1], "fwr way"),
                    read_bp(triple[2], "fwr result")};
        ctx.fwr_scores[node].emplace(idx, f);
      }
    }
  }

  if (doc.contains("match_scores")) {
    ctx.match_scores = ScoreMatrix::from_json(doc["match_scores"], m);
  }
  return ctx;
}

std::string to_string(MatchTag t) {
  switch (t) {
    case MatchTag::Literal:
      return "literal";
    case MatchTag::Equivalent:
      return "equivalent";
    case MatchTag::NoMatch:
      return "no_match";
  }
  return "?";
}

std::set<int> estopped_region(const std::string& node_id,
                              const EvidenceSet& evidence,
                              const DoeContext& ctx) {
  std::set<int> out;
  if (!ctx.prosecution.mentions(node_id)) return out;

  auto scope_it = ctx.scope_spaces.find(node_id);
  if (scope_it == ctx.scope_spaces.end()) {
    throw MissingScope("prosecution history mentions '" + node_id +
                       "' but no scope space is declared for it");
  }
  const NodeScope& scope = scope_it->second;
  auto proj_it = ctx.projection_scores.find(node_id);

  // pi_v(s): the implementation each segment most resembles, ties broken
  // by the declared implementation order.
  auto project = [&](int segment) -> const std::string& {
    if (proj_it == ctx.projection_scores.end()) {
      throw MissingProjection("no projection scores for node '" + node_id + "'");
    }
    const ScopeImplementation* best = nullptr;
    BasisPoints best_score;
    for (const ScopeImplementation& impl : scope.implementations) {
      auto row = proj_it->second.find(impl.id);
      if (row == proj_it->second.end()) {
        throw MissingProjection("no projection scores for implementation '" +
                                impl.id + "' of node '" + node_id + "'");
      }
      BasisPoints s = row->second.at(size_t(segment));
      if (!best || s > best_score) {
        best = &impl;
        best_score = s;
      }
    }
    return best->id;
  };

  for (const EvidenceSegment& seg : evidence.segments()) {
    const std::string& impl = project(seg.index);
    bool estopped = false;
    for (const Amendment& a : ctx.prosecution.amendments) {
      if (a.node != node_id) continue;
      const AmendmentRegion* region = scope.region_for(a.k);
      if (!region) {
        throw MissingScope("amendment k=" + std::to_string(a.k) + " to '" +
                           node_id + "' has no scope regions");
      }
      bool surrendered = region->orig.count(impl) && !region->amend.count(impl);
      if (surrendered && !ctx.prosecution.rebutted(node_id, seg.index, a.k)) {
        estopped = true;
        break;
      }
    }
    if (!estopped) {
      // Argument-based estoppel is treated as absolute: no rebuttal path.
      for (const ArgumentDisclaimer& d : ctx.prosecution.arguments) {
        if (d.node == node_id && d.disclaimed.count(impl)) {
          estopped = true;
          break;
        }
      }
    }
    if (estopped) out.insert(seg.index);
  }
  return out;
}

NodeClassification classify(const ClaimNode& node, const ScoreTable& scores,
                            const EvidenceSet& evidence, const DoeContext& ctx) {
  const DoeParams& p = ctx.params;
  NodeClassification cls;
  cls.beta = scores.at(node.id);

  // Precedence: a literal match never enters equivalence analysis.
  if (cls.beta >= p.theta_lit) {
    cls.tag = MatchTag::Literal;
    cls.eff_phase1 = cls.beta;
    cls.note = "beta >= theta_lit";
    return cls;
  }

  cls.estopped = estopped_region(node.id, evidence, ctx);
  std::vector<int> available;
  for (const EvidenceSegment& seg : evidence.segments()) {
    if (!cls.estopped.count(seg.index)) available.push_back(seg.index);
  }
  if (available.empty()) {
    cls.tag = MatchTag::NoMatch;
    cls.note = "all evidence estopped";
    return cls;
  }

  if (!ctx.match_scores.has_row(node.id)) {
    throw IncompleteScores("DOE analysis of '" + node.id +
                           "' needs per-segment match scores");
  }
  const std::vector<BasisPoints>& row = ctx.match_scores.row(node.id);
  int star = available.front();
  for (int s : available) {
    if (row.at(size_t(s)) > row.at(size_t(star))) star = s;  // ties: lowest index
  }
  cls.witness = star;
  cls.witness_score = row.at(size_t(star));
  cls.vitiated = *cls.witness_score < p.theta_vit;

  auto node_fwr = ctx.fwr_scores.find(node.id);
  if (node_fwr == ctx.fwr_scores.end() || !node_fwr->second.count(star)) {
    throw MissingFwr("no function/way/result scores for node '" + node.id +
                     "' at segment " + std::to_string(star));
  }
  cls.fwr = node_fwr->second.at(star);

  const bool prongs_pass = cls.fwr->function >= p.theta_eq &&
                           cls.fwr->way >= p.theta_eq &&
                           cls.fwr->result >= p.theta_eq;
  if (prongs_pass && !cls.vitiated) {
    cls.tag = MatchTag::Equivalent;
    cls.eff_phase1 = discretize(p.delta * cls.fwr->min().as_fraction());
    cls.note = "fwr prongs >= theta_eq";
  } else {
    cls.tag = MatchTag::NoMatch;
    cls.note = cls.vitiated ? "vitiated: witness score below theta_vit"
                            : "fwr prong below theta_eq";
  }
  return cls;
}

DoeResult doe_analyze(const ClaimDag& dag, const ScoreTable& scores,
                      const EvidenceSet& evidence, const DoeContext& ctx) {
  scores.require_complete(dag);
  ctx.params.validate();

  // Score-table / match-matrix consistency: beta must be the row maximum.
  for (const auto& [id, row] : ctx.match_scores.rows) {
    if (!dag.contains(id)) {
      throw UnknownNode("match scores for unknown node '" + id + "'");
    }
    BasisPoints max_row;
    for (BasisPoints v : row) max_row = join(max_row, v);
    if (max_row != scores.at(id)) {
      throw InvalidInput("match-score row for '" + id +
                         "' is inconsistent with the score table maximum");
    }
  }

  DoeResult result;
  ScoreTable phase1;
  phase1.construction_id = (scores.construction_id.empty()
                                ? std::string("doe")
                                : scores.construction_id + "-doe") +
                           "-phase1";
  for (const ClaimNode& n : dag.nodes()) {
    NodeClassification cls = classify(n, scores, evidence, ctx);
    phase1.scores.emplace(n.id, cls.eff_phase1);
    result.classifications.emplace(n.id, std::move(cls));
  }

  // Phase 2 zeroes effective scores whose dependencies miss theta_prop;
  // the classification tags stay as Phase 1 assigned them.
  result.eff = compute_eff(dag, phase1, ctx.params.theta_prop);
  for (auto& [id, cls] : result.classifications) {
    cls.eff_final = result.eff.at(id);
  }
  result.w_doe = weighted_coverage(dag, result.eff);
  result.certificate = generate_certificate(dag, phase1, ctx.params.theta_prop);
  return result;
}

}  // namespace claimlattice
