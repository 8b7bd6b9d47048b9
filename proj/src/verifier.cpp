#include "claimlattice/verifier.hpp"

#include <map>
#include <set>
#include <vector>

#include <json.hpp>

#include "claimlattice/rational.hpp"
#include "claimlattice/sha256.hpp"

// The checker deliberately re-derives everything from the certificate
// bytes: it parses the embedded claim itself, runs its own cycle check,
// recomputes effective scores by direct recursion over the dependency
// lists, and re-sums the coverage rational. It shares only value types
// (Rational, sha256, the JSON reader) with the generator, never the
// generator's propagation or coverage code.

namespace claimlattice {

using nlohmann::json;

namespace {

struct Reject {
  std::string reason;
  std::string detail;
};

struct VNode {
  std::string id;
  std::string type;
  std::vector<std::string> deps;
};

bool has_float(const json& j) {
  if (j.is_number_float()) return true;
  if (j.is_object() || j.is_array()) {
    for (const json& v : j) {
      if (has_float(v)) return true;
    }
  }
  return false;
}

bool is_lower_hex(const std::string& s) {
  if (s.size() != 64) return false;
  for (char c : s) {
    if (!((c >= '0' && c <= '9') || (c >= 'a' && c <= 'f'))) return false;
  }
  return true;
}

const std::set<std::string> kObligationNames = {
    "acyclic", "lattice", "propagation", "bounded", "coverage_equality"};

const std::set<std::string> kNodeTypes = {
    "preamble", "structural",  "functional", "quantitative",
    "wherein",  "coupling",    "signal"};

// Effective-score evaluation straight from the definition: eff(v) =
// score(v) when every dependency's eff reaches theta, else 0. Explicit
// work stack; untrusted certificates must not be able to exhaust the call
// stack with a deep dependency chain.
long long recompute_eff(const std::string& root,
                        const std::map<std::string, VNode>& nodes,
                        const std::map<std::string, long long>& scores,
                        long long theta,
                        std::map<std::string, long long>& memo) {
  if (auto it = memo.find(root); it != memo.end()) return it->second;
  std::vector<std::string> stack{root};
  while (!stack.empty()) {
    const std::string id = stack.back();  // copy: pushes reallocate the stack
    if (memo.count(id)) {
      stack.pop_back();
      continue;
    }
    bool ready = true;
    bool deps_met = true;
    for (const std::string& u : nodes.at(id).deps) {
      auto it = memo.find(u);
      if (it == memo.end()) {
        stack.push_back(u);
        ready = false;
      } else if (it->second < theta) {
        deps_met = false;
      }
    }
    if (ready) {
      memo[id] = deps_met ? scores.at(id) : 0;
      stack.pop_back();
    }
  }
  return memo.at(root);
}

VerificationResult run_checks(
    const std::string& bytes,
    const std::optional<std::string>& external_claim) {
  // --- parse ---------------------------------------------------------
  json doc = json::parse(bytes, nullptr, false);
  if (doc.is_discarded()) {
    return VerificationResult::rejected("parse", "not valid JSON");
  }
  if (!doc.is_object()) {
    return VerificationResult::rejected("parse", "certificate is not an object");
  }
  if (has_float(doc)) {
    return VerificationResult::rejected("parse", "floating-point value present");
  }
  static const std::set<std::string> kKeys = {
      "schema_version", "claim",       "claim_digest", "claim_digest_algo",
      "construction_id", "scores",     "theta",        "eff",
      "coverage",        "obligations", "generator"};
  for (const auto& [key, _] : doc.items()) {
    if (!kKeys.count(key)) {
      return VerificationResult::rejected("schema", "unknown field '" + key + "'");
    }
  }
  for (const std::string& key : kKeys) {
    if (!doc.contains(key)) {
      return VerificationResult::rejected("schema", "missing field '" + key + "'");
    }
  }
  if (!doc["schema_version"].is_number_integer() ||
      doc["schema_version"].get<long long>() != 1) {
    return VerificationResult::rejected("schema", "unsupported schema_version");
  }

  // --- obligation audit ----------------------------------------------
  // Runs before any recomputation: an "assumed" obligation is rejected
  // even when every number in the certificate is internally consistent.
  if (!doc["obligations"].is_array()) {
    return VerificationResult::rejected("schema", "obligations must be an array");
  }
  std::set<std::string> seen_obligations;
  for (const json& jo : doc["obligations"]) {
    if (!jo.is_object() || !jo.contains("name") || !jo["name"].is_string() ||
        !jo.contains("status") || !jo["status"].is_string() ||
        !jo.contains("detail") || !jo["detail"].is_string()) {
      return VerificationResult::rejected("schema", "malformed obligation entry");
    }
    std::string name = jo["name"].get<std::string>();
    std::string status = jo["status"].get<std::string>();
    if (!kObligationNames.count(name)) {
      return VerificationResult::rejected("unknown_obligation", name);
    }
    if (!seen_obligations.insert(name).second) {
      return VerificationResult::rejected("duplicate_obligation", name);
    }
    if (status == "assumed") {
      return VerificationResult::rejected("assumed_obligation", name);
    }
    if (status != "checked") {
      return VerificationResult::rejected("unknown_status",
                                          name + " has status '" + status + "'");
    }
  }
  for (const std::string& name : kObligationNames) {
    if (!seen_obligations.count(name)) {
      return VerificationResult::rejected("missing_obligation", name);
    }
  }

  // --- claim digest ----------------------------------------------------
  if (!doc["claim_digest_algo"].is_string() ||
      doc["claim_digest_algo"].get<std::string>() != "sha256") {
    return VerificationResult::rejected("schema", "unsupported digest algorithm");
  }
  if (!doc["claim"].is_object()) {
    return VerificationResult::rejected("schema", "claim must be an object");
  }
  if (!doc["claim_digest"].is_string() ||
      !is_lower_hex(doc["claim_digest"].get<std::string>())) {
    return VerificationResult::rejected("schema", "claim_digest must be 64 lowercase hex chars");
  }
  const std::string digest = doc["claim_digest"].get<std::string>();
  if (sha256_hex(doc["claim"].dump()) != digest) {
    return VerificationResult::rejected("claim_digest",
                                        "embedded claim does not match digest");
  }
  if (external_claim && sha256_hex(*external_claim) != digest) {
    return VerificationResult::rejected("claim_digest",
                                        "supplied claim bytes do not match digest");
  }

  // --- embedded claim structure ---------------------------------------
  const json& claim = doc["claim"];
  if (!claim.contains("nodes") || !claim["nodes"].is_array() ||
      claim["nodes"].empty()) {
    return VerificationResult::rejected("schema", "claim has no nodes");
  }
  std::map<std::string, VNode> nodes;
  std::vector<std::string> node_order;
  for (const json& jn : claim["nodes"]) {
    if (!jn.is_object() || !jn.contains("id") || !jn["id"].is_string() ||
        !jn.contains("type") || !jn["type"].is_string() ||
        !jn.contains("deps") || !jn["deps"].is_array()) {
      return VerificationResult::rejected("schema", "malformed claim node");
    }
    VNode n;
    n.id = jn["id"].get<std::string>();
    n.type = jn["type"].get<std::string>();
    if (!kNodeTypes.count(n.type)) {
      return VerificationResult::rejected("schema",
                                          "unknown node type '" + n.type + "'");
    }
    for (const json& d : jn["deps"]) {
      if (!d.is_string()) {
        return VerificationResult::rejected("schema", "non-string dep");
      }
      n.deps.push_back(d.get<std::string>());
    }
    if (nodes.count(n.id)) {
      return VerificationResult::rejected("schema", "duplicate node id " + n.id);
    }
    node_order.push_back(n.id);
    nodes.emplace(n.id, std::move(n));
  }
  for (const auto& [id, n] : nodes) {
    for (const std::string& d : n.deps) {
      if (!nodes.count(d)) {
        return VerificationResult::rejected("schema",
                                            id + " depends on unknown " + d);
      }
    }
  }
  if (!claim.contains("weights") || !claim["weights"].is_object()) {
    return VerificationResult::rejected("schema", "claim has no weights");
  }
  std::map<std::string, Rational> type_weight;
  for (const auto& [t, v] : claim["weights"].items()) {
    if (!v.is_string()) {
      return VerificationResult::rejected("schema", "weight must be a decimal string");
    }
    Rational w;
    try {
      w = Rational::from_decimal(v.get<std::string>());
    } catch (const Error&) {
      return VerificationResult::rejected("schema", "unparseable weight for " + t);
    }
    if (!(w > Rational())) {
      return VerificationResult::rejected("schema", "non-positive weight for " + t);
    }
    type_weight.emplace(t, w);
  }
  for (const auto& [id, n] : nodes) {
    if (!type_weight.count(n.type)) {
      return VerificationResult::rejected("schema", "no weight for type " + n.type);
    }
  }

  // --- acyclic: iterative three-color DFS over the dependency lists ----
  {
    std::map<std::string, int> color;  // 0 white, 1 grey, 2 black
    for (const std::string& start : node_order) {
      if (color[start] != 0) continue;
      std::vector<std::pair<std::string, size_t>> stack{{start, 0}};
      color[start] = 1;
      while (!stack.empty()) {
        auto& [id, next] = stack.back();
        const VNode& n = nodes.at(id);
        if (next < n.deps.size()) {
          const std::string& d = n.deps[next++];
          if (color[d] == 1) {
            return VerificationResult::rejected("acyclic",
                                                "cycle through " + d);
          }
          if (color[d] == 0) {
            color[d] = 1;
            stack.emplace_back(d, 0);
          }
        } else {
          color[id] = 2;
          stack.pop_back();
        }
      }
    }
  }

  // --- lattice: every value within the 10001-point lattice -------------
  if (!doc["theta"].is_number_integer()) {
    return VerificationResult::rejected("schema", "theta must be an integer");
  }
  const long long theta = doc["theta"].get<long long>();
  if (theta < 1 || theta > 10000) {
    return VerificationResult::rejected("lattice",
                                        "theta outside 1..10000");
  }
  auto read_table = [&](const char* key, std::map<std::string, long long>& out)
      -> std::optional<Reject> {
    if (!doc[key].is_object()) {
      return Reject{"schema", std::string(key) + " must be an object"};
    }
    for (const auto& [id, v] : doc[key].items()) {
      if (!nodes.count(id)) {
        return Reject{"schema", std::string(key) + " entry for unknown node " + id};
      }
      if (!v.is_number_integer()) {
        return Reject{"schema", std::string(key) + " entry for " + id + " not an integer"};
      }
      long long x = v.get<long long>();
      if (x < 0 || x > 10000) {
        return Reject{"lattice", std::string(key) + " value for " + id + " outside 0..10000"};
      }
      out[id] = x;
    }
    for (const auto& [id, _] : nodes) {
      if (!out.count(id)) {
        return Reject{"schema", std::string(key) + " missing node " + id};
      }
    }
    return std::nullopt;
  };
  std::map<std::string, long long> scores, eff;
  if (auto r = read_table("scores", scores)) {
    return VerificationResult::rejected(r->reason, r->detail);
  }
  if (auto r = read_table("eff", eff)) {
    return VerificationResult::rejected(r->reason, r->detail);
  }

  // --- propagation: re-derive every effective score --------------------
  std::map<std::string, long long> memo;
  for (const auto& [id, _] : nodes) {
    long long expect = recompute_eff(id, nodes, scores, theta, memo);
    if (eff.at(id) != expect) {
      return VerificationResult::rejected("propagation",
                                          "eff mismatch at node " + id);
    }
  }

  // --- bounded ----------------------------------------------------------
  const json& cov = doc["coverage"];
  if (!cov.is_object() || !cov.contains("num") || !cov["num"].is_string() ||
      !cov.contains("den") || !cov["den"].is_string()) {
    return VerificationResult::rejected("schema", "coverage must be {num, den} strings");
  }
  Rational coverage;
  try {
    Int128 num = parse_int128(cov["num"].get<std::string>());
    Int128 den = parse_int128(cov["den"].get<std::string>());
    if (den <= 0) {
      return VerificationResult::rejected("schema", "coverage denominator must be positive");
    }
    coverage = Rational(num, den);
  } catch (const Error& e) {
    return VerificationResult::rejected("schema", e.what());
  }
  if (coverage.is_negative() || coverage > Rational::from_int(100)) {
    return VerificationResult::rejected("bounded", "coverage outside [0,100]");
  }

  // --- coverage equality: independent rational re-summation ------------
  Rational achieved, total;
  try {
    for (const auto& [id, n] : nodes) {
      const Rational& w = type_weight.at(n.type);
      achieved += w * Rational(memo.at(id), 10000);
      total += w;
    }
    Rational recomputed = achieved / total * Rational::from_int(100);
    if (recomputed != coverage) {
      return VerificationResult::rejected(
          "coverage_equality", "recomputed " + recomputed.to_fraction_string() +
                                   " != stated " + coverage.to_fraction_string());
    }
  } catch (const Error& e) {
    return VerificationResult::rejected("coverage_equality", e.what());
  }

  return VerificationResult::ok();
}

}  // namespace

VerificationResult verify_certificate(
    const std::string& certificate_bytes,
    const std::optional<std::string>& external_canonical_claim) {
  try {
    return run_checks(certificate_bytes, external_canonical_claim);
  } catch (const std::exception& e) {
    // Totality: unexpected conditions reject, they never escape.
    return VerificationResult::rejected("parse", e.what());
  } catch (...) {
    return VerificationResult::rejected("parse", "unexpected failure");
  }
}

}  // namespace claimlattice
