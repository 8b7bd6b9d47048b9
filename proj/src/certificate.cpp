#include "claimlattice/certificate.hpp"

#include <algorithm>
#include <set>

#include "claimlattice/coverage.hpp"
#include "claimlattice/propagation.hpp"
#include "claimlattice/sha256.hpp"

namespace claimlattice {

using nlohmann::json;

Certificate generate_certificate(const ClaimDag& dag, const ScoreTable& scores,
                                 BasisPoints theta) {
  EffTable eff = compute_eff(dag, scores, theta);
  CoverageValue cov = weighted_coverage(dag, eff);

  Certificate cert;
  cert.claim = dag.to_json();
  cert.claim_digest = sha256_hex(cert.claim.dump());
  cert.construction_id = scores.construction_id;
  for (const auto& [id, bp] : scores.scores) cert.scores[id] = bp.value();
  cert.theta = theta.value();
  for (const auto& [id, bp] : eff.eff) cert.eff[id] = bp.value();
  cert.coverage_num = cov.value.num_string();
  cert.coverage_den = cov.value.den_string();

  std::string topo;
  for (const std::string& id : dag.topo_order()) {
    if (!topo.empty()) topo += ",";
    topo += id;
  }
  std::string zeroed;
  for (const std::string& id : dag.topo_order()) {
    if (eff.at(id) == BasisPoints::bottom() &&
        scores.at(id) != BasisPoints::bottom()) {
      for (const std::string& u : dag.node(id).deps) {
        if (eff.at(u) < theta) {
          if (!zeroed.empty()) zeroed += ",";
          zeroed += id + "<-" + u;
          break;
        }
      }
    }
  }
  cert.obligations = {
      {"acyclic", "checked", "topological order " + topo},
      {"lattice", "checked", "all values scanned within 0..10000"},
      {"propagation", "checked",
       zeroed.empty() ? "no nodes zeroed" : "zeroed " + zeroed},
      {"bounded", "checked",
       "coverage " + cov.value.to_fraction_string() + " within [0,100]"},
      {"coverage_equality", "checked",
       "weighted average of effective scores recomputed equal"},
  };
  return cert;
}

std::string canonical_serialize(const Certificate& cert) {
  json doc;
  doc["schema_version"] = cert.schema_version;
  doc["claim"] = cert.claim;
  doc["claim_digest"] = cert.claim_digest;
  doc["claim_digest_algo"] = cert.claim_digest_algo;
  doc["construction_id"] = cert.construction_id;
  json s = json::object();
  for (const auto& [id, v] : cert.scores) s[id] = v;
  doc["scores"] = std::move(s);
  doc["theta"] = cert.theta;
  json e = json::object();
  for (const auto& [id, v] : cert.eff) e[id] = v;
  doc["eff"] = std::move(e);
  doc["coverage"] = json{{"num", cert.coverage_num}, {"den", cert.coverage_den}};
  json obs = json::array();
  for (const Obligation& o : cert.obligations) {
    obs.push_back(json{{"detail", o.detail}, {"name", o.name}, {"status", o.status}});
  }
  doc["obligations"] = std::move(obs);
  doc["generator"] =
      json{{"tool", cert.generator_tool}, {"version", cert.generator_version}};
  return doc.dump();
}

namespace {

void require(bool ok, const std::string& msg) {
  if (!ok) throw SchemaError(msg);
}

bool has_float(const json& j) {
  if (j.is_number_float()) return true;
  if (j.is_object() || j.is_array()) {
    for (const json& v : j) {
      if (has_float(v)) return true;
    }
  }
  return false;
}

}  // namespace

Certificate parse_certificate(const std::string& bytes) {
  json doc = json::parse(bytes, nullptr, false);
  if (doc.is_discarded()) throw ParseError("certificate is not valid JSON");
  require(doc.is_object(), "certificate must be a JSON object");
  require(!has_float(doc), "certificate must not contain floats");

  static const std::set<std::string> kKeys = {
      "schema_version", "claim",    "claim_digest", "claim_digest_algo",
      "construction_id", "scores",  "theta",        "eff",
      "coverage",        "obligations", "generator"};
  for (const auto& [key, _] : doc.items()) {
    require(kKeys.count(key) > 0, "unknown certificate field '" + key + "'");
  }
  for (const std::string& key : kKeys) {
    require(doc.contains(key), "certificate missing field '" + key + "'");
  }

  Certificate cert;
  require(doc["schema_version"].is_number_integer(), "schema_version must be an integer");
  cert.schema_version = doc["schema_version"].get<int>();
  require(cert.schema_version == 1, "unsupported certificate schema_version");
  require(doc["claim"].is_object(), "claim must be an object");
  cert.claim = doc["claim"];
  require(doc["claim_digest"].is_string(), "claim_digest must be a string");
  cert.claim_digest = doc["claim_digest"].get<std::string>();
  require(doc["claim_digest_algo"].is_string(), "claim_digest_algo must be a string");
  cert.claim_digest_algo = doc["claim_digest_algo"].get<std::string>();
  require(doc["construction_id"].is_string(), "construction_id must be a string");
  cert.construction_id = doc["construction_id"].get<std::string>();

  require(doc["scores"].is_object(), "scores must be an object");
  for (const auto& [id, v] : doc["scores"].items()) {
    require(v.is_number_integer(), "score for '" + id + "' must be an integer");
    cert.scores[id] = v.get<long long>();
  }
  require(doc["theta"].is_number_integer(), "theta must be an integer");
  cert.theta = doc["theta"].get<long long>();
  require(doc["eff"].is_object(), "eff must be an object");
  for (const auto& [id, v] : doc["eff"].items()) {
    require(v.is_number_integer(), "eff for '" + id + "' must be an integer");
    cert.eff[id] = v.get<long long>();
  }

  const json& cov = doc["coverage"];
  require(cov.is_object() && cov.contains("num") && cov.contains("den") &&
              cov["num"].is_string() && cov["den"].is_string() &&
              cov.size() == 2,
          "coverage must be {num, den} with decimal-string components");
  cert.coverage_num = cov["num"].get<std::string>();
  cert.coverage_den = cov["den"].get<std::string>();

  require(doc["obligations"].is_array(), "obligations must be an array");
  for (const json& jo : doc["obligations"]) {
    require(jo.is_object() && jo.contains("name") && jo.contains("status") &&
                jo.contains("detail") && jo["name"].is_string() &&
                jo["status"].is_string() && jo["detail"].is_string() &&
                jo.size() == 3,
            "obligation entries need string name/status/detail");
    cert.obligations.push_back({jo["name"].get<std::string>(),
                                jo["status"].get<std::string>(),
                                jo["detail"].get<std::string>()});
  }

  const json& gen = doc["generator"];
  require(gen.is_object() && gen.contains("tool") && gen.contains("version") &&
              gen["tool"].is_string() && gen["version"].is_string() &&
              gen.size() == 2,
          "generator must be {tool, version}");
  cert.generator_tool = gen["tool"].get<std::string>();
  cert.generator_version = gen["version"].get<std::string>();
  return cert;
}

}  // namespace claimlattice
