// Command-line surface for the claim-lattice analysis engine.
//
// Subcommands: analyze, fto, sensitivity, consistency, doe, verify,
// case-study. All inputs are local files; identical inputs produce
// byte-identical outputs.

#include <unistd.h>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "claimlattice/analyses.hpp"
#include "claimlattice/certificate.hpp"
#include "claimlattice/claim_graph.hpp"
#include "claimlattice/coverage.hpp"
#include "claimlattice/doe.hpp"
#include "claimlattice/propagation.hpp"
#include "claimlattice/scoring.hpp"
#include "claimlattice/verifier.hpp"

namespace cl = claimlattice;
using nlohmann::json;

namespace {

constexpr int kExitUsage = 2;
constexpr int kExitInput = 3;

bool use_color() {
  static const bool enabled = [] {
    if (std::getenv("CLAIMLATTICE_NO_COLOR")) return false;
    return isatty(fileno(stdout)) == 1;
  }();
  return enabled;
}

std::string styled(const std::string& code, const std::string& text) {
  if (!use_color()) return text;
  return "\033[" + code + "m" + text + "\033[0m";
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw cl::InvalidInput("cannot open file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::string& path, const std::string& data) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw cl::InvalidInput("cannot write file '" + path + "'");
  out << data;
}

struct CommonOpts {
  std::string theta = "0.65";
  std::string threshold_cov = "70";
  std::string weights_path;
  std::string format = "text";
  std::string emit_cert;
  bool strict = false;
};

void add_common(CLI::App* cmd, CommonOpts& opts, bool with_cov = false) {
  cmd->add_option("--theta", opts.theta,
                  "Dependency threshold as a decimal score (default 0.65)");
  if (with_cov) {
    cmd->add_option("--threshold-cov", opts.threshold_cov,
                    "Coverage satisfaction threshold in percent (default 70)");
  }
  cmd->add_option("--weights", opts.weights_path,
                  "JSON file overriding per-type weights");
  cmd->add_option("--format", opts.format, "Output format: json or text")
      ->check(CLI::IsMember({"json", "text"}));
  cmd->add_option("--emit-cert", opts.emit_cert,
                  "Write the generated certificate to this path");
  cmd->add_flag("--strict", opts.strict,
                "Exit non-zero on Risk / Rejected outcomes");
}

cl::ClaimDag load_claim_with_weights(const std::string& claim_path,
                                     const std::string& weights_path) {
  std::string bytes = read_file(claim_path);
  if (weights_path.empty()) return cl::ClaimDag::load(bytes);
  // A --weights file overrides whatever the claim file carries.
  json doc = json::parse(bytes, nullptr, false);
  if (doc.is_discarded()) throw cl::SchemaError("claim file is not valid JSON");
  json wdoc = json::parse(read_file(weights_path), nullptr, false);
  if (wdoc.is_discarded() || !wdoc.is_object()) {
    throw cl::SchemaError("weights file must be a JSON object");
  }
  doc["weights"] = wdoc;
  return cl::ClaimDag::from_json(doc);
}

cl::BasisPoints parse_theta(const std::string& s) {
  return cl::discretize(s);
}

json coverage_json(const cl::CoverageValue& cov) {
  return json{{"num", cov.value.num_string()},
              {"den", cov.value.den_string()},
              {"display", cov.display()}};
}

json certificate_json(const cl::Certificate& cert) {
  return json::parse(cl::canonical_serialize(cert));
}

void maybe_emit_cert(const CommonOpts& opts, const cl::Certificate& cert) {
  if (!opts.emit_cert.empty()) {
    write_file(opts.emit_cert, cl::canonical_serialize(cert));
  }
}

// ---------------------------------------------------------------------------
// analyze

json analyze_report(const cl::ClaimDag& dag, const cl::ScoreTable& base,
                    const std::optional<cl::ScoreTable>& alt,
                    cl::BasisPoints theta) {
  cl::EffTable eff = cl::compute_eff(dag, base, theta);
  cl::CoverageValue cov = cl::weighted_coverage(dag, eff);

  json report;
  report["construction"] = base.construction_id;
  report["theta"] = theta.value();
  report["coverage"] = coverage_json(cov);
  report["flat"] = coverage_json(cl::flat_coverage(base));
  json eff_json = json::object();
  json zeroed = json::array();
  for (const std::string& id : dag.topo_order()) {
    eff_json[id] = eff.at(id).value();
    if (eff.at(id) == cl::BasisPoints::bottom() &&
        base.at(id) != cl::BasisPoints::bottom()) {
      zeroed.push_back(id);
    }
  }
  report["eff"] = std::move(eff_json);
  report["zeroed"] = std::move(zeroed);

  if (alt) {
    cl::WaterfallReport wf = cl::waterfall(dag, base, *alt, theta);
    json rows = json::array();
    for (const cl::WaterfallRow& r : wf.rows) {
      rows.push_back(json{{"node", r.node},
                          {"kind", r.kind_name()},
                          {"delta_num", r.delta_pp.num_string()},
                          {"delta_den", r.delta_pp.den_string()},
                          {"display_pp", r.display_pp()}});
    }
    report["alt"] = json{{"construction", alt->construction_id},
                         {"coverage", coverage_json(wf.coverage_alt)}};
    report["waterfall"] = std::move(rows);
    report["waterfall_total"] = json{{"num", wf.total_pp.num_string()},
                                     {"den", wf.total_pp.den_string()},
                                     {"display_pp", wf.total_pp.to_decimal(3)}};
  }
  return report;
}

void print_analyze_text(const json& r) {
  std::cout << "Construction " << r["construction"].get<std::string>()
            << "  (theta = " << r["theta"].get<int>() << " bp)\n";
  std::cout << "  weighted coverage: "
            << r["coverage"]["display"].get<std::string>() << "  ("
            << r["coverage"]["num"].get<std::string>() << "/"
            << r["coverage"]["den"].get<std::string>() << ")\n";
  std::cout << "  flat coverage:     " << r["flat"]["display"].get<std::string>()
            << "\n";
  if (!r["zeroed"].empty()) {
    std::cout << "  zeroed by dependency cascade:";
    for (const auto& id : r["zeroed"]) {
      std::cout << " " << id.get<std::string>();
    }
    std::cout << "\n";
  }
  if (r.contains("waterfall")) {
    std::cout << "Gap decomposition vs "
              << r["alt"]["construction"].get<std::string>() << " (coverage "
              << r["alt"]["coverage"]["display"].get<std::string>() << "):\n";
    for (const auto& row : r["waterfall"]) {
      std::cout << "  " << row["node"].get<std::string>() << " ("
                << row["kind"].get<std::string>() << "): -"
                << row["display_pp"].get<std::string>() << " pp\n";
    }
    std::cout << "  total: -"
              << r["waterfall_total"]["display_pp"].get<std::string>()
              << " pp\n";
  }
}

int cmd_analyze(const std::string& claim_path,
                const std::vector<std::string>& score_paths,
                const CommonOpts& opts) {
  cl::ClaimDag dag = load_claim_with_weights(claim_path, opts.weights_path);
  cl::ScoreTable base = cl::ScoreTable::load(read_file(score_paths[0]), dag);
  std::optional<cl::ScoreTable> alt;
  if (score_paths.size() > 1) {
    alt = cl::ScoreTable::load(read_file(score_paths[1]), dag);
  }
  cl::BasisPoints theta = parse_theta(opts.theta);
  json report = analyze_report(dag, base, alt, theta);
  maybe_emit_cert(opts, cl::generate_certificate(dag, base, theta));
  if (opts.format == "json") {
    std::cout << report.dump() << "\n";
  } else {
    print_analyze_text(report);
  }
  return 0;
}

// ---------------------------------------------------------------------------
// fto

json fto_report(const cl::FtoResult& result) {
  json r;
  if (const auto* clear = std::get_if<cl::FtoClear>(&result)) {
    r["result"] = "clear";
    r["node"] = clear->node;
    r["beta"] = clear->beta.value();
    r["theta"] = clear->theta.value();
    r["certificate"] = certificate_json(clear->certificate);
  } else {
    const auto& risk = std::get<cl::FtoRisk>(result);
    r["result"] = "risk";
    json gap = json::array();
    for (const cl::FtoGapEntry& e : risk.gap) {
      gap.push_back(json{{"node", e.node},
                         {"beta", e.beta.value()},
                         {"margin", e.margin_bp},
                         {"path", e.constraining_path}});
    }
    r["gap"] = std::move(gap);
  }
  return r;
}

int cmd_fto(const std::string& claim_path, const std::string& scores_path,
            const CommonOpts& opts) {
  cl::ClaimDag dag = load_claim_with_weights(claim_path, opts.weights_path);
  cl::ScoreTable scores = cl::ScoreTable::load(read_file(scores_path), dag);
  cl::BasisPoints theta = parse_theta(opts.theta);
  cl::FtoResult result = cl::fto(dag, scores, theta);
  json report = fto_report(result);

  bool clear = std::holds_alternative<cl::FtoClear>(result);
  if (clear) {
    maybe_emit_cert(opts, std::get<cl::FtoClear>(result).certificate);
  }
  if (opts.format == "json") {
    std::cout << report.dump() << "\n";
  } else if (clear) {
    std::cout << styled("1;32", "Clear") << ": no evidence assignment reaches "
              << "threshold at node " << report["node"].get<std::string>()
              << " (beta " << report["beta"].get<int>() << " < theta "
              << report["theta"].get<int>() << ")\n";
  } else {
    std::cout << styled("1;33", "Risk")
              << ": every element meets threshold; weakest margins first\n";
    for (const auto& e : report["gap"]) {
      std::cout << "  " << e["node"].get<std::string>() << "  beta "
                << e["beta"].get<int>() << "  margin " << e["margin"].get<int>()
                << "  path";
      for (const auto& p : e["path"]) std::cout << " " << p.get<std::string>();
      std::cout << "\n";
    }
  }
  return (!clear && opts.strict) ? 1 : 0;
}

// ---------------------------------------------------------------------------
// sensitivity

json sensitivity_report_json(const cl::SensitivityReport& rep) {
  json r;
  json cons = json::array();
  for (const cl::ConstructionOutcome& c : rep.constructions) {
    cons.push_back(json{{"id", c.id},
                        {"coverage", coverage_json(c.coverage)},
                        {"satisfied", c.satisfied},
                        {"scope_size", c.scope_size},
                        {"certificate", certificate_json(c.certificate)}});
  }
  r["constructions"] = std::move(cons);
  r["determinative"] = rep.determinative;
  json perts = json::object();
  for (const auto& [term, cov] : rep.perturbation_coverage) {
    perts[term] = json{{"coverage", coverage_json(cov)}};
  }
  r["perturbations"] = std::move(perts);
  json breakers = json::object();
  for (const auto& [id, nodes] : rep.breakers) breakers[id] = nodes;
  r["breakers"] = std::move(breakers);
  if (rep.threshold_construction) {
    r["threshold_construction"] = *rep.threshold_construction;
  } else {
    r["threshold_construction"] = nullptr;
  }
  json flags = json::array();
  for (const cl::MonotonicityFlag& f : rep.monotonicity_flags) {
    flags.push_back(json{{"term", f.term},
                         {"node", f.node},
                         {"base", f.base.value()},
                         {"perturbed", f.perturbed.value()}});
  }
  r["monotonicity_flags"] = std::move(flags);
  return r;
}

int cmd_sensitivity(const std::string& claim_path, const std::string& input_path,
                    const CommonOpts& opts) {
  cl::ClaimDag dag = load_claim_with_weights(claim_path, opts.weights_path);
  json doc = json::parse(read_file(input_path), nullptr, false);
  if (doc.is_discarded() || !doc.is_object()) {
    throw cl::SchemaError("sensitivity input is not a JSON object");
  }
  if (!doc.contains("base_table")) {
    throw cl::SchemaError("sensitivity input needs 'base_table'");
  }
  cl::ScoreTable base = cl::ScoreTable::from_json(doc["base_table"], dag);
  std::vector<cl::ScoreTable> alts;
  if (doc.contains("alt_tables")) {
    if (!doc["alt_tables"].is_array()) {
      throw cl::SchemaError("'alt_tables' must be an array");
    }
    for (const json& jt : doc["alt_tables"]) {
      alts.push_back(cl::ScoreTable::from_json(jt, dag));
    }
  }
  std::map<std::string, std::map<std::string, cl::BasisPoints>> perturbations;
  if (doc.contains("perturbations")) {
    if (!doc["perturbations"].is_object()) {
      throw cl::SchemaError("'perturbations' must be an object");
    }
    for (const auto& [term, overrides] : doc["perturbations"].items()) {
      if (!overrides.is_object()) {
        throw cl::SchemaError("perturbation for '" + term + "' must map nodes to scores");
      }
      for (const auto& [node, v] : overrides.items()) {
        if (!v.is_number_integer()) {
          throw cl::SchemaError("perturbed score for '" + node + "' must be an integer");
        }
        long long x = v.get<long long>();
        if (x < 0 || x > 10000) {
          throw cl::OutOfRange("perturbed score for '" + node + "' outside 0..10000");
        }
        perturbations[term].emplace(node, cl::BasisPoints(int(x)));
      }
    }
  }
  cl::BasisPoints theta = parse_theta(opts.theta);
  cl::Rational threshold_cov = cl::Rational::from_decimal(opts.threshold_cov);
  cl::SensitivityReport rep =
      cl::sensitivity(dag, base, alts, perturbations, theta, threshold_cov);
  json r = sensitivity_report_json(rep);
  if (opts.format == "json") {
    std::cout << r.dump() << "\n";
  } else {
    std::cout << "Construction sensitivity (threshold_cov = "
              << opts.threshold_cov << ")\n";
    for (const auto& c : r["constructions"]) {
      std::cout << "  " << c["id"].get<std::string>() << ": coverage "
                << c["coverage"]["display"].get<std::string>() << "  "
                << (c["satisfied"].get<bool>() ? "satisfied" : "not satisfied")
                << "  scope " << c["scope_size"].get<int>() << "\n";
    }
    std::cout << "  determinative terms:";
    for (const auto& t : r["determinative"]) {
      std::cout << " \"" << t.get<std::string>() << "\"";
    }
    std::cout << "\n  threshold construction: ";
    if (r["threshold_construction"].is_null()) {
      std::cout << "none\n";
    } else {
      std::cout << r["threshold_construction"].get<std::string>() << "\n";
    }
    for (const auto& [id, nodes] : r["breakers"].items()) {
      std::cout << "  breakers under " << id << ":";
      for (const auto& n : nodes) std::cout << " " << n.get<std::string>();
      std::cout << "\n";
    }
    if (!r["monotonicity_flags"].empty()) {
      std::cout << "  monotonicity audit flagged:";
      for (const auto& f : r["monotonicity_flags"]) {
        std::cout << " " << f["node"].get<std::string>();
      }
      std::cout << "\n";
    }
  }
  return 0;
}

// ---------------------------------------------------------------------------
// consistency

int cmd_consistency(const std::string& portfolio_path, const CommonOpts& opts) {
  json doc = json::parse(read_file(portfolio_path), nullptr, false);
  if (doc.is_discarded() || !doc.is_array() || doc.empty()) {
    throw cl::SchemaError("portfolio file must be a non-empty JSON array");
  }
  const auto base_dir = std::filesystem::path(portfolio_path).parent_path();
  std::vector<cl::PortfolioEntry> portfolio;
  for (size_t i = 0; i < doc.size(); ++i) {
    const json& jp = doc[i];
    if (!jp.is_object() || !jp.contains("claim_file") ||
        !jp["claim_file"].is_string() || !jp.contains("interpretations") ||
        !jp["interpretations"].is_object()) {
      throw cl::SchemaError("portfolio entries need claim_file and interpretations");
    }
    cl::PortfolioEntry entry;
    entry.label = jp.contains("label") && jp["label"].is_string()
                      ? jp["label"].get<std::string>()
                      : "P" + std::to_string(i + 1);
    std::filesystem::path claim_path = jp["claim_file"].get<std::string>();
    if (claim_path.is_relative() && !base_dir.empty()) {
      claim_path = base_dir / claim_path;
    }
    entry.dag = cl::ClaimDag::load(read_file(claim_path.string()));
    for (const auto& [term, v] : jp["interpretations"].items()) {
      if (!v.is_string()) {
        throw cl::SchemaError("interpretation for '" + term + "' must be a string");
      }
      entry.interpretations[term] = v.get<std::string>();
    }
    portfolio.push_back(std::move(entry));
  }
  cl::ConsistencyResult result = cl::consistency(portfolio, {});
  json r;
  bool consistent = std::holds_alternative<cl::Consistent>(result);
  if (consistent) {
    const auto& c = std::get<cl::Consistent>(result);
    r["result"] = "consistent";
    json checked = json::array();
    for (const cl::CheckedPair& p : c.checked) {
      checked.push_back(json{{"term", p.term}, {"first", p.first}, {"second", p.second}});
    }
    r["checked"] = std::move(checked);
  } else {
    const auto& inc = std::get<cl::Inconsistent>(result);
    r["result"] = "inconsistent";
    r["first"] = inc.first;
    r["second"] = inc.second;
    r["term"] = inc.term;
    r["interpretations"] = json{{inc.first, inc.interpretation_first},
                                {inc.second, inc.interpretation_second}};
  }
  if (opts.format == "json") {
    std::cout << r.dump() << "\n";
  } else if (consistent) {
    std::cout << styled("1;32", "Consistent") << ": "
              << r["checked"].size() << " shared-term pair(s) checked\n";
  } else {
    std::cout << styled("1;31", "Inconsistent") << ": term \""
              << r["term"].get<std::string>() << "\" differs between "
              << r["first"].get<std::string>() << " and "
              << r["second"].get<std::string>() << "\n";
    for (const auto& [label, text] : r["interpretations"].items()) {
      std::cout << "  " << label << ": " << text.get<std::string>() << "\n";
    }
  }
  if (!consistent && opts.strict) return 1;
  return 0;
}

// ---------------------------------------------------------------------------
// doe

json doe_report_json(const cl::DoeResult& res, const cl::ClaimDag& dag,
                     const cl::DoeParams& params) {
  json r;
  r["w_doe"] = coverage_json(res.w_doe);
  r["params"] = json{{"theta_lit", params.theta_lit.value()},
                     {"theta_eq", params.theta_eq.value()},
                     {"theta_vit", params.theta_vit.value()},
                     {"theta_prop", params.theta_prop.value()},
                     {"delta", params.delta.to_fraction_string()}};
  r["theta_prop"] = params.theta_prop.value();
  json cls = json::object();
  for (const std::string& id : dag.topo_order()) {
    const cl::NodeClassification& c = res.classifications.at(id);
    json jc;
    jc["tag"] = cl::to_string(c.tag);
    jc["beta"] = c.beta.value();
    jc["eff_phase1"] = c.eff_phase1.value();
    jc["eff"] = c.eff_final.value();
    if (!c.estopped.empty()) jc["estopped_segments"] = c.estopped;
    if (c.witness) jc["witness"] = *c.witness;
    if (c.witness_score) jc["witness_score"] = c.witness_score->value();
    if (c.fwr) {
      jc["fwr"] = json{{"function", c.fwr->function.value()},
                       {"way", c.fwr->way.value()},
                       {"result", c.fwr->result.value()}};
    }
    jc["vitiated"] = c.vitiated;
    jc["note"] = c.note;
    cls[id] = std::move(jc);
  }
  r["classifications"] = std::move(cls);
  r["certificate"] = certificate_json(res.certificate);
  return r;
}

int cmd_doe(const std::string& claim_path, const std::string& scores_path,
            const std::string& evidence_path, const std::string& doe_path,
            const CommonOpts& opts) {
  cl::ClaimDag dag = load_claim_with_weights(claim_path, opts.weights_path);
  cl::ScoreTable scores = cl::ScoreTable::load(read_file(scores_path), dag);
  cl::EvidenceSet evidence = cl::EvidenceSet::load(read_file(evidence_path));
  cl::DoeContext ctx = cl::DoeContext::load(read_file(doe_path), evidence);
  cl::DoeResult res = cl::doe_analyze(dag, scores, evidence, ctx);
  maybe_emit_cert(opts, res.certificate);
  json r = doe_report_json(res, dag, ctx.params);
  if (opts.format == "json") {
    std::cout << r.dump() << "\n";
  } else {
    std::cout << "DOE-adjusted coverage: " << res.w_doe.display() << "\n";
    for (const std::string& id : dag.topo_order()) {
      const auto& jc = r["classifications"][id];
      std::cout << "  " << id << ": " << jc["tag"].get<std::string>()
                << "  beta " << jc["beta"].get<int>() << "  eff "
                << jc["eff"].get<int>();
      if (jc.contains("fwr")) {
        std::cout << "  fwr (" << jc["fwr"]["function"].get<int>() << ","
                  << jc["fwr"]["way"].get<int>() << ","
                  << jc["fwr"]["result"].get<int>() << ")";
      }
      std::cout << "  [" << jc["note"].get<std::string>() << "]\n";
    }
  }
  return 0;
}

// ---------------------------------------------------------------------------
// verify

int cmd_verify(const std::string& cert_path, const std::string& claim_path) {
  std::string bytes = read_file(cert_path);
  std::optional<std::string> canonical_claim;
  if (!claim_path.empty()) {
    canonical_claim = cl::ClaimDag::load(read_file(claim_path)).serialize();
  }
  cl::VerificationResult res = cl::verify_certificate(bytes, canonical_claim);
  if (res.verified) {
    std::cout << styled("1;32", "Verified") << "\n";
    return 0;
  }
  std::cout << styled("1;31", "Rejected") << ": " << res.reason << " ("
            << res.detail << ")\n";
  return 1;
}

// ---------------------------------------------------------------------------
// case-study: regenerate the bundled fixtures and diff against the golden
// reports checked into fixtures/golden.

int cmd_case_study(const std::string& fixtures_dir) {
  namespace fs = std::filesystem;
  const fs::path dir(fixtures_dir);
  const fs::path golden = dir / "golden";
  int failures = 0;

  auto check = [&](const std::string& name, const json& produced) {
    fs::path expected_path = golden / (name + ".json");
    std::string produced_bytes = produced.dump();
    std::string expected_bytes;
    try {
      expected_bytes = read_file(expected_path.string());
    } catch (const cl::Error&) {
      std::cout << "MISSING " << name << " (no golden file)\n";
      ++failures;
      return;
    }
    // Golden files are pretty-printed; compare canonical dumps.
    json expected = json::parse(expected_bytes, nullptr, false);
    if (expected.is_discarded() || expected.dump() != produced_bytes) {
      std::cout << "DIFF " << name << "\n";
      ++failures;
    } else {
      std::cout << "ok " << name << "\n";
    }
  };

  CommonOpts opts;
  cl::BasisPoints theta = parse_theta(opts.theta);

  // Memory-module coverage, both constructions, plus the waterfall.
  cl::ClaimDag memory = cl::ClaimDag::load(read_file((dir / "memory_module.json").string()));
  cl::ScoreTable i1 = cl::ScoreTable::load(read_file((dir / "scores_i1.json").string()), memory);
  cl::ScoreTable i2 = cl::ScoreTable::load(read_file((dir / "scores_i2.json").string()), memory);
  check("analyze_i1", analyze_report(memory, i1, std::nullopt, theta));
  check("analyze_i2", analyze_report(memory, i2, std::nullopt, theta));
  check("waterfall_i1_i2", analyze_report(memory, i1, i2, theta));

  // Three-node prefix.
  cl::ClaimDag prefix = cl::ClaimDag::load(read_file((dir / "memory_module_3node.json").string()));
  cl::ScoreTable prefix_scores =
      cl::ScoreTable::load(read_file((dir / "scores_3node_i1.json").string()), prefix);
  check("analyze_3node", analyze_report(prefix, prefix_scores, std::nullopt, theta));

  // Sensitivity over the bundled constructions and perturbations.
  {
    json doc = json::parse(read_file((dir / "sensitivity_memory.json").string()));
    cl::ScoreTable base = cl::ScoreTable::from_json(doc["base_table"], memory);
    std::vector<cl::ScoreTable> alts;
    for (const json& jt : doc["alt_tables"]) {
      alts.push_back(cl::ScoreTable::from_json(jt, memory));
    }
    std::map<std::string, std::map<std::string, cl::BasisPoints>> perts;
    for (const auto& [term, overrides] : doc["perturbations"].items()) {
      for (const auto& [node, v] : overrides.items()) {
        perts[term].emplace(node, cl::BasisPoints(v.get<int>()));
      }
    }
    cl::SensitivityReport rep = cl::sensitivity(
        memory, base, alts, perts, theta, cl::Rational::from_decimal("70"));
    check("sensitivity_memory", sensitivity_report_json(rep));
  }

  // Filter claim: FTO and both DOE scenarios.
  cl::ClaimDag filter = cl::ClaimDag::load(read_file((dir / "filter_claim.json").string()));
  cl::ScoreTable filter_fto =
      cl::ScoreTable::load(read_file((dir / "filter_fto_scores.json").string()), filter);
  check("fto_filter", fto_report(cl::fto(filter, filter_fto, theta)));

  cl::EvidenceSet filter_evidence =
      cl::EvidenceSet::load(read_file((dir / "filter_evidence.json").string()));
  cl::ScoreTable filter_doe_scores =
      cl::ScoreTable::load(read_file((dir / "filter_doe_scores.json").string()), filter);
  for (const char* scenario : {"failure", "contrast"}) {
    cl::DoeContext ctx = cl::DoeContext::load(
        read_file((dir / ("filter_doe_" + std::string(scenario) + ".json")).string()),
        filter_evidence);
    cl::DoeResult res = cl::doe_analyze(filter, filter_doe_scores, filter_evidence, ctx);
    check("doe_filter_" + std::string(scenario),
          doe_report_json(res, filter, ctx.params));
  }

  // Portfolio consistency, divergent and aligned.
  for (const char* variant : {"divergent", "aligned"}) {
    json doc = json::parse(
        read_file((dir / ("portfolio_" + std::string(variant) + ".json")).string()));
    std::vector<cl::PortfolioEntry> portfolio;
    for (size_t i = 0; i < doc.size(); ++i) {
      cl::PortfolioEntry entry;
      entry.label = doc[i].contains("label") ? doc[i]["label"].get<std::string>()
                                             : "P" + std::to_string(i + 1);
      entry.dag = cl::ClaimDag::load(
          read_file((dir / doc[i]["claim_file"].get<std::string>()).string()));
      for (const auto& [term, v] : doc[i]["interpretations"].items()) {
        entry.interpretations[term] = v.get<std::string>();
      }
      portfolio.push_back(std::move(entry));
    }
    cl::ConsistencyResult result = cl::consistency(portfolio, {});
    json r;
    if (const auto* inc = std::get_if<cl::Inconsistent>(&result)) {
      r["result"] = "inconsistent";
      r["first"] = inc->first;
      r["second"] = inc->second;
      r["term"] = inc->term;
      r["interpretations"] = json{{inc->first, inc->interpretation_first},
                                  {inc->second, inc->interpretation_second}};
    } else {
      const auto& c = std::get<cl::Consistent>(result);
      r["result"] = "consistent";
      json checked = json::array();
      for (const cl::CheckedPair& p : c.checked) {
        checked.push_back(json{{"term", p.term}, {"first", p.first}, {"second", p.second}});
      }
      r["checked"] = std::move(checked);
    }
    check("consistency_" + std::string(variant), r);
  }

  // Certificate round trip on the broad-construction table.
  {
    cl::Certificate cert = cl::generate_certificate(memory, i1, theta);
    cl::VerificationResult res =
        cl::verify_certificate(cl::canonical_serialize(cert), memory.serialize());
    if (res.verified) {
      std::cout << "ok certificate_roundtrip\n";
    } else {
      std::cout << "FAIL certificate_roundtrip (" << res.reason << ")\n";
      ++failures;
    }
  }

  if (failures == 0) {
    std::cout << styled("1;32", "case-study: all fixtures match") << "\n";
    return 0;
  }
  std::cout << styled("1;31", "case-study: " + std::to_string(failures) +
                                  " mismatch(es)") << "\n";
  return 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Deterministic patent-claim lattice analysis engine"};
  app.require_subcommand(1);

  CommonOpts opts;
  std::string claim_path, scores_path, evidence_path, doe_path, input_path;
  std::string portfolio_path, cert_path, verify_claim_path;
  std::vector<std::string> analyze_scores;
  std::string fixtures_dir = "fixtures";

  CLI::App* analyze = app.add_subcommand("analyze", "Coverage of a claim under a score table");
  analyze->add_option("--claim", claim_path, "Claim JSON file")->required();
  analyze->add_option("--scores", analyze_scores,
                      "Score table (twice: base then alt for a waterfall)")
      ->required()
      ->expected(1, 2);
  add_common(analyze, opts);

  CLI::App* fto_cmd = app.add_subcommand("fto", "Freedom-to-operate check");
  fto_cmd->add_option("--claim", claim_path, "Claim JSON file")->required();
  fto_cmd->add_option("--scores", scores_path, "Score table")->required();
  add_common(fto_cmd, opts);

  CLI::App* sens = app.add_subcommand("sensitivity", "Construction sensitivity analysis");
  sens->add_option("--claim", claim_path, "Claim JSON file")->required();
  sens->add_option("--input", input_path, "Sensitivity input JSON")->required();
  add_common(sens, opts, /*with_cov=*/true);

  CLI::App* cons = app.add_subcommand("consistency", "Cross-claim interpretation check");
  cons->add_option("--portfolio", portfolio_path, "Portfolio JSON file")->required();
  add_common(cons, opts);

  CLI::App* doe_cmd = app.add_subcommand("doe", "Doctrine-of-equivalents analysis");
  doe_cmd->add_option("--claim", claim_path, "Claim JSON file")->required();
  doe_cmd->add_option("--scores", scores_path, "Score table")->required();
  doe_cmd->add_option("--evidence", evidence_path, "Evidence segments JSON")->required();
  doe_cmd->add_option("--doe", doe_path, "DOE context JSON")->required();
  add_common(doe_cmd, opts);

  CLI::App* verify = app.add_subcommand("verify", "Independently verify a certificate");
  verify->add_option("certificate", cert_path, "Certificate file")->required();
  verify->add_option("--claim", verify_claim_path,
                     "Claim file to check against the embedded digest");

  CLI::App* cs = app.add_subcommand("case-study", "Re-run bundled fixtures and diff against golden outputs");
  cs->add_option("--fixtures", fixtures_dir, "Fixture directory (default ./fixtures)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*analyze) return cmd_analyze(claim_path, analyze_scores, opts);
    if (*fto_cmd) return cmd_fto(claim_path, scores_path, opts);
    if (*sens) return cmd_sensitivity(claim_path, input_path, opts);
    if (*cons) return cmd_consistency(portfolio_path, opts);
    if (*doe_cmd) return cmd_doe(claim_path, scores_path, evidence_path, doe_path, opts);
    if (*verify) return cmd_verify(cert_path, verify_claim_path);
    if (*cs) return cmd_case_study(fixtures_dir);
  } catch (const cl::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  }
  return kExitUsage;
}
