#pragma once

#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "claimlattice/claim_graph.hpp"
#include "claimlattice/lattice.hpp"
#include "claimlattice/scoring.hpp"

namespace claimlattice {

inline constexpr const char* kToolName = "claimlattice";
inline constexpr const char* kToolVersion = "0.1.0";

/// The five proof obligations every certificate must discharge. A valid
/// certificate carries all five with status "checked"; "assumed" marks an
/// obligation the generator skipped and forces rejection.
inline const std::vector<std::string>& obligation_names() {
  static const std::vector<std::string> names = {
      "acyclic", "lattice", "propagation", "bounded", "coverage_equality"};
  return names;
}

struct Obligation {
  std::string name;
  std::string status;  // "checked" | "assumed"
  std::string detail;  // evidence note; localizes failures, never trusted
};

/// A self-contained analysis record: the canonical claim, the score table,
/// the propagated effective scores, the coverage as an exact rational, and
/// the obligation ledger. Everything a checker needs to re-derive the
/// analysis from scratch is embedded.
///
/// Numeric fields are held as plain integers / decimal strings rather than
/// domain types so that tampered or hand-built certificates remain
/// representable; validity is the verifier's judgment, not the parser's.
struct Certificate {
  int schema_version = 1;
  nlohmann::json claim;  // canonical claim document
  std::string claim_digest;
  std::string claim_digest_algo = "sha256";
  std::string construction_id;
  std::map<std::string, long long> scores;
  long long theta = 0;
  std::map<std::string, long long> eff;
  std::string coverage_num;
  std::string coverage_den;
  std::vector<Obligation> obligations;
  std::string generator_tool = kToolName;
  std::string generator_version = kToolVersion;
};

/// Runs propagation and coverage over validated inputs and emits a
/// certificate with every obligation checked and evidence recorded.
Certificate generate_certificate(const ClaimDag& dag, const ScoreTable& scores,
                                 BasisPoints theta);

/// Byte-deterministic encoding: sorted keys, no insignificant whitespace,
/// integers and decimal strings only. serialize(parse(serialize(c))) is a
/// fixed point.
std::string canonical_serialize(const Certificate& cert);

/// Strict parse of the canonical form. Throws ParseError / SchemaError on
/// malformed bytes; never accepts floats.
Certificate parse_certificate(const std::string& bytes);

}  // namespace claimlattice
