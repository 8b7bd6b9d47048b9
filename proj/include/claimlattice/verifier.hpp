#pragma once

#include <optional>
#include <string>

namespace claimlattice {

/// Outcome of independent certificate verification. Deterministic for
/// fixed input bytes; `reason` names the first failing check and `detail`
/// localizes it.
struct VerificationResult {
  bool verified = false;
  std::string reason;  // empty when verified
  std::string detail;

  static VerificationResult ok() { return {true, "", ""}; }
  static VerificationResult rejected(std::string reason, std::string detail) {
    return {false, std::move(reason), std::move(detail)};
  }
};

/// The trusted checker. Accepts arbitrary bytes and never throws: every
/// failure is a Rejected result. All five obligations are re-derived from
/// scratch with code independent of the generator's propagation and
/// coverage paths — its own cycle check, its own effective-score
/// recursion, its own rational coverage sum.
///
/// `external_canonical_claim` are canonical claim bytes supplied by the
/// caller for the digest cross-check; pass the output of
/// ClaimDag::serialize() on the claim file being audited.
VerificationResult verify_certificate(
    const std::string& certificate_bytes,
    const std::optional<std::string>& external_canonical_claim = std::nullopt);

}  // namespace claimlattice
