#pragma once

#include <cstdint>
#include <string>

namespace claimlattice {

/// SHA-256 digest of `data`, returned as lowercase hex.
std::string sha256_hex(const std::string& data);

}  // namespace claimlattice
