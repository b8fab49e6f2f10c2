// Minimal SHA-256, used to fingerprint workspace bytes in certificates.

#pragma once

#include <cstdint>
#include <string>

namespace sepeq {

/// Hex digest of the given bytes.
std::string sha256_hex(const std::string& bytes);

}  // namespace sepeq
