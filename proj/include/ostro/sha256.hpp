#pragma once

#include <cstdint>
#include <string>

namespace ostro {

/// Hex-encoded SHA-256 digest; used to fingerprint report inputs.
std::string sha256_hex(const std::string& data);

}  // namespace ostro
