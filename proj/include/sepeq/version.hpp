#pragma once

namespace sepeq {

inline constexpr const char* kToolVersion = "sepeq 1.0.0";
inline constexpr int kFormatVersion = 1;

}  // namespace sepeq
