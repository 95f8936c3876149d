#pragma once

namespace basket {

inline constexpr const char* kToolName = "basketopt";
inline constexpr const char* kToolVersion = "0.1.0";

}  // namespace basket
