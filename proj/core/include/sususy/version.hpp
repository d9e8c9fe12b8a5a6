#pragma once

namespace sususy {

inline constexpr const char* kToolName = "sususy";
inline constexpr const char* kToolVersion = "0.1.0";

}  // namespace sususy
