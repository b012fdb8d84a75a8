#pragma once

namespace raretrend {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace raretrend
