#pragma once

namespace haarlin {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace haarlin
