#pragma once

namespace qal {

inline constexpr const char* kVersion = "qalife 0.1.0";

}  // namespace qal
