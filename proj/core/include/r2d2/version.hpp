#pragma once

namespace r2d2 {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace r2d2
