#pragma once

namespace ehl {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace ehl
