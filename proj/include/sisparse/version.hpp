#pragma once

namespace sisparse {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace sisparse
