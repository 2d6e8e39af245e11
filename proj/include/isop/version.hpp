#pragma once

namespace isop {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace isop
