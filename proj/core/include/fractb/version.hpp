#pragma once

namespace fractb {

inline constexpr const char* version = "1.0.0";

}  // namespace fractb
