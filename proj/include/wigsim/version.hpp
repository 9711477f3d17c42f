#pragma once

namespace wigsim {

inline constexpr const char* kVersion = "1.0.0";

}  // namespace wigsim
