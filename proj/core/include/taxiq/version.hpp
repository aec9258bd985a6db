#pragma once

namespace taxiq {

inline constexpr const char* kVersion = "1.0.0";

}  // namespace taxiq
