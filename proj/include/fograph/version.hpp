#pragma once

namespace fograph {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace fograph
