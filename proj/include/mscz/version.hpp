#pragma once

namespace mscz {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace mscz
