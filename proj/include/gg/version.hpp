#pragma once

namespace gg {

inline constexpr const char* kCodeVersion = "1.0.0";
inline constexpr int kSchemaVersion = 1;

}  // namespace gg
