#pragma once

namespace narcert {

inline constexpr const char* kVersion = "1.0.0";
/// Bumped whenever a certificate field changes meaning.
inline constexpr int kSchemaVersion = 1;

}  // namespace narcert
