#pragma once

namespace entsearch {

inline constexpr const char* kVersion = "0.1.0";

} // namespace entsearch
