#pragma once

namespace sqgeom {

inline constexpr const char* kVersion = "1.0.0";

} // namespace sqgeom
