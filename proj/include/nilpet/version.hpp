#pragma once

namespace nilpet {

inline constexpr const char* kVersion = "0.1.0";

} // namespace nilpet
