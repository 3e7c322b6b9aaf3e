#pragma once

namespace torustrace {

inline constexpr const char* kVersion = "0.1.0";

} // namespace torustrace
