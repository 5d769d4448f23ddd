#pragma once

namespace arctic {

inline constexpr const char* kVersion = "1.0.0";

}  // namespace arctic
