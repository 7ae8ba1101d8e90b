#pragma once

namespace atomos {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace atomos
