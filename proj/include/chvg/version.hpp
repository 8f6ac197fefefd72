#pragma once

#define CHVG_VERSION_STRING "0.1.0"

namespace chvg {
inline constexpr const char* kVersion = CHVG_VERSION_STRING;
}
