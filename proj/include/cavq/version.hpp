#pragma once

namespace cavq {
inline constexpr const char* kVersion = "0.1.0";
}
