#pragma once

namespace sdj {
inline constexpr const char* kVersion = "0.1.0";
}
