#pragma once

namespace hecke {
inline constexpr const char* kVersion = "0.1.0";
}
