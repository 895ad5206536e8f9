#pragma once

namespace felab {
inline constexpr const char* kVersion = "0.1.0";
}
