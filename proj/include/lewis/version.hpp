#pragma once

namespace lewis {
inline constexpr const char* kVersion = "1.0.0";
}
