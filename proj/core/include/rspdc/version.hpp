#pragma once

namespace rspdc {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace rspdc
