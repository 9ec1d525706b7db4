#pragma once

namespace pretestkit {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace pretestkit
