#pragma once

namespace wiretap {

inline constexpr const char* kVersion = "1.0.0";

}  // namespace wiretap
