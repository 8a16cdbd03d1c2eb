#pragma once

namespace monty {

inline constexpr const char* kToolVersion = "1.0.0";

}  // namespace monty
