#pragma once

namespace covlie {

inline constexpr const char* kEngineVersion = "0.1.0";

}  // namespace covlie
