#pragma once

namespace misseat {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace misseat
