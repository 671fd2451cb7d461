#pragma once

#include <string_view>

namespace stitcher {

inline constexpr std::string_view kToolVersion = "1.0.0";

} // namespace stitcher
