#pragma once

#include <string_view>

namespace spectra {

inline constexpr std::string_view kVersion = "1.0.0";

}  // namespace spectra
