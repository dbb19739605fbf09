#pragma once

namespace mafr {

inline constexpr const char* kVersion = "0.1.0";

} // namespace mafr
