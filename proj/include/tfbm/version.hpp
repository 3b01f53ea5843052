#pragma once

#include <string>
#include <utility>
#include <vector>

namespace tfbm {

inline constexpr const char* kVersion = "1.0.0";

/// (component, version) for this library and the numerical backends it uses.
std::vector<std::pair<std::string, std::string>> component_versions();

}  // namespace tfbm
