#pragma once

#include <string>
#include <vector>

#include "qal/config.hpp"

namespace qal::cli {

// Named, fully pinned experiment presets. Unknown names raise ConfigError
// listing the valid set.
SimConfig scenario(const std::string& name);

const std::vector<std::string>& scenario_names();

}  // namespace qal::cli
