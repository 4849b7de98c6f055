#pragma once
#include <string>
#include <vector>

#include "ecoepi/config.hpp"

namespace ecoepi {

// Bundled ground-truth run configurations: the baseline parameter set at both
// studied cannibalism rates, the five diffusion rows of the simulation study,
// the two Lyapunov-spectrum runs, and the parameter-plane scan. The files
// under configs/ mirror these (see the `presets` subcommand).
const std::vector<std::string>& preset_names();
bool is_preset(const std::string& name);
RunConfig preset(const std::string& name);  // throws validation_error on unknown

// The baseline biological parameters shared by every preset.
ModelParams baseline_params();

}  // namespace ecoepi
