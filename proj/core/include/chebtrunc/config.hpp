#pragma once

#include <string>
#include <vector>

#include "chebtrunc/experiment.hpp"

namespace chebtrunc {

/// Parse the flat key = value experiment-config format. Unknown or duplicate
/// keys are rejected; '#' starts a comment. See the README for the grammar.
ExperimentConfig parse_config(const std::string& text);
ExperimentConfig load_config(const std::string& path);

/// Sub-parsers shared with the CLI flags.
NoiseField parse_noise_spec(const std::string& spec);
TargetSpec parse_target_spec(const std::string& spec);
std::vector<int> parse_n_grid(const std::string& spec);
NHatRule parse_n_hat_rule(const std::string& spec);

}  // namespace chebtrunc
