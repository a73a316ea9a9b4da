#pragma once

#include <map>
#include <string>
#include <vector>

#include "revcoll/config.hpp"

namespace revcoll {

struct ScenarioParam {
  std::string name;
  double default_value;
  std::string meaning;
};

struct ScenarioInfo {
  std::string name;
  std::string description;
  std::vector<ScenarioParam> params;
};

using ScenarioParams = std::map<std::string, double>;

std::vector<ScenarioInfo> scenario_library();

// Resolved built-in config. Throws unknown-scenario for an unknown name and
// config-invalid for an unknown or out-of-range parameter.
ExperimentConfig scenario_config(const std::string& name, const ScenarioParams& params = {});

// "three_dirac(alpha=1e-2)" or "epsilon_family(0.2)" style specs; a bare
// positional value binds to the first parameter.
ExperimentConfig scenario_from_spec(const std::string& spec);

}  // namespace revcoll
