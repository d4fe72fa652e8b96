#pragma once

#include "eur/report.hpp"

namespace eur {

/// Named end-to-end scenarios; each runs a family of states through the
/// relation checks and returns a deterministic report for a fixed spec.
std::vector<std::string> scenario_names();
std::string scenario_description(const std::string& name);
bool has_scenario(const std::string& name);

Report run_scenario(const ScenarioSpec& spec);

}  // namespace eur
