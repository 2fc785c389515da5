#pragma once

#include <string>

#include "exemplar/pipeline.hpp"
#include "exemplar/scenario.hpp"

namespace exemplar {

// {traits, exemplars, admirations, actions, duration_ms} plus queries when
// the scenario declared any. Deterministic except for duration_ms.
std::string report_json(const RunResult& result, const Scenario& scn);

std::string report_text(const RunResult& result, const Scenario& scn);

}  // namespace exemplar
