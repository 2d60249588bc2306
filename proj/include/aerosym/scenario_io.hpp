// Scenario JSON parsing and summary serialization. Field names carry units
// (mass_kg, dt_s, ...) because unit mistakes dominate this domain.
#pragma once

#include <iosfwd>
#include <string>

#include "aerosym/scenario.hpp"

namespace aerosym {

/// Parse a scenario JSON document. `base_dir` resolves relative model-card
/// paths. Throws ConfigError with a field-level message on schema violations.
Scenario scenario_from_json(std::istream& in, const std::string& base_dir = ".");
Scenario scenario_from_json_file(const std::string& path);

/// Summary of a finished run as a JSON document.
std::string summary_to_json(const Scenario& scenario, const RunSummary& summary);

}  // namespace aerosym
