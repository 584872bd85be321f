#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "l1dg/solver.hpp"

namespace l1dg {

class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Parse and validate a JSON experiment description, filling defaults.
/// Unknown keys are rejected; enum near-misses come back with a suggestion.
/// Overrides are dotted-path assignments like "sensor.kappa=0.9" applied
/// before validation.
RunConfig parse_config(const std::string& text,
                       const std::vector<std::string>& overrides = {});

/// The fully resolved configuration as a JSON document (all defaults
/// materialized). Written next to the outputs so a run can be replayed.
std::string effective_config_json(const RunConfig& config);

} // namespace l1dg
