#pragma once

#include <string>

#include "vml/experiments.hpp"
#include "vml/norms.hpp"

namespace vml {

// JSON with the materialized config embedded so every report replays.
std::string norm_report_json(const std::string& norm_type,
                             const NormResult& result,
                             const std::string& config_ini);
std::string norm_report_csv(const NormResult& result);

std::string boundedness_report_json(const BoundednessReport& report,
                                    const std::string& config_ini);
// Per-function ratio table.
std::string boundedness_report_csv(const BoundednessReport& report);

}  // namespace vml
