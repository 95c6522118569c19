#pragma once

#include <string>

#include "ca3sim/harness/experiment.hpp"

namespace ca3sim {

/// Human-readable report (documented line-oriented schema).
std::string report_to_text(const ExperimentReport& report);

/// Machine-readable twin of the text report.
std::string report_to_json(const ExperimentReport& report);

}  // namespace ca3sim
