#pragma once

#include <set>
#include <vector>

#include "ca3sim/memory/models.hpp"

namespace ca3sim {

/// One recall the calibrated network must get exactly right.
struct CalibrationTarget {
    Cue cue;
    std::set<std::uint32_t> expected;  // completion, i.e. pattern minus cue
    int presentations = 1;
};

struct CalibrationWorkload {
    std::vector<Pattern> patterns;
    std::vector<CalibrationTarget> targets;
};

struct CalibrationScore {
    double weight = 0.0;
    std::size_t spurious = 0;
    std::size_t missing = 0;
    bool perfect() const { return spurious == 0 && missing == 0; }
};

struct CalibrationResult {
    bool success = false;
    double w_pc_pc_inh = 0.0;  // smallest weight with perfect recall
    std::vector<CalibrationScore> scores;  // every candidate, ascending
};

/// Grid search over the lateral inhibition weight of the regulated model:
/// for each candidate the workload is learned, frozen, and recalled, and the
/// candidate is scored by total spurious/missing completions. Returns the
/// smallest perfect candidate; success == false leaves the score table for
/// diagnosis.
CalibrationResult calibrate_inhibition(RegulatedConfig base, const CalibrationWorkload& workload,
                                       double lo, double hi, double step = 0.25);

}  // namespace ca3sim
