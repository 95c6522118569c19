#include "ca3sim/memory/calibration.hpp"

#include <algorithm>
#include <stdexcept>

namespace ca3sim {

CalibrationResult calibrate_inhibition(RegulatedConfig base, const CalibrationWorkload& workload,
                                       double lo, double hi, double step) {
    if (workload.patterns.empty() || workload.targets.empty())
        throw std::invalid_argument("calibration workload is empty");
    if (!(lo <= hi)) throw std::invalid_argument("calibration bounds are empty");
    if (step <= 0.0) throw std::invalid_argument("calibration step must be > 0");

    CalibrationResult result;
    for (double w = lo; w <= hi + 1e-9; w += step) {
        base.w_pc_pc_inh = w;
        CalibrationScore score;
        score.weight = w;
        MemoryModel model = MemoryModel::regulated(base);
        model.learn(workload.patterns);
        for (const auto& target : workload.targets) {
            RecallOutcome outcome = model.recall(target.cue, target.presentations);
            std::vector<std::uint32_t> extra, absent;
            std::set_difference(outcome.recalled.begin(), outcome.recalled.end(),
                                target.expected.begin(), target.expected.end(),
                                std::back_inserter(extra));
            std::set_difference(target.expected.begin(), target.expected.end(),
                                outcome.recalled.begin(), outcome.recalled.end(),
                                std::back_inserter(absent));
            score.spurious += extra.size();
            score.missing += absent.size();
        }
        result.scores.push_back(score);
        if (!result.success && score.perfect()) {
            result.success = true;
            result.w_pc_pc_inh = w;
        }
    }
    return result;
}

}  // namespace ca3sim
