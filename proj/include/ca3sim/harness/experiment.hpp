#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "ca3sim/harness/metrics.hpp"
#include "ca3sim/memory/models.hpp"

namespace ca3sim {

struct ExperimentOp {
    bool is_learn = false;
    std::size_t pattern_index = 0;      // learn ops
    std::set<std::uint32_t> cue;        // recall ops
    std::set<std::uint32_t> expected;   // expected completion (pattern minus cue)
    int presentations = 0;              // 0 = model default
    double landmark_ms = -1.0;          // reference completion time, < 0 = unchecked
};

struct ExperimentChecks {
    bool persistence = false;    // recalled state persists between recalls
    bool idle_silence = false;   // no PC spikes once a recall settles (regulated)
    /// Merge probe: recall of merge_pair.first's cue should light up
    /// merge_pair.second as well (non-orthogonal oscillatory behavior).
    std::optional<std::pair<std::size_t, std::size_t>> merge_pair;
    double landmark_tolerance_ms = 2.0;
};

struct ExperimentSpec {
    std::string name;
    ModelKind kind = ModelKind::oscillatory;
    OscillatoryConfig osc;
    RegulatedConfig reg;
    std::vector<Pattern> patterns;
    std::vector<ExperimentOp> ops;
    ExperimentChecks checks;
    std::uint64_t seed = 0;

    void validate() const;
    std::uint32_t n() const { return kind == ModelKind::oscillatory ? osc.n : reg.n; }
};

struct RecallReport {
    RecallMetrics metrics;
    RecallWindow window;
    Persistence persistence = Persistence::no_activity;
    bool persistence_checked = false;
    bool idle_silent = true;
    bool idle_checked = false;
    bool landmark_ok = true;
    double landmark_ms = -1.0;
};

struct ExperimentReport {
    std::string name;
    ModelKind kind = ModelKind::oscillatory;
    std::uint32_t n = 0;
    std::vector<RecallReport> recalls;
    bool merged_state = false;
    bool merge_expected = false;
    ResourceCounts resources;
    std::size_t spikes_learning = 0;  // regulated learning simulation
    std::size_t spikes_recall = 0;    // the simulation containing the recalls
    SpikeRecord learning_record{1.0};
    SpikeRecord recall_record{1.0};
    std::vector<PlasticWeight> weights;
    std::vector<RecallWindow> slot_annotations;
    bool pass = false;
};

/// Deterministic end-to-end execution: build -> learn -> (freeze) -> recall
/// ops -> metrics. `pass` means every expected completion was exact, every
/// requested check held, and an expected merge was observed.
ExperimentReport run_experiment(const ExperimentSpec& spec);

/// JSON experiment files (schema documented in the README).
ExperimentSpec spec_from_json(const std::string& text);
ExperimentSpec load_spec_file(const std::string& path);

}  // namespace ca3sim
