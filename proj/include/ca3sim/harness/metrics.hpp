#pragma once

#include <set>
#include <string>

#include "ca3sim/engine/spike_record.hpp"
#include "ca3sim/memory/models.hpp"

namespace ca3sim {

/// Per-cue recall quality. `recalled` is the completion (window spikes minus
/// the cue's own indices); latency is measured from the last cue delivery to
/// the first completion spike.
struct RecallMetrics {
    std::set<std::uint32_t> recalled;
    std::set<std::uint32_t> expected;
    bool exact = false;
    std::size_t spurious = 0;
    std::size_t missing = 0;
    double latency_ms = -1.0;
    double first_completion_ms = -1.0;
};

RecallMetrics evaluate_recall(const SpikeRecord& record, const RecallWindow& window,
                              const std::set<std::uint32_t>& expected,
                              const std::string& population = "PC");

/// Outcome of the persistence probe. `no_activity` is deliberately distinct
/// from `broken`: an idle window is not a failed oscillation.
enum class Persistence { persistent, no_activity, broken };

std::string to_string(Persistence p);

/// True persistence: the window's spike activity, segmented into cycles
/// (maximal runs of consecutive active timesteps), must emit exactly the
/// pattern's set in every cycle, with no silent gap longer than 3 ms --
/// neither between cycles nor against the window edges.
Persistence detect_state_persistence(const SpikeRecord& record, const Pattern& pattern,
                                     double begin_ms, double end_ms,
                                     const std::string& population = "PC");

/// Merged-state probe for the non-orthogonal oscillatory case: fires when a
/// cycle in the recall slot emits an element that belongs only to the other
/// pattern, i.e. the cue's shared part has recruited the unrelated remainder.
bool detect_merged_state(const SpikeRecord& record, const Pattern& cued, const Pattern& other,
                         const RecallWindow& window, const std::string& population = "PC");

}  // namespace ca3sim
