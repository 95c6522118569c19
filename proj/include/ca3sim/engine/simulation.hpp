#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "ca3sim/engine/spike_record.hpp"
#include "ca3sim/engine/stimulus.hpp"
#include "ca3sim/engine/topology.hpp"

namespace ca3sim {

struct SimulationConfig {
    double dt = 1.0;
    double duration_ms = 0.0;
    bool record_voltages = false;
    /// Commit accumulated-but-unpaired STDP changes at the end of the run
    /// instead of discarding them.
    bool final_commit = false;
    /// Transmit committing pre spikes with the weight from before the commit
    /// (sensitivity switch; default transmits the newly committed weight).
    bool transmit_pre_commit_weight = false;

    void validate() const;
};

struct PlasticWeight {
    std::uint32_t pre = 0;
    std::uint32_t post = 0;
    double weight = 0.0;
};

struct SimulationResult {
    SpikeRecord spikes{1.0};
    std::vector<PlasticWeight> final_weights;
    /// Pending STDP deltas discarded at the end of the run (empty when
    /// final_commit is set or nothing was pending). Callers decide whether
    /// to warn.
    std::vector<PlasticWeight> discarded_pending;
    /// voltages[neuron][step], only if record_voltages was set.
    std::vector<std::vector<double>> voltages;
};

/// Runs the clock-driven simulation. Deterministic: identical inputs give
/// bit-identical results. Per-step order: deliver pending currents ->
/// integrate neurons in index order -> process plasticity -> enqueue the
/// step's outgoing spikes.
SimulationResult run_simulation(const NetworkTopology& topology, const StimulusSchedule& stimuli,
                                const SimulationConfig& config);

/// Weight CSV with header pre,post,weight_nA (plastic synapses, index order).
std::string weights_to_csv(const std::vector<PlasticWeight>& weights);
std::vector<PlasticWeight> weights_from_csv(const std::string& csv);

}  // namespace ca3sim
