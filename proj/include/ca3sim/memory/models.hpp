#pragma once

#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include "ca3sim/engine/simulation.hpp"
#include "ca3sim/memory/patterns.hpp"

namespace ca3sim {

enum class ModelKind { oscillatory, regulated };

std::string to_string(ModelKind kind);
ModelKind model_kind_from_string(const std::string& s);

/// STDP defaults used by the oscillatory memory. The time constants and the
/// 2:1 potentiation/depression ratio follow the reference parameterization;
/// the magnitudes and the clamp ceiling are retuned for this engine so that
/// a learned assembly completes from partial cues but cannot re-ignite
/// itself between operations (see README, "Model parameters").
StdpParams oscillatory_stdp_defaults();

/// STDP defaults for the regulated memory: reference magnitudes, with the
/// clamp ceiling lowered so shared members of overlapping patterns cannot
/// out-drive the interneuron veto during learning.
StdpParams regulated_stdp_defaults();

struct OscillatoryConfig {
    std::uint32_t n = 15;
    double w_dg_pc = 13.0;
    double w_pc_pc_inh = 1.5;
    StdpParams stdp = oscillatory_stdp_defaults();
    double tau_refrac = 0.0;  // fixed for this model
    int presentations = 5;    // learning deliveries, consecutive ms
    int cue_deliveries = 5;   // recall deliveries, consecutive ms (4-5)
    double slot_ms = 14.0;    // one operation per slot
    double start_ms = 1.0;    // first slot origin

    void validate() const;
};

struct RegulatedConfig {
    std::uint32_t n = 15;
    double w_dg_pc = 13.0;
    double w_pc_pc_inh = 2.5;  // workload-dependent; see calibrate_inhibition
    double w_learning_inh = 6.0;
    double w_dg_inh = 12.0;
    double w_inh_pc = 2.0;
    StdpParams stdp = regulated_stdp_defaults();
    double tau_refrac = 2.0;  // fixed for this model
    int presentations = 4;
    int delivery_ms = 5;               // consecutive input ms per presentation
    double presentation_spacing = 12.0;
    double learn_slot_ms = 50.0;
    double recall_slot_ms = 14.0;
    double start_ms = 1.0;

    void validate() const;
};

/// DG(n) relay -> PC(n) one-to-one; PC recurrent collaterals all-to-all
/// excluding self, plastic excitatory plus static inhibitory; all delays
/// 1 ms; PC refractory 0. A build-time probe asserts the DG->PC weight is
/// suprathreshold (one relay spike always fires its PC from rest).
NetworkTopology build_oscillatory(const OscillatoryConfig& cfg);

/// DG(n), PC(n), INH(n), LEARNING(1): DG->PC one-to-one excitatory,
/// DG->INH one-to-one inhibitory (input vetoes its gate), INH->PC
/// one-to-one inhibitory, LEARNING->INH all excitatory, PC recurrent
/// collaterals as in the oscillatory model but with the calibrated lateral
/// inhibition; PC/INH refractory 2 ms.
NetworkTopology build_regulated(const RegulatedConfig& cfg);

struct ResourceCounts {
    std::uint64_t neurons = 0;
    std::uint64_t static_synapses = 0;  // headline counting convention
    std::uint64_t stdp_synapses = 0;
    /// The recurrent inhibitory collaterals, n*(n-1), which the headline
    /// static count leaves out; full_static_synapses includes them.
    std::uint64_t recurrent_inhibitory_synapses = 0;
    std::uint64_t full_static_synapses = 0;
    double learning_latency_ms = 0.0;
    double recall_latency_ms = 0.0;
};

ResourceCounts count_resources(ModelKind kind, std::uint32_t n);

/// Tallies an actually built topology under the same conventions.
ResourceCounts tally_topology(ModelKind kind, const NetworkTopology& topology,
                              std::uint32_t n);

// ---------------------------------------------------------------------------
// Operation scheduling shared by the facade and the experiment harness.

struct ScheduledOp {
    bool is_learn = false;
    std::set<std::uint32_t> indices;  // pattern (learn) or cue (recall)
    double slot_start = 0.0;
    int deliveries = 1;        // input volleys
    double delivery_stride = 1.0;  // ms between volleys
};

/// Recall evaluation window: completion spikes count strictly after the last
/// input delivery and before the slot closes; the cued indices themselves are
/// subtracted from the recalled set.
struct RecallWindow {
    std::set<std::uint32_t> cue;
    double slot_begin_ms = 0.0;  // cue onset (used by slot-wide probes)
    double cue_end_ms = 0.0;     // last input delivery
    double begin_ms = 0.0;       // first evaluated ms
    double end_ms = 0.0;         // slot close
};

struct BuiltSchedule {
    StimulusSchedule stimuli;
    double duration_ms = 0.0;
    std::vector<RecallWindow> windows;  // one per recall op, in order
};

BuiltSchedule build_oscillatory_schedule(const OscillatoryConfig& cfg,
                                         const std::vector<ScheduledOp>& ops);
BuiltSchedule build_regulated_learning_schedule(const RegulatedConfig& cfg,
                                                const std::vector<Pattern>& patterns);
BuiltSchedule build_regulated_recall_schedule(const RegulatedConfig& cfg,
                                              const std::vector<ScheduledOp>& recalls);

// ---------------------------------------------------------------------------

struct RecallOutcome {
    std::set<std::uint32_t> recalled;  // completion: window spikes minus cue
    SpikeRecord record;                // full record of the executed run
    RecallWindow window;
};

/// Learn/recall facade with the per-model phase protocols. The oscillatory
/// model keeps plasticity live and replays its whole operation timeline on
/// every recall (learning and recall share one simulation); the regulated
/// model learns once, freezes the weights, and runs recalls on the static
/// copy.
class MemoryModel {
public:
    static MemoryModel oscillatory(const OscillatoryConfig& cfg);
    static MemoryModel regulated(const RegulatedConfig& cfg);

    ModelKind kind() const { return kind_; }
    std::uint32_t n() const;

    /// Schedules every pattern (one slot each, in order), runs the learning
    /// phase, and returns the committed plastic weights.
    std::vector<PlasticWeight> learn(const std::vector<Pattern>& patterns);

    /// presentations == 0 picks the model default (5-volley cue for the
    /// oscillatory model, a single delivery for the regulated one).
    RecallOutcome recall(const Cue& cue, int presentations = 0);

    const std::vector<PlasticWeight>& snapshot() const { return snapshot_; }

private:
    explicit MemoryModel(ModelKind kind) : kind_(kind) {}

    RecallOutcome run_oscillatory_timeline();
    RecallOutcome run_regulated_recalls();

    ModelKind kind_;
    OscillatoryConfig osc_;
    RegulatedConfig reg_;
    bool learned_ = false;
    std::vector<ScheduledOp> osc_ops_;      // full oscillatory timeline
    std::vector<ScheduledOp> reg_recalls_;  // regulated recall timeline
    std::vector<PlasticWeight> snapshot_;
};

}  // namespace ca3sim
