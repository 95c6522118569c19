#pragma once

#include <cstdint>
#include <vector>

namespace ca3sim {

/// Pair-based additive STDP with hard clamping. a_plus/a_minus are in nA;
/// the weight change for one (pre, post) pairing is
///   +a_plus  * exp(-(t_post - t_pre)/tau_plus)   if the pre spike leads,
///   -a_minus * exp(-(t_pre - t_post)/tau_minus)  if the post spike leads.
/// Same-timestep pairs contribute nothing. Changes accumulate in a pending
/// buffer and are committed to the weight only when a presynaptic spike
/// occurs, clamped to [w_min, w_max].
struct StdpParams {
    double tau_plus = 3.0;
    double tau_minus = 2.0;
    double a_plus = 6.0;
    double a_minus = 3.0;
    double w_max = 12.0;
    double w_min = 0.0;
    double w_init = 0.0;
    double delay_ms = 1.0;

    void validate() const;

    /// Spike-history horizon; entries older than this contribute < 1e-4 of
    /// a_plus/a_minus and may be dropped.
    double history_horizon() const;
};

/// Evaluates the pairing rule for delta_t = t_post - t_pre.
double stdp_pairing_delta(double delta_t, const StdpParams& params);

/// A plastic synapse with its STDP bookkeeping. Histories hold recent spike
/// times in ms, oldest first.
struct PlasticSynapse {
    std::uint32_t pre = 0;
    std::uint32_t post = 0;
    double weight = 0.0;
    double pending_delta = 0.0;
    std::vector<double> pre_history;
    std::vector<double> post_history;

    /// Pairs a postsynaptic spike at time t with the recorded presynaptic
    /// spikes (potentiation into pending_delta) and records t. Does not
    /// touch the committed weight.
    void on_post_spike(double t, const StdpParams& params);

    /// Pairs a presynaptic spike at time t with the recorded postsynaptic
    /// spikes (depression into pending_delta), records t, then commits the
    /// pending change with clamping. Returns the committed weight, which is
    /// also the transmission weight of this spike under the default policy.
    double on_pre_spike(double t, const StdpParams& params);

    /// Clamp-commit whatever is pending without a pre spike (end-of-phase
    /// flush; see freeze()).
    void commit(const StdpParams& params);

    void prune_histories(double now, const StdpParams& params);
};

}  // namespace ca3sim
