#pragma once

#include <cmath>
#include <stdexcept>

namespace ca3sim {

/// Membrane and synapse constants of a current-based LIF neuron.
/// Units: capacitance nF, time constants ms, potentials mV.
struct NeuronParams {
    double c_m = 0.27;
    double tau_m = 10.0;
    double tau_syn_exc = 0.3;
    double tau_syn_inh = 0.3;
    double v_reset = -60.0;
    double v_rest = -60.0;
    double v_thresh = -55.0;
    double tau_refrac = 0.0;

    void validate() const;
};

/// Per-neuron dynamic state. i_exc/i_inh are the instantaneous synaptic
/// currents (nA); refrac_remaining counts whole timesteps left in the
/// refractory hold.
struct NeuronState {
    double v = 0.0;
    double i_exc = 0.0;
    double i_inh = 0.0;
    int refrac_remaining = 0;
};

/// Step propagator for the sub-threshold dynamics, precomputed once per
/// (params, dt) pair. The voltage advance is the exact solution of
///   tau_m dv/dt = (v_rest - v) + (tau_m/c_m) * i(t),  i(t) = i0 e^(-t/tau_s)
/// over one step, so a spike train delivered on step boundaries is
/// integrated without discretization error between samples.
struct LifCoefficients {
    double decay_m = 0.0;       // exp(-dt/tau_m)
    double decay_exc = 0.0;     // exp(-dt/tau_syn_exc)
    double decay_inh = 0.0;     // exp(-dt/tau_syn_inh)
    double coupling_exc = 0.0;  // mV contributed per nA of step-start current
    double coupling_inh = 0.0;
    int refrac_steps = 0;       // ceil(tau_refrac/dt)

    static LifCoefficients compute(const NeuronParams& p, double dt);
};

/// Advances one neuron by one timestep. Input currents must already be in
/// state.i_exc / state.i_inh (delivery happens before integration).
/// Returns true if the neuron fired this step.
bool integrate_neuron_step(NeuronState& state, const NeuronParams& params,
                           const LifCoefficients& c);

/// Convenience overload matching the one-shot signature; recomputes the
/// coefficients, so use the cached form in loops.
bool integrate_neuron_step(NeuronState& state, const NeuronParams& params, double dt);

inline NeuronState make_resting_state(const NeuronParams& p) {
    return NeuronState{p.v_rest, 0.0, 0.0, 0};
}

}  // namespace ca3sim
