#include "ca3sim/engine/lif.hpp"

namespace ca3sim {

void NeuronParams::validate() const {
    if (c_m <= 0.0) throw std::invalid_argument("NeuronParams: c_m must be > 0");
    if (tau_m <= 0.0 || tau_syn_exc <= 0.0 || tau_syn_inh <= 0.0)
        throw std::invalid_argument("NeuronParams: time constants must be > 0");
    if (tau_refrac < 0.0)
        throw std::invalid_argument("NeuronParams: tau_refrac must be >= 0");
    if (v_reset > v_thresh)
        throw std::invalid_argument("NeuronParams: v_reset must be <= v_thresh");
    if (v_rest >= v_thresh)
        throw std::invalid_argument("NeuronParams: v_rest must be < v_thresh");
}

namespace {

// Integral of e^(-(dt-s)/tau_m) * e^(-s/tau_s) ds over one step, divided by
// c_m. Collapses to dt*e^(-dt/tau)/c_m when the two constants coincide.
double current_coupling(double tau_m, double tau_s, double c_m, double dt) {
    if (std::abs(tau_m - tau_s) < 1e-12 * tau_m) {
        return dt * std::exp(-dt / tau_m) / c_m;
    }
    const double a = std::exp(-dt / tau_m);
    const double b = std::exp(-dt / tau_s);
    return (tau_s * tau_m) / (c_m * (tau_m - tau_s)) * (a - b);
}

}  // namespace

LifCoefficients LifCoefficients::compute(const NeuronParams& p, double dt) {
    if (dt <= 0.0) throw std::invalid_argument("LifCoefficients: dt must be > 0");
    p.validate();
    LifCoefficients c;
    c.decay_m = std::exp(-dt / p.tau_m);
    c.decay_exc = std::exp(-dt / p.tau_syn_exc);
    c.decay_inh = std::exp(-dt / p.tau_syn_inh);
    c.coupling_exc = current_coupling(p.tau_m, p.tau_syn_exc, p.c_m, dt);
    c.coupling_inh = current_coupling(p.tau_m, p.tau_syn_inh, p.c_m, dt);
    c.refrac_steps = static_cast<int>(std::ceil(p.tau_refrac / dt - 1e-9));
    if (c.refrac_steps < 0) c.refrac_steps = 0;
    return c;
}

bool integrate_neuron_step(NeuronState& state, const NeuronParams& params,
                           const LifCoefficients& c) {
    bool spiked = false;
    bool held = false;
    if (state.refrac_remaining > 0) {
        // Countdown such that the earliest re-fire lands exactly
        // ceil(tau_refrac/dt) steps after the spike, the same floor the
        // continuous dynamics impose.
        --state.refrac_remaining;
        if (state.refrac_remaining > 0) {
            state.v = params.v_reset;
            held = true;
        }
    }
    if (!held) {
        state.v = params.v_rest + (state.v - params.v_rest) * c.decay_m +
                  state.i_exc * c.coupling_exc - state.i_inh * c.coupling_inh;
        if (state.v >= params.v_thresh) {
            spiked = true;
            state.v = params.v_reset;
            state.refrac_remaining = c.refrac_steps;
        }
    }
    state.i_exc *= c.decay_exc;
    state.i_inh *= c.decay_inh;
    return spiked;
}

bool integrate_neuron_step(NeuronState& state, const NeuronParams& params, double dt) {
    return integrate_neuron_step(state, params, LifCoefficients::compute(params, dt));
}

}  // namespace ca3sim
