#include "ca3sim/plasticity/stdp.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace ca3sim {

void StdpParams::validate() const {
    if (tau_plus <= 0.0 || tau_minus <= 0.0)
        throw std::invalid_argument("StdpParams: tau_plus/tau_minus must be > 0");
    if (a_plus < 0.0 || a_minus < 0.0)
        throw std::invalid_argument("StdpParams: a_plus/a_minus must be >= 0");
    if (w_min > w_init || w_init > w_max)
        throw std::invalid_argument("StdpParams: need w_min <= w_init <= w_max");
    if (delay_ms <= 0.0)
        throw std::invalid_argument("StdpParams: delay must be > 0");
}

double StdpParams::history_horizon() const {
    return 10.0 * std::max(tau_plus, tau_minus);
}

double stdp_pairing_delta(double delta_t, const StdpParams& params) {
    if (delta_t > 0.0) return params.a_plus * std::exp(-delta_t / params.tau_plus);
    if (delta_t < 0.0) return -params.a_minus * std::exp(delta_t / params.tau_minus);
    return 0.0;
}

void PlasticSynapse::on_post_spike(double t, const StdpParams& params) {
    for (double t_pre : pre_history) {
        if (t > t_pre) pending_delta += params.a_plus * std::exp(-(t - t_pre) / params.tau_plus);
    }
    post_history.push_back(t);
    prune_histories(t, params);
}

double PlasticSynapse::on_pre_spike(double t, const StdpParams& params) {
    for (double t_post : post_history) {
        if (t > t_post) pending_delta -= params.a_minus * std::exp(-(t - t_post) / params.tau_minus);
    }
    pre_history.push_back(t);
    commit(params);
    prune_histories(t, params);
    return weight;
}

void PlasticSynapse::commit(const StdpParams& params) {
    weight = std::clamp(weight + pending_delta, params.w_min, params.w_max);
    pending_delta = 0.0;
}

void PlasticSynapse::prune_histories(double now, const StdpParams& params) {
    const double cutoff = now - params.history_horizon();
    auto drop = [cutoff](std::vector<double>& h) {
        h.erase(h.begin(), std::find_if(h.begin(), h.end(),
                                        [cutoff](double t) { return t >= cutoff; }));
    };
    drop(pre_history);
    drop(post_history);
}

}  // namespace ca3sim
