#include "ca3sim/engine/simulation.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

namespace ca3sim {

void SimulationConfig::validate() const {
    if (dt <= 0.0) throw std::invalid_argument("SimulationConfig: dt must be > 0");
    if (duration_ms <= 0.0) throw std::invalid_argument("SimulationConfig: duration must be > 0");
    const double steps = duration_ms / dt;
    if (std::abs(steps - std::round(steps)) > 1e-6)
        throw std::invalid_argument("SimulationConfig: duration must be a multiple of dt");
}

namespace {

struct Delivery {
    std::uint32_t post;
    bool excitatory;
    double weight;
};

std::uint32_t delay_steps(double delay_ms, double dt) {
    return static_cast<std::uint32_t>(std::llround(delay_ms / dt));
}

}  // namespace

SimulationResult run_simulation(const NetworkTopology& topology, const StimulusSchedule& stimuli,
                                const SimulationConfig& config) {
    config.validate();
    topology.validate(config.dt);
    stimuli.validate(topology, config.duration_ms);

    const std::uint32_t n = topology.neuron_count();
    const std::uint32_t n_steps = static_cast<std::uint32_t>(std::llround(config.duration_ms / config.dt));

    // Per-neuron params/coefficients resolved from the owning population.
    std::vector<const Population*> owner(n, nullptr);
    for (const auto& pop : topology.populations)
        for (std::uint32_t i = 0; i < pop.size; ++i) owner[pop.first + i] = &pop;
    std::vector<LifCoefficients> coeffs(topology.populations.size());
    std::vector<NeuronState> state(n);
    for (std::size_t p = 0; p < topology.populations.size(); ++p) {
        const auto& pop = topology.populations[p];
        if (!pop.spike_source) {
            coeffs[p] = LifCoefficients::compute(pop.params, config.dt);
            for (std::uint32_t i = 0; i < pop.size; ++i)
                state[pop.first + i] = make_resting_state(pop.params);
        }
    }
    std::vector<std::uint32_t> pop_index(n, 0);
    for (std::size_t p = 0; p < topology.populations.size(); ++p)
        for (std::uint32_t i = 0; i < topology.populations[p].size; ++i)
            pop_index[topology.populations[p].first + i] = static_cast<std::uint32_t>(p);

    // Stimulus events decoded to (global neuron, step), grouped per step.
    std::vector<std::vector<std::uint32_t>> source_fires(n_steps + 1);
    for (const auto& [name, events] : stimuli.events()) {
        const Population& pop = topology.population(name);
        for (const auto& e : events) {
            const double steps_exact = e.time_ms / config.dt;
            if (std::abs(steps_exact - std::round(steps_exact)) > 1e-6)
                throw std::invalid_argument("stimulus time is not a multiple of dt");
            const std::uint32_t step = static_cast<std::uint32_t>(std::llround(steps_exact));
            if (step <= n_steps) source_fires[step].push_back(pop.first + e.neuron);
        }
    }

    // Outgoing static synapses indexed by presynaptic neuron. Plastic state
    // is copied so the input topology stays untouched; the starting weights
    // are whatever the builder put there (normally w_init).
    std::vector<std::vector<std::uint32_t>> static_out(n);
    for (std::uint32_t s = 0; s < topology.static_synapses.size(); ++s)
        static_out[topology.static_synapses[s].pre].push_back(s);
    std::vector<PlasticSynapse> plastic = topology.plastic_synapses;

    std::uint32_t max_delay = delay_steps(topology.stdp.delay_ms, config.dt);
    for (const auto& s : topology.static_synapses)
        max_delay = std::max(max_delay, delay_steps(s.delay_ms, config.dt));
    std::vector<std::vector<Delivery>> pending(max_delay + 1);

    SimulationResult result;
    result.spikes = SpikeRecord(config.dt);
    if (config.record_voltages) result.voltages.assign(n, std::vector<double>(n_steps + 1, 0.0));

    std::vector<char> fired(n, 0);
    const StdpParams& rule = topology.stdp;
    const std::uint32_t stdp_delay = delay_steps(rule.delay_ms, config.dt);

    for (std::uint32_t step = 0; step <= n_steps; ++step) {
        // 1. Deliver currents scheduled for this step.
        auto& slot = pending[step % (max_delay + 1)];
        for (const auto& d : slot) {
            (d.excitatory ? state[d.post].i_exc : state[d.post].i_inh) += d.weight;
        }
        slot.clear();

        // 2. Integrate neurons in index order; spike sources fire from the schedule.
        std::fill(fired.begin(), fired.end(), 0);
        for (std::uint32_t i = 0; i < n; ++i) {
            const Population& pop = *owner[i];
            if (pop.spike_source) continue;
            if (integrate_neuron_step(state[i], pop.params, coeffs[pop_index[i]])) fired[i] = 1;
            if (config.record_voltages) result.voltages[i][step] = state[i].v;
        }
        for (std::uint32_t i : source_fires[step]) fired[i] = 1;

        // 3. Plasticity: potentiation accrual for postsynaptic spikes, then
        //    depression + commit for presynaptic spikes. Same-step pairs are
        //    worth zero, so the relative order has no numeric effect.
        const double t_ms = step * config.dt;
        std::vector<std::pair<std::uint32_t, double>> plastic_transmits;
        for (std::uint32_t s = 0; s < plastic.size(); ++s) {
            if (fired[plastic[s].post]) plastic[s].on_post_spike(t_ms, rule);
        }
        for (std::uint32_t s = 0; s < plastic.size(); ++s) {
            if (fired[plastic[s].pre]) {
                const double before = plastic[s].weight;
                const double committed = plastic[s].on_pre_spike(t_ms, rule);
                plastic_transmits.emplace_back(
                    s, config.transmit_pre_commit_weight ? before : committed);
            }
        }

        // 4. Record and enqueue outgoing spikes.
        for (std::uint32_t i = 0; i < n; ++i) {
            if (!fired[i]) continue;
            const Population& pop = *owner[i];
            result.spikes.add(pop.name, i - pop.first, step);
            for (std::uint32_t s : static_out[i]) {
                const StaticSynapse& syn = topology.static_synapses[s];
                const std::uint32_t at = step + delay_steps(syn.delay_ms, config.dt);
                if (at > n_steps) continue;
                pending[at % (max_delay + 1)].push_back(
                    Delivery{syn.post, syn.receptor == Receptor::excitatory, syn.weight});
            }
        }
        for (const auto& [s, w] : plastic_transmits) {
            if (w <= 0.0) continue;
            const std::uint32_t at = step + stdp_delay;
            if (at > n_steps) continue;
            pending[at % (max_delay + 1)].push_back(Delivery{plastic[s].post, true, w});
        }
    }

    result.final_weights.reserve(plastic.size());
    for (auto& s : plastic) {
        if (s.pending_delta != 0.0) {
            if (config.final_commit)
                s.commit(rule);
            else
                result.discarded_pending.push_back(PlasticWeight{s.pre, s.post, s.pending_delta});
        }
        result.final_weights.push_back(PlasticWeight{s.pre, s.post, s.weight});
    }
    return result;
}

std::string weights_to_csv(const std::vector<PlasticWeight>& weights) {
    std::string out = "pre,post,weight_nA\n";
    char buf[64];
    for (const auto& w : weights) {
        std::snprintf(buf, sizeof(buf), "%u,%u,%.9f\n", w.pre, w.post, w.weight);
        out += buf;
    }
    return out;
}

std::vector<PlasticWeight> weights_from_csv(const std::string& csv) {
    std::vector<PlasticWeight> out;
    std::istringstream in(csv);
    std::string line;
    if (!std::getline(in, line)) throw std::invalid_argument("empty weight CSV");
    if (line != "pre,post,weight_nA")
        throw std::invalid_argument("bad weight CSV header: " + line);
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        PlasticWeight w;
        if (std::sscanf(line.c_str(), "%u,%u,%lf", &w.pre, &w.post, &w.weight) != 3)
            throw std::invalid_argument("bad weight CSV row: " + line);
        out.push_back(w);
    }
    return out;
}

}  // namespace ca3sim
