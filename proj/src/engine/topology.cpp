#include "ca3sim/engine/topology.hpp"

#include <cmath>
#include <stdexcept>

namespace ca3sim {

std::uint32_t NetworkTopology::add_population(const std::string& name, std::uint32_t size,
                                              const NeuronParams& params) {
    if (size == 0) throw std::invalid_argument("population '" + name + "' is empty");
    if (find_population(name)) throw std::invalid_argument("duplicate population '" + name + "'");
    Population pop;
    pop.name = name;
    pop.size = size;
    pop.params = params;
    pop.first = neuron_count();
    populations.push_back(pop);
    return static_cast<std::uint32_t>(populations.size() - 1);
}

std::uint32_t NetworkTopology::add_spike_source(const std::string& name, std::uint32_t size) {
    const std::uint32_t idx = add_population(name, size, NeuronParams{});
    populations[idx].spike_source = true;
    return idx;
}

std::uint32_t NetworkTopology::neuron_count() const {
    std::uint32_t n = 0;
    for (const auto& p : populations) n += p.size;
    return n;
}

const Population* NetworkTopology::find_population(const std::string& name) const {
    for (const auto& p : populations)
        if (p.name == name) return &p;
    return nullptr;
}

const Population& NetworkTopology::population(const std::string& name) const {
    const Population* p = find_population(name);
    if (!p) throw std::invalid_argument("no population named '" + name + "'");
    return *p;
}

const Population& NetworkTopology::population_of(std::uint32_t global_index) const {
    for (const auto& p : populations)
        if (global_index >= p.first && global_index < p.first + p.size) return p;
    throw std::out_of_range("neuron index outside all populations");
}

void NetworkTopology::validate(double dt) const {
    if (populations.empty()) throw std::invalid_argument("topology has no populations");
    const std::uint32_t n = neuron_count();
    stdp.validate();
    auto check_delay = [dt](double delay_ms) {
        if (delay_ms < dt - 1e-9)
            throw std::invalid_argument("synapse delay below one timestep");
        const double steps = delay_ms / dt;
        if (std::abs(steps - std::round(steps)) > 1e-6)
            throw std::invalid_argument("synapse delay is not a multiple of dt");
    };
    auto check_target = [this, n](std::uint32_t post) {
        if (post >= n) throw std::invalid_argument("synapse target out of range");
        if (population_of(post).spike_source)
            throw std::invalid_argument("synapse targets a spike source");
    };
    for (const auto& s : static_synapses) {
        if (s.pre >= n) throw std::invalid_argument("synapse source out of range");
        check_target(s.post);
        if (s.weight < 0.0) throw std::invalid_argument("negative synapse weight");
        check_delay(s.delay_ms);
    }
    for (const auto& s : plastic_synapses) {
        if (s.pre >= n) throw std::invalid_argument("plastic synapse source out of range");
        check_target(s.post);
    }
    check_delay(stdp.delay_ms);
    for (const auto& p : populations)
        if (!p.spike_source) p.params.validate();
}

}  // namespace ca3sim
