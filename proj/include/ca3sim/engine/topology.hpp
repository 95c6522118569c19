#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ca3sim/engine/lif.hpp"
#include "ca3sim/plasticity/stdp.hpp"

namespace ca3sim {

enum class Receptor { excitatory, inhibitory };

/// A population of identical neurons, or a spike-source relay whose firing
/// is dictated directly by the stimulus schedule. Neuron indices are global
/// across the whole topology; `first` is the population's offset.
struct Population {
    std::string name;
    std::uint32_t size = 0;
    bool spike_source = false;
    NeuronParams params;
    std::uint32_t first = 0;
};

/// Weighted, delayed connection. Weights are magnitudes (>= 0); the receptor
/// decides the sign at delivery. Delay must be a positive multiple of dt.
struct StaticSynapse {
    std::uint32_t pre = 0;
    std::uint32_t post = 0;
    double weight = 0.0;
    Receptor receptor = Receptor::excitatory;
    double delay_ms = 1.0;
};

struct NetworkTopology {
    std::vector<Population> populations;
    std::vector<StaticSynapse> static_synapses;
    std::vector<PlasticSynapse> plastic_synapses;
    StdpParams stdp;  // rule shared by all plastic synapses

    std::uint32_t add_population(const std::string& name, std::uint32_t size,
                                 const NeuronParams& params);
    std::uint32_t add_spike_source(const std::string& name, std::uint32_t size);

    std::uint32_t neuron_count() const;
    const Population& population(const std::string& name) const;
    const Population* find_population(const std::string& name) const;
    /// Population owning a global neuron index.
    const Population& population_of(std::uint32_t global_index) const;

    /// Rejects dangling indices, zero/negative delays, delays that are not
    /// multiples of dt, synapses onto spike sources, and negative weights.
    void validate(double dt) const;
};

}  // namespace ca3sim
