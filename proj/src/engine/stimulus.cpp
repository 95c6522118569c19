#include "ca3sim/engine/stimulus.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

#include "ca3sim/engine/topology.hpp"

namespace ca3sim {

void StimulusSchedule::add(const std::string& population, std::uint32_t neuron, double time_ms) {
    if (time_ms < 0.0) throw std::invalid_argument("stimulus time must be >= 0");
    auto& v = events_[population];
    v.push_back(StimulusEvent{neuron, time_ms});
    std::stable_sort(v.begin(), v.end(), [](const StimulusEvent& a, const StimulusEvent& b) {
        if (a.time_ms != b.time_ms) return a.time_ms < b.time_ms;
        return a.neuron < b.neuron;
    });
}

void StimulusSchedule::add_all(const std::string& population,
                               const std::vector<std::uint32_t>& neurons, double time_ms) {
    for (std::uint32_t n : neurons) add(population, n, time_ms);
}

double StimulusSchedule::last_time_ms() const {
    double last = 0.0;
    for (const auto& [_, v] : events_)
        if (!v.empty()) last = std::max(last, v.back().time_ms);
    return last;
}

void StimulusSchedule::validate(const NetworkTopology& topology, double duration_ms) const {
    for (const auto& [name, v] : events_) {
        const Population* pop = topology.find_population(name);
        if (!pop) throw std::invalid_argument("stimulus for unknown population '" + name + "'");
        if (!pop->spike_source)
            throw std::invalid_argument("stimulus targets non-source population '" + name + "'");
        std::set<std::pair<std::uint32_t, double>> seen;
        for (const auto& e : v) {
            if (e.neuron >= pop->size)
                throw std::invalid_argument("stimulus neuron index out of range in '" + name + "'");
            if (e.time_ms < 0.0 || e.time_ms > duration_ms)
                throw std::invalid_argument("stimulus time outside simulation in '" + name + "'");
            if (!seen.insert({e.neuron, e.time_ms}).second)
                throw std::invalid_argument("duplicate stimulus spike in '" + name + "'");
        }
    }
}

}  // namespace ca3sim
