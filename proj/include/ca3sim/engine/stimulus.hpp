#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace ca3sim {

struct NetworkTopology;

/// One scheduled input spike: the neuron index is local to the source
/// population.
struct StimulusEvent {
    std::uint32_t neuron = 0;
    double time_ms = 0.0;
};

/// Input spike trains per spike-source population. Events are kept sorted by
/// (time, neuron); times must be >= 0 and strictly increasing per neuron.
class StimulusSchedule {
public:
    void add(const std::string& population, std::uint32_t neuron, double time_ms);
    void add_all(const std::string& population, const std::vector<std::uint32_t>& neurons,
                 double time_ms);

    const std::map<std::string, std::vector<StimulusEvent>>& events() const { return events_; }
    bool empty() const { return events_.empty(); }
    double last_time_ms() const;

    /// Checks population names, index bounds, per-neuron ordering, and that
    /// targets are spike sources.
    void validate(const NetworkTopology& topology, double duration_ms) const;

private:
    std::map<std::string, std::vector<StimulusEvent>> events_;
};

}  // namespace ca3sim
