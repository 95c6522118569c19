#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

namespace ca3sim {

struct SpikeEvent {
    std::uint32_t neuron = 0;  // index local to the population
    std::uint32_t step = 0;

    friend bool operator==(const SpikeEvent&, const SpikeEvent&) = default;
};

/// Time-ordered spike trains per population; the universal simulation output.
class SpikeRecord {
public:
    explicit SpikeRecord(double dt = 1.0) : dt_(dt) {}

    void add(const std::string& population, std::uint32_t neuron, std::uint32_t step);

    double dt() const { return dt_; }
    const std::map<std::string, std::vector<SpikeEvent>>& trains() const { return trains_; }
    const std::vector<SpikeEvent>& train(const std::string& population) const;

    std::size_t total_spikes() const;
    std::size_t count(const std::string& population) const;

    /// Neurons of `population` spiking in [begin_ms, end_ms).
    std::set<std::uint32_t> active_in_window(const std::string& population, double begin_ms,
                                             double end_ms) const;
    /// First spike time in ms of `neuron` within [begin_ms, end_ms), or a
    /// negative value if it stays silent there.
    double first_spike_in_window(const std::string& population, std::uint32_t neuron,
                                 double begin_ms, double end_ms) const;

    /// CSV with header population,neuron,time_ms; rows sorted by time, then
    /// population name, then neuron index. Byte-stable for identical records.
    std::string to_csv() const;

    friend bool operator==(const SpikeRecord&, const SpikeRecord&) = default;

private:
    double dt_;
    std::map<std::string, std::vector<SpikeEvent>> trains_;
};

}  // namespace ca3sim
