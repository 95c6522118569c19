#include "ca3sim/engine/spike_record.hpp"

#include <algorithm>
#include <cstdio>
#include <stdexcept>

namespace ca3sim {

void SpikeRecord::add(const std::string& population, std::uint32_t neuron, std::uint32_t step) {
    auto& v = trains_[population];
    if (!v.empty() && step < v.back().step)
        throw std::invalid_argument("spike record steps must be nondecreasing");
    v.push_back(SpikeEvent{neuron, step});
}

const std::vector<SpikeEvent>& SpikeRecord::train(const std::string& population) const {
    static const std::vector<SpikeEvent> empty;
    auto it = trains_.find(population);
    return it == trains_.end() ? empty : it->second;
}

std::size_t SpikeRecord::total_spikes() const {
    std::size_t n = 0;
    for (const auto& [_, v] : trains_) n += v.size();
    return n;
}

std::size_t SpikeRecord::count(const std::string& population) const {
    return train(population).size();
}

std::set<std::uint32_t> SpikeRecord::active_in_window(const std::string& population,
                                                      double begin_ms, double end_ms) const {
    std::set<std::uint32_t> out;
    for (const auto& e : train(population)) {
        const double t = e.step * dt_;
        if (t >= begin_ms && t < end_ms) out.insert(e.neuron);
    }
    return out;
}

double SpikeRecord::first_spike_in_window(const std::string& population, std::uint32_t neuron,
                                          double begin_ms, double end_ms) const {
    for (const auto& e : train(population)) {
        const double t = e.step * dt_;
        if (t >= begin_ms && t < end_ms && e.neuron == neuron) return t;
    }
    return -1.0;
}

std::string SpikeRecord::to_csv() const {
    struct Row {
        double time;
        std::string pop;
        std::uint32_t neuron;
    };
    std::vector<Row> rows;
    for (const auto& [pop, v] : trains_)
        for (const auto& e : v) rows.push_back(Row{e.step * dt_, pop, e.neuron});
    std::sort(rows.begin(), rows.end(), [](const Row& a, const Row& b) {
        if (a.time != b.time) return a.time < b.time;
        if (a.pop != b.pop) return a.pop < b.pop;
        return a.neuron < b.neuron;
    });
    std::string out = "population,neuron,time_ms\n";
    char buf[64];
    for (const auto& r : rows) {
        std::snprintf(buf, sizeof(buf), "%.3f", r.time);
        out += r.pop;
        out += ',';
        out += std::to_string(r.neuron);
        out += ',';
        out += buf;
        out += '\n';
    }
    return out;
}

}  // namespace ca3sim
