#include "ca3sim/harness/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace ca3sim {

RecallMetrics evaluate_recall(const SpikeRecord& record, const RecallWindow& window,
                              const std::set<std::uint32_t>& expected,
                              const std::string& population) {
    RecallMetrics m;
    m.expected = expected;
    m.recalled = record.active_in_window(population, window.begin_ms, window.end_ms);
    for (std::uint32_t c : window.cue) m.recalled.erase(c);
    for (std::uint32_t r : m.recalled)
        if (!expected.count(r)) ++m.spurious;
    for (std::uint32_t e : expected)
        if (!m.recalled.count(e)) ++m.missing;
    m.exact = m.spurious == 0 && m.missing == 0;
    for (const auto& e : record.train(population)) {
        const double t = e.step * record.dt();
        if (t < window.begin_ms || t >= window.end_ms) continue;
        if (window.cue.count(e.neuron)) continue;
        m.first_completion_ms = t;
        m.latency_ms = t - window.cue_end_ms;
        break;
    }
    return m;
}

std::string to_string(Persistence p) {
    switch (p) {
        case Persistence::persistent: return "persistent";
        case Persistence::no_activity: return "no-activity";
        default: return "broken";
    }
}

namespace {

/// Cycles = maximal runs of consecutive active timesteps, with the union of
/// neurons each emits.
struct Cycle {
    double begin_ms;
    double end_ms;  // last active ms
    std::set<std::uint32_t> emitted;
};

std::vector<Cycle> segment_cycles(const SpikeRecord& record, const std::string& population,
                                  double begin_ms, double end_ms) {
    std::map<std::uint32_t, std::set<std::uint32_t>> by_step;
    for (const auto& e : record.train(population)) {
        const double t = e.step * record.dt();
        if (t >= begin_ms && t < end_ms) by_step[e.step].insert(e.neuron);
    }
    std::vector<Cycle> cycles;
    for (const auto& [step, neurons] : by_step) {
        const double t = step * record.dt();
        if (!cycles.empty() && t - cycles.back().end_ms <= record.dt() + 1e-9) {
            cycles.back().end_ms = t;
            cycles.back().emitted.insert(neurons.begin(), neurons.end());
        } else {
            cycles.push_back(Cycle{t, t, neurons});
        }
    }
    return cycles;
}

}  // namespace

Persistence detect_state_persistence(const SpikeRecord& record, const Pattern& pattern,
                                     double begin_ms, double end_ms,
                                     const std::string& population) {
    const auto cycles = segment_cycles(record, population, begin_ms, end_ms);
    if (cycles.empty()) return Persistence::no_activity;
    constexpr double kMaxGap = 3.0;
    if (cycles.front().begin_ms - begin_ms > kMaxGap) return Persistence::broken;
    if (end_ms - record.dt() - cycles.back().end_ms > kMaxGap) return Persistence::broken;
    for (std::size_t i = 0; i + 1 < cycles.size(); ++i)
        if (cycles[i + 1].begin_ms - cycles[i].end_ms > kMaxGap) return Persistence::broken;
    for (const auto& c : cycles)
        if (c.emitted != pattern.active) return Persistence::broken;
    return Persistence::persistent;
}

bool detect_merged_state(const SpikeRecord& record, const Pattern& cued, const Pattern& other,
                         const RecallWindow& window, const std::string& population) {
    // Cross-talk marker: elements belonging only to the other pattern. The
    // merged state builds while the cue is still arriving, so the scan covers
    // the whole slot from cue onset.
    std::set<std::uint32_t> marker;
    for (std::uint32_t i : other.active)
        if (!cued.active.count(i) && !window.cue.count(i)) marker.insert(i);
    for (const auto& c :
         segment_cycles(record, population, window.slot_begin_ms, window.end_ms)) {
        for (std::uint32_t m : marker)
            if (c.emitted.count(m)) return true;
    }
    return false;
}

}  // namespace ca3sim
