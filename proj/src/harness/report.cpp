#include "ca3sim/harness/report.hpp"

#include <sstream>

#include <json.hpp>

namespace ca3sim {

namespace {

std::string join_set(const std::set<std::uint32_t>& s) {
    std::ostringstream os;
    os << '{';
    bool first = true;
    for (std::uint32_t v : s) {
        if (!first) os << ',';
        os << v;
        first = false;
    }
    os << '}';
    return os.str();
}

}  // namespace

std::string report_to_text(const ExperimentReport& r) {
    std::ostringstream os;
    os << "experiment: " << r.name << '\n';
    os << "model: " << to_string(r.kind) << " n=" << r.n << '\n';
    os << "resources: neurons=" << r.resources.neurons
       << " static=" << r.resources.static_synapses << " stdp=" << r.resources.stdp_synapses
       << " static_full=" << r.resources.full_static_synapses
       << " learning_ms=" << r.resources.learning_latency_ms
       << " recall_ms=" << r.resources.recall_latency_ms << '\n';
    for (std::size_t i = 0; i < r.recalls.size(); ++i) {
        const RecallReport& rr = r.recalls[i];
        os << "recall " << i << ": cue=" << join_set(rr.window.cue)
           << " expected=" << join_set(rr.metrics.expected)
           << " recalled=" << join_set(rr.metrics.recalled)
           << " exact=" << (rr.metrics.exact ? "yes" : "no")
           << " spurious=" << rr.metrics.spurious << " missing=" << rr.metrics.missing
           << " latency_ms=" << rr.metrics.latency_ms
           << " first_ms=" << rr.metrics.first_completion_ms;
        if (rr.landmark_ms >= 0.0)
            os << " landmark_ms=" << rr.landmark_ms
               << " landmark=" << (rr.landmark_ok ? "ok" : "off");
        if (rr.persistence_checked) os << " persistence=" << to_string(rr.persistence);
        if (rr.idle_checked) os << " idle_silent=" << (rr.idle_silent ? "yes" : "no");
        os << '\n';
    }
    if (r.merge_expected)
        os << "merge: expected=yes detected=" << (r.merged_state ? "yes" : "no") << '\n';
    os << "spikes: learning_sim=" << r.spikes_learning << " recall_sim=" << r.spikes_recall
       << " total=" << (r.spikes_learning + r.spikes_recall) << '\n';
    os << "result: " << (r.pass ? "PASS" : "FAIL") << '\n';
    return os.str();
}

std::string report_to_json(const ExperimentReport& r) {
    nlohmann::json j;
    j["experiment"] = r.name;
    j["model"] = to_string(r.kind);
    j["n"] = r.n;
    j["resources"] = {{"neurons", r.resources.neurons},
                      {"static_synapses", r.resources.static_synapses},
                      {"stdp_synapses", r.resources.stdp_synapses},
                      {"full_static_synapses", r.resources.full_static_synapses},
                      {"recurrent_inhibitory_synapses", r.resources.recurrent_inhibitory_synapses},
                      {"learning_latency_ms", r.resources.learning_latency_ms},
                      {"recall_latency_ms", r.resources.recall_latency_ms}};
    j["recalls"] = nlohmann::json::array();
    for (const auto& rr : r.recalls) {
        nlohmann::json rj;
        rj["cue"] = rr.window.cue;
        rj["expected"] = rr.metrics.expected;
        rj["recalled"] = rr.metrics.recalled;
        rj["exact"] = rr.metrics.exact;
        rj["spurious"] = rr.metrics.spurious;
        rj["missing"] = rr.metrics.missing;
        rj["latency_ms"] = rr.metrics.latency_ms;
        rj["first_completion_ms"] = rr.metrics.first_completion_ms;
        if (rr.landmark_ms >= 0.0) {
            rj["landmark_ms"] = rr.landmark_ms;
            rj["landmark_ok"] = rr.landmark_ok;
        }
        if (rr.persistence_checked) rj["persistence"] = to_string(rr.persistence);
        if (rr.idle_checked) rj["idle_silent"] = rr.idle_silent;
        j["recalls"].push_back(rj);
    }
    if (r.merge_expected) {
        j["merge_expected"] = true;
        j["merged_state"] = r.merged_state;
    }
    j["spikes"] = {{"learning_sim", r.spikes_learning},
                   {"recall_sim", r.spikes_recall},
                   {"total", r.spikes_learning + r.spikes_recall}};
    j["pass"] = r.pass;
    return j.dump(2) + "\n";
}

}  // namespace ca3sim
