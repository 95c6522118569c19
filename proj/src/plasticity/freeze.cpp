#include "ca3sim/plasticity/freeze.hpp"

#include <map>
#include <stdexcept>

namespace ca3sim {

FreezeResult freeze(const NetworkTopology& topology, const std::vector<PlasticWeight>* weights,
                    bool commit_pending) {
    FreezeResult out;
    out.topology = topology;
    out.topology.plastic_synapses.clear();

    std::map<std::pair<std::uint32_t, std::uint32_t>, double> override_w;
    if (weights) {
        for (const auto& w : *weights) override_w[{w.pre, w.post}] = w.weight;
        if (override_w.size() != topology.plastic_synapses.size())
            throw std::invalid_argument("weight snapshot does not match plastic synapse set");
    }

    for (const auto& p : topology.plastic_synapses) {
        double w = p.weight;
        if (p.pending_delta != 0.0) {
            if (commit_pending) {
                PlasticSynapse tmp = p;
                tmp.commit(topology.stdp);
                w = tmp.weight;
            } else {
                out.discarded_pending.push_back(PlasticWeight{p.pre, p.post, p.pending_delta});
            }
        }
        if (weights) {
            auto it = override_w.find({p.pre, p.post});
            if (it == override_w.end())
                throw std::invalid_argument("weight snapshot is missing a plastic synapse");
            w = it->second;
        }
        out.topology.static_synapses.push_back(StaticSynapse{
            p.pre, p.post, w, Receptor::excitatory, topology.stdp.delay_ms});
    }
    return out;
}

}  // namespace ca3sim
