#pragma once

#include <vector>

#include "ca3sim/engine/simulation.hpp"
#include "ca3sim/engine/topology.hpp"

namespace ca3sim {

struct FreezeResult {
    NetworkTopology topology;
    /// Pending deltas that were dropped (nonzero only when commit_pending is
    /// false and some synapse had uncommitted changes). Callers should warn.
    std::vector<PlasticWeight> discarded_pending;
};

/// Replaces every plastic synapse by a static excitatory synapse with the
/// same (pre, post, delay) and the committed weight. `weights`, when given,
/// overrides the committed weights (the snapshot contract between a learning
/// run and a recall run); it must list the same (pre, post) pairs.
/// Idempotent on an already-frozen topology.
FreezeResult freeze(const NetworkTopology& topology,
                    const std::vector<PlasticWeight>* weights = nullptr,
                    bool commit_pending = false);

}  // namespace ca3sim
