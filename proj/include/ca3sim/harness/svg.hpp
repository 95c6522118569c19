#pragma once

#include <string>
#include <vector>

#include "ca3sim/engine/spike_record.hpp"
#include "ca3sim/memory/models.hpp"

namespace ca3sim {

/// Static raster: one panel per listed population (DG on top, PC below, per
/// the usual layout), spikes as filled rectangles, operation slots marked by
/// vertical rules. Pixel output is not contractual; structure is.
std::string raster_svg(const SpikeRecord& record, const std::vector<std::string>& populations,
                       const std::vector<std::uint32_t>& population_sizes,
                       const std::vector<RecallWindow>& slots, double duration_ms);

}  // namespace ca3sim
