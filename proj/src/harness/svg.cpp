#include "ca3sim/harness/svg.hpp"

#include <algorithm>
#include <sstream>

namespace ca3sim {

std::string raster_svg(const SpikeRecord& record, const std::vector<std::string>& populations,
                       const std::vector<std::uint32_t>& population_sizes,
                       const std::vector<RecallWindow>& slots, double duration_ms) {
    constexpr double kCell = 6.0;     // px per ms
    constexpr double kRow = 8.0;      // px per neuron row
    constexpr double kPanelGap = 24.0;
    constexpr double kLeft = 48.0;
    constexpr double kTop = 20.0;

    double width = kLeft + duration_ms * kCell + 20.0;
    double height = kTop;
    for (std::uint32_t size : population_sizes) height += size * kRow + kPanelGap;

    std::ostringstream os;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\""
       << height << "\" font-family=\"sans-serif\" font-size=\"10\">\n";
    os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

    double y0 = kTop;
    for (std::size_t p = 0; p < populations.size(); ++p) {
        const std::string& name = populations[p];
        const std::uint32_t size = population_sizes[p];
        const double panel_h = size * kRow;
        os << "<g id=\"panel-" << name << "\">\n";
        os << "<text x=\"4\" y=\"" << y0 + panel_h / 2 << "\">" << name << "</text>\n";
        os << "<rect x=\"" << kLeft << "\" y=\"" << y0 << "\" width=\"" << duration_ms * kCell
           << "\" height=\"" << panel_h << "\" fill=\"none\" stroke=\"#888\"/>\n";
        for (const auto& w : slots) {
            const double x = kLeft + w.begin_ms * kCell;
            os << "<line x1=\"" << x << "\" y1=\"" << y0 << "\" x2=\"" << x << "\" y2=\""
               << y0 + panel_h << "\" stroke=\"#ccc\" stroke-dasharray=\"3,3\"/>\n";
        }
        for (const auto& e : record.train(name)) {
            const double t = e.step * record.dt();
            if (t > duration_ms) continue;
            const double x = kLeft + t * kCell;
            const double y = y0 + (size - 1 - e.neuron) * kRow + 1.0;
            os << "<rect class=\"spike\" x=\"" << x << "\" y=\"" << y << "\" width=\""
               << kCell * 0.8 << "\" height=\"" << kRow - 2.0 << "\" fill=\"#1f4e9c\"/>\n";
        }
        os << "</g>\n";
        y0 += panel_h + kPanelGap;
    }
    // Time axis labels every 10 ms.
    for (double t = 0.0; t <= duration_ms; t += 10.0) {
        os << "<text x=\"" << kLeft + t * kCell << "\" y=\"" << height - 6.0 << "\">" << t
           << "</text>\n";
    }
    os << "</svg>\n";
    return os.str();
}

}  // namespace ca3sim
