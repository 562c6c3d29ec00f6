#include "excitable/stimulus.hpp"

#include <algorithm>

#include "excitable/errors.hpp"

namespace excitable {

std::size_t apply(MediumState& state, const StimulusSpec& spec) {
    if (spec.edge < 1) throw VoidStimulus("stimulus edge must be >= 1");
    if (!(spec.level > 0.0)) throw VoidStimulus("stimulus level must be > 0");

    const DomainMask& mask = state.mask();
    const int x0 = std::max(0, spec.origin.x);
    const int y0 = std::max(0, spec.origin.y);
    const int x1 = std::min(mask.width(), spec.origin.x + spec.edge);
    const int y1 = std::min(mask.height(), spec.origin.y + spec.edge);

    std::size_t written = 0;
    for (int y = y0; y < y1; ++y) {
        for (int x = x0; x < x1; ++x) {
            if (!mask.excitable(x, y)) continue;
            state.set_u(x, y, spec.level);
            ++written;
        }
    }
    if (written == 0) {
        throw VoidStimulus("stimulus square at (" + std::to_string(spec.origin.x) +
                           "," + std::to_string(spec.origin.y) +
                           ") contains no excitable node" +
                           (spec.label.empty() ? "" : " (site " + spec.label + ")"));
    }
    return written;
}

StimulusSpec centered_square(Coord site, int edge, double level, std::string label) {
    StimulusSpec spec;
    spec.origin = {site.x - edge / 2, site.y - edge / 2};
    spec.edge = edge;
    spec.level = level;
    spec.label = std::move(label);
    return spec;
}

}  // namespace excitable
