#include "excitable/renderer.hpp"

namespace excitable {

GrayImage render_frame(const MediumState& state, const DomainMask& mask,
                       const FrameSpec& spec) {
    GrayImage image{mask.width(), mask.height(), {}};
    image.pixels.assign(mask.node_count(), kNonStreetGray);
    for (int y = 0; y < mask.height(); ++y) {
        for (int x = 0; x < mask.width(); ++x) {
            if (!mask.excitable(x, y)) continue;
            image.pixels[mask.index(x, y)] =
                state.u(x, y) > spec.display_threshold ? kExcitedGray : kStreetGray;
        }
    }
    return image;
}

TimelapseAccumulator::TimelapseAccumulator(const DomainMask& mask, const FrameSpec& spec)
    : mask_(&mask), spec_(spec), union_(mask.node_count(), 0) {}

void TimelapseAccumulator::add_snapshot(const MediumState& state) {
    for (int y = 0; y < mask_->height(); ++y) {
        for (int x = 0; x < mask_->width(); ++x) {
            if (!mask_->excitable(x, y)) continue;
            if (state.u(x, y) > spec_.display_threshold) union_[mask_->index(x, y)] = 1;
        }
    }
}

GrayImage TimelapseAccumulator::render() const {
    GrayImage image{mask_->width(), mask_->height(), {}};
    image.pixels.assign(mask_->node_count(), kNonStreetGray);
    for (std::size_t i = 0; i < union_.size(); ++i) {
        if (mask_->cells()[i] != 0) {
            image.pixels[i] = union_[i] ? kExcitedGray : kStreetGray;
        }
    }
    return image;
}

GrayImage render_timelapse(std::span<const MediumState> frames,
                           const DomainMask& mask, const FrameSpec& spec) {
    TimelapseAccumulator accumulator(mask, spec);
    for (const auto& frame : frames) accumulator.add_snapshot(frame);
    return accumulator.render();
}

}  // namespace excitable
