#pragma once

#include <cstdint>
#include <span>

#include "excitable/lattice.hpp"
#include "excitable/netpbm.hpp"

namespace excitable {

enum class RenderMode { Single, TimelapseOverlay };

struct FrameSpec {
    int snapshot_stride = 150;  // steps between time-lapse samples
    int frame_stride = 50;      // steps between video frames
    double display_threshold = 0.04;
    RenderMode mode = RenderMode::TimelapseOverlay;

    bool operator==(const FrameSpec&) const = default;
};

// Fixed three-level palette: bit-exact, toolchain-free diffing in tests.
inline constexpr std::uint8_t kExcitedGray = 0;
inline constexpr std::uint8_t kStreetGray = 200;
inline constexpr std::uint8_t kNonStreetGray = 255;

/// One pixel per node: excited (u above the display threshold) dark, street
/// light gray, non-street white.
GrayImage render_frame(const MediumState& state, const DomainMask& mask,
                       const FrameSpec& spec);

/// Accumulates the excited set across snapshots and renders the union with
/// the render_frame palette. Feed it a copy of the state on the snapshot
/// cadence (copy-then-render: never the buffer the integrator is writing).
class TimelapseAccumulator {
public:
    TimelapseAccumulator(const DomainMask& mask, const FrameSpec& spec);

    void add_snapshot(const MediumState& state);
    GrayImage render() const;

    /// Row-major bitmap of nodes ever above the display threshold at a
    /// snapshot, for cross-checks against metrics.
    const std::vector<std::uint8_t>& excited_union() const noexcept { return union_; }

private:
    const DomainMask* mask_;
    FrameSpec spec_;
    std::vector<std::uint8_t> union_;
};

/// Paper-style overlay of a whole run: pixel-wise OR of the per-snapshot
/// excited sets.
GrayImage render_timelapse(std::span<const MediumState> frames,
                           const DomainMask& mask, const FrameSpec& spec);

}  // namespace excitable
