#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>

#include "excitable/lattice.hpp"
#include "excitable/netpbm.hpp"

namespace excitable {

/// A generated (or ingested) mask plus its labeled stimulation sites.
/// channel_width doubles as the detection radius in reachability runs.
struct Template {
    DomainMask mask;
    std::map<std::string, Coord> sites;
    int channel_width = 12;
};

/// All-excitable rectangle with its center labeled "C".
Template open_field(int width, int height);

/// A vertical channel with eight side channels branching at 20..160 degrees
/// in 20-degree increments, alternating right/left. The branch angle is the
/// junction corner angle between the side channel and the upstream direction
/// (towards "N"), so the 20-degree branch points sharply backward and is the
/// hardest for a downward wave to enter while 160 degrees is nearly straight
/// ahead. Sites: "N" (stimulation, top), "END" (bottom of the main channel)
/// and "A020".."A160" at the branch tips. The grid is sized to fit; throws
/// GeometryOverflow when length cannot accommodate the eight branches or the
/// channel width is below 3.
Template angle_fan(int length, int channel_width = 12);

struct ThreeChannelSpec {
    int arm_length = 190;
    int channel_width = 16;
    // Angle of the SE arm below the E direction. At 60 degrees the N<->SE
    // and SE<->N turns are both 30 degrees off straight, which keeps the
    // junction commutative near the propagation limit; at 45 degrees the
    // flank entry (N->SE) fails before the head-on turn (SE->N) does.
    double se_angle_deg = 60.0;

    bool operator==(const ThreeChannelSpec&) const = default;
};

/// Three channels through a single junction: one vertical (N-S), one
/// horizontal towards E and one diagonal towards SE, with labeled endpoints
/// {N, S, E, SE}. The default geometry is fixed and documented in the README;
/// tests depend on it.
Template three_channel(const ThreeChannelSpec& spec = {});

/// Raster ingestion (see netpbm.hpp for format details).
DomainMask load_raster(const std::filesystem::path& path, RasterPolarity polarity,
                       int gray_threshold = 127);

struct CityOptions {
    int min_bridges = 2;
    int max_bridges = 4;

    bool operator==(const CityOptions&) const = default;
};

struct CityStats {
    int bridges = 0;
    std::size_t excitable_nodes = 0;
};

/// Deterministic pseudo-random street grid: orthogonal streets of mixed
/// widths, two wide avenues per direction, two diagonals, and a river band
/// splitting the grid in northern and southern parts connected by a few
/// bridges. Same seed, same mask bytes. The output is a single 4-connected
/// component; the stimulation site "N" sits on a northern avenue junction.
Template synthetic_city(std::uint64_t seed, int width, int height,
                        const CityOptions& options = {}, CityStats* stats = nullptr);

/// True when the excitable set is one 4-connected component (empty masks
/// report false).
bool is_single_component(const DomainMask& mask);

}  // namespace excitable
