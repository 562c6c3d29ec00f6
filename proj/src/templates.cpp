#include "excitable/templates.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <random>
#include <vector>

#include "excitable/errors.hpp"

namespace excitable {

namespace {

constexpr double kDeg = std::numbers::pi / 180.0;

void paint_rect(DomainMask& mask, int x0, int y0, int x1, int y1) {
    x0 = std::max(x0, 0);
    y0 = std::max(y0, 0);
    x1 = std::min(x1, mask.width());
    y1 = std::min(y1, mask.height());
    for (int y = y0; y < y1; ++y) {
        for (int x = x0; x < x1; ++x) mask.set_excitable(x, y, true);
    }
}

enum class OutOfGrid { Throw, Clip };

// Thick-line scan conversion: marks every node within width/2 of the
// centerline segment. Dense sub-node stepping keeps the result 4-connected
// down to width 3.
void rasterize_channel(DomainMask& mask, double cx, double cy, double dirx,
                       double diry, double length, double width, OutOfGrid edge) {
    const double px = -diry;
    const double py = dirx;
    for (double t = 0.0; t <= length; t += 0.4) {
        const double mx = cx + t * dirx;
        const double my = cy + t * diry;
        if (edge == OutOfGrid::Clip &&
            !mask.in_bounds(static_cast<int>(std::lround(mx)),
                            static_cast<int>(std::lround(my)))) {
            break;
        }
        for (double s = -(width - 1) / 2.0; s <= (width - 1) / 2.0 + 0.01; s += 0.4) {
            const int x = static_cast<int>(std::lround(mx + s * px));
            const int y = static_cast<int>(std::lround(my + s * py));
            if (!mask.in_bounds(x, y)) {
                if (edge == OutOfGrid::Throw) {
                    throw GeometryOverflow("channel leaves the grid at (" +
                                           std::to_string(x) + "," + std::to_string(y) + ")");
                }
                continue;
            }
            mask.set_excitable(x, y, true);
        }
    }
}

void keep_largest_component(DomainMask& mask) {
    const int w = mask.width();
    std::vector<int> component(mask.node_count(), -1);
    std::vector<std::size_t> stack;
    int best_id = -1;
    std::size_t best_size = 0;
    int id = 0;
    for (std::size_t start = 0; start < mask.node_count(); ++start) {
        if (mask.cells()[start] == 0 || component[start] != -1) continue;
        std::size_t size = 0;
        stack.push_back(start);
        component[start] = id;
        while (!stack.empty()) {
            const std::size_t node = stack.back();
            stack.pop_back();
            ++size;
            const int x = static_cast<int>(node % w);
            const int y = static_cast<int>(node / w);
            const int nx[4] = {x - 1, x + 1, x, x};
            const int ny[4] = {y, y, y - 1, y + 1};
            for (int k = 0; k < 4; ++k) {
                if (!mask.excitable(nx[k], ny[k])) continue;
                const std::size_t n = mask.index(nx[k], ny[k]);
                if (component[n] == -1) {
                    component[n] = id;
                    stack.push_back(n);
                }
            }
        }
        if (size > best_size) {
            best_size = size;
            best_id = id;
        }
        ++id;
    }
    if (best_id < 0) return;
    for (std::size_t i = 0; i < mask.node_count(); ++i) {
        if (mask.cells()[i] != 0 && component[i] != best_id) {
            mask.set_excitable(static_cast<int>(i % w), static_cast<int>(i / w), false);
        }
    }
}

}  // namespace

bool is_single_component(const DomainMask& mask) {
    if (mask.excitable_count() == 0) return false;
    const int w = mask.width();
    std::vector<std::uint8_t> seen(mask.node_count(), 0);
    std::vector<std::size_t> stack;
    std::size_t start = 0;
    while (mask.cells()[start] == 0) ++start;
    stack.push_back(start);
    seen[start] = 1;
    std::size_t reached = 0;
    while (!stack.empty()) {
        const std::size_t node = stack.back();
        stack.pop_back();
        ++reached;
        const int x = static_cast<int>(node % w);
        const int y = static_cast<int>(node / w);
        const int nx[4] = {x - 1, x + 1, x, x};
        const int ny[4] = {y, y, y - 1, y + 1};
        for (int k = 0; k < 4; ++k) {
            if (!mask.excitable(nx[k], ny[k])) continue;
            const std::size_t n = mask.index(nx[k], ny[k]);
            if (!seen[n]) {
                seen[n] = 1;
                stack.push_back(n);
            }
        }
    }
    return reached == mask.excitable_count();
}

Template open_field(int width, int height) {
    Template tmpl{DomainMask(width, height, true), {}, 12};
    tmpl.sites["C"] = {width / 2, height / 2};
    return tmpl;
}

Template angle_fan(int length, int channel_width) {
    if (channel_width < 3) {
        throw GeometryOverflow("channel_width must be >= 3 to sustain propagation");
    }
    if (length < 400) {
        throw GeometryOverflow("angle_fan length must be >= 400 to fit 8 side channels");
    }
    const int w = channel_width;
    const int spacing = length / 10;
    const int branch_len = spacing * 4 / 5;
    const int first_y = length * 14 / 100;
    const int margin = branch_len + w + 8;
    const int grid_w = 2 * margin + w;
    const int grid_h = length;
    const int cx = grid_w / 2;

    Template tmpl{DomainMask(grid_w, grid_h), {}, w};
    DomainMask& mask = tmpl.mask;

    paint_rect(mask, cx - w / 2, 4, cx - w / 2 + w, grid_h);
    tmpl.sites["N"] = {cx, 16};
    tmpl.sites["END"] = {cx, grid_h - 12};

    for (int k = 0; k < 8; ++k) {
        const double theta = (20.0 + 20.0 * k) * kDeg;
        const int side = (k % 2 == 0) ? 1 : -1;
        const int jy = first_y + k * spacing;
        // Branch angle is the junction corner against the upstream (towards N)
        // direction: 20 degrees points sharply back up the channel, 160 almost
        // straight on down.
        const double dirx = side * std::sin(theta);
        const double diry = -std::cos(theta);
        rasterize_channel(mask, cx, jy, dirx, diry, branch_len, w, OutOfGrid::Throw);
        char label[8];
        std::snprintf(label, sizeof label, "A%03d", 20 + 20 * k);
        const int tip_x = static_cast<int>(std::lround(cx + dirx * (branch_len - 4)));
        const int tip_y = static_cast<int>(std::lround(jy + diry * (branch_len - 4)));
        tmpl.sites[label] = {tip_x, tip_y};
    }

    for (const auto& [label, site] : tmpl.sites) {
        if (!mask.excitable(site.x, site.y)) {
            throw GeometryOverflow("site " + label + " fell on a non-excitable node");
        }
    }
    return tmpl;
}

Template three_channel(const ThreeChannelSpec& spec) {
    if (spec.channel_width < 3) {
        throw GeometryOverflow("channel_width must be >= 3");
    }
    if (spec.arm_length < 40) {
        throw GeometryOverflow("arm_length must be >= 40");
    }
    if (spec.se_angle_deg < 10.0 || spec.se_angle_deg > 80.0) {
        throw GeometryOverflow("se_angle_deg must lie in [10, 80]");
    }
    const int w = spec.channel_width;
    const int arm = spec.arm_length;
    const int pad = 16;
    const double se_x = std::cos(spec.se_angle_deg * kDeg);
    const double se_y = std::sin(spec.se_angle_deg * kDeg);
    const int jx = pad + arm;
    const int jy = pad + arm;
    const int grid_w = jx + std::max(arm, static_cast<int>(std::ceil(arm * se_x))) + pad;
    const int grid_h = jy + std::max(arm, static_cast<int>(std::ceil(arm * se_y))) + pad;

    Template tmpl{DomainMask(grid_w, grid_h), {}, w};
    DomainMask& mask = tmpl.mask;

    paint_rect(mask, jx - w / 2, jy - arm, jx - w / 2 + w, jy + arm + 1);   // N-S
    paint_rect(mask, jx, jy - w / 2, jx + arm + 1, jy - w / 2 + w);         // E
    rasterize_channel(mask, jx, jy, se_x, se_y, arm, w, OutOfGrid::Throw);  // SE
    // rounded junction chamber: sharp corners between arms make turning
    // asymmetric near the propagation limit
    const int chamber = w;
    for (int dy = -chamber; dy <= chamber; ++dy) {
        for (int dx = -chamber; dx <= chamber; ++dx) {
            if (dx * dx + dy * dy <= chamber * chamber) {
                mask.set_excitable(jx + dx, jy + dy, true);
            }
        }
    }

    tmpl.sites["N"] = {jx, jy - arm + 8};
    tmpl.sites["S"] = {jx, jy + arm - 8};
    tmpl.sites["E"] = {jx + arm - 8, jy};
    tmpl.sites["SE"] = {static_cast<int>(std::lround(jx + se_x * (arm - 8))),
                        static_cast<int>(std::lround(jy + se_y * (arm - 8)))};

    for (const auto& [label, site] : tmpl.sites) {
        if (!mask.excitable(site.x, site.y)) {
            throw GeometryOverflow("site " + label + " fell on a non-excitable node");
        }
    }
    return tmpl;
}

DomainMask load_raster(const std::filesystem::path& path, RasterPolarity polarity,
                       int gray_threshold) {
    return read_mask(path, polarity, gray_threshold);
}

Template synthetic_city(std::uint64_t seed, int width, int height,
                        const CityOptions& options, CityStats* stats) {
    if (width < 64 || height < 64) {
        throw GeometryOverflow("synthetic_city needs at least a 64x64 grid");
    }
    if (options.min_bridges < 1 || options.max_bridges < options.min_bridges) {
        throw GeometryOverflow("invalid bridge count range");
    }

    std::mt19937_64 rng(seed);
    auto draw = [&rng](int lo, int hi) {  // inclusive bounds
        return lo + static_cast<int>(rng() % static_cast<std::uint64_t>(hi - lo + 1));
    };
    auto pick_width = [&rng]() {
        const int r = static_cast<int>(rng() % 10);
        if (r < 3) return 5;
        if (r < 6) return 7;
        if (r < 8) return 9;
        return 13;
    };

    Template tmpl{DomainMask(width, height), {}, 12};
    DomainMask& mask = tmpl.mask;

    struct Street {
        int pos;
        int width;
    };
    std::vector<Street> verticals;

    // Wide avenues at fixed relative positions; the NW junction carries the
    // default stimulation site.
    const int north_ave_y = height * 22 / 100;
    const int south_ave_y = height * 80 / 100;
    const int west_ave_x = width * 30 / 100;
    const int east_ave_x = width * 62 / 100;
    paint_rect(mask, 0, north_ave_y, width, north_ave_y + 15);
    paint_rect(mask, 0, south_ave_y, width, south_ave_y + 13);
    paint_rect(mask, west_ave_x, 0, west_ave_x + 15, height);
    paint_rect(mask, east_ave_x, 0, east_ave_x + 13, height);
    verticals.push_back({west_ave_x, 15});
    verticals.push_back({east_ave_x, 13});

    int y = 12 + draw(0, 10);
    while (y < height - 12) {
        const int sw = pick_width();
        paint_rect(mask, 0, y, width, y + sw);
        y += sw + draw(36, 72);
    }
    int x = 12 + draw(0, 10);
    while (x < width - 12) {
        const int sw = pick_width();
        paint_rect(mask, x, 0, x + sw, height);
        verticals.push_back({x, sw});
        x += sw + draw(36, 72);
    }

    // Two diagonal streets, 45 degrees, clipped at the borders.
    const double inv_sqrt2 = 1.0 / std::numbers::sqrt2;
    rasterize_channel(mask, draw(0, width / 4), height - 1 - draw(0, height / 6),
                      inv_sqrt2, -inv_sqrt2, 2.0 * (width + height), 9,
                      OutOfGrid::Clip);
    rasterize_channel(mask, draw(width / 3, width / 2), height - 1, inv_sqrt2,
                      -inv_sqrt2, 2.0 * (width + height), 7, OutOfGrid::Clip);

    // River band separating the northern and southern parts. Sits well south
    // of the stimulation avenue so the southern part ignites only after the
    // northern excitation has mostly left the grid.
    const int river_y0 = height * 62 / 100 + draw(-6, 6);
    const int river_h = draw(30, 40);
    for (int ry = std::max(0, river_y0); ry < std::min(height, river_y0 + river_h); ++ry) {
        for (int rx = 0; rx < width; ++rx) mask.set_excitable(rx, ry, false);
    }

    // Bridges: narrow crossings over a few far-eastern vertical streets, so
    // the southern part lights up from a point source long after the wave
    // left the northern stimulation site.
    const int wanted = draw(options.min_bridges, options.max_bridges);
    std::sort(verticals.begin(), verticals.end(),
              [](const Street& a, const Street& b) { return a.pos < b.pos; });
    std::vector<Street> eligible;
    for (const auto& street : verticals) {
        if (street.pos < width * 70 / 100) continue;
        if (!eligible.empty() && street.pos - eligible.back().pos < 12) continue;
        eligible.push_back(street);
    }
    if (static_cast<int>(eligible.size()) < wanted) {
        eligible.clear();
        for (const auto& street : verticals) {
            if (!eligible.empty() && street.pos - eligible.back().pos < 12) continue;
            eligible.push_back(street);
        }
    }
    const int bridges = std::min<int>(wanted, static_cast<int>(eligible.size()));
    for (int b = 0; b < bridges; ++b) {
        const std::size_t pick =
            bridges == 1 ? eligible.size() - 1
                         : b * (eligible.size() - 1) / (bridges - 1);
        const Street& street = eligible[pick];
        const int bw = std::min(street.width, 6);
        paint_rect(mask, street.pos, std::max(0, river_y0 - 2),
                   street.pos + bw,
                   std::min(height, river_y0 + river_h + 2));
    }

    keep_largest_component(mask);

    tmpl.sites["N"] = {west_ave_x + 7, north_ave_y + 7};
    if (!mask.excitable(tmpl.sites["N"].x, tmpl.sites["N"].y)) {
        throw GeometryOverflow("city stimulation site fell off the street grid");
    }
    if (stats) {
        stats->bridges = bridges;
        stats->excitable_nodes = mask.excitable_count();
    }
    return tmpl;
}

}  // namespace excitable
