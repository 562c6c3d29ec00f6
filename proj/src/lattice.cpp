#include "excitable/lattice.hpp"

#include "excitable/errors.hpp"

namespace excitable {

DomainMask::DomainMask(int width, int height, bool excitable)
    : width_(width), height_(height) {
    if (width < 1 || height < 1) {
        throw GeometryOverflow("mask dimensions must be at least 1x1, got " +
                               std::to_string(width) + "x" + std::to_string(height));
    }
    cells_.assign(static_cast<std::size_t>(width) * height, excitable ? 1 : 0);
    excitable_count_ = excitable ? cells_.size() : 0;
}

void DomainMask::set_excitable(int x, int y, bool on) {
    assert(in_bounds(x, y));
    std::uint8_t& cell = cells_[index(x, y)];
    if (cell != 0 && !on) --excitable_count_;
    if (cell == 0 && on) ++excitable_count_;
    cell = on ? 1 : 0;
}

LatticeIndex LatticeIndex::build(const DomainMask& mask) {
    LatticeIndex index;
    index.ghost_stride_ = mask.width() + 2;
    const auto& cells = mask.cells();
    for (int y = 0; y < mask.height(); ++y) {
        const std::size_t row = static_cast<std::size_t>(y) * mask.width();
        int x = 0;
        while (x < mask.width()) {
            if (cells[row + x] == 0) {
                ++x;
                continue;
            }
            const int start = x;
            while (x < mask.width() && cells[row + x] != 0) ++x;
            const std::size_t ghost =
                static_cast<std::size_t>(y + 1) * index.ghost_stride_ + (start + 1);
            index.spans_.push_back({ghost, x - start});
            index.active_count_ += static_cast<std::size_t>(x - start);
        }
    }
    return index;
}

MediumState::MediumState(const DomainMask& mask)
    : mask_(&mask), width_(mask.width()), height_(mask.height()) {
    const std::size_t ghost_nodes =
        static_cast<std::size_t>(width_ + 2) * (height_ + 2);
    u_.assign(ghost_nodes, 0.0);
    v_.assign(ghost_nodes, 0.0);
    u_next_.assign(ghost_nodes, 0.0);
    v_next_.assign(ghost_nodes, 0.0);
}

double laplacian_u(const MediumState& state, Coord node, double dx) {
    assert(state.mask().excitable(node.x, node.y));
    const auto& u = state.u_raw();
    const std::size_t i = state.ghost_index(node.x, node.y);
    const std::size_t gw = state.ghost_stride();
    // Dirichlet neighbors (non-excitable or off grid) hold exactly zero in
    // the ghost-padded array, so the unguarded reads are the contract.
    const double sum = u[i - gw] + u[i + gw] + u[i + 1] + u[i - 1];
    return (sum - 4.0 * u[i]) / (dx * dx);
}

}  // namespace excitable
