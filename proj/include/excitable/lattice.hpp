#pragma once

#include <cassert>
#include <cstddef>
#include <cstdint>
#include <vector>

namespace excitable {

struct Coord {
    int x = 0;
    int y = 0;
    bool operator==(const Coord&) const = default;
};

/// Binary excitability lattice. True nodes carry medium; false nodes and
/// everything outside the grid hold the Dirichlet zero condition. Treated as
/// immutable once a generator has finished building it.
class DomainMask {
public:
    DomainMask(int width, int height, bool excitable = false);

    int width() const noexcept { return width_; }
    int height() const noexcept { return height_; }
    std::size_t node_count() const noexcept { return cells_.size(); }
    std::size_t excitable_count() const noexcept { return excitable_count_; }

    bool in_bounds(int x, int y) const noexcept {
        return x >= 0 && x < width_ && y >= 0 && y < height_;
    }

    /// Out-of-grid coordinates report as non-excitable.
    bool excitable(int x, int y) const noexcept {
        return in_bounds(x, y) && cells_[index(x, y)] != 0;
    }

    void set_excitable(int x, int y, bool on);

    std::size_t index(int x, int y) const noexcept {
        return static_cast<std::size_t>(y) * width_ + x;
    }

    const std::vector<std::uint8_t>& cells() const noexcept { return cells_; }

    bool operator==(const DomainMask&) const = default;

private:
    int width_;
    int height_;
    std::size_t excitable_count_;
    std::vector<std::uint8_t> cells_;  // row-major, 1 = excitable
};

/// Maximal runs of consecutive excitable nodes per row, addressed in the
/// ghost-padded index space of MediumState. Built once per run so the step
/// kernel can sweep branch-free over contiguous memory.
class LatticeIndex {
public:
    struct Span {
        std::size_t begin;  // ghost index of the first node in the run
        int length;
    };

    static LatticeIndex build(const DomainMask& mask);

    const std::vector<Span>& spans() const noexcept { return spans_; }
    std::size_t active_count() const noexcept { return active_count_; }
    int ghost_stride() const noexcept { return ghost_stride_; }

private:
    std::vector<Span> spans_;
    std::size_t active_count_ = 0;
    int ghost_stride_ = 0;
};

/// Activator (u) and inhibitor (v) fields over a mask, plus the step counter.
/// Fields are stored with a one-node zero ghost ring so the five-point stencil
/// needs no bounds checks; the ring and all non-excitable nodes stay exactly
/// zero for the whole lifetime of the state.
class MediumState {
public:
    explicit MediumState(const DomainMask& mask);

    const DomainMask& mask() const noexcept { return *mask_; }
    long step() const noexcept { return step_; }

    double u(int x, int y) const noexcept { return u_[ghost_index(x, y)]; }
    double v(int x, int y) const noexcept { return v_[ghost_index(x, y)]; }

    /// Writing a non-excitable node would break the clamp invariant.
    void set_u(int x, int y, double value) {
        assert(mask_->excitable(x, y));
        u_[ghost_index(x, y)] = value;
    }
    void set_v(int x, int y, double value) {
        assert(mask_->excitable(x, y));
        v_[ghost_index(x, y)] = value;
    }

    std::size_t ghost_index(int x, int y) const noexcept {
        return static_cast<std::size_t>(y + 1) * (width_ + 2) + (x + 1);
    }
    int ghost_stride() const noexcept { return width_ + 2; }

    // Raw storage for the step kernel; everyone else goes through u()/v().
    std::vector<double>& u_raw() noexcept { return u_; }
    std::vector<double>& v_raw() noexcept { return v_; }
    const std::vector<double>& u_raw() const noexcept { return u_; }
    const std::vector<double>& v_raw() const noexcept { return v_; }
    std::vector<double>& u_next_raw() noexcept { return u_next_; }
    std::vector<double>& v_next_raw() noexcept { return v_next_; }

    /// Swap current/next buffers and bump the step counter (kernel plumbing).
    void advance_buffers() noexcept {
        u_.swap(u_next_);
        v_.swap(v_next_);
        ++step_;
    }

private:
    const DomainMask* mask_;
    int width_;
    int height_;
    long step_ = 0;
    std::vector<double> u_, v_, u_next_, v_next_;
};

/// Five-node Laplacian of u at an excitable node under Dirichlet boundaries:
/// (u_N + u_S + u_E + u_W - 4 u) / dx^2 with non-excitable and out-of-grid
/// neighbors contributing zero.
double laplacian_u(const MediumState& state, Coord node, double dx);

}  // namespace excitable
