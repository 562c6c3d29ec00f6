#pragma once

// Test-only helpers: an independent dense reference integrator used as the
// oracle for the optimized span kernel, plus small generators.

#include <random>
#include <vector>

#include "excitable/lattice.hpp"
#include "excitable/params.hpp"

namespace testsupport {

// Straightforward dense implementation of the synchronous Euler update:
// plain row-major arrays, explicit bounds and mask checks, no ghost ring,
// no span index. Kept deliberately naive.
class ReferenceMedium {
public:
    explicit ReferenceMedium(const excitable::DomainMask& mask)
        : mask_(&mask),
          w_(mask.width()),
          h_(mask.height()),
          u_(mask.node_count(), 0.0),
          v_(mask.node_count(), 0.0) {}

    double u(int x, int y) const { return u_[idx(x, y)]; }
    double v(int x, int y) const { return v_[idx(x, y)]; }
    void set_u(int x, int y, double value) { u_[idx(x, y)] = value; }
    void set_v(int x, int y, double value) { v_[idx(x, y)] = value; }

    void step(const excitable::SimParams& p) {
        std::vector<double> un(u_.size(), 0.0);
        std::vector<double> vn(v_.size(), 0.0);
        for (int y = 0; y < h_; ++y) {
            for (int x = 0; x < w_; ++x) {
                if (!mask_->excitable(x, y)) continue;
                const double uc = u_[idx(x, y)];
                const double vc = v_[idx(x, y)];
                double sum = 0.0;
                sum += mask_->excitable(x, y - 1) ? u_[idx(x, y - 1)] : 0.0;  // N
                sum += mask_->excitable(x, y + 1) ? u_[idx(x, y + 1)] : 0.0;  // S
                sum += mask_->excitable(x + 1, y) ? u_[idx(x + 1, y)] : 0.0;  // E
                sum += mask_->excitable(x - 1, y) ? u_[idx(x - 1, y)] : 0.0;  // W
                const double lap = (sum - 4.0 * uc) / (p.dx * p.dx);
                const double reaction =
                    (1.0 / p.epsilon) *
                    (uc - uc * uc - (p.f * vc + p.phi) * (uc - p.q) / (uc + p.q));
                const double raw = uc + p.dt * (reaction + p.du * lap);
                un[idx(x, y)] = raw < 0.0 ? 0.0 : raw;  // same floor as the kernel
                vn[idx(x, y)] = vc + p.dt * (uc - vc);
            }
        }
        u_ = std::move(un);
        v_ = std::move(vn);
    }

    std::size_t excited_count(double threshold) const {
        std::size_t count = 0;
        for (double value : u_) count += value > threshold ? 1 : 0;
        return count;
    }

private:
    std::size_t idx(int x, int y) const { return static_cast<std::size_t>(y) * w_ + x; }

    const excitable::DomainMask* mask_;
    int w_;
    int h_;
    std::vector<double> u_, v_;
};

inline excitable::DomainMask random_mask(std::uint64_t seed, int width, int height,
                                         double excitable_fraction = 0.55) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> coin(0.0, 1.0);
    excitable::DomainMask mask(width, height);
    for (int y = 0; y < height; ++y) {
        for (int x = 0; x < width; ++x) {
            if (coin(rng) < excitable_fraction) mask.set_excitable(x, y, true);
        }
    }
    return mask;
}

}  // namespace testsupport
