#pragma once

#include <functional>
#include <span>

#include "excitable/lattice.hpp"
#include "excitable/metrics.hpp"
#include "excitable/params.hpp"

namespace excitable {

/// Called after every integration step (and once with the initial state when
/// a run starts) with a read-only view of the field.
using StepObserver = std::function<void(const MediumState&)>;

/// One explicit-Euler step of the Oregonator system over every excitable
/// node. All reads use the pre-step field (synchronous update); non-excitable
/// nodes stay zero and u is floored at zero, the invariant of the continuous
/// system (see the kernel note on wake undershoot). Throws NumericalBlowup if
/// any produced value is non-finite.
void step(MediumState& state, const SimParams& params);

/// Same, reusing a prebuilt index (the fast path used by run()).
void step(MediumState& state, const SimParams& params, const LatticeIndex& index);

struct RunOptions {
    int sample_stride = 150;  // metrics sampling and termination-check cadence
};

/// Integrates from the given state (stimulus already applied) until the
/// excitation dies out, every excitable node has been excited at least once,
/// or max_steps is reached, whichever comes first. Termination is evaluated
/// at the sampling cadence; the initial state is sampled before any step.
RunRecord run(MediumState& state, const SimParams& params,
              const RunOptions& options = {},
              std::span<const StepObserver> observers = {});

}  // namespace excitable
