#include "excitable/integrator.hpp"

#include <algorithm>
#include <cmath>

#include "excitable/errors.hpp"

namespace excitable {

namespace {

// The kernel body. The arithmetic shape is fixed: N+S+E+W neighbor sum, the
// reaction term multiplied by the precomputed 1/epsilon, the Laplacian
// divided by dx^2. Tests compare trajectories against an independently
// written dense reference, so the expression must stay the literal model.
//
// u is floored at zero after each update. The continuous system keeps
// u >= 0, but the explicit update undershoots in excitation wakes (to about
// -0.0017 at default parameters) and a node that lands below -q crosses the
// singularity of (u - q)/(u + q) and diverges. The floor only touches that
// discretization artifact; NaN/Inf still propagate to the guard.
void step_kernel(MediumState& state, const SimParams& params,
                 const LatticeIndex& index) {
    const double inv_eps = 1.0 / params.epsilon;
    const double dx2 = params.dx * params.dx;
    const double f = params.f;
    const double q = params.q;
    const double phi = params.phi;
    const double du_coef = params.du;
    const double dt = params.dt;
    const std::size_t gw = index.ghost_stride();

    const double* u = state.u_raw().data();
    const double* v = state.v_raw().data();
    double* un = state.u_next_raw().data();
    double* vn = state.v_next_raw().data();

    double guard = 0.0;  // NaN/Inf anywhere poisons the sum
    for (const auto& span : index.spans()) {
        const std::size_t end = span.begin + span.length;
        for (std::size_t i = span.begin; i < end; ++i) {
            const double uc = u[i];
            const double vc = v[i];
            const double lap = (u[i - gw] + u[i + gw] + u[i + 1] + u[i - 1] - 4.0 * uc) / dx2;
            const double reaction =
                inv_eps * (uc - uc * uc - (f * vc + phi) * (uc - q) / (uc + q));
            const double raw = uc + dt * (reaction + du_coef * lap);
            const double unext = raw < 0.0 ? 0.0 : raw;  // keeps NaN
            const double vnext = vc + dt * (uc - vc);
            un[i] = unext;
            vn[i] = vnext;
            guard += unext + vnext;
        }
    }
    if (!std::isfinite(guard)) {
        throw NumericalBlowup(state.step() + 1);
    }
    state.advance_buffers();
}

bool fully_covered(const RunRecord& record, const DomainMask& mask) {
    return mask.excitable_count() > 0 &&
           record.ever_excited_count == mask.excitable_count();
}

}  // namespace

void step(MediumState& state, const SimParams& params, const LatticeIndex& index) {
    step_kernel(state, params, index);
}

void step(MediumState& state, const SimParams& params) {
    const LatticeIndex index = LatticeIndex::build(state.mask());
    step_kernel(state, params, index);
}

RunRecord run(MediumState& state, const SimParams& params, const RunOptions& options,
              std::span<const StepObserver> observers) {
    const DomainMask& mask = state.mask();
    const LatticeIndex index = LatticeIndex::build(mask);
    const int stride = std::max(1, options.sample_stride);

    RunRecord record(mask, stride);
    for (const auto& observer : observers) observer(state);
    update(record, state, params);

    const long start_step = state.step();
    const long step_cap = start_step + params.max_steps;

    record.termination = Termination::StepCap;
    while (true) {
        if (fully_covered(record, mask)) {
            record.termination = Termination::FullyCovered;
            break;
        }
        if (record.excited_counts.back() == 0) {
            record.termination = Termination::Extinguished;
            break;
        }
        if (state.step() >= step_cap) {
            record.termination = Termination::StepCap;
            break;
        }
        const long chunk = std::min<long>(stride, step_cap - state.step());
        for (long i = 0; i < chunk; ++i) {
            step_kernel(state, params, index);
            for (const auto& observer : observers) observer(state);
        }
        update(record, state, params);
    }

    record.steps_taken = state.step() - start_step;
    record.coverage = mask.excitable_count() == 0 ? 0.0 : coverage(record, mask);
    return record;
}

}  // namespace excitable
