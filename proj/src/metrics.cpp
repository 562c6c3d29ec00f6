#include "excitable/metrics.hpp"

#include <atomic>
#include <cmath>
#include <exception>
#include <thread>

#include "excitable/errors.hpp"
#include "excitable/integrator.hpp"

namespace excitable {

const char* to_string(Termination t) {
    switch (t) {
        case Termination::Extinguished: return "Extinguished";
        case Termination::FullyCovered: return "FullyCovered";
        case Termination::StepCap: return "StepCap";
    }
    return "?";
}

RunRecord::RunRecord(const DomainMask& mask, int stride)
    : sample_stride(stride), ever_excited(mask.node_count(), 0) {}

std::size_t excited_count(const MediumState& state, double threshold) {
    const LatticeIndex index = LatticeIndex::build(state.mask());
    const double* u = state.u_raw().data();
    std::size_t count = 0;
    for (const auto& span : index.spans()) {
        const std::size_t end = span.begin + span.length;
        for (std::size_t i = span.begin; i < end; ++i) {
            count += u[i] > threshold ? 1 : 0;
        }
    }
    return count;
}

void update(RunRecord& record, const MediumState& state, const SimParams& params) {
    const DomainMask& mask = state.mask();
    const double threshold = params.excited_threshold;
    std::size_t count = 0;
    for (int y = 0; y < mask.height(); ++y) {
        const double* row = state.u_raw().data() + state.ghost_index(0, y);
        std::uint8_t* ever = record.ever_excited.data() + mask.index(0, y);
        for (int x = 0; x < mask.width(); ++x) {
            if (row[x] > threshold) {
                ++count;
                if (!ever[x]) {
                    ever[x] = 1;
                    ++record.ever_excited_count;
                }
            }
        }
    }
    record.sample_steps.push_back(state.step());
    record.excited_counts.push_back(count);
}

double coverage(const RunRecord& record, const DomainMask& mask) {
    if (mask.excitable_count() == 0) {
        throw ZeroStreets("coverage undefined: mask has no excitable nodes");
    }
    std::size_t covered = 0;
    const auto& cells = mask.cells();
    for (std::size_t i = 0; i < cells.size(); ++i) {
        covered += (cells[i] != 0 && record.ever_excited[i] != 0) ? 1 : 0;
    }
    return static_cast<double>(covered) / static_cast<double>(mask.excitable_count());
}

std::vector<SweepSample> coverage_sweep(const DomainMask& mask,
                                        const StimulusSpec& stimulus,
                                        const SimParams& base, double phi_start,
                                        double phi_end, double phi_step, int jobs,
                                        int sample_stride) {
    if (!(phi_step > 0.0)) throw ConfigError("phi_step must be > 0");
    if (phi_end < phi_start) throw ConfigError("phi_end must be >= phi_start");

    const int count =
        static_cast<int>(std::floor((phi_end - phi_start) / phi_step + 1e-9)) + 1;
    std::vector<SweepSample> samples(count);

    struct Failure {
        double phi;
        std::exception_ptr error;
    };
    std::vector<Failure> failures(count);

    std::atomic<int> next{0};
    auto worker = [&]() {
        while (true) {
            const int i = next.fetch_add(1);
            if (i >= count) return;
            const double phi = phi_start + i * phi_step;
            try {
                SimParams params = base;
                params.phi = phi;
                MediumState state(mask);
                apply(state, stimulus);
                RunRecord record = run(state, params, {sample_stride});
                samples[i] = {phi, record.coverage, record.termination,
                              record.steps_taken};
            } catch (...) {
                failures[i] = {phi, std::current_exception()};
            }
        }
    };

    const int workers = std::clamp(jobs, 1, count);
    if (workers == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (int i = 0; i < workers; ++i) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }

    for (const auto& failure : failures) {
        if (!failure.error) continue;
        try {
            std::rethrow_exception(failure.error);
        } catch (const NumericalBlowup& e) {
            throw NumericalBlowup(e.step(), "phi=" + std::to_string(failure.phi));
        } catch (...) {
            throw;  // already specific; first failing phi wins
        }
    }
    return samples;
}

}  // namespace excitable
