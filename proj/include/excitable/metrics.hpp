#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "excitable/lattice.hpp"
#include "excitable/params.hpp"
#include "excitable/stimulus.hpp"

namespace excitable {

enum class Termination {
    Extinguished,  // no node above the excited threshold
    FullyCovered,  // every excitable node excited at least once
    StepCap,       // max_steps reached
};

const char* to_string(Termination t);

/// Excitation bookkeeping for one run: the excited-node count series sampled
/// on a fixed cadence plus the monotone ever-excited bitmap behind coverage.
struct RunRecord {
    std::vector<long> sample_steps;
    std::vector<std::size_t> excited_counts;
    int sample_stride = 150;
    std::vector<std::uint8_t> ever_excited;  // row-major over the mask
    std::size_t ever_excited_count = 0;
    double coverage = 0.0;
    Termination termination = Termination::StepCap;
    long steps_taken = 0;

    RunRecord() = default;
    RunRecord(const DomainMask& mask, int stride);
};

/// Number of nodes with u above the threshold.
std::size_t excited_count(const MediumState& state, double threshold);

/// Appends the current excited count and ORs the excited set into
/// ever_excited. Call on the sampling cadence.
void update(RunRecord& record, const MediumState& state, const SimParams& params);

/// |ever_excited intersect excitable| / |excitable|. Throws ZeroStreets when
/// the mask has no excitable nodes.
double coverage(const RunRecord& record, const DomainMask& mask);

struct SweepSample {
    double phi = 0.0;
    double coverage = 0.0;
    Termination termination = Termination::StepCap;
    long steps_taken = 0;
};

/// One full run per phi value in [phi_start, phi_end] (inclusive, stepped by
/// phi_step), each from a fresh state with the stimulus applied. Runs are
/// independent and fan out over `jobs` workers; results are ordered by phi.
/// Errors propagate tagged with the offending phi.
std::vector<SweepSample> coverage_sweep(const DomainMask& mask,
                                        const StimulusSpec& stimulus,
                                        const SimParams& base, double phi_start,
                                        double phi_end, double phi_step,
                                        int jobs = 1, int sample_stride = 150);

}  // namespace excitable
