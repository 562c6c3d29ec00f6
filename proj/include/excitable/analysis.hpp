#pragma once

#include <functional>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "excitable/params.hpp"
#include "excitable/templates.hpp"

namespace excitable {

enum class WaveClass { Expanding, Preserving, Collapsing };

const char* to_string(WaveClass c);
WaveClass wave_class_from_string(const std::string& name);

/// Open-field wave-fragment classification experiment. A square excitation
/// seed with its rear (western) half started refractory produces a single
/// fragment travelling east; the excited area A(t) is sampled every
/// sample_stride steps, the first settle_fraction of the horizon is
/// discarded, and sampling stops early if the excitation touches the grid
/// border.
struct ClassifySetup {
    int field_width = 400;
    int field_height = 400;
    int seed_edge = 20;
    long horizon_steps = 12000;
    int sample_stride = 150;
    double settle_fraction = 0.10;
    /// Preserving-band half width: fraction of the mean area per 1e4 steps.
    double slope_tolerance_frac = 0.02;
    int min_samples = 10;

    bool operator==(const ClassifySetup&) const = default;
};

/// Collapsing if A reaches zero before the horizon (and before any border
/// contact); otherwise the OLS slope of A(t) over the retained window decides:
/// above +s0 Expanding, within the band Preserving, below -s0 Collapsing,
/// where s0 = slope_tolerance_frac * mean(A) per 1e4 steps. Throws
/// Inconclusive when the fragment exits the grid before enough samples
/// accumulate; enlarge the field in that case.
WaveClass classify_wave(const SimParams& params, const ClassifySetup& setup = {});

/// Bisects [phi_lo, phi_hi] until the bracket width is at most tol and
/// returns the midpoint. The rule: a midpoint classifying as class_low moves
/// the lower end, anything else moves the upper end. Throws BadBracket when
/// the bracket is inverted or the endpoint classes do not match. When
/// tol >= phi_hi - phi_lo the midpoint is returned without any classification.
double find_regime_boundary(WaveClass class_low, WaveClass class_high,
                            double phi_lo, double phi_hi, double tol,
                            const std::function<WaveClass(double)>& classify);

/// Convenience overload running classify_wave with `base` (phi replaced).
double find_regime_boundary(WaveClass class_low, WaveClass class_high,
                            double phi_lo, double phi_hi, double tol,
                            const SimParams& base, const ClassifySetup& setup = {});

/// Directed reachability between labeled stimulation sites: edge a -> b when
/// a stimulus at a drives some node within the detection radius of b above
/// the excited threshold at any sampled step.
struct ReachabilityGraph {
    std::vector<std::string> sites;
    std::set<std::pair<std::string, std::string>> edges;  // ordered pairs, no self loops
    double phi = 0.0;

    bool has_edge(const std::string& a, const std::string& b) const {
        return edges.count({a, b}) != 0;
    }
    /// Number of unordered pairs connected in at least one direction.
    std::size_t undirected_edge_count() const;
};

struct ReachabilityOptions {
    int stimulus_edge = 20;
    double stimulus_level = 1.0;
    int detection_radius = 0;  // 0: use the template's channel_width
    int sample_stride = 150;
    int jobs = 1;
};

/// One full run per site (independent, parallel over jobs). phi comes from
/// params.phi. Requires at least two labeled sites.
ReachabilityGraph reachability(const Template& tmpl, const SimParams& params,
                               const ReachabilityOptions& options = {});

struct CommutativityReport {
    bool commutative = true;
    std::vector<std::pair<std::string, std::string>> violations;  // a->b without b->a
};

CommutativityReport check_commutativity(const ReachabilityGraph& graph);

/// Ordinary least squares y = slope * x + intercept; residual is the sum of
/// squared errors.
struct LinearFit {
    double slope = 0.0;
    double intercept = 0.0;
    double residual = 0.0;
};

/// Throws DegenerateInput with fewer than two points or all x equal.
LinearFit linear_fit(std::span<const std::pair<double, double>> samples);

}  // namespace excitable
