#include "excitable/analysis.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <thread>

#include "excitable/errors.hpp"
#include "excitable/integrator.hpp"
#include "excitable/stimulus.hpp"

namespace excitable {

const char* to_string(WaveClass c) {
    switch (c) {
        case WaveClass::Expanding: return "Expanding";
        case WaveClass::Preserving: return "Preserving";
        case WaveClass::Collapsing: return "Collapsing";
    }
    return "?";
}

WaveClass wave_class_from_string(const std::string& name) {
    if (name == "Expanding") return WaveClass::Expanding;
    if (name == "Preserving") return WaveClass::Preserving;
    if (name == "Collapsing") return WaveClass::Collapsing;
    throw ConfigError("unknown wave class `" + name + "`");
}

namespace {

std::size_t count_excited(const MediumState& state, const LatticeIndex& index,
                          double threshold) {
    const double* u = state.u_raw().data();
    std::size_t count = 0;
    for (const auto& span : index.spans()) {
        const std::size_t end = span.begin + span.length;
        for (std::size_t i = span.begin; i < end; ++i) count += u[i] > threshold ? 1 : 0;
    }
    return count;
}

bool border_touched(const MediumState& state, double threshold) {
    const DomainMask& mask = state.mask();
    const int w = mask.width();
    const int h = mask.height();
    for (int x = 0; x < w; ++x) {
        if (state.u(x, 0) > threshold || state.u(x, 1) > threshold ||
            state.u(x, h - 2) > threshold || state.u(x, h - 1) > threshold) {
            return true;
        }
    }
    for (int y = 0; y < h; ++y) {
        if (state.u(0, y) > threshold || state.u(1, y) > threshold ||
            state.u(w - 2, y) > threshold || state.u(w - 1, y) > threshold) {
            return true;
        }
    }
    return false;
}

}  // namespace

WaveClass classify_wave(const SimParams& params, const ClassifySetup& setup) {
    if (setup.field_width < 100 || setup.field_height < 100) {
        throw Inconclusive("classification field must be at least 100x100");
    }

    const DomainMask mask(setup.field_width, setup.field_height, true);
    MediumState state(mask);

    // Square excitation with the rear (western) half started refractory:
    // only a single eastbound fragment leaves the seed.
    const int half = setup.seed_edge / 2;
    const int x0 = setup.field_width / 2 - half;
    const int y0 = setup.field_height / 2 - half;
    for (int y = y0; y < y0 + setup.seed_edge; ++y) {
        for (int x = x0; x < x0 + setup.seed_edge; ++x) {
            state.set_u(x, y, 1.0);
            if (x < x0 + half) state.set_v(x, y, 1.0);
        }
    }

    const LatticeIndex index = LatticeIndex::build(mask);
    const long settle = std::lround(setup.horizon_steps * setup.settle_fraction);
    std::vector<std::pair<double, double>> samples;

    while (true) {
        if (border_touched(state, params.excited_threshold)) break;
        const std::size_t area = count_excited(state, index, params.excited_threshold);
        if (area == 0) return WaveClass::Collapsing;
        if (state.step() >= settle) {
            samples.emplace_back(static_cast<double>(state.step()),
                                 static_cast<double>(area));
        }
        if (state.step() >= setup.horizon_steps) break;
        const long chunk =
            std::min<long>(setup.sample_stride, setup.horizon_steps - state.step());
        for (long i = 0; i < chunk; ++i) step(state, params, index);
    }

    if (static_cast<int>(samples.size()) < setup.min_samples) {
        throw Inconclusive("fragment left the field with only " +
                           std::to_string(samples.size()) +
                           " usable samples; enlarge the field");
    }

    const LinearFit fit = linear_fit(samples);
    double mean_area = 0.0;
    for (const auto& [s, a] : samples) mean_area += a;
    mean_area /= static_cast<double>(samples.size());
    const double s0 = setup.slope_tolerance_frac * mean_area / 1e4;

    if (fit.slope > s0) return WaveClass::Expanding;
    if (fit.slope < -s0) return WaveClass::Collapsing;
    return WaveClass::Preserving;
}

double find_regime_boundary(WaveClass class_low, WaveClass class_high,
                            double phi_lo, double phi_hi, double tol,
                            const std::function<WaveClass(double)>& classify) {
    if (!(phi_lo < phi_hi)) {
        throw BadBracket("bracket is inverted or empty");
    }
    if (!(tol > 0.0)) throw BadBracket("tol must be > 0");
    if (tol >= phi_hi - phi_lo) return 0.5 * (phi_lo + phi_hi);

    if (classify(phi_lo) != class_low) {
        throw BadBracket("lower bracket end does not classify as " +
                         std::string(to_string(class_low)));
    }
    if (classify(phi_hi) != class_high) {
        throw BadBracket("upper bracket end does not classify as " +
                         std::string(to_string(class_high)));
    }
    while (phi_hi - phi_lo > tol) {
        const double mid = 0.5 * (phi_lo + phi_hi);
        if (classify(mid) == class_low) {
            phi_lo = mid;
        } else {
            phi_hi = mid;
        }
    }
    return 0.5 * (phi_lo + phi_hi);
}

double find_regime_boundary(WaveClass class_low, WaveClass class_high,
                            double phi_lo, double phi_hi, double tol,
                            const SimParams& base, const ClassifySetup& setup) {
    return find_regime_boundary(class_low, class_high, phi_lo, phi_hi, tol,
                                [&](double phi) {
                                    SimParams params = base;
                                    params.phi = phi;
                                    return classify_wave(params, setup);
                                });
}

std::size_t ReachabilityGraph::undirected_edge_count() const {
    std::set<std::pair<std::string, std::string>> undirected;
    for (const auto& [a, b] : edges) {
        undirected.insert({std::min(a, b), std::max(a, b)});
    }
    return undirected.size();
}

ReachabilityGraph reachability(const Template& tmpl, const SimParams& params,
                               const ReachabilityOptions& options) {
    if (tmpl.sites.size() < 2) {
        throw ConfigError("reachability needs at least two labeled sites");
    }
    const int radius =
        options.detection_radius > 0 ? options.detection_radius : tmpl.channel_width;

    std::vector<std::string> labels;
    std::vector<Coord> coords;
    for (const auto& [label, coord] : tmpl.sites) {
        labels.push_back(label);
        coords.push_back(coord);
    }
    const int n = static_cast<int>(labels.size());

    // Detection discs as ghost indices into the field arrays.
    std::vector<std::vector<std::size_t>> discs(n);
    {
        const MediumState probe(tmpl.mask);  // for ghost_index only
        for (int i = 0; i < n; ++i) {
            for (int dy = -radius; dy <= radius; ++dy) {
                for (int dx = -radius; dx <= radius; ++dx) {
                    if (dx * dx + dy * dy > radius * radius) continue;
                    const int x = coords[i].x + dx;
                    const int y = coords[i].y + dy;
                    if (tmpl.mask.excitable(x, y)) {
                        discs[i].push_back(probe.ghost_index(x, y));
                    }
                }
            }
        }
    }

    std::vector<std::vector<std::uint8_t>> reached(n);
    std::vector<std::exception_ptr> failures(n);
    std::atomic<int> next{0};
    auto worker = [&]() {
        while (true) {
            const int i = next.fetch_add(1);
            if (i >= n) return;
            try {
                MediumState state(tmpl.mask);
                apply(state, centered_square(coords[i], options.stimulus_edge,
                                             options.stimulus_level, labels[i]));
                std::vector<std::uint8_t> hit(n, 0);
                const StepObserver detector = [&](const MediumState& s) {
                    if (s.step() % options.sample_stride != 0) return;
                    const double* u = s.u_raw().data();
                    for (int j = 0; j < n; ++j) {
                        if (hit[j]) continue;
                        for (const std::size_t g : discs[j]) {
                            if (u[g] > params.excited_threshold) {
                                hit[j] = 1;
                                break;
                            }
                        }
                    }
                };
                run(state, params, {options.sample_stride}, std::span(&detector, 1));
                reached[i] = std::move(hit);
            } catch (...) {
                failures[i] = std::current_exception();
            }
        }
    };

    const int workers = std::clamp(options.jobs, 1, n);
    if (workers == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int i = 0; i < workers; ++i) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }
    for (const auto& failure : failures) {
        if (failure) std::rethrow_exception(failure);
    }

    ReachabilityGraph graph;
    graph.phi = params.phi;
    graph.sites = labels;
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            if (i != j && reached[i][j]) graph.edges.insert({labels[i], labels[j]});
        }
    }
    return graph;
}

CommutativityReport check_commutativity(const ReachabilityGraph& graph) {
    CommutativityReport report;
    for (const auto& [a, b] : graph.edges) {
        if (!graph.has_edge(b, a)) {
            report.violations.emplace_back(a, b);
        }
    }
    report.commutative = report.violations.empty();
    return report;
}

LinearFit linear_fit(std::span<const std::pair<double, double>> samples) {
    if (samples.size() < 2) {
        throw DegenerateInput("linear fit needs at least two samples");
    }
    double mean_x = 0.0;
    double mean_y = 0.0;
    for (const auto& [x, y] : samples) {
        mean_x += x;
        mean_y += y;
    }
    mean_x /= static_cast<double>(samples.size());
    mean_y /= static_cast<double>(samples.size());

    double sxx = 0.0;
    double sxy = 0.0;
    for (const auto& [x, y] : samples) {
        sxx += (x - mean_x) * (x - mean_x);
        sxy += (x - mean_x) * (y - mean_y);
    }
    if (sxx == 0.0) {
        throw DegenerateInput("linear fit needs at least two distinct x values");
    }

    LinearFit fit;
    fit.slope = sxy / sxx;
    fit.intercept = mean_y - fit.slope * mean_x;
    for (const auto& [x, y] : samples) {
        const double e = y - (fit.slope * x + fit.intercept);
        fit.residual += e * e;
    }
    return fit;
}

}  // namespace excitable
