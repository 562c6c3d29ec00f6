#include "excitable/runner.hpp"

#include <cstdio>
#include <fstream>

#include <json.hpp>

#include "excitable/analysis.hpp"
#include "excitable/errors.hpp"
#include "excitable/integrator.hpp"
#include "excitable/metrics.hpp"
#include "excitable/renderer.hpp"
#include "excitable/stimulus.hpp"

namespace excitable {

namespace {

using nlohmann::json;

std::string fixed(double value, int digits) {
    char buffer[48];
    std::snprintf(buffer, sizeof buffer, "%.*f", digits, value);
    return buffer;
}

void write_text(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write " + path.string());
    out << text;
    if (!out) throw Error("write failed: " + path.string());
}

json config_to_json(const RunConfig& config) {
    const TemplateConfig& t = config.tmpl;
    json jt{{"kind", to_string(t.kind)},
            {"width", t.width},
            {"height", t.height},
            {"channel_width", t.channel_width},
            {"length", t.length},
            {"arm_length", t.arm_length},
            {"seed", t.seed},
            {"min_bridges", t.min_bridges},
            {"max_bridges", t.max_bridges},
            {"gray_threshold", t.gray_threshold},
            {"polarity", t.polarity == RasterPolarity::DarkIsStreet ? "dark_is_street"
                                                                    : "light_is_street"}};
    if (!t.raster_path.empty()) jt["path"] = t.raster_path.string();

    const SimParams& p = config.params;
    json jp{{"epsilon", p.epsilon},
            {"f", p.f},
            {"q", p.q},
            {"phi", p.phi},
            {"du", p.du},
            {"dt", p.dt},
            {"dx", p.dx},
            {"excited_threshold", p.excited_threshold},
            {"display_threshold", p.display_threshold},
            {"max_steps", p.max_steps}};

    json stimuli = json::array();
    for (const StimulusConfig& s : config.stimuli) {
        json js{{"edge", s.edge}, {"level", s.level}};
        if (s.site) js["site"] = *s.site;
        if (s.origin) js["origin"] = {s.origin->x, s.origin->y};
        if (!s.label.empty()) js["label"] = s.label;
        stimuli.push_back(js);
    }

    const ExperimentConfig& e = config.experiment;
    json je{{"kind", to_string(e.kind)},
            {"sample_stride", e.sample_stride},
            {"phi_start", e.phi_start},
            {"phi_end", e.phi_end},
            {"phi_step", e.phi_step},
            {"horizon_steps", e.horizon_steps},
            {"seed_edge", e.seed_edge},
            {"class_low", e.class_low},
            {"class_high", e.class_high},
            {"phi_lo", e.phi_lo},
            {"phi_hi", e.phi_hi},
            {"tol", e.tol}};

    return json{{"template", jt},
                {"params", jp},
                {"stimuli", stimuli},
                {"frames",
                 {{"snapshot_stride", config.frames.snapshot_stride},
                  {"frame_stride", config.frames.frame_stride},
                  {"emit_frames", config.frames.emit_frames}}},
                {"experiment", je},
                {"output", {{"dir", config.out_dir.string()}, {"jobs", config.jobs}}}};
}

std::vector<StimulusSpec> resolve_stimuli(const RunConfig& config, const Template& tmpl) {
    if (config.stimuli.empty()) {
        throw ConfigError("this experiment needs at least one [stimulus]");
    }
    std::vector<StimulusSpec> specs;
    for (const StimulusConfig& s : config.stimuli) {
        if (s.site) {
            const auto it = tmpl.sites.find(*s.site);
            if (it == tmpl.sites.end()) {
                throw ConfigError("unknown stimulus site `" + *s.site + "`");
            }
            specs.push_back(centered_square(it->second, s.edge, s.level,
                                            s.label.empty() ? *s.site : s.label));
        } else {
            specs.push_back({*s.origin, s.edge, s.level, s.label});
        }
    }
    return specs;
}

void write_manifest(const std::filesystem::path& out_dir, const RunConfig& config,
                    json results) {
    const json manifest{{"version", kVersion},
                        {"command", to_string(config.experiment.kind)},
                        {"config", config_to_json(config)},
                        {"results", std::move(results)}};
    write_text(out_dir / "manifest.json", manifest.dump(2) + "\n");
}

json execute_run(const RunConfig& config, const Template& tmpl) {
    MediumState state(tmpl.mask);
    std::vector<std::size_t> footprints;
    for (const StimulusSpec& spec : resolve_stimuli(config, tmpl)) {
        footprints.push_back(apply(state, spec));
    }

    FrameSpec frame_spec{config.frames.snapshot_stride, config.frames.frame_stride,
                         config.params.display_threshold, RenderMode::TimelapseOverlay};
    TimelapseAccumulator timelapse(tmpl.mask, frame_spec);

    std::vector<StepObserver> observers;
    observers.push_back([&](const MediumState& s) {
        if (s.step() % frame_spec.snapshot_stride == 0) timelapse.add_snapshot(s);
    });
    if (config.frames.emit_frames) {
        observers.push_back([&](const MediumState& s) {
            if (s.step() % frame_spec.frame_stride != 0) return;
            char name[32];
            std::snprintf(name, sizeof name, "frame_%08ld.pgm",
                          s.step() / frame_spec.frame_stride);
            write_pgm_p5(config.out_dir / name, render_frame(s, tmpl.mask, frame_spec));
        });
    }

    const RunRecord record =
        run(state, config.params, {config.experiment.sample_stride}, observers);

    std::string series = "step,excited_count\n";
    for (std::size_t i = 0; i < record.sample_steps.size(); ++i) {
        series += std::to_string(record.sample_steps[i]) + "," +
                  std::to_string(record.excited_counts[i]) + "\n";
    }
    write_text(config.out_dir / "series.csv", series);
    write_pgm_p5(config.out_dir / "timelapse.pgm", timelapse.render());

    return json{{"termination", to_string(record.termination)},
                {"steps_taken", record.steps_taken},
                {"coverage", record.coverage},
                {"samples", record.sample_steps.size()},
                {"ever_excited_nodes", record.ever_excited_count},
                {"stimulus_footprints", footprints}};
}

json execute_sweep(const RunConfig& config, const Template& tmpl) {
    if (config.stimuli.size() != 1) {
        throw ConfigError("sweep uses exactly one [stimulus]");
    }
    const StimulusSpec stimulus = resolve_stimuli(config, tmpl).front();
    const ExperimentConfig& e = config.experiment;
    const auto samples =
        coverage_sweep(tmpl.mask, stimulus, config.params, e.phi_start, e.phi_end,
                       e.phi_step, config.jobs, e.sample_stride);

    std::string csv = "phi,coverage,termination,steps_taken\n";
    for (const SweepSample& s : samples) {
        csv += fixed(s.phi, 6) + "," + fixed(s.coverage, 9) + "," +
               to_string(s.termination) + "," + std::to_string(s.steps_taken) + "\n";
    }
    write_text(config.out_dir / "coverage.csv", csv);

    json results{{"samples", samples.size()}};
    if (samples.size() >= 2) {
        std::vector<std::pair<double, double>> points;
        for (const SweepSample& s : samples) points.emplace_back(s.phi, s.coverage);
        const LinearFit fit = linear_fit(points);
        char row[128];
        std::snprintf(row, sizeof row, "%.9e,%.9e,%.9e\n", fit.slope, fit.intercept,
                      fit.residual);
        write_text(config.out_dir / "fit.csv",
                   std::string("slope,intercept,residual\n") + row);
        results["fit"] = {{"slope", fit.slope},
                          {"intercept", fit.intercept},
                          {"residual", fit.residual}};
    }
    return results;
}

ClassifySetup classify_setup(const RunConfig& config) {
    if (config.tmpl.kind != TemplateKind::OpenField) {
        throw ConfigError("classify and boundary experiments need an open_field template");
    }
    ClassifySetup setup;
    setup.field_width = config.tmpl.width;
    setup.field_height = config.tmpl.height;
    setup.seed_edge = config.experiment.seed_edge;
    setup.horizon_steps = config.experiment.horizon_steps;
    setup.sample_stride = config.experiment.sample_stride;
    return setup;
}

json execute_classify(const RunConfig& config) {
    const WaveClass wave = classify_wave(config.params, classify_setup(config));
    return json{{"phi", config.params.phi}, {"wave_class", to_string(wave)}};
}

json execute_boundary(const RunConfig& config) {
    const ExperimentConfig& e = config.experiment;
    const double phi = find_regime_boundary(
        wave_class_from_string(e.class_low), wave_class_from_string(e.class_high),
        e.phi_lo, e.phi_hi, e.tol, config.params, classify_setup(config));
    return json{{"phi_boundary", phi},
                {"class_low", e.class_low},
                {"class_high", e.class_high},
                {"tol", e.tol}};
}

json execute_reachability(const RunConfig& config, const Template& tmpl) {
    ReachabilityOptions options;
    options.sample_stride = config.experiment.sample_stride;
    options.jobs = config.jobs;
    const ReachabilityGraph graph = reachability(tmpl, config.params, options);

    std::string edges = "# phi = " + fixed(graph.phi, 6) + "\n";
    for (const auto& [a, b] : graph.edges) edges += a + " -> " + b + "\n";
    write_text(config.out_dir / "edges.txt", edges);

    const CommutativityReport report = check_commutativity(graph);
    json violations = json::array();
    for (const auto& [a, b] : report.violations) violations.push_back({a, b});
    return json{{"sites", graph.sites},
                {"directed_edges", graph.edges.size()},
                {"undirected_edges", graph.undirected_edge_count()},
                {"commutative", report.commutative},
                {"violations", violations}};
}

}  // namespace

Template build_template(const TemplateConfig& config) {
    switch (config.kind) {
        case TemplateKind::OpenField:
            return open_field(config.width, config.height);
        case TemplateKind::AngleFan:
            return angle_fan(config.length, config.channel_width);
        case TemplateKind::ThreeChannel:
            return three_channel({config.arm_length, config.channel_width});
        case TemplateKind::Raster: {
            Template tmpl{load_raster(config.raster_path, config.polarity,
                                      config.gray_threshold),
                          {},
                          config.channel_width};
            return tmpl;
        }
        case TemplateKind::SyntheticCity:
            return synthetic_city(config.seed, config.width, config.height,
                                  {config.min_bridges, config.max_bridges});
    }
    throw ConfigError("unhandled template kind");
}

void execute(const RunConfig& config) {
    config.params.validate();
    std::filesystem::create_directories(config.out_dir);

    json results;
    switch (config.experiment.kind) {
        case ExperimentKind::Run: {
            const Template tmpl = build_template(config.tmpl);
            results = execute_run(config, tmpl);
            break;
        }
        case ExperimentKind::Sweep: {
            const Template tmpl = build_template(config.tmpl);
            results = execute_sweep(config, tmpl);
            break;
        }
        case ExperimentKind::Classify:
            results = execute_classify(config);
            break;
        case ExperimentKind::Boundary:
            results = execute_boundary(config);
            break;
        case ExperimentKind::Reachability: {
            const Template tmpl = build_template(config.tmpl);
            results = execute_reachability(config, tmpl);
            break;
        }
    }
    write_manifest(config.out_dir, config, std::move(results));
}

void write_template_artifacts(const TemplateConfig& config,
                              const std::filesystem::path& out_dir) {
    std::filesystem::create_directories(out_dir);

    CityStats stats;
    Template tmpl = config.kind == TemplateKind::SyntheticCity
                        ? synthetic_city(config.seed, config.width, config.height,
                                         {config.min_bridges, config.max_bridges}, &stats)
                        : build_template(config);
    write_mask_p4(out_dir / "mask.pbm", tmpl.mask);

    json sites;
    for (const auto& [label, coord] : tmpl.sites) sites[label] = {coord.x, coord.y};
    json manifest{{"version", kVersion},
                  {"kind", to_string(config.kind)},
                  {"width", tmpl.mask.width()},
                  {"height", tmpl.mask.height()},
                  {"channel_width", tmpl.channel_width},
                  {"excitable_nodes", tmpl.mask.excitable_count()},
                  {"sites", sites}};
    if (config.kind == TemplateKind::SyntheticCity) {
        manifest["seed"] = config.seed;
        manifest["bridges"] = stats.bridges;
    }
    write_text(out_dir / "template.json", manifest.dump(2) + "\n");
}

}  // namespace excitable
