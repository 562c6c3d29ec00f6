#include <cstdlib>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "excitable/config.hpp"
#include "excitable/errors.hpp"
#include "excitable/runner.hpp"

namespace {

struct CommonOptions {
    std::string config_path;
    std::string out_dir;
    int jobs = 0;
    double phi = -1.0;
    std::uint64_t seed = 0;
    bool have_out = false;
    bool have_jobs = false;
    bool have_phi = false;
    bool have_seed = false;
};

void add_common(CLI::App* sub, CommonOptions& opts) {
    sub->add_option("--config", opts.config_path, "run configuration file")->required();
    sub->add_option("--out", opts.out_dir, "output directory")
        ->each([&](const std::string&) { opts.have_out = true; });
    sub->add_option("--jobs", opts.jobs, "parallel workers for independent runs")
        ->each([&](const std::string&) { opts.have_jobs = true; });
    sub->add_option("--phi", opts.phi, "override the excitability parameter")
        ->each([&](const std::string&) { opts.have_phi = true; });
    sub->add_option("--seed", opts.seed, "override the template seed")
        ->each([&](const std::string&) { opts.have_seed = true; });
}

int run_command(const CommonOptions& opts, std::optional<excitable::ExperimentKind> kind) {
    excitable::RunConfig config = excitable::parse_config(opts.config_path);
    if (kind) config.experiment.kind = *kind;
    if (opts.have_out) config.out_dir = opts.out_dir;
    if (opts.have_phi) config.params.phi = opts.phi;
    if (opts.have_seed) config.tmpl.seed = opts.seed;

    if (opts.have_jobs) {
        config.jobs = opts.jobs;
    } else if (const char* env = std::getenv("EXCITABLE_THREADS")) {
        config.jobs = std::max(1, std::atoi(env));
    }
    if (config.jobs < 1) throw excitable::ConfigError("jobs must be >= 1");

    if (!kind) {
        excitable::write_template_artifacts(config.tmpl, config.out_dir);
    } else {
        excitable::execute(config);
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"excitable: Oregonator excitation dynamics on masked street lattices"};
    app.require_subcommand(1);

    using excitable::ExperimentKind;
    struct Command {
        const char* name;
        const char* help;
        std::optional<ExperimentKind> kind;
    };
    const Command commands[] = {
        {"run", "single integration: series.csv, timelapse.pgm, manifest.json",
         ExperimentKind::Run},
        {"sweep", "coverage vs phi sweep: coverage.csv, fit.csv", ExperimentKind::Sweep},
        {"classify", "wave-fragment classification on an open field",
         ExperimentKind::Classify},
        {"boundary", "bisect a regime boundary in phi", ExperimentKind::Boundary},
        {"reachability", "site-to-site reachability graph: edges.txt",
         ExperimentKind::Reachability},
        {"gen-template", "write mask.pbm and template.json for the configured template",
         std::nullopt},
    };

    CommonOptions opts[std::size(commands)];
    for (std::size_t i = 0; i < std::size(commands); ++i) {
        CLI::App* sub = app.add_subcommand(commands[i].name, commands[i].help);
        add_common(sub, opts[i]);
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        for (std::size_t i = 0; i < std::size(commands); ++i) {
            if (app.get_subcommand(commands[i].name)->parsed()) {
                return run_command(opts[i], commands[i].kind);
            }
        }
        return 2;
    } catch (const excitable::ConfigError& e) {
        std::cerr << e.kind() << ": " << e.what() << "\n";
        return 2;
    } catch (const excitable::NumericalBlowup& e) {
        std::cerr << e.kind() << ": " << e.what() << "\n";
        return 3;
    } catch (const excitable::GeometryOverflow& e) {
        std::cerr << e.kind() << ": " << e.what() << "\n";
        return 4;
    } catch (const excitable::Error& e) {
        std::cerr << e.kind() << ": " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "Error: " << e.what() << "\n";
        return 1;
    }
}
