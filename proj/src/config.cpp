#include "excitable/config.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "excitable/analysis.hpp"
#include "excitable/errors.hpp"

namespace excitable {

const char* to_string(TemplateKind k) {
    switch (k) {
        case TemplateKind::OpenField: return "open_field";
        case TemplateKind::AngleFan: return "angle_fan";
        case TemplateKind::ThreeChannel: return "three_channel";
        case TemplateKind::Raster: return "raster";
        case TemplateKind::SyntheticCity: return "synthetic_city";
    }
    return "?";
}

const char* to_string(ExperimentKind k) {
    switch (k) {
        case ExperimentKind::Run: return "run";
        case ExperimentKind::Sweep: return "sweep";
        case ExperimentKind::Classify: return "classify";
        case ExperimentKind::Boundary: return "boundary";
        case ExperimentKind::Reachability: return "reachability";
    }
    return "?";
}

namespace {

std::string trim(std::string_view s) {
    const auto begin = s.find_first_not_of(" \t\r");
    if (begin == std::string_view::npos) return {};
    const auto end = s.find_last_not_of(" \t\r");
    return std::string(s.substr(begin, end - begin + 1));
}

[[noreturn]] void fail(const std::string& name, int line, const std::string& message) {
    throw ConfigError(name + ":" + std::to_string(line) + ": " + message);
}

double parse_double(const std::string& name, int line, const std::string& key,
                    const std::string& value) {
    double out = 0.0;
    const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
    if (ec != std::errc() || ptr != value.data() + value.size()) {
        fail(name, line, "field `" + key + "`: not a number: `" + value + "`");
    }
    return out;
}

long long parse_integer(const std::string& name, int line, const std::string& key,
                        const std::string& value) {
    long long out = 0;
    const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
    if (ec != std::errc() || ptr != value.data() + value.size()) {
        fail(name, line, "field `" + key + "`: not an integer: `" + value + "`");
    }
    return out;
}

bool parse_bool(const std::string& name, int line, const std::string& key,
                const std::string& value) {
    if (value == "true" || value == "1" || value == "yes") return true;
    if (value == "false" || value == "0" || value == "no") return false;
    fail(name, line, "field `" + key + "`: not a boolean: `" + value + "`");
}

TemplateKind template_kind(const std::string& name, int line, const std::string& value) {
    if (value == "open_field") return TemplateKind::OpenField;
    if (value == "angle_fan") return TemplateKind::AngleFan;
    if (value == "three_channel") return TemplateKind::ThreeChannel;
    if (value == "raster") return TemplateKind::Raster;
    if (value == "synthetic_city") return TemplateKind::SyntheticCity;
    fail(name, line, "unknown template kind `" + value + "`");
}

ExperimentKind experiment_kind(const std::string& name, int line, const std::string& value) {
    if (value == "run") return ExperimentKind::Run;
    if (value == "sweep") return ExperimentKind::Sweep;
    if (value == "classify") return ExperimentKind::Classify;
    if (value == "boundary") return ExperimentKind::Boundary;
    if (value == "reachability") return ExperimentKind::Reachability;
    fail(name, line, "unknown experiment kind `" + value + "`");
}

std::string format_double(double v) {
    char buffer[32];
    const auto [ptr, ec] = std::to_chars(buffer, buffer + sizeof buffer, v);
    (void)ec;
    return std::string(buffer, ptr);
}

}  // namespace

RunConfig parse_config_text(const std::string& text, const std::string& name) {
    RunConfig config;
    std::istringstream stream(text);
    std::string raw;
    std::string section;
    int line_no = 0;

    while (std::getline(stream, raw)) {
        ++line_no;
        if (const auto hash = raw.find('#'); hash != std::string::npos) {
            raw.erase(hash);
        }
        const std::string line = trim(raw);
        if (line.empty()) continue;

        if (line.front() == '[') {
            if (line.back() != ']') fail(name, line_no, "unterminated section header");
            section = trim(line.substr(1, line.size() - 2));
            if (section != "template" && section != "params" && section != "stimulus" &&
                section != "frames" && section != "experiment" && section != "output") {
                fail(name, line_no, "unknown section [" + section + "]");
            }
            if (section == "stimulus") config.stimuli.emplace_back();
            continue;
        }

        const auto eq = line.find('=');
        if (eq == std::string::npos) fail(name, line_no, "expected `key = value`");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty()) fail(name, line_no, "empty key");
        if (section.empty()) fail(name, line_no, "key `" + key + "` outside any section");

        auto as_double = [&] { return parse_double(name, line_no, key, value); };
        auto as_int = [&] { return static_cast<int>(parse_integer(name, line_no, key, value)); };
        auto as_long = [&] { return static_cast<long>(parse_integer(name, line_no, key, value)); };
        auto as_bool = [&] { return parse_bool(name, line_no, key, value); };

        if (section == "template") {
            TemplateConfig& t = config.tmpl;
            if (key == "kind") t.kind = template_kind(name, line_no, value);
            else if (key == "width") t.width = as_int();
            else if (key == "height") t.height = as_int();
            else if (key == "channel_width") t.channel_width = as_int();
            else if (key == "length") t.length = as_int();
            else if (key == "arm_length") t.arm_length = as_int();
            else if (key == "seed") t.seed = static_cast<std::uint64_t>(parse_integer(name, line_no, key, value));
            else if (key == "min_bridges") t.min_bridges = as_int();
            else if (key == "max_bridges") t.max_bridges = as_int();
            else if (key == "path") t.raster_path = value;
            else if (key == "polarity") {
                if (value == "dark_is_street") t.polarity = RasterPolarity::DarkIsStreet;
                else if (value == "light_is_street") t.polarity = RasterPolarity::LightIsStreet;
                else fail(name, line_no, "polarity must be dark_is_street or light_is_street");
            }
            else if (key == "gray_threshold") t.gray_threshold = as_int();
            else fail(name, line_no, "unknown key `" + key + "` in [template]");
        } else if (section == "params") {
            SimParams& p = config.params;
            if (key == "epsilon") p.epsilon = as_double();
            else if (key == "f") p.f = as_double();
            else if (key == "q") p.q = as_double();
            else if (key == "phi") p.phi = as_double();
            else if (key == "du") p.du = as_double();
            else if (key == "dt") p.dt = as_double();
            else if (key == "dx") p.dx = as_double();
            else if (key == "excited_threshold") p.excited_threshold = as_double();
            else if (key == "display_threshold") p.display_threshold = as_double();
            else if (key == "max_steps") p.max_steps = as_long();
            else fail(name, line_no, "unknown key `" + key + "` in [params]");
        } else if (section == "stimulus") {
            StimulusConfig& s = config.stimuli.back();
            if (key == "x") {
                if (!s.origin) s.origin = Coord{};
                s.origin->x = as_int();
            } else if (key == "y") {
                if (!s.origin) s.origin = Coord{};
                s.origin->y = as_int();
            } else if (key == "site") s.site = value;
            else if (key == "edge") s.edge = as_int();
            else if (key == "level") s.level = as_double();
            else if (key == "label") s.label = value;
            else fail(name, line_no, "unknown key `" + key + "` in [stimulus]");
        } else if (section == "frames") {
            FrameConfig& fr = config.frames;
            if (key == "snapshot_stride") fr.snapshot_stride = as_int();
            else if (key == "frame_stride") fr.frame_stride = as_int();
            else if (key == "emit_frames") fr.emit_frames = as_bool();
            else fail(name, line_no, "unknown key `" + key + "` in [frames]");
        } else if (section == "experiment") {
            ExperimentConfig& e = config.experiment;
            if (key == "kind") e.kind = experiment_kind(name, line_no, value);
            else if (key == "sample_stride") e.sample_stride = as_int();
            else if (key == "phi_start") e.phi_start = as_double();
            else if (key == "phi_end") e.phi_end = as_double();
            else if (key == "phi_step") e.phi_step = as_double();
            else if (key == "horizon_steps") e.horizon_steps = as_long();
            else if (key == "seed_edge") e.seed_edge = as_int();
            else if (key == "class_low") e.class_low = value;
            else if (key == "class_high") e.class_high = value;
            else if (key == "phi_lo") e.phi_lo = as_double();
            else if (key == "phi_hi") e.phi_hi = as_double();
            else if (key == "tol") e.tol = as_double();
            else fail(name, line_no, "unknown key `" + key + "` in [experiment]");
        } else {  // output
            if (key == "dir") config.out_dir = value;
            else if (key == "jobs") config.jobs = as_int();
            else fail(name, line_no, "unknown key `" + key + "` in [output]");
        }
    }

    // Cross-field validation.
    config.params.validate();
    if (config.tmpl.kind == TemplateKind::Raster) {
        if (config.tmpl.raster_path.empty()) {
            throw ConfigError(name + ": [template] path required for kind raster");
        }
        if (!std::filesystem::exists(config.tmpl.raster_path)) {
            throw ConfigError(name + ": raster path not resolvable: " +
                              config.tmpl.raster_path.string());
        }
    }
    for (std::size_t i = 0; i < config.stimuli.size(); ++i) {
        const StimulusConfig& s = config.stimuli[i];
        const std::string where = name + ": [stimulus] #" + std::to_string(i + 1);
        if (s.origin && s.site) throw ConfigError(where + ": give either x/y or site, not both");
        if (!s.origin && !s.site) throw ConfigError(where + ": needs x/y or site");
        if (s.edge < 1) throw ConfigError(where + ": edge must be >= 1");
        if (!(s.level > 0.0)) throw ConfigError(where + ": level must be > 0");
    }
    if (config.experiment.sample_stride < 1) {
        throw ConfigError(name + ": sample_stride must be >= 1");
    }
    if (config.frames.snapshot_stride < 1 || config.frames.frame_stride < 1) {
        throw ConfigError(name + ": frame strides must be >= 1");
    }
    if (config.experiment.kind == ExperimentKind::Sweep && !(config.experiment.phi_step > 0.0)) {
        throw ConfigError(name + ": field `phi_step`: must be > 0");
    }
    if (config.experiment.kind == ExperimentKind::Boundary) {
        wave_class_from_string(config.experiment.class_low);
        wave_class_from_string(config.experiment.class_high);
        if (!(config.experiment.tol > 0.0)) {
            throw ConfigError(name + ": field `tol`: must be > 0");
        }
    }
    if (config.jobs < 1) throw ConfigError(name + ": jobs must be >= 1");
    return config;
}

RunConfig parse_config(const std::filesystem::path& file) {
    std::ifstream in(file);
    if (!in) throw ConfigError(file.string() + ": cannot open");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_config_text(buffer.str(), file.string());
}

std::string serialize_config(const RunConfig& config) {
    std::ostringstream out;
    const TemplateConfig& t = config.tmpl;
    out << "[template]\n";
    out << "kind = " << to_string(t.kind) << "\n";
    out << "width = " << t.width << "\n";
    out << "height = " << t.height << "\n";
    out << "channel_width = " << t.channel_width << "\n";
    out << "length = " << t.length << "\n";
    out << "arm_length = " << t.arm_length << "\n";
    out << "seed = " << t.seed << "\n";
    out << "min_bridges = " << t.min_bridges << "\n";
    out << "max_bridges = " << t.max_bridges << "\n";
    if (!t.raster_path.empty()) out << "path = " << t.raster_path.string() << "\n";
    out << "polarity = "
        << (t.polarity == RasterPolarity::DarkIsStreet ? "dark_is_street" : "light_is_street")
        << "\n";
    out << "gray_threshold = " << t.gray_threshold << "\n";

    const SimParams& p = config.params;
    out << "\n[params]\n";
    out << "epsilon = " << format_double(p.epsilon) << "\n";
    out << "f = " << format_double(p.f) << "\n";
    out << "q = " << format_double(p.q) << "\n";
    out << "phi = " << format_double(p.phi) << "\n";
    out << "du = " << format_double(p.du) << "\n";
    out << "dt = " << format_double(p.dt) << "\n";
    out << "dx = " << format_double(p.dx) << "\n";
    out << "excited_threshold = " << format_double(p.excited_threshold) << "\n";
    out << "display_threshold = " << format_double(p.display_threshold) << "\n";
    out << "max_steps = " << p.max_steps << "\n";

    for (const StimulusConfig& s : config.stimuli) {
        out << "\n[stimulus]\n";
        if (s.site) out << "site = " << *s.site << "\n";
        if (s.origin) {
            out << "x = " << s.origin->x << "\n";
            out << "y = " << s.origin->y << "\n";
        }
        out << "edge = " << s.edge << "\n";
        out << "level = " << format_double(s.level) << "\n";
        if (!s.label.empty()) out << "label = " << s.label << "\n";
    }

    const FrameConfig& fr = config.frames;
    out << "\n[frames]\n";
    out << "snapshot_stride = " << fr.snapshot_stride << "\n";
    out << "frame_stride = " << fr.frame_stride << "\n";
    out << "emit_frames = " << (fr.emit_frames ? "true" : "false") << "\n";

    const ExperimentConfig& e = config.experiment;
    out << "\n[experiment]\n";
    out << "kind = " << to_string(e.kind) << "\n";
    out << "sample_stride = " << e.sample_stride << "\n";
    out << "phi_start = " << format_double(e.phi_start) << "\n";
    out << "phi_end = " << format_double(e.phi_end) << "\n";
    out << "phi_step = " << format_double(e.phi_step) << "\n";
    out << "horizon_steps = " << e.horizon_steps << "\n";
    out << "seed_edge = " << e.seed_edge << "\n";
    out << "class_low = " << e.class_low << "\n";
    out << "class_high = " << e.class_high << "\n";
    out << "phi_lo = " << format_double(e.phi_lo) << "\n";
    out << "phi_hi = " << format_double(e.phi_hi) << "\n";
    out << "tol = " << format_double(e.tol) << "\n";

    out << "\n[output]\n";
    out << "dir = " << config.out_dir.string() << "\n";
    out << "jobs = " << config.jobs << "\n";
    return out.str();
}

}  // namespace excitable
