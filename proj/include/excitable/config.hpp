#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "excitable/lattice.hpp"
#include "excitable/netpbm.hpp"
#include "excitable/params.hpp"
#include "excitable/renderer.hpp"

namespace excitable {

enum class TemplateKind { OpenField, AngleFan, ThreeChannel, Raster, SyntheticCity };
enum class ExperimentKind { Run, Sweep, Classify, Boundary, Reachability };

const char* to_string(TemplateKind k);
const char* to_string(ExperimentKind k);

struct TemplateConfig {
    TemplateKind kind = TemplateKind::OpenField;
    int width = 400;
    int height = 400;
    int channel_width = 12;
    int length = 900;      // angle_fan main channel length
    int arm_length = 190;  // three_channel arms
    std::uint64_t seed = 1;
    int min_bridges = 2;
    int max_bridges = 4;
    std::filesystem::path raster_path;
    RasterPolarity polarity = RasterPolarity::DarkIsStreet;
    int gray_threshold = 127;

    bool operator==(const TemplateConfig&) const = default;
};

/// Either an explicit top-left origin or a labeled template site (the square
/// is then centred on the site).
struct StimulusConfig {
    std::optional<Coord> origin;
    std::optional<std::string> site;
    int edge = 20;
    double level = 1.0;
    std::string label;

    bool operator==(const StimulusConfig&) const = default;
};

struct ExperimentConfig {
    ExperimentKind kind = ExperimentKind::Run;
    int sample_stride = 150;
    // sweep
    double phi_start = 0.05;
    double phi_end = 0.08;
    double phi_step = 0.001;
    // classify
    long horizon_steps = 12000;
    int seed_edge = 20;
    // boundary
    std::string class_low = "Expanding";
    std::string class_high = "Collapsing";
    double phi_lo = 0.070;
    double phi_hi = 0.080;
    double tol = 1e-5;

    bool operator==(const ExperimentConfig&) const = default;
};

struct FrameConfig {
    int snapshot_stride = 150;
    int frame_stride = 50;
    bool emit_frames = false;

    bool operator==(const FrameConfig&) const = default;
};

struct RunConfig {
    TemplateConfig tmpl;
    SimParams params;
    std::vector<StimulusConfig> stimuli;
    FrameConfig frames;
    ExperimentConfig experiment;
    std::filesystem::path out_dir = "out";
    int jobs = 1;

    bool operator==(const RunConfig&) const = default;
};

/// Line-oriented `key = value` file with [section] headers; sections are
/// [template], [params], [stimulus] (repeatable), [frames], [experiment] and
/// [output]. Unset keys keep the model defaults. Throws ConfigError with
/// line and field diagnostics.
RunConfig parse_config_text(const std::string& text, const std::string& name = "<config>");
RunConfig parse_config(const std::filesystem::path& file);

/// Canonical serialization; parsing it yields an equal config, and
/// serializing again yields identical bytes.
std::string serialize_config(const RunConfig& config);

}  // namespace excitable
