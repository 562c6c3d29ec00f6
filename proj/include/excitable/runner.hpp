#pragma once

#include "excitable/config.hpp"
#include "excitable/templates.hpp"

namespace excitable {

inline constexpr const char* kVersion = "0.1.0";

/// Instantiates the template named by the config.
Template build_template(const TemplateConfig& config);

/// Runs the configured experiment and writes its artifacts (manifest.json
/// plus the experiment-specific files) into config.out_dir. Outputs are a
/// pure function of the config: no timestamps, fixed number formatting.
/// Throws excitable::Error subclasses on failure.
void execute(const RunConfig& config);

/// Writes mask.pbm and template.json for the configured template.
void write_template_artifacts(const TemplateConfig& config,
                              const std::filesystem::path& out_dir);

}  // namespace excitable
