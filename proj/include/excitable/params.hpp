#pragma once

namespace excitable {

/// Oregonator and integration constants for the two-variable light-sensitive
/// model. phi is the illumination-proportional inhibitor production rate:
/// larger phi, less excitable medium.
struct SimParams {
    double epsilon = 0.02;  // time-scale ratio between activator and inhibitor
    double f = 1.4;         // stoichiometric coefficient
    double q = 0.002;       // scaling parameter
    double phi = 0.05;
    // Activator diffusion coefficient (the inhibitor does not diffuse).
    // Calibrated so the regime ladder sits where the excitability interval
    // [0.05, 0.08] expects it: open-field propagation fails at phi ~ 0.078
    // and the shape-preserving fragment window sits just below that. At
    // du = 1.0 the whole ladder shifts to phi ~ 0.095.
    double du = 0.35;
    double dt = 0.001;
    double dx = 0.25;
    double excited_threshold = 0.1;   // u level counted as excited by metrics
    double display_threshold = 0.04;  // u level shown by the renderer
    long max_steps = 200000;

    /// Throws ConfigError naming the offending field.
    void validate() const;

    bool operator==(const SimParams&) const = default;
};

}  // namespace excitable
