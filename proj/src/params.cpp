#include "excitable/params.hpp"

#include <cmath>

#include "excitable/errors.hpp"

namespace excitable {

namespace {

void require(bool ok, const char* field, const char* rule) {
    if (!ok) throw ConfigError(std::string("invalid parameter `") + field + "`: " + rule);
}

}  // namespace

void SimParams::validate() const {
    require(std::isfinite(epsilon) && epsilon > 0.0, "epsilon", "must be > 0");
    require(std::isfinite(f) && f > 0.0, "f", "must be > 0");
    require(std::isfinite(q) && q > 0.0, "q", "must be > 0");
    require(std::isfinite(phi) && phi >= 0.0, "phi", "must be >= 0");
    require(std::isfinite(du) && du >= 0.0, "du", "must be >= 0");
    require(std::isfinite(dt) && dt > 0.0, "dt", "must be > 0");
    require(std::isfinite(dx) && dx > 0.0, "dx", "must be > 0");
    require(std::isfinite(excited_threshold) && excited_threshold > 0.0,
            "excited_threshold", "must be > 0");
    require(std::isfinite(display_threshold) && display_threshold > 0.0,
            "display_threshold", "must be > 0");
    require(max_steps >= 0, "max_steps", "must be >= 0");
}

}  // namespace excitable
