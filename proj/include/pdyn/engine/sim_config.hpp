#pragma once

#include <cmath>
#include <cstddef>
#include <string>

#include "pdyn/error.hpp"

namespace pdyn::engine {

/// Fixed-step time grid in working days.
struct SimConfig {
    double t_start = 0.0;
    double t_end = 0.0;
    double dt = 0.25;

    void validate() const {
        if (!std::isfinite(t_start) || !std::isfinite(t_end) || !std::isfinite(dt)) {
            throw DomainError("sim config values must be finite");
        }
        if (!(dt > 0.0)) {
            throw DomainError("sim config dt must be > 0");
        }
        if (t_end < t_start) {
            throw DomainError("sim config t_end must be >= t_start");
        }
        double steps = (t_end - t_start) / dt;
        if (std::abs(steps - std::round(steps)) > 1e-9 * std::max(1.0, steps)) {
            throw DomainError("sim config horizon is not an integer multiple of dt");
        }
    }

    std::size_t step_count() const { return static_cast<std::size_t>(std::llround((t_end - t_start) / dt)); }

    /// Grid time of step k, computed by multiplication so that it never drifts.
    double time_at(std::size_t k) const { return t_start + static_cast<double>(k) * dt; }

    friend bool operator==(const SimConfig&, const SimConfig&) = default;
};

} // namespace pdyn::engine
