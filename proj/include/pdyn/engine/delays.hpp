#pragma once

#include <array>
#include <numeric>
#include <string>

#include "pdyn/error.hpp"

namespace pdyn::engine {

/// First-order information delay (exponential smoothing).
struct SmoothState {
    double level = 0.0;
    double delay = 1.0;

    SmoothState(double initial_level, double delay_days) : level(initial_level), delay(delay_days) {
        if (!(delay > 0.0)) {
            throw DomainError("smoothing delay must be > 0, got " + std::to_string(delay));
        }
    }

    /// d(level)/dt for the given input.
    double rate(double input) const { return (input - level) / delay; }
};

inline SmoothState smooth_update(SmoothState s, double input, double dt) {
    s.level += s.rate(input) * dt;
    return s;
}

/// Third-order material delay: three cascaded first-order stages, each with
/// time constant delay/3. Material is conserved; mean transit time is `delay`.
struct Delay3State {
    std::array<double, 3> stages{0.0, 0.0, 0.0};
    double delay = 1.0;

    explicit Delay3State(double delay_days, std::array<double, 3> initial = {0.0, 0.0, 0.0})
        : stages(initial), delay(delay_days) {
        if (!(delay > 0.0)) {
            throw DomainError("material delay must be > 0, got " + std::to_string(delay));
        }
    }

    double stage_rate() const { return 3.0 / delay; }
    double outflow() const { return stages[2] * stage_rate(); }
    double contents() const { return stages[0] + stages[1] + stages[2]; }

    /// d(stage)/dt for each stage given an inflow.
    std::array<double, 3> rates(double inflow) const {
        const double k = stage_rate();
        return {inflow - k * stages[0], k * stages[0] - k * stages[1], k * stages[1] - k * stages[2]};
    }
};

struct Delay3Step {
    Delay3State state;
    double outflow; ///< outflow over the step, per day
};

inline Delay3Step delay3_update(Delay3State d, double inflow, double dt) {
    if (inflow < 0.0) {
        throw DomainError("material delay inflow must be >= 0, got " + std::to_string(inflow));
    }
    const double out = d.outflow();
    const auto r = d.rates(inflow);
    for (std::size_t i = 0; i < 3; ++i) {
        d.stages[i] += r[i] * dt;
    }
    return {d, out};
}

} // namespace pdyn::engine
