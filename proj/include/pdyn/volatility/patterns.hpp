#pragma once

#include <array>
#include <cmath>
#include <optional>
#include <string>
#include <string_view>

#include "pdyn/error.hpp"
#include "pdyn/volatility/series.hpp"

namespace pdyn::volatility {

enum class PatternShape { uniform, exp_rise, exp_decay, triangular };

inline constexpr std::array<PatternShape, 4> all_pattern_shapes{PatternShape::uniform, PatternShape::exp_rise,
                                                                PatternShape::exp_decay, PatternShape::triangular};

inline std::string_view to_string(PatternShape s) {
    switch (s) {
    case PatternShape::uniform: return "uniform";
    case PatternShape::exp_rise: return "exp-rise";
    case PatternShape::exp_decay: return "exp-decay";
    case PatternShape::triangular: return "triangular";
    }
    return "uniform";
}

inline std::optional<PatternShape> pattern_shape_from_string(std::string_view s) {
    for (auto shape : all_pattern_shapes) {
        if (to_string(shape) == s) {
            return shape;
        }
    }
    return std::nullopt;
}

/// Canonical change-order pattern delivering `total_loc` over
/// [window_start, window_end]. `steepness` is rate(start)/rate(end) for
/// exp-decay and its inverse for exp-rise.
struct VolatilityPattern {
    PatternShape shape = PatternShape::uniform;
    double total_loc = 0.0;
    double window_start = 0.0;
    double window_end = 0.0;
    double steepness = 10.0;

    void validate() const {
        if (!(window_end > window_start)) {
            throw DomainError("volatility pattern window_end must exceed window_start");
        }
        if (!(total_loc >= 0.0)) {
            throw DomainError("volatility pattern total_loc must be >= 0");
        }
        if (!(steepness > 1.0)) {
            throw DomainError("volatility pattern steepness must be > 1");
        }
    }

    double duration() const { return window_end - window_start; }
    double decay_constant() const { return std::log(steepness) / duration(); }
};

namespace detail {

/// Fraction of the pattern volume delivered by time t.
inline double pattern_cdf(const VolatilityPattern& p, double t) {
    const double a = p.window_start;
    const double b = p.window_end;
    if (t <= a) {
        return 0.0;
    }
    if (t >= b) {
        return 1.0;
    }
    const double T = b - a;
    const double lambda = p.decay_constant();
    auto decay_cdf = [&](double x) { return -std::expm1(-lambda * (x - a)) / -std::expm1(-lambda * T); };
    switch (p.shape) {
    case PatternShape::uniform:
        return (t - a) / T;
    case PatternShape::triangular: {
        const double u = (t - a) / T;
        return u <= 0.5 ? 2.0 * u * u : 1.0 - 2.0 * (1.0 - u) * (1.0 - u);
    }
    case PatternShape::exp_decay:
        return decay_cdf(t);
    case PatternShape::exp_rise:
        return 1.0 - decay_cdf(a + b - t);
    }
    return 0.0;
}

} // namespace detail

/// Instantaneous change-order rate of a pattern, in tasks/day.
inline double pattern_rate(const VolatilityPattern& p, double loc_per_task, double t) {
    p.validate();
    if (t < p.window_start || t > p.window_end) {
        return 0.0;
    }
    const double volume = p.total_loc / loc_per_task;
    const double T = p.duration();
    const double lambda = p.decay_constant();
    auto decay = [&](double x) {
        return lambda * volume * std::exp(-lambda * (x - p.window_start)) / -std::expm1(-lambda * T);
    };
    switch (p.shape) {
    case PatternShape::uniform:
        return volume / T;
    case PatternShape::triangular: {
        const double u = (t - p.window_start) / T;
        const double peak = 2.0 * volume / T;
        return u <= 0.5 ? 2.0 * u * peak : 2.0 * (1.0 - u) * peak;
    }
    case PatternShape::exp_decay:
        return decay(t);
    case PatternShape::exp_rise:
        return decay(p.window_start + p.window_end - t);
    }
    return 0.0;
}

/// Pattern sampled onto the grid as exact cell averages, then renormalised so
/// the rectangle-rule volume is total_loc / loc_per_task.
inline VolatilitySeries pattern_rate_series(const VolatilityPattern& p, double loc_per_task, const SimConfig& grid) {
    p.validate();
    if (!(loc_per_task > 0.0)) {
        throw DomainError("loc_per_task must be > 0");
    }
    if (p.window_start < grid.t_start || p.window_end > grid.t_end) {
        throw DomainError("volatility pattern window [" + std::to_string(p.window_start) + ", " +
                          std::to_string(p.window_end) + "] lies outside the simulation grid");
    }
    VolatilitySeries series = VolatilitySeries::zeros(grid);
    const double volume = p.total_loc / loc_per_task;
    detail::deposit_cells(series, p.window_start, p.window_end, volume,
                          [&](double t) { return detail::pattern_cdf(p, t); });
    const double injected = total_injected(series);
    if (injected > 0.0) {
        for (double& r : series.rates) {
            r *= volume / injected;
        }
    }
    return series;
}

} // namespace pdyn::volatility
