#pragma once

#include <algorithm>
#include <cmath>
#include <numeric>
#include <span>
#include <string>
#include <vector>

#include "pdyn/engine/sim_config.hpp"
#include "pdyn/error.hpp"

namespace pdyn::volatility {

using engine::SimConfig;

/// Change-order generation rate in tasks/day, one sample per grid point.
/// Sample k applies over [t_k, t_k + dt), so the sample at t_end carries no
/// volume.
struct VolatilitySeries {
    SimConfig grid;
    std::vector<double> rates;

    static VolatilitySeries zeros(const SimConfig& grid) {
        grid.validate();
        return {grid, std::vector<double>(grid.step_count() + 1, 0.0)};
    }

    double rate_at(std::size_t k) const { return k < rates.size() ? rates[k] : 0.0; }

    /// True when no sample at or after step k carries volume.
    bool exhausted_from(std::size_t k) const {
        const std::size_t last = rates.empty() ? 0 : rates.size() - 1;
        for (std::size_t i = k; i < last; ++i) {
            if (rates[i] > 0.0) {
                return false;
            }
        }
        return true;
    }

    VolatilitySeries scaled(double factor) const {
        VolatilitySeries out = *this;
        for (double& r : out.rates) {
            r *= factor;
        }
        return out;
    }
};

/// Rectangle-rule volume of a series, in tasks.
inline double total_injected(const VolatilitySeries& series) {
    if (series.rates.empty()) {
        return 0.0;
    }
    double sum = 0.0;
    for (std::size_t k = 0; k + 1 < series.rates.size(); ++k) {
        sum += series.rates[k];
    }
    return sum * series.grid.dt;
}

namespace detail {

/// Adds the volume `cdf(c1) - cdf(c0)` of each grid cell, scaled by `volume`,
/// as a rate. `cdf` maps time to the cumulative fraction delivered.
template <typename Cdf>
void deposit_cells(VolatilitySeries& series, double window_start, double window_end, double volume, Cdf cdf) {
    const SimConfig& g = series.grid;
    const std::size_t steps = g.step_count();
    for (std::size_t k = 0; k < steps; ++k) {
        const double c0 = g.time_at(k);
        const double c1 = g.time_at(k + 1);
        if (c1 <= window_start || c0 >= window_end) {
            continue;
        }
        const double lo = std::max(c0, window_start);
        const double hi = std::min(c1, window_end);
        series.rates[k] += volume * (cdf(hi) - cdf(lo)) / g.dt;
    }
}

} // namespace detail

} // namespace pdyn::volatility
