#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "pdyn/engine/sim_config.hpp"
#include "pdyn/engine/stock_vector.hpp"
#include "pdyn/engine/time_series.hpp"
#include "pdyn/error.hpp"

namespace pdyn::engine {

/// Result of evaluating a model at one instant.
struct Evaluation {
    StockVector derivatives;
    StockVector auxiliaries;
};

/// A model the integrator can drive: initial stocks plus a function that
/// computes auxiliaries and stock derivatives from (t, stocks).
struct System {
    StockVector initial;
    std::function<Evaluation(double, const StockVector&)> evaluate;
    /// Stocks clamped at zero after each step; clamped amounts accumulate in
    /// the `clamp_deficit_channel` diagnostics channel.
    std::vector<std::string> non_negative;
    /// Optional early stop, checked after each grid point is recorded.
    std::function<bool(double, const StockVector&, const Evaluation&)> stop;
};

inline constexpr std::string_view clamp_deficit_channel = "diagnostics.clamp_deficit";

namespace detail {

inline void require_finite(const StockVector& values, std::size_t step, std::string_view what) {
    for (const auto& [name, level] : values) {
        if (!std::isfinite(level)) {
            throw NumericError("step " + std::to_string(step) + ": " + std::string(what) + " '" + name +
                                   "' is not finite",
                               step, name);
        }
    }
}

} // namespace detail

/// Forward-Euler integration over the grid of `config`, recording the named
/// stocks or auxiliaries at every grid point including both endpoints.
///
/// Within a step the order is fixed: evaluate auxiliaries and derivatives from
/// the current stocks, record, then apply the Euler update.
inline TimeSeries simulate(const System& system, const SimConfig& config, std::span<const std::string> recorded) {
    config.validate();
    if (!system.evaluate) {
        throw StructuralError("simulate: system has no evaluate function");
    }
    detail::require_finite(system.initial, 0, "initial stock");
    for (const auto& name : system.non_negative) {
        if (!system.initial.contains(name)) {
            throw StructuralError("non-negative stock '" + name + "' is not a stock");
        }
    }

    // The deficit channel is always appended last when clamping is active.
    std::vector<std::string> channels;
    for (const auto& name : recorded) {
        if (name != clamp_deficit_channel) {
            channels.push_back(name);
        }
    }
    const std::size_t n_recorded = channels.size();
    const bool track_clamps = !system.non_negative.empty();
    if (track_clamps) {
        channels.emplace_back(clamp_deficit_channel);
    }
    TimeSeries series(channels);

    StockVector state = system.initial;
    double clamped_total = 0.0;
    const std::size_t steps = config.step_count();
    std::vector<double> row(channels.size());

    for (std::size_t k = 0;; ++k) {
        const double t = config.time_at(k);
        Evaluation eval = system.evaluate(t, state);
        if (!eval.derivatives.same_names(state)) {
            throw StructuralError("step " + std::to_string(k) + ": derivative names do not match stocks");
        }
        detail::require_finite(eval.auxiliaries, k, "auxiliary");
        detail::require_finite(eval.derivatives, k, "derivative of");

        for (std::size_t c = 0; c < n_recorded; ++c) {
            const auto& name = channels[c];
            if (state.contains(name)) {
                row[c] = state.at(name);
            } else if (eval.auxiliaries.contains(name)) {
                row[c] = eval.auxiliaries.at(name);
            } else {
                throw StructuralError("recorded channel '" + name + "' is neither a stock nor an auxiliary");
            }
        }
        if (track_clamps) {
            row.back() = clamped_total;
        }
        series.append(t, row);

        if (k == steps || (system.stop && system.stop(t, state, eval))) {
            break;
        }

        StockVector next = state;
        auto d = eval.derivatives.begin();
        for (auto& [name, level] : next) {
            level += d->second * config.dt;
            if (!std::isfinite(level)) {
                throw NumericError("step " + std::to_string(k) + ": stock '" + name + "' became non-finite", k,
                                   name);
            }
            ++d;
        }
        for (const auto& name : system.non_negative) {
            double& level = next.at(name);
            if (level < 0.0) {
                clamped_total += -level;
                level = 0.0;
            }
        }
        state = std::move(next);
    }
    return series;
}

inline TimeSeries simulate(const System& system, const SimConfig& config, std::initializer_list<std::string> recorded) {
    std::vector<std::string> names(recorded);
    return simulate(system, config, std::span<const std::string>(names));
}

} // namespace pdyn::engine
