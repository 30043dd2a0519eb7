#pragma once

#include <algorithm>
#include <future>
#include <optional>
#include <string>
#include <vector>

#include "pdyn/scenario/csv.hpp"
#include "pdyn/scenario/json_io.hpp"
#include "pdyn/scenario/report.hpp"
#include "pdyn/scenario/scenario.hpp"

namespace pdyn::scenario {

struct SweepRow {
    volatility::PatternShape shape = volatility::PatternShape::uniform;
    double injected_tasks = 0.0;
    double total_effort = 0.0;
    std::optional<double> completion_day;
    double total_errors = 0.0;
};

struct SweepResult {
    std::vector<SweepRow> rows;          ///< canonical pattern order
    std::vector<std::string> ranking;    ///< patterns by total effort, largest first
    double effort_spread_percent = 0.0;  ///< (max - min) / min over the rows
};

/// Runs every canonical pattern with the same volume and window, reusing
/// the scenario's project, policy and grid. Runs execute concurrently.
inline SweepResult sweep(const Scenario& base, double volume_loc, double window_start, double window_end,
                         double steepness = 10.0) {
    std::vector<std::future<SweepRow>> jobs;
    for (auto shape : volatility::all_pattern_shapes) {
        volatility::VolatilityPattern p{shape, volume_loc, window_start, window_end, steepness};
        p.validate();
        jobs.push_back(std::async(std::launch::async, [&base, p] {
            const auto series = volatility::pattern_rate_series(p, base.parameters.loc_per_task, base.sim);
            const auto run = model::run_project(base.parameters, base.policy, series, base.sim);
            return SweepRow{p.shape, volatility::total_injected(series), run.effort.total, run.completion_day,
                            run.cumulative_errors};
        }));
    }
    SweepResult result;
    for (auto& job : jobs) {
        result.rows.push_back(job.get());
    }
    std::vector<const SweepRow*> order;
    for (const auto& r : result.rows) {
        order.push_back(&r);
    }
    std::stable_sort(order.begin(), order.end(),
                     [](const SweepRow* a, const SweepRow* b) { return a->total_effort > b->total_effort; });
    for (const auto* r : order) {
        result.ranking.emplace_back(volatility::to_string(r->shape));
    }
    const double lo = order.back()->total_effort;
    const double hi = order.front()->total_effort;
    result.effort_spread_percent = lo > 0.0 ? 100.0 * (hi - lo) / lo : 0.0;
    return result;
}

inline std::string sweep_csv(const SweepResult& r) {
    std::string out = "pattern,injected_tasks,total_effort,completion_day,total_errors\n";
    for (const auto& row : r.rows) {
        out += std::string(volatility::to_string(row.shape)) + "," + format_number(row.injected_tasks) + "," +
               format_number(row.total_effort) + "," + (row.completion_day ? format_number(*row.completion_day) : "") +
               "," + format_number(row.total_errors) + "\n";
    }
    return out;
}

inline json sweep_to_json(const SweepResult& r) {
    json rows = json::array();
    for (const auto& row : r.rows) {
        rows.push_back({{"pattern", volatility::to_string(row.shape)},
                        {"injected_tasks", stable(row.injected_tasks)},
                        {"total_effort", stable(row.total_effort)},
                        {"completion_day", row.completion_day ? json(stable(*row.completion_day)) : json(nullptr)},
                        {"total_errors", stable(row.total_errors)}});
    }
    return {{"rows", rows}, {"ranking_by_total_effort", r.ranking},
            {"effort_spread_percent", stable(r.effort_spread_percent)}};
}

} // namespace pdyn::scenario
