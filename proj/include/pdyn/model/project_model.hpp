#pragma once

#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "pdyn/engine/delays.hpp"
#include "pdyn/engine/simulate.hpp"
#include "pdyn/model/parameters.hpp"
#include "pdyn/model/sectors.hpp"
#include "pdyn/model/state.hpp"
#include "pdyn/volatility/series.hpp"

namespace pdyn::model {

/// Instantaneous values computed on the way to the derivatives.
struct ProjectAuxiliaries {
    double change_order_rate = 0.0;     ///< tasks/day
    double workforce = 0.0;
    double schedule_pressure = 0.0;
    double productivity_loc = 0.0;      ///< LOC per developer person-day
    double dev_tasks_per_pd = 0.0;
    double development_rate = 0.0;      ///< tasks/day
    double testing_rate = 0.0;          ///< tasks/day
    double error_generation = 0.0;      ///< errors/day
    double effort_needed = 0.0;         ///< person-days perceived still needed
    WorkforceTarget workforce_target;
    std::optional<double> forecast;
    Allocation allocation;
    ErrorFlows errors;
    WorkforceFlows staffing;
};

struct ProjectEvaluation {
    ProjectState rates; ///< d(stock)/dt for every stock
    ProjectAuxiliaries aux;
};

/// One evaluation of the model: auxiliaries from the current stocks, then
/// every stock derivative.
inline ProjectEvaluation evaluate_project(const ProjectState& s, const ProjectParameters& params,
                                          const PolicyParams& policy, double volatility_rate, double t, double dt) {
    ProjectEvaluation out;
    ProjectAuxiliaries& a = out.aux;
    ProjectState& d = out.rates;

    a.change_order_rate = volatility_rate;
    a.workforce = s.workforce();

    const PerceivedEffort needed = effort_perceived_still_needed(s, policy);
    a.effort_needed = needed.total();
    a.schedule_pressure = schedule_pressure(
        a.effort_needed, effort_remaining_capacity(a.workforce, s.scheduled_completion, t), policy);

    a.productivity_loc = actual_productivity(params, s, policy, a.schedule_pressure);
    a.dev_tasks_per_pd = a.productivity_loc / params.loc_per_task;

    a.allocation = allocate_headcount(s, policy, a.dev_tasks_per_pd, dt);
    a.development_rate = software_development_rate(a.allocation.dev, a.dev_tasks_per_pd, s, dt);
    a.error_generation =
        error_generation_rate(a.development_rate, experience_mix_multiplier(s.rookies, s.experienced, policy),
                              a.schedule_pressure, policy);
    a.errors = error_flows(s, policy, a.allocation, dt);
    a.testing_rate = testing_rate(a.allocation.testing - a.errors.correction_headcount, a.dev_tasks_per_pd, s,
                                  policy, dt);

    a.workforce_target = desired_workforce(a.effort_needed, s.scheduled_completion - t, a.workforce, policy);
    a.staffing = workforce_flows(s, a.workforce_target.target, policy, dt);
    a.forecast = forecast_completion(a.effort_needed, attainable_workforce(s, a.workforce_target.target, policy), t);

    // Tasks
    d.perceived_size = volatility_rate;
    d.tasks_developed = a.development_rate;
    d.tasks_tested = a.testing_rate;

    // Workforce
    const engine::Delay3State pipeline(policy.hiring_delay, s.hiring_pipeline);
    d.hiring_pipeline = pipeline.rates(a.staffing.hiring);
    d.rookies = a.staffing.arrivals - a.staffing.release_rookies - a.staffing.assimilation;
    d.experienced = a.staffing.assimilation - a.staffing.release_experienced;

    // Errors
    d.errors_generated = a.error_generation;
    d.errors_undetected = a.error_generation - a.errors.detection - a.errors.escape;
    d.errors_detected = a.errors.detection - a.errors.rework_fix;
    d.errors_escaped = a.errors.escape - a.errors.test_fix;
    d.errors_fixed = a.errors.rework_fix + a.errors.test_fix;

    // Effort
    d.effort_dev = a.allocation.dev;
    d.effort_qa = a.allocation.qa;
    d.effort_rework = a.allocation.rework;
    d.effort_training = a.allocation.training;
    d.effort_testing = a.allocation.testing;

    // Planning
    d.scheduled_completion = schedule_adjustment_rate(a.forecast, s.scheduled_completion, policy);
    const engine::SmoothState perceived(s.perceived_productivity, policy.productivity_perception_delay);
    d.perceived_productivity = perceived.rate(lifecycle_productivity(a.dev_tasks_per_pd, policy));
    return out;
}

inline ProjectState derivatives(const ProjectState& s, const ProjectParameters& params, const PolicyParams& policy,
                                double volatility_rate, double t, double dt) {
    return evaluate_project(s, params, policy, volatility_rate, t, dt).rates;
}

/// True once every task is developed and tested and no error is outstanding.
inline bool work_complete(const ProjectState& s) {
    return !development_active(s) && s.perceived_size - s.tasks_tested <= work_tolerance &&
           s.errors_undetected <= work_tolerance && s.errors_escaped <= work_tolerance;
}

// ---------------------------------------------------------------------------

/// Output channels, in the order of the time-series file.
inline const std::vector<std::string>& report_channels() {
    static const std::vector<std::string> names{
        "change_order_rate",   "workforce_total", "workforce_rookies", "productivity_loc_per_manday",
        "scheduled_completion", "effort_dev",     "effort_qa",         "effort_rework",
        "effort_training",     "effort_testing",  "error_generation_rate", "errors_cumulative",
        "tasks_developed",     "tasks_tested",    "perceived_size_tasks"};
    return names;
}

/// Extra channels kept in a run for analysis but not written to the report.
inline const std::vector<std::string>& diagnostic_channels() {
    static const std::vector<std::string> names{
        "schedule_pressure", "hiring_rate",     "arrival_rate",    "release_rate",     "desired_workforce",
        "effort_needed",     "development_rate", "testing_rate",   "alloc_dev",        "alloc_qa",
        "alloc_rework",      "alloc_training",  "alloc_testing",   "experienced"};
    return names;
}

struct EffortBreakdown {
    double dev = 0.0;
    double qa = 0.0;
    double rework = 0.0;
    double training = 0.0;
    double testing = 0.0;
    double total = 0.0;
};

inline EffortBreakdown effort_breakdown(const ProjectState& s) {
    EffortBreakdown b{s.effort_dev, s.effort_qa, s.effort_rework, s.effort_training, s.effort_testing, 0.0};
    b.total = b.dev + b.qa + b.rework + b.training + b.testing;
    return b;
}

struct ProjectRun {
    engine::TimeSeries series;
    std::optional<double> completion_day; ///< nullopt when the horizon ran out first
    EffortBreakdown effort;
    double final_tasks = 0.0;
    double final_loc = 0.0;
    double cumulative_errors = 0.0;
    ProjectState final_state;

    bool completed() const { return completion_day.has_value(); }
};

inline EffortBreakdown effort_breakdown(const ProjectRun& run) { return effort_breakdown(run.final_state); }

namespace detail {

inline engine::StockVector auxiliaries_of(const ProjectState& s, const ProjectAuxiliaries& a) {
    engine::StockVector v;
    v.set("change_order_rate", a.change_order_rate);
    v.set("workforce_total", a.workforce);
    v.set("workforce_rookies", s.rookies);
    v.set("productivity_loc_per_manday", a.productivity_loc);
    v.set("error_generation_rate", a.error_generation);
    v.set("errors_cumulative", s.errors_generated);
    v.set("perceived_size_tasks", s.perceived_size);
    v.set("schedule_pressure", a.schedule_pressure);
    v.set("hiring_rate", a.staffing.hiring);
    v.set("arrival_rate", a.staffing.arrivals);
    v.set("release_rate", a.staffing.release());
    v.set("desired_workforce", a.workforce_target.target);
    v.set("effort_needed", a.effort_needed);
    v.set("development_rate", a.development_rate);
    v.set("testing_rate", a.testing_rate);
    v.set("alloc_dev", a.allocation.dev);
    v.set("alloc_qa", a.allocation.qa);
    v.set("alloc_rework", a.allocation.rework);
    v.set("alloc_training", a.allocation.training);
    v.set("alloc_testing", a.allocation.testing);
    return v;
}

} // namespace detail

/// Simulates the project until the work is complete and the change-order
/// stream is exhausted, or until the end of the grid.
inline ProjectRun run_project(const ProjectParameters& params, const PolicyParams& policy,
                              const volatility::VolatilitySeries& volatility, const engine::SimConfig& config) {
    params.validate();
    policy.validate();
    config.validate();
    if (volatility.grid.dt != config.dt || volatility.grid.t_start != config.t_start) {
        throw StructuralError("volatility series grid does not match the simulation grid");
    }

    engine::System system;
    system.initial = to_stocks(init_state(params));
    system.non_negative = system.initial.names();
    system.evaluate = [&](double t, const engine::StockVector& stocks) {
        const auto k = static_cast<std::size_t>(std::llround((t - config.t_start) / config.dt));
        const ProjectState s = from_stocks(stocks);
        const ProjectEvaluation e = evaluate_project(s, params, policy, volatility.rate_at(k), t, config.dt);
        return engine::Evaluation{to_stocks(e.rates), detail::auxiliaries_of(s, e.aux)};
    };
    std::optional<double> completion;
    system.stop = [&](double t, const engine::StockVector& stocks, const engine::Evaluation&) {
        const auto k = static_cast<std::size_t>(std::llround((t - config.t_start) / config.dt));
        if (work_complete(from_stocks(stocks)) && volatility.exhausted_from(k)) {
            completion = t;
            return true;
        }
        return false;
    };

    std::vector<std::string> recorded = report_channels();
    for (const auto& name : diagnostic_channels()) {
        recorded.push_back(name);
    }
    for (const auto& name : system.initial.names()) {
        if (std::find(recorded.begin(), recorded.end(), name) == recorded.end()) {
            recorded.push_back(name);
        }
    }

    ProjectRun run;
    run.series = engine::simulate(system, config, recorded);
    engine::StockVector last;
    for (const auto& name : system.initial.names()) {
        last.set(name, run.series.last(name));
    }
    run.final_state = from_stocks(last);
    run.completion_day = completion;
    run.effort = effort_breakdown(run.final_state);
    run.final_tasks = run.final_state.tasks_tested;
    run.final_loc = run.final_tasks * params.loc_per_task;
    run.cumulative_errors = run.final_state.errors_generated;
    return run;
}

} // namespace pdyn::model
