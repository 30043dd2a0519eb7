#pragma once

#include <algorithm>
#include <cmath>
#include <random>
#include <string>
#include <vector>

#include "pdyn/pdyn.hpp"

namespace testsupport {

inline std::string data_path(const std::string& rel) { return std::string(PDYN_DATA_DIR) + "/" + rel; }

inline pdyn::scenario::Scenario acbs_scenario() { return pdyn::scenario::load_scenario(data_path("acbs/scenario.json")); }

/// Policy whose tables are all neutral (constant 1, willingness to hire 1).
inline pdyn::model::PolicyParams neutral_policy() {
    pdyn::model::PolicyParams p;
    p.learning_table = pdyn::engine::TableFunction::constant(1.0);
    p.pressure_productivity_table = pdyn::engine::TableFunction::constant(1.0);
    p.pressure_error_table = pdyn::engine::TableFunction::constant(1.0);
    p.wcwf_table = pdyn::engine::TableFunction::constant(1.0);
    p.errors_per_task_nominal = 0.0;
    return p;
}

/// A project whose estimate is exactly the effort the neutral model needs:
/// n0 people for S days at the achievable lifecycle productivity.
inline pdyn::model::ProjectParameters consistent_baseline(const pdyn::model::PolicyParams& policy, double n0 = 5.0,
                                                          double schedule = 100.0) {
    pdyn::model::ProjectParameters p;
    p.loc_per_task = 20.0;
    p.nominal_potential_productivity = 20.0;
    p.nominal_fraction_manday = 0.7;
    p.complexity_multiplier = 0.75;
    p.user_involvement_multiplier = 0.6;
    p.initial_workforce = n0;
    p.initial_experienced_fraction = 1.0;
    p.schedule_estimate = schedule;
    p.effort_estimate = n0 * schedule;
    const double loc_per_pd = p.nominal_potential_productivity * p.nominal_fraction_manday *
                              (1.0 - pdyn::model::communication_loss(n0, policy)) * p.complexity_multiplier *
                              p.user_involvement_multiplier;
    const double lifecycle_tasks_per_pd =
        (1.0 - policy.planned_testing_fraction) * (1.0 - policy.qa_headcount_fraction) * loc_per_pd / p.loc_per_task;
    p.initial_size_loc = p.effort_estimate * lifecycle_tasks_per_pd * p.loc_per_task;
    return p;
}

/// Centered moving average over a window of `days`.
inline std::vector<double> moving_average(std::span<const double> v, double dt, double days) {
    const auto half = static_cast<std::ptrdiff_t>(std::llround(days / dt / 2.0));
    std::vector<double> out(v.size());
    const auto n = static_cast<std::ptrdiff_t>(v.size());
    for (std::ptrdiff_t i = 0; i < n; ++i) {
        const auto lo = std::max<std::ptrdiff_t>(0, i - half);
        const auto hi = std::min<std::ptrdiff_t>(n - 1, i + half);
        double s = 0.0;
        for (auto j = lo; j <= hi; ++j) {
            s += v[static_cast<std::size_t>(j)];
        }
        out[static_cast<std::size_t>(i)] = s / static_cast<double>(hi - lo + 1);
    }
    return out;
}

inline std::size_t argmax(std::span<const double> v) {
    return static_cast<std::size_t>(std::max_element(v.begin(), v.end()) - v.begin());
}

/// Rise-then-fall check: non-decreasing up to the peak and non-increasing
/// after it, within `slack` (relative to the peak), and the ends lower than the peak.
inline bool single_peak(std::span<const double> v, double slack = 1e-6) {
    if (v.size() < 3) {
        return false;
    }
    const std::size_t k = argmax(v);
    const double tol = slack * std::abs(v[k]);
    for (std::size_t i = 1; i <= k; ++i) {
        if (v[i] < v[i - 1] - tol) {
            return false;
        }
    }
    for (std::size_t i = k + 1; i < v.size(); ++i) {
        if (v[i] > v[i - 1] + tol) {
            return false;
        }
    }
    return k > 0 && k + 1 < v.size() && v.front() < v[k] && v.back() < v[k];
}

/// Random scenario within the declared parameter ranges.
struct RandomScenario {
    pdyn::model::ProjectParameters params;
    pdyn::model::PolicyParams policy;
    pdyn::volatility::VolatilityPattern pattern;
    pdyn::engine::SimConfig sim;
};

inline RandomScenario random_scenario(std::mt19937_64& rng) {
    auto u = [&](double a, double b) { return std::uniform_real_distribution<double>(a, b)(rng); };
    RandomScenario r;
    r.params.initial_size_loc = u(2000, 12000);
    r.params.loc_per_task = u(10, 30);
    r.params.effort_estimate = u(200, 1200);
    r.params.schedule_estimate = u(40, 160);
    r.params.nominal_potential_productivity = u(10, 30);
    r.params.nominal_fraction_manday = u(0.5, 1.0);
    r.params.complexity_multiplier = u(0.5, 1.0);
    r.params.user_involvement_multiplier = u(0.5, 1.0);
    r.params.initial_workforce = u(1, 8);
    r.params.initial_experienced_fraction = u(0.3, 1.0);

    r.policy.hiring_delay = u(5, 30);
    r.policy.release_delay = u(5, 20);
    r.policy.assimilation_delay = u(10, 40);
    r.policy.max_rookies_per_experienced = u(0.2, 2.0);
    r.policy.rookie_relative_productivity = u(0.3, 0.8);
    r.policy.qa_headcount_fraction = u(0.05, 0.3);
    r.policy.errors_per_task_nominal = u(0.2, 2.0);
    r.policy.qa_detection_efficiency = u(0.5, 0.95);
    r.policy.qa_detection_delay = u(5, 20);
    r.policy.rework_cost_per_error = u(0.02, 0.2);
    r.policy.test_correction_per_escaped_error = u(0.1, 0.6);
    r.policy.planned_testing_fraction = u(0.2, 0.4);
    r.policy.schedule_adjust_delay = u(2, 15);
    r.policy.productivity_perception_delay = u(5, 20);

    r.sim = {0.0, 500.0, 0.25};
    const auto shape = pdyn::volatility::all_pattern_shapes[std::uniform_int_distribution<int>(0, 3)(rng)];
    const double a = u(0, 150);
    r.pattern = {shape, u(0, 4000), a, a + u(20, 200), u(2, 20)};
    return r;
}

} // namespace testsupport
