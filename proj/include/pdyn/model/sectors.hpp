#pragma once

#include <algorithm>
#include <cmath>
#include <optional>

#include "pdyn/model/parameters.hpp"
#include "pdyn/model/state.hpp"

namespace pdyn::model {

/// Work below this many tasks (or errors) counts as none left.
inline constexpr double work_tolerance = 1e-6;

/// Floor on the denominators of the planning ratios, in person-days / days.
inline constexpr double planning_epsilon = 1.0;

inline ProjectState init_state(const ProjectParameters& params) {
    params.validate();
    ProjectState s;
    s.perceived_size = params.initial_size_tasks();
    s.experienced = params.initial_workforce * params.initial_experienced_fraction;
    s.rookies = params.initial_workforce - s.experienced;
    s.scheduled_completion = params.schedule_estimate;
    s.perceived_productivity = s.perceived_size / params.effort_estimate;
    return s;
}

// ---------------------------------------------------------------------------
// Human resources and productivity

/// Fraction of a person-day lost to coordination in a team of n.
inline double communication_loss(double n, const PolicyParams& policy) {
    if (n <= 1.0) {
        return 0.0;
    }
    return std::min(policy.comm_loss_cap, policy.comm_loss_coefficient * n * (n - 1.0));
}

inline double experience_mix_multiplier(double rookies, double experienced, const PolicyParams& policy) {
    const double total = rookies + experienced;
    if (total <= 0.0) {
        return 1.0;
    }
    return (experienced + policy.rookie_relative_productivity * rookies) / total;
}

inline double learning_multiplier(double completion_fraction, const PolicyParams& policy) {
    return policy.learning_table(std::clamp(completion_fraction, 0.0, 1.0));
}

struct PressureMultipliers {
    double productivity = 1.0;
    double error = 1.0;
};

inline PressureMultipliers pressure_multipliers(double sp, const PolicyParams& policy) {
    return {policy.pressure_productivity_table(sp), policy.pressure_error_table(sp)};
}

/// LOC per person-day of a developer, with the productive fraction of the
/// day already folded in.
inline double actual_productivity(const ProjectParameters& params, const ProjectState& state,
                                  const PolicyParams& policy, double sp) {
    const double completion =
        state.perceived_size > 0.0 ? state.tasks_developed / state.perceived_size : 0.0;
    return params.nominal_potential_productivity * params.nominal_fraction_manday *
           (1.0 - communication_loss(state.workforce(), policy)) * params.complexity_multiplier *
           params.user_involvement_multiplier * learning_multiplier(completion, policy) *
           pressure_multipliers(sp, policy).productivity *
           experience_mix_multiplier(state.rookies, state.experienced, policy);
}

/// Tasks per person-day over the whole lifecycle (development plus its QA
/// share plus testing) implied by a developer productivity in tasks per
/// person-day. This is the quantity management perceives and plans with.
inline double lifecycle_productivity(double dev_tasks_per_pd, const PolicyParams& policy) {
    return (1.0 - policy.planned_testing_fraction) * (1.0 - policy.qa_headcount_fraction) * dev_tasks_per_pd;
}

/// Tasks tested per tester person-day. Testing keeps the planned
/// development-to-testing effort ratio.
inline double testing_productivity(double dev_tasks_per_pd, const PolicyParams& policy) {
    return lifecycle_productivity(dev_tasks_per_pd, policy) / policy.planned_testing_fraction;
}

// ---------------------------------------------------------------------------
// Planning and control

struct PerceivedEffort {
    double development = 0.0; ///< remaining development incl. its QA share
    double testing = 0.0;
    double rework = 0.0;      ///< detected errors awaiting rework
    double correction = 0.0;  ///< escaped errors awaiting correction
    double total() const { return development + testing + rework + correction; }
};

/// Effort perceived still needed, in person-days. A task costs
/// 1 / perceived_productivity, split between development and testing in the
/// planned proportion.
inline PerceivedEffort effort_perceived_still_needed(const ProjectState& s, const PolicyParams& policy) {
    PerceivedEffort e;
    const double pp = s.perceived_productivity;
    if (pp > 0.0) {
        const double f = policy.planned_testing_fraction;
        e.development = (1.0 - f) * std::max(0.0, s.perceived_size - s.tasks_developed) / pp;
        e.testing = f * std::max(0.0, s.perceived_size - s.tasks_tested) / pp;
    }
    e.rework = s.errors_detected * policy.rework_cost_per_error;
    e.correction = s.errors_escaped * policy.test_correction_per_escaped_error;
    return e;
}

inline double effort_remaining_capacity(double workforce, double scheduled_completion, double t) {
    return workforce * std::max(0.0, scheduled_completion - t);
}

inline double schedule_pressure(double effort_needed, double effort_capacity, const PolicyParams& policy) {
    const double sp = (effort_needed - effort_capacity) / std::max(effort_capacity, planning_epsilon);
    return std::clamp(sp, policy.pressure_min, policy.pressure_max);
}

inline double schedule_pressure(const ProjectState& s, const PolicyParams& policy, double t) {
    return schedule_pressure(effort_perceived_still_needed(s, policy).total(),
                             effort_remaining_capacity(s.workforce(), s.scheduled_completion, t), policy);
}

struct WorkforceTarget {
    double indicated = 0.0; ///< workforce that would finish on schedule
    double willingness = 0.0;
    double target = 0.0;
};

/// Workforce sought. Willingness to change the workforce damps hiring as
/// the scheduled completion approaches; reductions are never damped.
inline WorkforceTarget desired_workforce(double effort_needed, double time_remaining, double current,
                                         const PolicyParams& policy) {
    WorkforceTarget w;
    w.indicated = effort_needed / std::max(planning_epsilon, time_remaining);
    w.willingness = policy.wcwf_table(std::max(0.0, time_remaining) / policy.assimilation_delay);
    w.target = w.indicated > current ? w.willingness * w.indicated + (1.0 - w.willingness) * current
                                     : w.indicated;
    return w;
}

inline WorkforceTarget desired_workforce(const ProjectState& s, const PolicyParams& policy, double t) {
    return desired_workforce(effort_perceived_still_needed(s, policy).total(), s.scheduled_completion - t,
                             s.workforce(), policy);
}

/// Largest team the experienced staff can absorb, counting hires in the pipeline as rookies.
inline double workforce_ceiling(const ProjectState& s, const PolicyParams& policy) {
    return s.experienced * (1.0 + policy.max_rookies_per_experienced);
}

/// Workforce management can actually plan with: the target, limited by the
/// hiring ceiling unless the team is already larger.
inline double attainable_workforce(const ProjectState& s, double target, const PolicyParams& policy) {
    return std::min(target, std::max(s.workforce(), workforce_ceiling(s, policy)));
}

/// Completion date implied by the remaining effort and the workforce that
/// will be doing it; nullopt when there is nobody.
inline std::optional<double> forecast_completion(double effort_needed, double workforce, double t) {
    if (!(workforce > 0.0)) {
        return std::nullopt;
    }
    return t + effort_needed / workforce;
}

/// d(scheduled_completion)/dt: slips toward a later forecast, never contracts.
inline double schedule_adjustment_rate(std::optional<double> forecast, double scheduled,
                                       const PolicyParams& policy) {
    if (!forecast) {
        return 0.0;
    }
    return std::max(0.0, *forecast - scheduled) / policy.schedule_adjust_delay;
}

// ---------------------------------------------------------------------------
// Allocation and flows

struct Allocation {
    double dev = 0.0;
    double qa = 0.0;
    double rework = 0.0;
    double training = 0.0;
    double testing = 0.0;
    double total() const { return dev + qa + rework + training + testing; }
};

inline bool development_active(const ProjectState& s) {
    return s.perceived_size - s.tasks_developed > work_tolerance;
}

/// Splits the workforce across activities. Training and rework are served
/// first; of the rest, development takes what it can use within the step
/// (with its QA share) and testing absorbs the remainder.
inline Allocation allocate_headcount(const ProjectState& s, const PolicyParams& policy, double dev_tasks_per_pd,
                                     double dt) {
    Allocation a;
    const double n = s.workforce();
    if (n <= 0.0) {
        return a;
    }
    a.training = std::min(policy.trainer_fraction_per_rookie * s.rookies, s.experienced);
    double pool = n - a.training;

    const double rework_needed =
        s.errors_detected * policy.rework_cost_per_error / policy.qa_detection_delay;
    a.rework = std::min(pool, rework_needed);
    pool -= a.rework;

    if (development_active(s)) {
        const double q = policy.qa_headcount_fraction;
        const double dev_full = (1.0 - q) * pool;
        const double remaining = s.perceived_size - s.tasks_developed;
        const double dev_needed =
            dev_tasks_per_pd > 0.0 ? remaining / (dev_tasks_per_pd * dt) : dev_full;
        a.dev = std::min(dev_full, dev_needed);
        a.qa = dev_full > 0.0 ? q * pool * (a.dev / dev_full) : q * pool;
        a.testing = std::max(0.0, pool - a.dev - a.qa);
    } else {
        a.testing = pool;
    }
    return a;
}

inline double software_development_rate(double dev_headcount, double dev_tasks_per_pd, const ProjectState& s,
                                        double dt) {
    const double remaining = std::max(0.0, s.perceived_size - s.tasks_developed);
    return std::min(dev_headcount * dev_tasks_per_pd, remaining / dt);
}

inline double error_generation_rate(double dev_rate, double mix_multiplier, double sp, const PolicyParams& policy) {
    return dev_rate * policy.errors_per_task_nominal * pressure_multipliers(sp, policy).error *
           (2.0 - mix_multiplier);
}

struct ErrorFlows {
    double detection = 0.0;           ///< undetected -> detected
    double rework_fix = 0.0;          ///< detected -> fixed
    double escape = 0.0;              ///< undetected -> escaped
    double test_fix = 0.0;            ///< escaped -> fixed
    double correction_headcount = 0.0; ///< testers busy correcting escaped errors
};

inline ErrorFlows error_flows(const ProjectState& s, const PolicyParams& policy, const Allocation& alloc,
                              double dt) {
    ErrorFlows f;
    if (development_active(s)) {
        f.detection = std::min(policy.qa_detection_efficiency * s.errors_undetected / policy.qa_detection_delay,
                               s.errors_undetected / dt);
    } else {
        f.escape = s.errors_undetected / dt;
    }

    if (policy.rework_cost_per_error > 0.0) {
        f.rework_fix = std::min(alloc.rework / policy.rework_cost_per_error, s.errors_detected / dt);
    } else {
        f.rework_fix = s.errors_detected / dt;
    }

    const double cost = policy.test_correction_per_escaped_error;
    if (cost > 0.0) {
        f.correction_headcount = std::min(alloc.testing, s.errors_escaped * cost / dt);
        f.test_fix = f.correction_headcount / cost;
    } else {
        f.test_fix = s.errors_escaped / dt;
    }
    return f;
}

inline double testing_rate(double tester_headcount, double dev_tasks_per_pd, const ProjectState& s,
                           const PolicyParams& policy, double dt) {
    const double untested = std::max(0.0, s.tasks_developed - s.tasks_tested);
    return std::min(tester_headcount * testing_productivity(dev_tasks_per_pd, policy), untested / dt);
}

struct WorkforceFlows {
    double hiring = 0.0;              ///< orders into the hiring pipeline, FTE/day
    double arrivals = 0.0;            ///< pipeline outflow into rookies
    double release_rookies = 0.0;
    double release_experienced = 0.0;
    double assimilation = 0.0;        ///< rookies -> experienced
    double release() const { return release_rookies + release_experienced; }
};

/// Hiring, release and assimilation for a workforce target. Hires already
/// in the pipeline count toward the target, hiring stops at the workforce
/// ceiling, and releases take rookies first.
inline WorkforceFlows workforce_flows(const ProjectState& s, double target, const PolicyParams& policy, double dt) {
    WorkforceFlows f;
    const double n = s.workforce();
    const double hire_to = std::min(target, workforce_ceiling(s, policy));
    f.hiring = std::max(0.0, hire_to - n - s.pipeline_total()) / policy.hiring_delay;
    f.arrivals = s.hiring_pipeline[2] * 3.0 / policy.hiring_delay;
    f.assimilation = s.rookies / policy.assimilation_delay;

    const double release = std::max(0.0, n - target) / policy.release_delay;
    f.release_rookies = std::min(release, std::max(0.0, s.rookies / dt - f.assimilation));
    f.release_experienced = std::min(release - f.release_rookies, s.experienced / dt);
    return f;
}

} // namespace pdyn::model
