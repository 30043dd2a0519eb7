#pragma once

#include <cmath>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "pdyn/error.hpp"
#include "pdyn/model/parameters.hpp"

namespace pdyn::calibration {

struct Deduction {
    std::string name;
    double amount = 0.0;

    friend bool operator==(const Deduction&, const Deduction&) = default;
};

/// Raw project metrics from which the model parameters are derived.
struct ProjectMetrics {
    double estimated_total_effort = 0.0;   ///< person-days, whole lifecycle
    std::vector<Deduction> effort_deductions;
    double estimated_total_schedule = 0.0; ///< working days, whole lifecycle
    std::vector<Deduction> schedule_deductions;
    double delivered_loc = 0.0;
    double actual_total_effort = 0.0;      ///< person-days spent inside the model boundary
    double testing_fraction = 0.0;
    double complexity_multiplier = 1.0;
    double user_involvement_multiplier = 1.0;
    double nominal_fraction_manday = 1.0;
    double comm_loss_at_reference = 0.0;
    double initial_size_loc = 0.0;
    double initial_workforce = 0.0;
    double sim_tasks_reference = 0.0;
    double sim_loc_reference = 0.0;
    double initial_experienced_fraction = 1.0;
};

inline double deduction_sum(const std::vector<Deduction>& ds) {
    return std::accumulate(ds.begin(), ds.end(), 0.0, [](double acc, const Deduction& d) { return acc + d.amount; });
}

namespace detail {

inline double net_of(double total, const std::vector<Deduction>& ds, const char* field) {
    for (const auto& d : ds) {
        if (!(d.amount >= 0.0) || !std::isfinite(d.amount)) {
            throw CalibrationError(field, "deduction '" + d.name + "' must be a non-negative number");
        }
    }
    const double net = total - deduction_sum(ds);
    if (!(net > 0.0)) {
        throw CalibrationError(field, "deductions must sum to less than the total");
    }
    return net;
}

} // namespace detail

inline double effective_effort(const ProjectMetrics& m) {
    return detail::net_of(m.estimated_total_effort, m.effort_deductions, "effort_deductions");
}

inline double effective_schedule(const ProjectMetrics& m) {
    return detail::net_of(m.estimated_total_schedule, m.schedule_deductions, "schedule_deductions");
}

/// Delivered LOC per person-day of development effort, where development
/// excludes the testing share.
inline double realized_dev_productivity(const ProjectMetrics& m) {
    if (!(m.testing_fraction >= 0.0 && m.testing_fraction < 1.0)) {
        throw CalibrationError("testing_fraction", "must be in [0, 1)");
    }
    if (!(m.actual_total_effort > 0.0)) {
        throw CalibrationError("actual_total_effort", "must be positive");
    }
    return m.delivered_loc / ((1.0 - m.testing_fraction) * m.actual_total_effort);
}

inline double motivation_comm_multiplier(double nominal_fraction, double comm_loss) {
    if (!(nominal_fraction >= 0.0 && nominal_fraction <= 1.0)) {
        throw CalibrationError("nominal_fraction_manday", "must be in [0, 1]");
    }
    if (!(comm_loss >= 0.0 && comm_loss <= 1.0)) {
        throw CalibrationError("comm_loss_at_reference", "must be in [0, 1]");
    }
    return nominal_fraction * (1.0 - comm_loss);
}

inline double nominal_potential_productivity(double realized, double motivation_comm, double complexity,
                                             double user_involvement) {
    if (!(motivation_comm > 0.0)) {
        throw CalibrationError("motivation_comm_multiplier", "must be positive");
    }
    if (!(complexity > 0.0)) {
        throw CalibrationError("complexity_multiplier", "must be positive");
    }
    if (!(user_involvement > 0.0)) {
        throw CalibrationError("user_involvement_multiplier", "must be positive");
    }
    return realized / (motivation_comm * complexity * user_involvement);
}

inline double loc_per_task(const ProjectMetrics& m) {
    if (!(m.sim_tasks_reference > 0.0)) {
        throw CalibrationError("sim_tasks_reference", "must be positive");
    }
    return m.sim_loc_reference / m.sim_tasks_reference;
}

struct TraceEntry {
    std::string quantity;
    std::string formula;
    double value = 0.0;
};

struct Calibration {
    model::ProjectParameters parameters;
    std::vector<TraceEntry> trace;
};

namespace detail {

inline std::string num(double v) {
    std::ostringstream os;
    os.precision(10);
    os << v;
    return os.str();
}

inline std::string deduction_formula(double total, const std::vector<Deduction>& ds, double net) {
    std::string out = num(total) + " - ";
    if (ds.size() > 1) {
        out += "(";
        for (std::size_t i = 0; i < ds.size(); ++i) {
            out += (i ? " + " : "") + num(ds[i].amount);
        }
        out += ") = ";
        out += num(total) + " - " + num(deduction_sum(ds));
    } else {
        out += num(deduction_sum(ds));
    }
    return out + " = " + num(net);
}

inline void require_positive(double v, const char* field) {
    if (!(v > 0.0) || !std::isfinite(v)) {
        throw CalibrationError(field, "must be positive");
    }
}

} // namespace detail

/// Derives the project parameters from raw metrics, recording every
/// intermediate value with the arithmetic that produced it.
inline Calibration calibrate(const ProjectMetrics& m) {
    detail::require_positive(m.estimated_total_effort, "estimated_total_effort");
    detail::require_positive(m.estimated_total_schedule, "estimated_total_schedule");
    detail::require_positive(m.delivered_loc, "delivered_loc");
    detail::require_positive(m.initial_size_loc, "initial_size_loc");
    detail::require_positive(m.initial_workforce, "initial_workforce");
    detail::require_positive(m.sim_loc_reference, "sim_loc_reference");
    if (!(m.initial_experienced_fraction > 0.0 && m.initial_experienced_fraction <= 1.0)) {
        throw CalibrationError("initial_experienced_fraction", "must be in (0, 1]");
    }

    Calibration c;
    auto& p = c.parameters;
    auto& tr = c.trace;
    using detail::num;

    p.effort_estimate = effective_effort(m);
    tr.push_back({"effort_estimate", detail::deduction_formula(m.estimated_total_effort, m.effort_deductions,
                                                               p.effort_estimate), p.effort_estimate});

    p.schedule_estimate = effective_schedule(m);
    tr.push_back({"schedule_estimate", detail::deduction_formula(m.estimated_total_schedule, m.schedule_deductions,
                                                                 p.schedule_estimate), p.schedule_estimate});

    const double dev_effort = (1.0 - m.testing_fraction) * m.actual_total_effort;
    const double realized = realized_dev_productivity(m);
    tr.push_back({"development_effort",
                  num(1.0 - m.testing_fraction) + " * " + num(m.actual_total_effort) + " = " + num(dev_effort),
                  dev_effort});
    tr.push_back({"realized_dev_productivity", num(m.delivered_loc) + " / " + num(dev_effort) + " = " + num(realized),
                  realized});

    const double mc = motivation_comm_multiplier(m.nominal_fraction_manday, m.comm_loss_at_reference);
    tr.push_back({"motivation_comm_multiplier",
                  num(m.nominal_fraction_manday) + " * (1 - " + num(m.comm_loss_at_reference) + ") = " + num(mc),
                  mc});

    p.nominal_potential_productivity =
        nominal_potential_productivity(realized, mc, m.complexity_multiplier, m.user_involvement_multiplier);
    tr.push_back({"nominal_potential_productivity",
                  num(realized) + " / (" + num(mc) + " * " + num(m.complexity_multiplier) + " * " +
                      num(m.user_involvement_multiplier) + ") = " + num(p.nominal_potential_productivity),
                  p.nominal_potential_productivity});

    p.loc_per_task = loc_per_task(m);
    detail::require_positive(p.loc_per_task, "sim_loc_reference");
    tr.push_back({"loc_per_task",
                  num(m.sim_loc_reference) + " / " + num(m.sim_tasks_reference) + " = " + num(p.loc_per_task),
                  p.loc_per_task});

    p.initial_size_loc = m.initial_size_loc;
    p.nominal_fraction_manday = m.nominal_fraction_manday;
    p.complexity_multiplier = m.complexity_multiplier;
    p.user_involvement_multiplier = m.user_involvement_multiplier;
    p.initial_workforce = m.initial_workforce;
    p.initial_experienced_fraction = m.initial_experienced_fraction;
    const double tasks = p.initial_size_tasks();
    tr.push_back({"initial_size_tasks",
                  num(p.initial_size_loc) + " / " + num(p.loc_per_task) + " = " + num(tasks), tasks});

    try {
        p.validate();
    } catch (const DomainError& e) {
        throw CalibrationError("parameters", e.what());
    }
    return c;
}

} // namespace pdyn::calibration
