#pragma once

#include <cmath>
#include <string>
#include <utility>

#include "pdyn/engine/table_function.hpp"
#include "pdyn/error.hpp"

namespace pdyn::model {

using engine::TableFunction;

/// Calibrated project constants. Effort is in person-days of a five-day
/// working week; time is in working days.
struct ProjectParameters {
    double initial_size_loc = 0.0;
    double loc_per_task = 0.0;
    double effort_estimate = 0.0;              ///< person-days
    double schedule_estimate = 0.0;            ///< working days
    double nominal_potential_productivity = 0.0; ///< LOC per person-day
    double nominal_fraction_manday = 1.0;
    double complexity_multiplier = 1.0;
    double user_involvement_multiplier = 1.0;
    double initial_workforce = 0.0;            ///< FTE
    double initial_experienced_fraction = 1.0;

    void validate() const {
        auto positive = [](const char* name, double v) {
            if (!(v > 0.0) || !std::isfinite(v)) {
                throw DomainError(std::string("project parameter ") + name + " must be positive");
            }
        };
        auto fraction = [](const char* name, double v) {
            if (!(v > 0.0 && v <= 1.0)) {
                throw DomainError(std::string("project parameter ") + name + " must be in (0, 1]");
            }
        };
        positive("initial_size_loc", initial_size_loc);
        positive("loc_per_task", loc_per_task);
        positive("effort_estimate", effort_estimate);
        positive("schedule_estimate", schedule_estimate);
        positive("nominal_potential_productivity", nominal_potential_productivity);
        positive("complexity_multiplier", complexity_multiplier);
        positive("user_involvement_multiplier", user_involvement_multiplier);
        positive("initial_workforce", initial_workforce);
        fraction("nominal_fraction_manday", nominal_fraction_manday);
        fraction("initial_experienced_fraction", initial_experienced_fraction);
    }

    double initial_size_tasks() const { return initial_size_loc / loc_per_task; }
};

/// Management and process-closure constants. Defaults reproduce the
/// behaviour narrated for the reference case; every field can be overridden
/// by a scenario.
struct PolicyParams {
    double hiring_delay = 15.0;
    double release_delay = 10.0;
    double assimilation_delay = 20.0;
    double max_rookies_per_experienced = 0.5; ///< hiring ceiling
    double rookie_relative_productivity = 0.5;
    double trainer_fraction_per_rookie = 0.2;
    double qa_headcount_fraction = 0.15;
    double comm_loss_coefficient = 0.0015; ///< loss = c * n * (n - 1); 0.03 at n = 5
    double comm_loss_cap = 0.5;
    double errors_per_task_nominal = 1.0;
    double qa_detection_efficiency = 0.8;
    double qa_detection_delay = 10.0;
    double rework_cost_per_error = 0.05;
    double test_correction_per_escaped_error = 0.3;
    double planned_testing_fraction = 0.30;
    double schedule_adjust_delay = 5.0;
    double productivity_perception_delay = 10.0;
    double pressure_min = -0.5;
    double pressure_max = 1.5;

    TableFunction learning_table{{0.0, 0.9}, {0.5, 1.0}, {1.0, 1.25}};
    TableFunction pressure_productivity_table{{-0.5, 0.95}, {0.0, 1.0}, {1.0, 1.15}, {1.5, 1.2}};
    TableFunction pressure_error_table{{-0.5, 0.95}, {0.0, 1.0}, {1.0, 1.3}, {1.5, 1.5}};
    TableFunction wcwf_table{{0.0, 0.0}, {1.5, 1.0}};

    void validate() const {
        auto positive = [](const char* name, double v) {
            if (!(v > 0.0) || !std::isfinite(v)) {
                throw DomainError(std::string("policy parameter ") + name + " must be > 0");
            }
        };
        auto fraction = [](const char* name, double v) {
            if (!(v >= 0.0 && v <= 1.0)) {
                throw DomainError(std::string("policy parameter ") + name + " must be in [0, 1]");
            }
        };
        auto non_negative = [](const char* name, double v) {
            if (!(v >= 0.0) || !std::isfinite(v)) {
                throw DomainError(std::string("policy parameter ") + name + " must be >= 0");
            }
        };
        positive("hiring_delay", hiring_delay);
        positive("release_delay", release_delay);
        positive("assimilation_delay", assimilation_delay);
        positive("qa_detection_delay", qa_detection_delay);
        positive("schedule_adjust_delay", schedule_adjust_delay);
        positive("productivity_perception_delay", productivity_perception_delay);
        non_negative("max_rookies_per_experienced", max_rookies_per_experienced);
        fraction("rookie_relative_productivity", rookie_relative_productivity);
        fraction("trainer_fraction_per_rookie", trainer_fraction_per_rookie);
        fraction("comm_loss_cap", comm_loss_cap);
        fraction("qa_detection_efficiency", qa_detection_efficiency);
        non_negative("comm_loss_coefficient", comm_loss_coefficient);
        non_negative("errors_per_task_nominal", errors_per_task_nominal);
        non_negative("rework_cost_per_error", rework_cost_per_error);
        non_negative("test_correction_per_escaped_error", test_correction_per_escaped_error);
        // Both fractions divide expressions elsewhere, so the open end is excluded.
        if (!(qa_headcount_fraction >= 0.0 && qa_headcount_fraction < 1.0)) {
            throw DomainError("policy parameter qa_headcount_fraction must be in [0, 1)");
        }
        if (!(planned_testing_fraction > 0.0 && planned_testing_fraction < 1.0)) {
            throw DomainError("policy parameter planned_testing_fraction must be in (0, 1)");
        }
        if (!(pressure_min <= 0.0 && pressure_max >= 0.0)) {
            throw DomainError("policy pressure clamp must bracket 0");
        }
    }
};

} // namespace pdyn::model
