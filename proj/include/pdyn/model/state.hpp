#pragma once

#include <array>
#include <string_view>

#include "pdyn/engine/stock_vector.hpp"

namespace pdyn::model {

/// Stocks of the project model. Tasks are LOC / loc_per_task; workforce is
/// in FTE; effort buckets are cumulative person-days.
struct ProjectState {
    double perceived_size = 0.0;
    double tasks_developed = 0.0;
    double tasks_tested = 0.0;

    double rookies = 0.0;
    double experienced = 0.0;
    std::array<double, 3> hiring_pipeline{0.0, 0.0, 0.0}; ///< hires accepted but not yet on board

    double errors_generated = 0.0; ///< cumulative, for the ledger
    double errors_undetected = 0.0;
    double errors_detected = 0.0;
    double errors_escaped = 0.0;
    double errors_fixed = 0.0;

    double effort_dev = 0.0;
    double effort_qa = 0.0;
    double effort_rework = 0.0;
    double effort_training = 0.0;
    double effort_testing = 0.0;

    double scheduled_completion = 0.0;
    double perceived_productivity = 0.0; ///< smoothed, tasks per person-day over the whole lifecycle

    double workforce() const { return rookies + experienced; }
    double effort_total() const { return effort_dev + effort_qa + effort_rework + effort_training + effort_testing; }
    double pipeline_total() const { return hiring_pipeline[0] + hiring_pipeline[1] + hiring_pipeline[2]; }
    double error_ledger_sum() const { return errors_undetected + errors_detected + errors_escaped + errors_fixed; }

    friend bool operator==(const ProjectState&, const ProjectState&) = default;
};

struct StockField {
    std::string_view name;
    double ProjectState::*member;
};

inline constexpr std::array<StockField, 17> scalar_stock_fields{{
    {"perceived_size", &ProjectState::perceived_size},
    {"tasks_developed", &ProjectState::tasks_developed},
    {"tasks_tested", &ProjectState::tasks_tested},
    {"rookies", &ProjectState::rookies},
    {"experienced", &ProjectState::experienced},
    {"errors_generated", &ProjectState::errors_generated},
    {"errors_undetected", &ProjectState::errors_undetected},
    {"errors_detected", &ProjectState::errors_detected},
    {"errors_escaped", &ProjectState::errors_escaped},
    {"errors_fixed", &ProjectState::errors_fixed},
    {"effort_dev", &ProjectState::effort_dev},
    {"effort_qa", &ProjectState::effort_qa},
    {"effort_rework", &ProjectState::effort_rework},
    {"effort_training", &ProjectState::effort_training},
    {"effort_testing", &ProjectState::effort_testing},
    {"scheduled_completion", &ProjectState::scheduled_completion},
    {"perceived_productivity", &ProjectState::perceived_productivity},
}};

inline constexpr std::array<std::string_view, 3> hiring_pipeline_names{"hiring_pipeline_1", "hiring_pipeline_2",
                                                                       "hiring_pipeline_3"};

inline engine::StockVector to_stocks(const ProjectState& s) {
    engine::StockVector v;
    for (const auto& f : scalar_stock_fields) {
        v.set(f.name, s.*(f.member));
    }
    for (std::size_t i = 0; i < 3; ++i) {
        v.set(hiring_pipeline_names[i], s.hiring_pipeline[i]);
    }
    return v;
}

inline ProjectState from_stocks(const engine::StockVector& v) {
    ProjectState s;
    for (const auto& f : scalar_stock_fields) {
        s.*(f.member) = v.at(f.name);
    }
    for (std::size_t i = 0; i < 3; ++i) {
        s.hiring_pipeline[i] = v.at(hiring_pipeline_names[i]);
    }
    return s;
}

} // namespace pdyn::model
