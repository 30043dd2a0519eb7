#pragma once

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <optional>
#include <string>

#include "pdyn/model/project_model.hpp"
#include "pdyn/scenario/csv.hpp"
#include "pdyn/scenario/json_io.hpp"

namespace pdyn::scenario {

/// Failure to write an output file.
class IoError : public Error {
public:
    using Error::Error;
};

struct SummaryReport {
    bool completed = false;
    std::optional<double> completion_day;
    double last_day = 0.0;
    model::EffortBreakdown effort;
    double errors_generated = 0.0;
    double errors_fixed = 0.0;
    double schedule_estimate = 0.0;
    double effort_estimate = 0.0;
    std::optional<double> schedule_overrun_percent; ///< only for a completed run
    double effort_overrun_percent = 0.0;
    double planned_testing_effort = 0.0;
    double final_perceived_size_tasks = 0.0;
    double final_tasks = 0.0;
    double final_loc = 0.0;
};

inline double overrun_percent(double actual, double estimate) { return (actual - estimate) / estimate * 100.0; }

inline SummaryReport summarize(const model::ProjectRun& run, const model::ProjectParameters& params,
                               const model::PolicyParams& policy) {
    SummaryReport r;
    r.completed = run.completed();
    r.completion_day = run.completion_day;
    r.last_day = run.series.empty() ? 0.0 : run.series.time_grid().back();
    r.effort = run.effort;
    r.errors_generated = run.cumulative_errors;
    r.errors_fixed = run.final_state.errors_fixed;
    r.schedule_estimate = params.schedule_estimate;
    r.effort_estimate = params.effort_estimate;
    if (run.completion_day) {
        r.schedule_overrun_percent = overrun_percent(*run.completion_day, params.schedule_estimate);
    }
    r.effort_overrun_percent = overrun_percent(run.effort.total, params.effort_estimate);
    r.planned_testing_effort = policy.planned_testing_fraction * params.effort_estimate;
    r.final_perceived_size_tasks = run.final_state.perceived_size;
    r.final_tasks = run.final_tasks;
    r.final_loc = run.final_loc;
    return r;
}

/// Rounds to the precision used in the output files so reports are byte-stable.
inline double stable(double v) { return std::strtod(format_number(v).c_str(), nullptr); }

inline json summary_to_json(const SummaryReport& r) {
    auto opt = [](const std::optional<double>& v) { return v ? json(stable(*v)) : json(nullptr); };
    json out;
    out["completed"] = r.completed;
    out["completion_day"] = opt(r.completion_day);
    out["last_day"] = stable(r.last_day);
    out["effort"] = {{"dev", stable(r.effort.dev)},           {"qa", stable(r.effort.qa)},
                     {"rework", stable(r.effort.rework)},     {"training", stable(r.effort.training)},
                     {"testing", stable(r.effort.testing)},   {"total", stable(r.effort.total)}};
    out["errors_generated"] = stable(r.errors_generated);
    out["errors_fixed"] = stable(r.errors_fixed);
    out["schedule_estimate"] = stable(r.schedule_estimate);
    out["effort_estimate"] = stable(r.effort_estimate);
    out["schedule_overrun_percent"] = opt(r.schedule_overrun_percent);
    out["effort_overrun_percent"] = stable(r.effort_overrun_percent);
    out["planned_testing_effort"] = stable(r.planned_testing_effort);
    out["final_perceived_size_tasks"] = stable(r.final_perceived_size_tasks);
    out["final_tasks"] = stable(r.final_tasks);
    out["final_loc"] = stable(r.final_loc);
    return out;
}

inline void write_text_file(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw IoError("cannot write '" + path.string() + "'");
    }
    out << text;
    out.flush();
    if (!out) {
        throw IoError("error while writing '" + path.string() + "'");
    }
}

inline void ensure_directory(const std::filesystem::path& dir) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec || !std::filesystem::is_directory(dir)) {
        throw IoError("cannot create output directory '" + dir.string() + "'");
    }
}

/// Writes timeseries.csv and summary.json into `out_dir`.
inline SummaryReport write_run_outputs(const model::ProjectRun& run, const model::ProjectParameters& params,
                                       const model::PolicyParams& policy, const std::filesystem::path& out_dir) {
    ensure_directory(out_dir);
    const SummaryReport report = summarize(run, params, policy);
    write_text_file(out_dir / "timeseries.csv", timeseries_csv(run.series));
    write_text_file(out_dir / "summary.json", summary_to_json(report).dump(2) + "\n");
    return report;
}

} // namespace pdyn::scenario
