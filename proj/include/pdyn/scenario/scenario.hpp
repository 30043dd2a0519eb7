#pragma once

#include <chrono>
#include <cmath>
#include <filesystem>
#include <optional>
#include <string>
#include <variant>

#include "pdyn/calibration/calibration.hpp"
#include "pdyn/engine/sim_config.hpp"
#include "pdyn/model/project_model.hpp"
#include "pdyn/scenario/json_io.hpp"
#include "pdyn/volatility/change_request.hpp"
#include "pdyn/volatility/patterns.hpp"

namespace pdyn::scenario {

struct TableVolatility {
    std::string path; ///< resolved change-request CSV
    std::int64_t total_loc = 0;
};

using VolatilitySource = std::variant<TableVolatility, volatility::VolatilityPattern>;

struct Scenario {
    model::ProjectParameters parameters;
    std::optional<calibration::Calibration> calibration; ///< set when parameters came from metrics
    model::PolicyParams policy;
    VolatilitySource volatility;
    engine::SimConfig sim;
    std::chrono::year_month_day project_start_date{std::chrono::year{2000}, std::chrono::month{1},
                                                   std::chrono::day{1}};
    double model_prefix_days = 25.0;
};

namespace detail {

inline std::string resolve_path(const std::string& p, const std::filesystem::path& base) {
    std::filesystem::path path(p);
    return path.is_relative() ? (base / path).lexically_normal().string() : path.string();
}

inline std::string allowed_shapes() {
    std::string out;
    for (auto s : volatility::all_pattern_shapes) {
        out += (out.empty() ? "" : ", ") + std::string(volatility::to_string(s));
    }
    return out;
}

inline VolatilitySource volatility_from_json(const json& j, const std::filesystem::path& base) {
    require_object(j, "volatility");
    const bool table_keys = j.contains("path");
    const bool pattern_keys = j.contains("shape") || j.contains("window_start") || j.contains("window_end") ||
                              j.contains("steepness");
    if (!j.contains("mode")) {
        throw LoadError("volatility.mode", table_keys && pattern_keys
                                               ? "both table and pattern keys given; set mode to one of table, pattern"
                                               : "missing; expected one of table, pattern");
    }
    const std::string mode = get_string(j, "mode", "volatility");
    if (mode == "table") {
        if (pattern_keys) {
            throw LoadError("volatility", "both table and pattern modes given");
        }
        reject_unknown(j, {"mode", "path", "total_loc"}, "volatility");
        TableVolatility t;
        t.path = resolve_path(get_string(j, "path", "volatility"), base);
        const double loc = get_number(j, "total_loc", "volatility");
        if (!(loc >= 0.0) || loc != std::floor(loc)) {
            throw LoadError("volatility.total_loc", "expected a non-negative whole number of LOC");
        }
        t.total_loc = static_cast<std::int64_t>(loc);
        if (!std::filesystem::exists(t.path)) {
            throw LoadError("volatility.path", "file not found: '" + t.path + "'");
        }
        return t;
    }
    if (mode == "pattern") {
        if (table_keys) {
            throw LoadError("volatility", "both table and pattern modes given");
        }
        reject_unknown(j, {"mode", "shape", "total_loc", "window_start", "window_end", "steepness"}, "volatility");
        volatility::VolatilityPattern p;
        const std::string shape = get_string(j, "shape", "volatility");
        const auto parsed = volatility::pattern_shape_from_string(shape);
        if (!parsed) {
            throw LoadError("volatility.shape", "unknown shape '" + shape + "'; allowed shapes: " + allowed_shapes());
        }
        p.shape = *parsed;
        p.total_loc = get_number(j, "total_loc", "volatility");
        p.window_start = get_number(j, "window_start", "volatility");
        p.window_end = get_number(j, "window_end", "volatility");
        read_number(j, "steepness", "volatility", p.steepness);
        try {
            p.validate();
        } catch (const DomainError& e) {
            throw LoadError("volatility", e.what());
        }
        return p;
    }
    throw LoadError("volatility.mode", "unknown mode '" + mode + "'; expected one of table, pattern");
}

} // namespace detail

/// Builds a scenario from a parsed document. Relative paths resolve against `base`.
inline Scenario scenario_from_json(const json& j, const std::filesystem::path& base) {
    detail::require_object(j, "");
    detail::reject_unknown(j, {"project", "policy", "volatility", "sim", "project_start_date", "model_prefix_days"},
                           "");
    Scenario s;

    if (!j.contains("project")) {
        throw LoadError("project", "missing required field");
    }
    const json& project = j.at("project");
    detail::require_object(project, "project");
    detail::reject_unknown(project, {"parameters", "metrics"}, "project");
    if (project.contains("parameters") == project.contains("metrics")) {
        throw LoadError("project", "give exactly one of parameters, metrics");
    }
    if (project.contains("parameters")) {
        s.parameters = parameters_from_json(project.at("parameters"), "project.parameters");
    } else {
        const std::string path = detail::resolve_path(detail::get_string(project, "metrics", "project"), base);
        calibration::ProjectMetrics metrics;
        try {
            metrics = load_metrics(path);
        } catch (const LoadError& e) {
            throw LoadError("project.metrics", e.what());
        }
        s.calibration = calibration::calibrate(metrics);
        s.parameters = s.calibration->parameters;
    }

    if (j.contains("policy")) {
        s.policy = policy_from_json(j.at("policy"));
    }

    if (!j.contains("volatility")) {
        throw LoadError("volatility", "missing required field");
    }
    s.volatility = detail::volatility_from_json(j.at("volatility"), base);

    if (!j.contains("sim")) {
        throw LoadError("sim", "missing required field");
    }
    const json& sim = j.at("sim");
    detail::require_object(sim, "sim");
    detail::reject_unknown(sim, {"t_start", "t_end", "dt"}, "sim");
    s.sim.t_start = detail::get_number(sim, "t_start", "sim");
    s.sim.t_end = detail::get_number(sim, "t_end", "sim");
    detail::read_number(sim, "dt", "sim", s.sim.dt);
    try {
        s.sim.validate();
    } catch (const DomainError& e) {
        throw LoadError("sim", e.what());
    }

    if (j.contains("project_start_date")) {
        try {
            s.project_start_date = volatility::parse_date(detail::get_string(j, "project_start_date", ""));
        } catch (const ParseError& e) {
            throw LoadError("project_start_date", e.what());
        }
    } else if (std::holds_alternative<TableVolatility>(s.volatility)) {
        throw LoadError("project_start_date", "required when volatility mode is table");
    }
    detail::read_number(j, "model_prefix_days", "", s.model_prefix_days);
    if (!(s.model_prefix_days >= 0.0)) {
        throw LoadError("model_prefix_days", "must be >= 0");
    }
    return s;
}

inline Scenario load_scenario(const std::string& path) {
    const json j = parse_json(read_text_file(path, "scenario"), path);
    return scenario_from_json(j, std::filesystem::path(path).parent_path());
}

inline volatility::VolatilitySeries volatility_series(const Scenario& s) {
    if (const auto* t = std::get_if<TableVolatility>(&s.volatility)) {
        const auto crs = volatility::parse_cr_csv(read_text_file(t->path, "volatility.path"));
        return volatility::cr_rate_series(crs, t->total_loc, s.parameters.loc_per_task, s.project_start_date,
                                          s.model_prefix_days, s.sim);
    }
    return volatility::pattern_rate_series(std::get<volatility::VolatilityPattern>(s.volatility),
                                           s.parameters.loc_per_task, s.sim);
}

inline model::ProjectRun run_scenario(const Scenario& s) {
    return model::run_project(s.parameters, s.policy, volatility_series(s), s.sim);
}

} // namespace pdyn::scenario
