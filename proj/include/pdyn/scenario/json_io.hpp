#pragma once

#include <fstream>
#include <initializer_list>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "pdyn/calibration/calibration.hpp"
#include "pdyn/error.hpp"
#include "pdyn/model/parameters.hpp"

namespace pdyn::scenario {

using nlohmann::json;

/// Whole-file read; throws LoadError keyed by `key` when the file cannot be opened.
inline std::string read_text_file(const std::string& path, const std::string& key = "") {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw LoadError(key, "cannot open '" + path + "'");
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

/// Parses JSON text; syntax errors become ParseError carrying the byte position.
inline json parse_json(const std::string& text, const std::string& source) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError(source + ": malformed JSON at byte " + std::to_string(e.byte) + ": " + e.what());
    }
}

namespace detail {

inline std::string join_key(std::string_view prefix, std::string_view key) {
    return prefix.empty() ? std::string(key) : std::string(prefix) + "." + std::string(key);
}

inline void require_object(const json& j, const std::string& key) {
    if (!j.is_object()) {
        throw LoadError(key.empty() ? "(root)" : key, "expected an object");
    }
}

inline void reject_unknown(const json& j, std::initializer_list<std::string_view> allowed, std::string_view prefix) {
    for (const auto& [k, v] : j.items()) {
        bool ok = false;
        for (auto a : allowed) {
            ok = ok || a == k;
        }
        if (!ok) {
            throw LoadError(join_key(prefix, k), "unknown key");
        }
    }
}

inline double get_number(const json& j, std::string_view key, std::string_view prefix) {
    const auto it = j.find(key);
    if (it == j.end()) {
        throw LoadError(join_key(prefix, key), "missing required field");
    }
    if (!it->is_number()) {
        throw LoadError(join_key(prefix, key), "expected a number");
    }
    return it->get<double>();
}

inline void read_number(const json& j, std::string_view key, std::string_view prefix, double& out) {
    if (j.contains(key)) {
        out = get_number(j, key, prefix);
    }
}

inline std::string get_string(const json& j, std::string_view key, std::string_view prefix) {
    const auto it = j.find(key);
    if (it == j.end()) {
        throw LoadError(join_key(prefix, key), "missing required field");
    }
    if (!it->is_string()) {
        throw LoadError(join_key(prefix, key), "expected a string");
    }
    return it->get<std::string>();
}

inline model::TableFunction table_from_json(const json& j, const std::string& key) {
    if (!j.is_array()) {
        throw LoadError(key, "expected an array of [x, y] pairs");
    }
    std::vector<engine::TableFunction::Point> points;
    for (const auto& p : j) {
        if (!p.is_array() || p.size() != 2 || !p[0].is_number() || !p[1].is_number()) {
            throw LoadError(key, "expected an array of [x, y] pairs");
        }
        points.push_back({p[0].get<double>(), p[1].get<double>()});
    }
    try {
        return model::TableFunction(std::move(points));
    } catch (const DomainError& e) {
        throw LoadError(key, e.what());
    }
}

inline json table_to_json(const model::TableFunction& t) {
    json out = json::array();
    for (const auto& p : t.points()) {
        out.push_back({p.x, p.y});
    }
    return out;
}

using ParamField = std::pair<std::string_view, double model::ProjectParameters::*>;
inline constexpr ParamField parameter_fields[] = {
    {"initial_size_loc", &model::ProjectParameters::initial_size_loc},
    {"loc_per_task", &model::ProjectParameters::loc_per_task},
    {"effort_estimate", &model::ProjectParameters::effort_estimate},
    {"schedule_estimate", &model::ProjectParameters::schedule_estimate},
    {"nominal_potential_productivity", &model::ProjectParameters::nominal_potential_productivity},
    {"nominal_fraction_manday", &model::ProjectParameters::nominal_fraction_manday},
    {"complexity_multiplier", &model::ProjectParameters::complexity_multiplier},
    {"user_involvement_multiplier", &model::ProjectParameters::user_involvement_multiplier},
    {"initial_workforce", &model::ProjectParameters::initial_workforce},
    {"initial_experienced_fraction", &model::ProjectParameters::initial_experienced_fraction},
};

/// Fields with a neutral default that a parameter file may omit.
inline constexpr std::string_view optional_parameter_fields[] = {
    "nominal_fraction_manday", "complexity_multiplier", "user_involvement_multiplier",
    "initial_experienced_fraction"};

using PolicyField = std::pair<std::string_view, double model::PolicyParams::*>;
inline constexpr PolicyField policy_fields[] = {
    {"hiring_delay", &model::PolicyParams::hiring_delay},
    {"release_delay", &model::PolicyParams::release_delay},
    {"assimilation_delay", &model::PolicyParams::assimilation_delay},
    {"max_rookies_per_experienced", &model::PolicyParams::max_rookies_per_experienced},
    {"rookie_relative_productivity", &model::PolicyParams::rookie_relative_productivity},
    {"trainer_fraction_per_rookie", &model::PolicyParams::trainer_fraction_per_rookie},
    {"qa_headcount_fraction", &model::PolicyParams::qa_headcount_fraction},
    {"comm_loss_coefficient", &model::PolicyParams::comm_loss_coefficient},
    {"comm_loss_cap", &model::PolicyParams::comm_loss_cap},
    {"errors_per_task_nominal", &model::PolicyParams::errors_per_task_nominal},
    {"qa_detection_efficiency", &model::PolicyParams::qa_detection_efficiency},
    {"qa_detection_delay", &model::PolicyParams::qa_detection_delay},
    {"rework_cost_per_error", &model::PolicyParams::rework_cost_per_error},
    {"test_correction_per_escaped_error", &model::PolicyParams::test_correction_per_escaped_error},
    {"planned_testing_fraction", &model::PolicyParams::planned_testing_fraction},
    {"schedule_adjust_delay", &model::PolicyParams::schedule_adjust_delay},
    {"productivity_perception_delay", &model::PolicyParams::productivity_perception_delay},
    {"pressure_min", &model::PolicyParams::pressure_min},
    {"pressure_max", &model::PolicyParams::pressure_max},
};

using PolicyTable = std::pair<std::string_view, model::TableFunction model::PolicyParams::*>;
inline const PolicyTable policy_tables[] = {
    {"learning_table", &model::PolicyParams::learning_table},
    {"pressure_productivity_table", &model::PolicyParams::pressure_productivity_table},
    {"pressure_error_table", &model::PolicyParams::pressure_error_table},
    {"wcwf_table", &model::PolicyParams::wcwf_table},
};

} // namespace detail

inline model::ProjectParameters parameters_from_json(const json& j, std::string_view prefix = "parameters") {
    const std::string p(prefix);
    detail::require_object(j, p);
    model::ProjectParameters out;
    for (const auto& [k, v] : j.items()) {
        bool known = false;
        for (const auto& [name, member] : detail::parameter_fields) {
            known = known || name == k;
        }
        if (!known) {
            throw LoadError(detail::join_key(p, k), "unknown key");
        }
    }
    for (const auto& [name, member] : detail::parameter_fields) {
        bool optional = false;
        for (auto o : detail::optional_parameter_fields) {
            optional = optional || o == name;
        }
        if (optional) {
            detail::read_number(j, name, p, out.*member);
        } else {
            out.*member = detail::get_number(j, name, p);
        }
    }
    try {
        out.validate();
    } catch (const DomainError& e) {
        throw LoadError(p, e.what());
    }
    return out;
}

inline json parameters_to_json(const model::ProjectParameters& params) {
    json out = json::object();
    for (const auto& [name, member] : detail::parameter_fields) {
        out[std::string(name)] = params.*member;
    }
    return out;
}

/// Applies overrides on top of the default policy.
inline model::PolicyParams policy_from_json(const json& j, std::string_view prefix = "policy") {
    const std::string p(prefix);
    detail::require_object(j, p);
    model::PolicyParams out;
    for (const auto& [k, v] : j.items()) {
        const std::string key = detail::join_key(p, k);
        bool done = false;
        for (const auto& [name, member] : detail::policy_fields) {
            if (name == k) {
                out.*member = detail::get_number(j, k, p);
                done = true;
            }
        }
        for (const auto& [name, member] : detail::policy_tables) {
            if (name == k) {
                out.*member = detail::table_from_json(v, key);
                done = true;
            }
        }
        if (!done) {
            throw LoadError(key, "unknown key");
        }
    }
    try {
        out.validate();
    } catch (const DomainError& e) {
        throw LoadError(p, e.what());
    }
    return out;
}

inline json policy_to_json(const model::PolicyParams& policy) {
    json out = json::object();
    for (const auto& [name, member] : detail::policy_fields) {
        out[std::string(name)] = policy.*member;
    }
    for (const auto& [name, member] : detail::policy_tables) {
        out[std::string(name)] = detail::table_to_json(policy.*member);
    }
    return out;
}

inline calibration::ProjectMetrics metrics_from_json(const json& j) {
    detail::require_object(j, "");
    calibration::ProjectMetrics m;
    detail::reject_unknown(j,
                           {"estimated_total_effort", "effort_deductions", "estimated_total_schedule",
                            "schedule_deductions", "delivered_loc", "actual_total_effort", "testing_fraction",
                            "complexity_multiplier", "user_involvement_multiplier", "nominal_fraction_manday",
                            "comm_loss_at_reference", "initial_size_loc", "initial_workforce", "sim_tasks_reference",
                            "sim_loc_reference", "initial_experienced_fraction"},
                           "");
    auto deductions = [&](std::string_view key) {
        std::vector<calibration::Deduction> out;
        if (!j.contains(key)) {
            return out;
        }
        const json& list = j.at(std::string(key));
        if (!list.is_array()) {
            throw LoadError(std::string(key), "expected an array of {name, amount}");
        }
        for (const auto& d : list) {
            if (!d.is_object()) {
                throw LoadError(std::string(key), "expected an array of {name, amount}");
            }
            detail::reject_unknown(d, {"name", "amount"}, key);
            out.push_back({detail::get_string(d, "name", key), detail::get_number(d, "amount", key)});
        }
        return out;
    };
    m.estimated_total_effort = detail::get_number(j, "estimated_total_effort", "");
    m.effort_deductions = deductions("effort_deductions");
    m.estimated_total_schedule = detail::get_number(j, "estimated_total_schedule", "");
    m.schedule_deductions = deductions("schedule_deductions");
    m.delivered_loc = detail::get_number(j, "delivered_loc", "");
    m.actual_total_effort = detail::get_number(j, "actual_total_effort", "");
    m.testing_fraction = detail::get_number(j, "testing_fraction", "");
    m.complexity_multiplier = detail::get_number(j, "complexity_multiplier", "");
    m.user_involvement_multiplier = detail::get_number(j, "user_involvement_multiplier", "");
    m.nominal_fraction_manday = detail::get_number(j, "nominal_fraction_manday", "");
    m.comm_loss_at_reference = detail::get_number(j, "comm_loss_at_reference", "");
    m.initial_size_loc = detail::get_number(j, "initial_size_loc", "");
    m.initial_workforce = detail::get_number(j, "initial_workforce", "");
    m.sim_tasks_reference = detail::get_number(j, "sim_tasks_reference", "");
    m.sim_loc_reference = detail::get_number(j, "sim_loc_reference", "");
    detail::read_number(j, "initial_experienced_fraction", "", m.initial_experienced_fraction);
    return m;
}

inline calibration::ProjectMetrics load_metrics(const std::string& path) {
    return metrics_from_json(parse_json(read_text_file(path, "metrics"), path));
}

inline json calibration_to_json(const calibration::Calibration& c) {
    json trace = json::array();
    for (const auto& t : c.trace) {
        trace.push_back({{"quantity", t.quantity}, {"formula", t.formula}, {"value", t.value}});
    }
    return {{"parameters", parameters_to_json(c.parameters)}, {"trace", trace}};
}

} // namespace pdyn::scenario
