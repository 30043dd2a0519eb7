#pragma once

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "pdyn/error.hpp"
#include "pdyn/volatility/series.hpp"

namespace pdyn::volatility {

enum class Priority { urgent, desirable };
enum class ChangeType { add, modify, query, report, impact_analysis };
enum class Status { completed, open };

/// Calendar month; change requests are only dated to month resolution.
struct YearMonth {
    int year = 0;
    unsigned month = 1;

    std::chrono::year_month_day first_day() const {
        return std::chrono::year{year} / std::chrono::month{month} / 1;
    }
    YearMonth next() const { return month == 12 ? YearMonth{year + 1, 1} : YearMonth{year, month + 1}; }

    friend auto operator<=>(const YearMonth&, const YearMonth&) = default;
};

struct ChangeRequest {
    int id = 0;
    Priority priority = Priority::desirable;
    ChangeType change_type = ChangeType::add;
    Status status = Status::completed;
    YearMonth start_month;
    YearMonth end_month;
    double effort = 0.0; ///< person-days

    friend bool operator==(const ChangeRequest&, const ChangeRequest&) = default;
};

inline constexpr std::string_view cr_csv_header = "id,priority,change_type,status,start_month,end_month,effort_man_days";

inline std::string_view to_string(Priority p) { return p == Priority::urgent ? "urgent" : "desirable"; }
inline std::string_view to_string(Status s) { return s == Status::completed ? "completed" : "open"; }
inline std::string_view to_string(ChangeType t) {
    switch (t) {
    case ChangeType::add: return "add";
    case ChangeType::modify: return "modify";
    case ChangeType::query: return "query";
    case ChangeType::report: return "report";
    case ChangeType::impact_analysis: return "impact-analysis";
    }
    return "add";
}

namespace detail {

inline std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) {
        s.remove_prefix(1);
    }
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
        s.remove_suffix(1);
    }
    return s;
}

inline std::vector<std::string_view> split(std::string_view line, char sep) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    for (;;) {
        auto pos = line.find(sep, start);
        out.push_back(trim(line.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start)));
        if (pos == std::string_view::npos) {
            break;
        }
        start = pos + 1;
    }
    return out;
}

inline std::vector<std::string_view> lines(std::string_view text) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (start <= text.size()) {
        auto pos = text.find('\n', start);
        auto line = text.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start);
        if (!line.empty() && line.back() == '\r') {
            line.remove_suffix(1);
        }
        out.push_back(line);
        if (pos == std::string_view::npos) {
            break;
        }
        start = pos + 1;
    }
    return out;
}

template <typename T>
bool parse_number(std::string_view s, T& out) {
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
    return ec == std::errc() && ptr == s.data() + s.size();
}

} // namespace detail

/// Parses "YYYY-MM".
inline YearMonth parse_year_month(std::string_view s) {
    YearMonth ym;
    unsigned month = 0;
    if (s.size() != 7 || s[4] != '-' || !detail::parse_number(s.substr(0, 4), ym.year) ||
        !detail::parse_number(s.substr(5, 2), month) || month < 1 || month > 12) {
        throw ParseError("invalid year-month '" + std::string(s) + "' (expected YYYY-MM)");
    }
    ym.month = month;
    return ym;
}

/// Parses "YYYY-MM-DD".
inline std::chrono::year_month_day parse_date(std::string_view s) {
    int year = 0;
    unsigned month = 0;
    unsigned day = 0;
    if (s.size() != 10 || s[4] != '-' || s[7] != '-' || !detail::parse_number(s.substr(0, 4), year) ||
        !detail::parse_number(s.substr(5, 2), month) || !detail::parse_number(s.substr(8, 2), day)) {
        throw ParseError("invalid date '" + std::string(s) + "' (expected YYYY-MM-DD)");
    }
    std::chrono::year_month_day ymd{std::chrono::year{year}, std::chrono::month{month}, std::chrono::day{day}};
    if (!ymd.ok()) {
        throw ParseError("invalid date '" + std::string(s) + "'");
    }
    return ymd;
}

/// Parses change requests from CSV text with the exact header `cr_csv_header`.
/// Blank lines are ignored. Errors name the 1-based line number.
inline std::vector<ChangeRequest> parse_cr_csv(std::string_view text) {
    const auto rows = detail::lines(text);
    if (rows.empty() || detail::trim(rows.front()) != cr_csv_header) {
        throw ParseError("change-request CSV: header must be '" + std::string(cr_csv_header) + "'");
    }
    std::vector<ChangeRequest> out;
    for (std::size_t i = 1; i < rows.size(); ++i) {
        if (detail::trim(rows[i]).empty()) {
            continue;
        }
        const std::string where = "change-request CSV row " + std::to_string(i + 1) + ": ";
        const auto cells = detail::split(rows[i], ',');
        if (cells.size() != 7) {
            throw ParseError(where + "expected 7 fields, got " + std::to_string(cells.size()));
        }
        ChangeRequest cr;
        if (!detail::parse_number(cells[0], cr.id) || cr.id <= 0) {
            throw ParseError(where + "id must be a positive integer, got '" + std::string(cells[0]) + "'");
        }
        if (cells[1] == "urgent") {
            cr.priority = Priority::urgent;
        } else if (cells[1] == "desirable") {
            cr.priority = Priority::desirable;
        } else {
            throw ParseError(where + "unknown priority '" + std::string(cells[1]) + "'");
        }
        static constexpr ChangeType types[] = {ChangeType::add, ChangeType::modify, ChangeType::query,
                                               ChangeType::report, ChangeType::impact_analysis};
        auto type = std::find_if(std::begin(types), std::end(types),
                                 [&](ChangeType t) { return to_string(t) == cells[2]; });
        if (type == std::end(types)) {
            throw ParseError(where + "unknown change type '" + std::string(cells[2]) + "'");
        }
        cr.change_type = *type;
        if (cells[3] == "completed") {
            cr.status = Status::completed;
        } else if (cells[3] == "open") {
            cr.status = Status::open;
        } else {
            throw ParseError(where + "unknown status '" + std::string(cells[3]) + "'");
        }
        try {
            cr.start_month = parse_year_month(cells[4]);
            cr.end_month = parse_year_month(cells[5]);
        } catch (const ParseError& e) {
            throw ParseError(where + e.what());
        }
        if (cr.end_month < cr.start_month) {
            throw ParseError(where + "end_month precedes start_month");
        }
        if (!detail::parse_number(cells[6], cr.effort) || !std::isfinite(cr.effort)) {
            throw ParseError(where + "effort is not a number: '" + std::string(cells[6]) + "'");
        }
        if (!(cr.effort > 0.0)) {
            throw ParseError(where + "effort must be positive");
        }
        out.push_back(cr);
    }
    return out;
}

/// Working days from the project start to the first day of `month`, using
/// five working days per seven calendar days.
inline int month_to_working_day(YearMonth month, std::chrono::year_month_day project_start) {
    using std::chrono::sys_days;
    const auto days = (sys_days{month.first_day()} - sys_days{project_start}).count();
    if (days < 0) {
        throw DomainError("month " + std::to_string(month.year) + "-" + std::to_string(month.month) +
                          " begins before the project start");
    }
    return static_cast<int>((days * 5) / 7);
}

/// Apportions `total_loc` across change requests in proportion to effort,
/// rounded to whole LOC by largest remainder so the parts sum to the total.
inline std::vector<std::int64_t> cr_loc_allocation(std::span<const ChangeRequest> crs, std::int64_t total_loc) {
    const double effort = std::accumulate(crs.begin(), crs.end(), 0.0,
                                          [](double acc, const ChangeRequest& cr) { return acc + cr.effort; });
    if (!(effort > 0.0)) {
        throw DomainError("cannot allocate LOC: total change-request effort is zero");
    }
    std::vector<std::int64_t> out(crs.size());
    std::vector<std::pair<double, std::size_t>> remainders;
    std::int64_t assigned = 0;
    for (std::size_t i = 0; i < crs.size(); ++i) {
        const double share = static_cast<double>(total_loc) * crs[i].effort / effort;
        out[i] = static_cast<std::int64_t>(std::floor(share));
        assigned += out[i];
        remainders.emplace_back(share - std::floor(share), i);
    }
    // Larger remainder first; ties go to the earlier request.
    std::stable_sort(remainders.begin(), remainders.end(),
                     [](const auto& a, const auto& b) { return a.first > b.first; });
    for (std::size_t j = 0; assigned < total_loc; ++j) {
        ++out[remainders[j % remainders.size()].second];
        ++assigned;
    }
    return out;
}

/// Model-time window of one change request: from the first day of its start
/// month to the first day after its end month, shifted left by the excluded
/// prefix phases.
struct CrWindow {
    double start = 0.0;
    double end = 0.0;
};

inline CrWindow cr_window(const ChangeRequest& cr, std::chrono::year_month_day project_start,
                          double model_prefix_days) {
    return {month_to_working_day(cr.start_month, project_start) - model_prefix_days,
            month_to_working_day(cr.end_month.next(), project_start) - model_prefix_days};
}

/// Change-order rate series: each request spreads its LOC share uniformly
/// over its window.
inline VolatilitySeries cr_rate_series(std::span<const ChangeRequest> crs, std::int64_t total_loc,
                                       double loc_per_task, std::chrono::year_month_day project_start,
                                       double model_prefix_days, const SimConfig& grid) {
    if (!(loc_per_task > 0.0)) {
        throw DomainError("loc_per_task must be > 0");
    }
    VolatilitySeries series = VolatilitySeries::zeros(grid);
    if (crs.empty()) {
        return series;
    }
    const auto loc = cr_loc_allocation(crs, total_loc);
    for (std::size_t i = 0; i < crs.size(); ++i) {
        CrWindow w = cr_window(crs[i], project_start, model_prefix_days);
        const std::string name = "change request " + std::to_string(crs[i].id);
        if (w.end <= grid.t_start) {
            throw DomainError(name + " ends before the simulation starts");
        }
        if (w.end > grid.t_end) {
            throw DomainError(name + " extends past the simulation horizon");
        }
        w.start = std::max(w.start, grid.t_start);
        const double tasks = static_cast<double>(loc[i]) / loc_per_task;
        const double span = w.end - w.start;
        detail::deposit_cells(series, w.start, w.end, tasks,
                              [&](double t) { return (t - w.start) / span; });
    }
    return series;
}

} // namespace pdyn::volatility
