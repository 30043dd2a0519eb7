#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <string>
#include <vector>

#include "pdyn/error.hpp"
#include "pdyn/scenario/csv.hpp"

namespace pdyn::scenario {

struct ChannelComparison {
    std::string channel;
    double mape_percent = 0.0;        ///< over matched samples with a nonzero actual
    double final_delta_percent = 0.0; ///< (last simulated - last actual) / last actual
    std::size_t matched = 0;
};

struct ComparisonReport {
    std::vector<ChannelComparison> channels;
    std::size_t matched_samples = 0; ///< actual rows inside the simulated time range
};

namespace detail {

/// Simulated channels by name, with effort_total derived when the five
/// effort buckets are present.
inline std::map<std::string, std::vector<double>> simulated_channels(const CsvTable& sim) {
    std::map<std::string, std::vector<double>> out;
    for (std::size_t j = 1; j < sim.header.size(); ++j) {
        auto& col = out[sim.header[j]];
        for (std::size_t i = 0; i < sim.rows.size(); ++i) {
            if (!sim.rows[i][j]) {
                throw ParseError("simulation: line " + std::to_string(i + 2) + ": missing value for " +
                                 sim.header[j]);
            }
            col.push_back(*sim.rows[i][j]);
        }
    }
    static constexpr const char* buckets[] = {"effort_dev", "effort_qa", "effort_rework", "effort_training",
                                              "effort_testing"};
    if (!out.contains("effort_total") &&
        std::all_of(std::begin(buckets), std::end(buckets), [&](const char* b) { return out.contains(b); })) {
        std::vector<double> total(sim.rows.size(), 0.0);
        for (const char* b : buckets) {
            for (std::size_t i = 0; i < total.size(); ++i) {
                total[i] += out[b][i];
            }
        }
        out["effort_total"] = std::move(total);
    }
    return out;
}

/// Linear interpolation of (t, v) at x; t must be increasing and x inside it.
inline double interpolate(const std::vector<double>& t, const std::vector<double>& v, double x) {
    auto hi = std::lower_bound(t.begin(), t.end(), x);
    const auto i = static_cast<std::size_t>(hi - t.begin());
    if (i < t.size() && t[i] == x) {
        return v[i];
    }
    const double w = (x - t[i - 1]) / (t[i] - t[i - 1]);
    return v[i - 1] + w * (v[i] - v[i - 1]);
}

} // namespace detail

/// Compares a simulated time series against sparse actual samples on every
/// channel the two files share.
inline ComparisonReport compare(const CsvTable& sim, const CsvTable& actual) {
    if (sim.header.empty() || sim.header.front() != "day") {
        throw ParseError("simulation: first column must be 'day'");
    }
    if (actual.header.empty() || actual.header.front() != "day") {
        throw ParseError("actuals: first column must be 'day'");
    }
    std::vector<double> t;
    for (std::size_t i = 0; i < sim.rows.size(); ++i) {
        if (!sim.rows[i][0]) {
            throw ParseError("simulation: line " + std::to_string(i + 2) + ": missing day");
        }
        if (!t.empty() && !(*sim.rows[i][0] > t.back())) {
            throw ParseError("simulation: line " + std::to_string(i + 2) + ": day is not increasing");
        }
        t.push_back(*sim.rows[i][0]);
    }
    if (t.empty()) {
        throw DomainError("simulation has no rows");
    }
    const auto channels = detail::simulated_channels(sim);

    ComparisonReport report;
    for (const auto& row : actual.rows) {
        if (row[0] && *row[0] >= t.front() && *row[0] <= t.back()) {
            ++report.matched_samples;
        }
    }
    for (std::size_t j = 1; j < actual.header.size(); ++j) {
        const auto it = channels.find(actual.header[j]);
        if (it == channels.end()) {
            continue;
        }
        ChannelComparison c;
        c.channel = actual.header[j];
        double sum = 0.0;
        std::size_t counted = 0;
        std::optional<double> last_actual;
        for (std::size_t i = 0; i < actual.rows.size(); ++i) {
            const auto& row = actual.rows[i];
            if (!row[j]) {
                continue;
            }
            if (!row[0]) {
                throw ParseError("actuals: line " + std::to_string(i + 2) + ": missing day");
            }
            last_actual = *row[j];
            if (*row[0] < t.front() || *row[0] > t.back()) {
                continue;
            }
            ++c.matched;
            if (*row[j] != 0.0) {
                const double simulated = detail::interpolate(t, it->second, *row[0]);
                sum += std::abs(simulated - *row[j]) / std::abs(*row[j]);
                ++counted;
            }
        }
        if (!last_actual) {
            continue;
        }
        c.mape_percent = counted ? 100.0 * sum / static_cast<double>(counted) : 0.0;
        c.final_delta_percent =
            *last_actual != 0.0 ? 100.0 * (it->second.back() - *last_actual) / std::abs(*last_actual) : 0.0;
        report.channels.push_back(c);
    }
    if (report.channels.empty()) {
        throw DomainError("simulation and actuals share no channels");
    }
    return report;
}

inline std::string comparison_csv(const ComparisonReport& r) {
    std::string out = "channel,mape_percent,final_delta_percent,matched_samples\n";
    for (const auto& c : r.channels) {
        out += c.channel + "," + format_number(c.mape_percent) + "," + format_number(c.final_delta_percent) + "," +
               std::to_string(c.matched) + "\n";
    }
    return out;
}

} // namespace pdyn::scenario
