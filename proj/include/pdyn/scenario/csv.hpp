#pragma once

#include <cstdio>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "pdyn/engine/time_series.hpp"
#include "pdyn/error.hpp"
#include "pdyn/model/project_model.hpp"
#include "pdyn/volatility/change_request.hpp"

namespace pdyn::scenario {

/// Ten significant digits: enough for a 1e-9 relative round trip.
inline std::string format_number(double v) {
    if (v == 0.0) {
        return "0"; // avoids "-0"
    }
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.10g", v);
    return buf;
}

inline const std::vector<std::string>& timeseries_columns() {
    static const std::vector<std::string> cols = [] {
        std::vector<std::string> c{"day"};
        for (const auto& name : model::report_channels()) {
            c.push_back(name);
        }
        return c;
    }();
    return cols;
}

inline std::string timeseries_header() {
    std::string h;
    for (const auto& c : timeseries_columns()) {
        h += (h.empty() ? "" : ",") + c;
    }
    return h;
}

/// Writes the report channels of a run, one row per grid point.
inline std::string timeseries_csv(const engine::TimeSeries& series) {
    const auto& channels = model::report_channels();
    std::vector<std::span<const double>> data;
    for (const auto& c : channels) {
        data.push_back(series.channel(c));
    }
    std::string out = timeseries_header() + "\n";
    const auto& t = series.time_grid();
    for (std::size_t i = 0; i < t.size(); ++i) {
        out += format_number(t[i]);
        for (const auto& col : data) {
            out += ',';
            out += format_number(col[i]);
        }
        out += '\n';
    }
    return out;
}

/// A numeric CSV with a header row. Empty cells are allowed and read as
/// missing values.
struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::optional<double>>> rows;

    std::optional<std::size_t> column(std::string_view name) const {
        for (std::size_t i = 0; i < header.size(); ++i) {
            if (header[i] == name) {
                return i;
            }
        }
        return std::nullopt;
    }
};

inline CsvTable parse_numeric_csv(std::string_view text, std::string_view source = "csv") {
    using volatility::detail::lines;
    using volatility::detail::split;
    using volatility::detail::trim;
    const auto rows = lines(text);
    if (rows.empty() || trim(rows.front()).empty()) {
        throw ParseError(std::string(source) + ": missing header row");
    }
    CsvTable table;
    for (auto cell : split(rows.front(), ',')) {
        if (cell.empty()) {
            throw ParseError(std::string(source) + ": line 1: empty column name");
        }
        table.header.emplace_back(cell);
    }
    for (std::size_t i = 1; i < rows.size(); ++i) {
        if (trim(rows[i]).empty()) {
            continue;
        }
        const auto cells = split(rows[i], ',');
        if (cells.size() != table.header.size()) {
            throw ParseError(std::string(source) + ": line " + std::to_string(i + 1) + ": expected " +
                             std::to_string(table.header.size()) + " fields, got " + std::to_string(cells.size()));
        }
        auto& row = table.rows.emplace_back();
        for (std::size_t j = 0; j < cells.size(); ++j) {
            if (cells[j].empty()) {
                row.emplace_back();
                continue;
            }
            double v = 0.0;
            if (!volatility::detail::parse_number(cells[j], v) || !std::isfinite(v)) {
                throw ParseError(std::string(source) + ": line " + std::to_string(i + 1) + ", column " +
                                 std::to_string(j + 1) + " (" + table.header[j] + "): not a number: '" +
                                 std::string(cells[j]) + "'");
            }
            row.push_back(v);
        }
    }
    return table;
}

/// Reads a time-series file written by timeseries_csv. Every cell must be present.
inline engine::TimeSeries read_timeseries_csv(std::string_view text) {
    const CsvTable table = parse_numeric_csv(text, "time series");
    if (table.header.empty() || table.header.front() != "day") {
        throw ParseError("time series: first column must be 'day'");
    }
    engine::TimeSeries series;
    for (std::size_t j = 1; j < table.header.size(); ++j) {
        series.add_channel(table.header[j]);
    }
    std::vector<double> row(table.header.size() - 1);
    for (std::size_t i = 0; i < table.rows.size(); ++i) {
        for (std::size_t j = 0; j < table.header.size(); ++j) {
            if (!table.rows[i][j]) {
                throw ParseError("time series: line " + std::to_string(i + 2) + ": missing value for " +
                                 table.header[j]);
            }
        }
        for (std::size_t j = 1; j < table.header.size(); ++j) {
            row[j - 1] = *table.rows[i][j];
        }
        series.append(*table.rows[i][0], row);
    }
    return series;
}

} // namespace pdyn::scenario
