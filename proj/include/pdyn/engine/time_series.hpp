#pragma once

#include <algorithm>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "pdyn/error.hpp"

namespace pdyn::engine {

/// Uniformly sampled channels sharing one time grid. Channels keep the order
/// in which they were declared.
class TimeSeries {
public:
    TimeSeries() = default;

    explicit TimeSeries(std::vector<std::string> channel_names) {
        for (auto& name : channel_names) {
            add_channel(std::move(name));
        }
    }

    void add_channel(std::string name) {
        if (has_channel(name)) {
            throw StructuralError("duplicate channel '" + name + "'");
        }
        names_.push_back(std::move(name));
        values_.emplace_back(times_.size(), 0.0);
    }

    /// Append one sample row; `row` is in channel order.
    void append(double t, std::span<const double> row) {
        if (row.size() != names_.size()) {
            throw StructuralError("time series row has " + std::to_string(row.size()) + " values, expected " +
                                  std::to_string(names_.size()));
        }
        times_.push_back(t);
        for (std::size_t c = 0; c < row.size(); ++c) {
            values_[c].push_back(row[c]);
        }
    }

    bool has_channel(std::string_view name) const {
        return std::find(names_.begin(), names_.end(), name) != names_.end();
    }

    std::span<const double> channel(std::string_view name) const {
        auto it = std::find(names_.begin(), names_.end(), name);
        if (it == names_.end()) {
            throw StructuralError("unknown channel '" + std::string(name) + "'");
        }
        return values_[static_cast<std::size_t>(it - names_.begin())];
    }

    std::span<const double> time_grid() const noexcept { return times_; }
    const std::vector<std::string>& channel_names() const noexcept { return names_; }
    std::size_t size() const noexcept { return times_.size(); }
    bool empty() const noexcept { return times_.empty(); }

    double value(std::string_view name, std::size_t row) const { return channel(name)[row]; }
    double last(std::string_view name) const {
        auto values = channel(name);
        if (values.empty()) {
            throw StructuralError("channel '" + std::string(name) + "' is empty");
        }
        return values.back();
    }

    friend bool operator==(const TimeSeries&, const TimeSeries&) = default;

private:
    std::vector<double> times_;
    std::vector<std::string> names_;
    std::vector<std::vector<double>> values_;
};

} // namespace pdyn::engine
