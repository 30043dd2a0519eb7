#pragma once

#include <algorithm>
#include <cmath>
#include <initializer_list>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "pdyn/error.hpp"

namespace pdyn::engine {

/// Piecewise-linear lookup over (x, y) breakpoints.
///
/// Breakpoints must have strictly increasing x and there must be at least two
/// of them. Evaluation outside [x_front, x_back] returns the nearest endpoint's y.
class TableFunction {
public:
    struct Point {
        double x;
        double y;
        friend bool operator==(const Point&, const Point&) = default;
    };

    TableFunction(std::initializer_list<Point> points) : TableFunction(std::vector<Point>(points)) {}

    explicit TableFunction(std::vector<Point> points) : points_(std::move(points)) {
        if (points_.size() < 2) {
            throw DomainError("table function needs at least 2 points, got " +
                              std::to_string(points_.size()));
        }
        for (std::size_t i = 0; i < points_.size(); ++i) {
            if (!std::isfinite(points_[i].x) || !std::isfinite(points_[i].y)) {
                throw DomainError("table function point " + std::to_string(i) + " is not finite");
            }
            if (i > 0 && !(points_[i].x > points_[i - 1].x)) {
                throw DomainError("table function x values must be strictly increasing (point " +
                                  std::to_string(i) + ")");
            }
        }
    }

    /// Table returning `value` everywhere.
    static TableFunction constant(double value) { return TableFunction{{0.0, value}, {1.0, value}}; }

    double operator()(double x) const {
        if (x <= points_.front().x) {
            return points_.front().y;
        }
        if (x >= points_.back().x) {
            return points_.back().y;
        }
        auto hi = std::upper_bound(points_.begin(), points_.end(), x,
                                   [](double v, const Point& p) { return v < p.x; });
        auto lo = hi - 1;
        double u = (x - lo->x) / (hi->x - lo->x);
        return lo->y + u * (hi->y - lo->y);
    }

    std::span<const Point> points() const noexcept { return points_; }

    friend bool operator==(const TableFunction&, const TableFunction&) = default;

private:
    std::vector<Point> points_;
};

inline double lookup(const TableFunction& table, double x) { return table(x); }

} // namespace pdyn::engine
