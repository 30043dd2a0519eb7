#pragma once

#include <cmath>
#include <initializer_list>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "pdyn/error.hpp"

namespace pdyn::engine {

/// Named stock levels. Iteration order is by name, so two vectors with the
/// same names always traverse identically.
class StockVector {
public:
    using Storage = std::map<std::string, double, std::less<>>;

    StockVector() = default;
    StockVector(std::initializer_list<std::pair<const std::string, double>> init) : levels_(init) {}

    void set(std::string_view name, double level) {
        auto it = levels_.find(name);
        if (it == levels_.end()) {
            levels_.emplace(std::string(name), level);
        } else {
            it->second = level;
        }
    }

    double at(std::string_view name) const {
        auto it = levels_.find(name);
        if (it == levels_.end()) {
            throw StructuralError("unknown stock '" + std::string(name) + "'");
        }
        return it->second;
    }

    double& at(std::string_view name) {
        auto it = levels_.find(name);
        if (it == levels_.end()) {
            throw StructuralError("unknown stock '" + std::string(name) + "'");
        }
        return it->second;
    }

    bool contains(std::string_view name) const { return levels_.find(name) != levels_.end(); }
    std::size_t size() const noexcept { return levels_.size(); }
    bool empty() const noexcept { return levels_.empty(); }

    std::vector<std::string> names() const {
        std::vector<std::string> out;
        out.reserve(levels_.size());
        for (const auto& [name, _] : levels_) {
            out.push_back(name);
        }
        return out;
    }

    bool same_names(const StockVector& other) const {
        if (levels_.size() != other.levels_.size()) {
            return false;
        }
        for (auto a = levels_.begin(), b = other.levels_.begin(); a != levels_.end(); ++a, ++b) {
            if (a->first != b->first) {
                return false;
            }
        }
        return true;
    }

    auto begin() const noexcept { return levels_.begin(); }
    auto end() const noexcept { return levels_.end(); }
    auto begin() noexcept { return levels_.begin(); }
    auto end() noexcept { return levels_.end(); }

    friend bool operator==(const StockVector&, const StockVector&) = default;

private:
    Storage levels_;
};

/// One forward-Euler update: level + derivative * dt for every stock.
inline StockVector euler_step(const StockVector& state, const StockVector& derivatives, double dt) {
    if (!state.same_names(derivatives)) {
        throw StructuralError("euler_step: state and derivative name sets differ");
    }
    if (!(dt >= 0.0)) {
        throw DomainError("euler_step: dt must be >= 0");
    }
    StockVector next = state;
    auto d = derivatives.begin();
    for (auto& [name, level] : next) {
        level += d->second * dt;
        if (!std::isfinite(level)) {
            throw NumericError("euler_step: stock '" + name + "' became non-finite", 0, name);
        }
        ++d;
    }
    return next;
}

} // namespace pdyn::engine
