#pragma once

#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "pdyn/engine/simulate.hpp"
#include "pdyn/engine/stock_vector.hpp"
#include "pdyn/error.hpp"

namespace pdyn::engine {

/// Auxiliaries with declared inputs, evaluated in dependency order.
///
/// Inputs may name stocks, other auxiliaries, or the reserved name "time".
/// Cycles and unknown inputs are rejected by compile().
class AuxiliaryGraph {
public:
    /// Receives the stocks and the auxiliaries computed so far.
    using Fn = std::function<double(double t, const StockVector& stocks, const StockVector& aux)>;

    void add(std::string name, std::vector<std::string> inputs, Fn fn) {
        if (index_.count(name) != 0) {
            throw StructuralError("duplicate auxiliary '" + name + "'");
        }
        index_.emplace(name, nodes_.size());
        nodes_.push_back({std::move(name), std::move(inputs), std::move(fn)});
        order_.clear();
        compiled_ = false;
    }

    void compile(const std::vector<std::string>& stock_names) {
        const std::set<std::string> stocks(stock_names.begin(), stock_names.end());
        for (const auto& node : nodes_) {
            if (stocks.count(node.name) != 0) {
                throw StructuralError("auxiliary '" + node.name + "' shadows a stock");
            }
            for (const auto& in : node.inputs) {
                if (in != "time" && stocks.count(in) == 0 && index_.count(in) == 0) {
                    throw StructuralError("auxiliary '" + node.name + "' depends on unknown '" + in + "'");
                }
            }
        }

        // Depth-first topological sort; state 1 = on stack, 2 = done.
        std::vector<int> mark(nodes_.size(), 0);
        order_.clear();
        std::function<void(std::size_t, std::vector<std::string>&)> visit = [&](std::size_t i,
                                                                                std::vector<std::string>& path) {
            if (mark[i] == 2) {
                return;
            }
            path.push_back(nodes_[i].name);
            if (mark[i] == 1) {
                std::string cycle;
                for (const auto& p : path) {
                    cycle += (cycle.empty() ? "" : " -> ") + p;
                }
                throw StructuralError("auxiliary dependency cycle: " + cycle);
            }
            mark[i] = 1;
            for (const auto& in : nodes_[i].inputs) {
                auto it = index_.find(in);
                if (it != index_.end()) {
                    visit(it->second, path);
                }
            }
            mark[i] = 2;
            path.pop_back();
            order_.push_back(i);
        };
        for (std::size_t i = 0; i < nodes_.size(); ++i) {
            std::vector<std::string> path;
            visit(i, path);
        }
        compiled_ = true;
    }

    StockVector evaluate(double t, const StockVector& stocks) const {
        if (!compiled_) {
            throw StructuralError("auxiliary graph evaluated before compile()");
        }
        StockVector aux;
        for (std::size_t i : order_) {
            aux.set(nodes_[i].name, nodes_[i].fn(t, stocks, aux));
        }
        return aux;
    }

    std::vector<std::string> evaluation_order() const {
        std::vector<std::string> out;
        for (std::size_t i : order_) {
            out.push_back(nodes_[i].name);
        }
        return out;
    }

private:
    struct Node {
        std::string name;
        std::vector<std::string> inputs;
        Fn fn;
    };
    std::vector<Node> nodes_;
    std::map<std::string, std::size_t> index_;
    std::vector<std::size_t> order_;
    bool compiled_ = false;
};

/// Declarative stock-and-flow model. Each flow is an auxiliary whose value is
/// drained from its source stock and added to its target stock; an empty
/// source or target means the flow crosses the model boundary.
class FlowModel {
public:
    FlowModel& stock(std::string name, double initial, bool non_negative = false) {
        if (initial_.contains(name)) {
            throw StructuralError("duplicate stock '" + name + "'");
        }
        initial_.set(name, initial);
        if (non_negative) {
            non_negative_.push_back(std::move(name));
        }
        return *this;
    }

    FlowModel& auxiliary(std::string name, std::vector<std::string> inputs, AuxiliaryGraph::Fn fn) {
        graph_.add(std::move(name), std::move(inputs), std::move(fn));
        return *this;
    }

    FlowModel& flow(std::string name, std::optional<std::string> from, std::optional<std::string> to,
                    std::vector<std::string> inputs, AuxiliaryGraph::Fn fn) {
        flows_.push_back({name, std::move(from), std::move(to)});
        graph_.add(std::move(name), std::move(inputs), std::move(fn));
        return *this;
    }

    /// Validates wiring and compiles the auxiliary graph.
    System build() {
        for (const auto& f : flows_) {
            for (const auto* end : {&f.from, &f.to}) {
                if (*end && !initial_.contains(**end)) {
                    throw StructuralError("flow '" + f.name + "' references unknown stock '" + **end + "'");
                }
            }
        }
        graph_.compile(initial_.names());

        System sys;
        sys.initial = initial_;
        sys.non_negative = non_negative_;
        sys.evaluate = [graph = graph_, flows = flows_](double t, const StockVector& stocks) {
            Evaluation eval;
            eval.auxiliaries = graph.evaluate(t, stocks);
            for (const auto& [name, _] : stocks) {
                eval.derivatives.set(name, 0.0);
            }
            for (const auto& f : flows) {
                const double rate = eval.auxiliaries.at(f.name);
                if (f.from) {
                    eval.derivatives.at(*f.from) -= rate;
                }
                if (f.to) {
                    eval.derivatives.at(*f.to) += rate;
                }
            }
            return eval;
        };
        return sys;
    }

private:
    struct Flow {
        std::string name;
        std::optional<std::string> from;
        std::optional<std::string> to;
    };
    StockVector initial_;
    std::vector<std::string> non_negative_;
    AuxiliaryGraph graph_;
    std::vector<Flow> flows_;
};

} // namespace pdyn::engine
