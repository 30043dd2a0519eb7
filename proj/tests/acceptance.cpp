// Acceptance runner. `acceptance` checks every criterion; `acceptance N` checks one.
// Prints one PASS/FAIL line per criterion and exits non-zero if any failed.

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <numeric>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "support.hpp"

using namespace pdyn;

namespace {

struct Check {
    std::vector<std::string> failures;
    std::ostringstream notes;

    void expect(bool ok, const std::string& what) {
        if (!ok) {
            failures.push_back(what);
        }
    }
    void near(double actual, double expected, double tol, const std::string& what) {
        std::ostringstream s;
        s << what << " = " << actual << " (want " << expected << " +/- " << tol << ")";
        expect(std::abs(actual - expected) <= tol, s.str());
    }
    void within(double actual, double lo, double hi, const std::string& what) {
        std::ostringstream s;
        s << what << " = " << actual << " (want [" << lo << ", " << hi << "])";
        expect(actual >= lo && actual <= hi, s.str());
    }
};

calibration::ProjectMetrics acbs_metrics() { return scenario::load_metrics(testsupport::data_path("acbs/metrics.json")); }

void criterion1(Check& c) {
    using namespace calibration;
    const auto m = acbs_metrics();
    c.expect(effective_effort(m) == 630.0, "effective effort != 630");
    c.expect(effective_schedule(m) == 90.0, "effective schedule != 90");
    c.near(realized_dev_productivity(m), 5.82, 0.01, "realized productivity");
    c.expect(motivation_comm_multiplier(m.nominal_fraction_manday, m.comm_loss_at_reference) == 0.7 * (1.0 - 0.03),
             "motivation-comm multiplier != 0.679");
    c.near(motivation_comm_multiplier(0.7, 0.03), 0.679, 1e-15, "motivation-comm multiplier");
    const auto cal = calibrate(m);
    c.near(cal.parameters.nominal_potential_productivity, 19.70, 0.05, "nominal potential productivity");
    c.near(cal.parameters.loc_per_task, 19.70, 0.01, "loc_per_task");
    ProjectMetrics actual = m;
    actual.estimated_total_schedule = 325.0;
    actual.schedule_deductions = {{"outside the model boundary", 80.0}};
    c.expect(effective_schedule(actual) == 245.0, "actual-equivalent schedule != 245");
    c.notes << "npp=" << cal.parameters.nominal_potential_productivity << " loc/task=" << cal.parameters.loc_per_task;
}

void criterion2(Check& c) {
    using namespace volatility;
    const auto crs = parse_cr_csv(scenario::read_text_file(testsupport::data_path("acbs/change_requests.csv")));
    c.expect(crs.size() == 10, "CR count != 10");
    const double effort =
        std::accumulate(crs.begin(), crs.end(), 0.0, [](double a, const ChangeRequest& r) { return a + r.effort; });
    c.expect(effort == 123.0, "CR effort sum != 123");
    const auto loc = cr_loc_allocation(crs, 2414);
    c.expect(std::accumulate(loc.begin(), loc.end(), std::int64_t{0}) == 2414, "LOC allocation sum != 2414");
    const auto sc = testsupport::acbs_scenario();
    const double injected = total_injected(scenario::volatility_series(sc));
    c.near(injected, 122.5, 0.2, "injected tasks");
    c.notes << "injected=" << injected;
}

void criterion3(Check& c) {
    using namespace engine;
    auto decay_error = [](double dt) {
        System sys;
        sys.initial.set("S", 100.0);
        sys.evaluate = [](double, const StockVector& s) {
            Evaluation e;
            e.derivatives.set("S", -s.at("S") / 10.0);
            return e;
        };
        const auto ts = simulate(sys, SimConfig{0.0, 20.0, dt}, {"S"});
        return std::abs(ts.last("S") - 100.0 * std::exp(-2.0));
    };
    const double e1 = decay_error(0.5);
    const double e2 = decay_error(0.25);
    const double e3 = decay_error(0.125);
    const double p1 = std::log2(e1 / e2);
    const double p2 = std::log2(e2 / e3);
    c.within(p1, 0.9, 1.1, "order(0.5 -> 0.25)");
    c.within(p2, 0.9, 1.1, "order(0.25 -> 0.125)");

    Delay3State d(12.0);
    const double dt = 0.25;
    double in = 0.0;
    double out = 0.0;
    double worst = 0.0;
    for (int k = 0; k < 2000; ++k) {
        const double inflow = k < 200 ? 1.0 + 0.5 * std::sin(0.1 * k) : 0.0;
        const auto r = delay3_update(d, inflow, dt);
        d = r.state;
        in += inflow * dt;
        out += r.outflow * dt;
        worst = std::max(worst, std::abs(in - out - d.contents()) / in);
    }
    c.expect(worst <= 1e-9, "delay3 conservation error " + std::to_string(worst));
    c.notes << "orders=" << p1 << "," << p2 << " delay3 rel.err=" << worst;
}

void criterion4(Check& c) {
    const auto policy = testsupport::neutral_policy();
    const auto params = testsupport::consistent_baseline(policy);
    const engine::SimConfig cfg{0.0, 400.0, 0.25};
    const auto run = model::run_project(params, policy, volatility::VolatilitySeries::zeros(cfg), cfg);
    c.expect(run.completed(), "baseline did not complete");
    if (run.completed()) {
        c.within(*run.completion_day, 0.9 * params.schedule_estimate, 1.1 * params.schedule_estimate, "completion day");
    }
    const auto wf = run.series.channel("workforce_total");
    const double peak = *std::max_element(wf.begin(), wf.end());
    c.within(peak, 0.9 * params.initial_workforce, 1.1 * params.initial_workforce, "peak workforce");
    c.notes << "completion=" << run.completion_day.value_or(-1) << " peak workforce=" << peak;
}

void criterion5(Check& c) {
    const auto sc = testsupport::acbs_scenario();
    const auto run = scenario::run_scenario(sc);
    const auto& ts = run.series;
    const double dt = sc.sim.dt;
    c.expect(run.completed(), "ACBS run did not complete");

    const auto sched = ts.channel("scheduled_completion");
    bool monotone = true;
    for (std::size_t i = 1; i < sched.size(); ++i) {
        monotone = monotone && sched[i] >= sched[i - 1];
    }
    c.expect(monotone, "scheduled completion decreased");
    c.expect(sched.back() > 90.0, "final scheduled completion not above 90");
    c.expect(run.effort.total > 630.0, "total effort not above 630");

    const auto smoothed = testsupport::moving_average(ts.channel("workforce_total"), dt, 10.0);
    c.expect(testsupport::single_peak(smoothed), "workforce is not a single peak");

    const auto hiring = ts.channel("hiring_rate");
    const auto prod = ts.channel("productivity_loc_per_manday");
    const std::size_t kh = testsupport::argmax(hiring);
    const std::size_t window = static_cast<std::size_t>(std::llround(15.0 / dt));
    double dip = prod[kh];
    for (std::size_t i = kh; i < std::min(prod.size(), kh + window + 1); ++i) {
        dip = std::min(dip, prod[i]);
    }
    c.expect(dip < prod[kh], "productivity does not dip after the hiring peak");
    const std::size_t kp = testsupport::argmax(prod);
    c.expect(kp >= 3 * (prod.size() - 1) / 4, "productivity peak not in the final quartile");

    const auto gen = ts.channel("error_generation_rate");
    const std::size_t ke = testsupport::argmax(gen);
    c.expect(ke > 0 && gen[ke] > gen.front(), "error generation does not rise");
    c.expect(gen.back() < 0.1 * gen[ke], "error generation not below 10% of its peak at completion");

    c.near(run.final_state.perceived_size, 506.9, 1.0, "final perceived size");
    c.notes << "schedule 90->" << sched.back() << " effort=" << run.effort.total << " hiring peak t="
            << ts.time_grid()[kh] << " productivity " << prod[kh] << "->" << dip << " peak t=" << ts.time_grid()[kp]
            << " workforce peak t=" << ts.time_grid()[testsupport::argmax(smoothed)];
}

void criterion6(Check& c) {
    const auto sc = testsupport::acbs_scenario();
    const auto run = scenario::run_scenario(sc);
    const auto report = scenario::summarize(run, sc.parameters, sc.policy);
    c.within(run.effort.total, 0.8 * 2566.0, 1.2 * 2566.0, "total effort");
    c.expect(run.completed(), "ACBS run did not complete");
    if (run.completed()) {
        c.within(*run.completion_day, 0.8 * 218.0, 1.2 * 218.0, "completion day");
    }
    c.expect(run.effort.testing > report.planned_testing_effort, "testing effort not above its planned share");
    c.notes << "effort=" << run.effort.total << " completion=" << run.completion_day.value_or(-1)
            << " testing=" << run.effort.testing << " planned testing=" << report.planned_testing_effort;
}

void criterion7(Check& c) {
    const auto sc = testsupport::acbs_scenario();
    const auto r = scenario::sweep(sc, 2414.0, 40.0, 301.0);
    const double expected = 2414.0 / sc.parameters.loc_per_task;
    c.expect(r.rows.size() == 4, "sweep did not produce four rows");
    for (const auto& row : r.rows) {
        c.near(row.injected_tasks, expected, 1e-3 * expected,
               "injected tasks (" + std::string(volatility::to_string(row.shape)) + ")");
    }
    std::ostringstream spread;
    spread << "effort spread " << r.effort_spread_percent << "% below 2%";
    c.expect(r.effort_spread_percent >= 2.0, spread.str());
    c.notes << "spread=" << r.effort_spread_percent << "% ranking:";
    for (const auto& name : r.ranking) {
        c.notes << " " << name;
    }
}

void invariants(Check& c, const testsupport::RandomScenario& rs, int index) {
    const auto series = volatility::pattern_rate_series(rs.pattern, rs.params.loc_per_task, rs.sim);
    const auto run = model::run_project(rs.params, rs.policy, series, rs.sim);
    const auto again = model::run_project(rs.params, rs.policy, series, rs.sim);
    const std::string tag = "scenario " + std::to_string(index) + ": ";
    c.expect(scenario::timeseries_csv(run.series) == scenario::timeseries_csv(again.series), tag + "not deterministic");

    const auto& ts = run.series;
    const double dt = rs.sim.dt;
    const auto size = ts.channel("perceived_size");
    const auto developed = ts.channel("tasks_developed");
    const auto tested = ts.channel("tasks_tested");
    const auto generated = ts.channel("errors_generated");
    const auto sched = ts.channel("scheduled_completion");
    double injected = 0.0;
    for (std::size_t k = 0; k < ts.size(); ++k) {
        if (k > 0) {
            injected += series.rates[k - 1] * dt;
        }
        const double scale = std::max(1.0, size[k]);
        if (std::abs(size[k] - size[0] - injected) > 1e-9 * scale || developed[k] > size[k] + 1e-9 * scale ||
            tested[k] > developed[k] + 1e-9 * scale) {
            c.expect(false, tag + "task conservation broken at t=" + std::to_string(ts.time_grid()[k]));
            break;
        }
        double ledger = 0.0;
        for (const char* name : {"errors_undetected", "errors_detected", "errors_escaped", "errors_fixed"}) {
            ledger += ts.channel(name)[k];
        }
        if (std::abs(ledger - generated[k]) > 1e-6 * std::max(1.0, generated[k])) {
            c.expect(false, tag + "error ledger unbalanced at t=" + std::to_string(ts.time_grid()[k]));
            break;
        }
        if (k > 0) {
            bool effort_ok = true;
            for (const char* name : {"effort_dev", "effort_qa", "effort_rework", "effort_training", "effort_testing"}) {
                effort_ok = effort_ok && ts.channel(name)[k] >= ts.channel(name)[k - 1];
            }
            if (!effort_ok || sched[k] < sched[k - 1]) {
                c.expect(false, tag + (effort_ok ? "schedule moved earlier" : "effort decreased") + " at t=" +
                                    std::to_string(ts.time_grid()[k]));
                break;
            }
        }
    }
    for (const auto& f : model::scalar_stock_fields) {
        const auto v = ts.channel(f.name);
        c.expect(*std::min_element(v.begin(), v.end()) >= 0.0, tag + "negative stock " + std::string(f.name));
    }
}

void criterion8(Check& c) {
    std::mt19937_64 rng(20021);
    int completed = 0;
    for (int i = 0; i < 50; ++i) {
        const auto rs = testsupport::random_scenario(rng);
        try {
            invariants(c, rs, i);
            const auto series = volatility::pattern_rate_series(rs.pattern, rs.params.loc_per_task, rs.sim);
            completed += model::run_project(rs.params, rs.policy, series, rs.sim).completed() ? 1 : 0;
        } catch (const std::exception& e) {
            c.expect(false, "scenario " + std::to_string(i) + " threw: " + e.what());
        }
    }
    c.notes << "50 scenarios, " << completed << " completed within the horizon";
}

const std::vector<std::pair<const char*, std::function<void(Check&)>>> criteria{
    {"calibration goldens", criterion1},
    {"change-request ingestion", criterion2},
    {"integrator and delay oracles", criterion3},
    {"control-loop sanity", criterion4},
    {"ACBS qualitative shapes", criterion5},
    {"ACBS banded targets", criterion6},
    {"volatility pattern sweep", criterion7},
    {"randomized invariants", criterion8},
};

} // namespace

int main(int argc, char** argv) {
    std::size_t first = 1;
    std::size_t last = criteria.size();
    if (argc > 1) {
        first = last = static_cast<std::size_t>(std::strtoul(argv[1], nullptr, 10));
        if (first < 1 || first > criteria.size()) {
            std::fprintf(stderr, "usage: acceptance [1-%zu]\n", criteria.size());
            return 2;
        }
    }
    int failed = 0;
    for (std::size_t n = first; n <= last; ++n) {
        Check c;
        try {
            criteria[n - 1].second(c);
        } catch (const std::exception& e) {
            c.failures.push_back(std::string("threw: ") + e.what());
        }
        const bool ok = c.failures.empty();
        std::printf("criterion %zu (%s): %s  [%s]\n", n, criteria[n - 1].first, ok ? "PASS" : "FAIL",
                    c.notes.str().c_str());
        for (const auto& f : c.failures) {
            std::printf("    %s\n", f.c_str());
        }
        failed += ok ? 0 : 1;
    }
    return failed == 0 ? 0 : 1;
}
