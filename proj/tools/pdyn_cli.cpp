// Command-line front end: simulate, calibrate, compare, sweep.

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "pdyn/pdyn.hpp"

namespace {

enum ExitCode : int {
    ok = 0,
    usage = 1,
    load_error = 2,
    numeric_error = 3,
    not_completed = 4,
    io_error = 5,
};

namespace sc = pdyn::scenario;

int cmd_simulate(const std::string& scenario_path, const std::string& out_dir) {
    const auto s = sc::load_scenario(scenario_path);
    const auto run = sc::run_scenario(s);
    const auto report = sc::write_run_outputs(run, s.parameters, s.policy, out_dir);
    if (!report.completed) {
        std::cerr << "simulation did not complete by day " << sc::format_number(report.last_day) << "\n";
        return not_completed;
    }
    std::cout << "completed on day " << sc::format_number(*report.completion_day) << ", total effort "
              << sc::format_number(report.effort.total) << " person-days\n";
    return ok;
}

int cmd_calibrate(const std::string& metrics_path, const std::string& out_path) {
    const auto c = pdyn::calibration::calibrate(sc::load_metrics(metrics_path));
    for (const auto& t : c.trace) {
        std::cout << t.quantity << ": " << t.formula << "\n";
    }
    const std::filesystem::path out(out_path);
    if (out.has_parent_path()) {
        sc::ensure_directory(out.parent_path());
    }
    sc::write_text_file(out, sc::calibration_to_json(c).dump(2) + "\n");
    return ok;
}

int cmd_compare(const std::string& sim_path, const std::string& actual_path, const std::string& out_path) {
    const auto sim = sc::parse_numeric_csv(sc::read_text_file(sim_path, "sim"), sim_path);
    const auto actual = sc::parse_numeric_csv(sc::read_text_file(actual_path, "actual"), actual_path);
    const auto report = sc::compare(sim, actual);
    const std::string text = sc::comparison_csv(report);
    std::cout << text << "matched_samples," << report.matched_samples << "\n";
    if (!out_path.empty()) {
        sc::write_text_file(out_path, text);
    }
    return ok;
}

int cmd_sweep(const std::string& scenario_path, double volume, const std::vector<double>& window, double steepness,
              const std::string& out_dir) {
    const auto s = sc::load_scenario(scenario_path);
    const auto result = sc::sweep(s, volume, window.at(0), window.at(1), steepness);
    sc::ensure_directory(out_dir);
    const std::filesystem::path dir(out_dir);
    sc::write_text_file(dir / "sweep.csv", sc::sweep_csv(result));
    sc::write_text_file(dir / "sweep.json", sc::sweep_to_json(result).dump(2) + "\n");
    std::cout << sc::sweep_csv(result) << "ranking:";
    for (const auto& name : result.ranking) {
        std::cout << " " << name;
    }
    std::cout << "\neffort spread " << sc::format_number(result.effort_spread_percent) << "%\n";
    return ok;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Software project dynamics simulator"};
    app.require_subcommand(1);

    std::string scenario_path;
    std::string out;

    auto* simulate = app.add_subcommand("simulate", "run a scenario and write timeseries.csv and summary.json");
    simulate->add_option("--scenario", scenario_path, "scenario JSON file")->required();
    simulate->add_option("--out", out, "output directory")->required();

    std::string metrics_path;
    auto* calibrate = app.add_subcommand("calibrate", "derive model parameters from project metrics");
    calibrate->add_option("--metrics", metrics_path, "metrics JSON file")->required();
    calibrate->add_option("--out", out, "parameters JSON file to write")->required();

    std::string sim_csv;
    std::string actual_csv;
    auto* compare = app.add_subcommand("compare", "compare a simulated time series with actual samples");
    compare->add_option("--sim", sim_csv, "simulated timeseries.csv")->required();
    compare->add_option("--actual", actual_csv, "actuals CSV (day,<channel>...)")->required();
    compare->add_option("--out", out, "optional CSV report path");

    double volume = 0.0;
    std::vector<double> window;
    double steepness = 10.0;
    auto* sweep = app.add_subcommand("sweep", "run all canonical volatility patterns at one volume and window");
    sweep->add_option("--scenario", scenario_path, "scenario JSON file")->required();
    sweep->add_option("--volume-loc", volume, "change volume in LOC")->required()->check(CLI::NonNegativeNumber);
    sweep->add_option("--window", window, "window start,end in working days")
        ->required()
        ->delimiter(',')
        ->expected(2);
    sweep->add_option("--steepness", steepness, "rate ratio for the exponential shapes")->capture_default_str();
    sweep->add_option("--out", out, "output directory")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? ok : usage;
    }

    try {
        if (*simulate) {
            return cmd_simulate(scenario_path, out);
        }
        if (*calibrate) {
            return cmd_calibrate(metrics_path, out);
        }
        if (*compare) {
            return cmd_compare(sim_csv, actual_csv, out);
        }
        if (*sweep) {
            return cmd_sweep(scenario_path, volume, window, steepness, out);
        }
    } catch (const pdyn::LoadError& e) {
        std::cerr << "load error: " << e.what() << "\n";
        return load_error;
    } catch (const pdyn::ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return load_error;
    } catch (const pdyn::CalibrationError& e) {
        std::cerr << "calibration error: " << e.what() << "\n";
        return load_error;
    } catch (const pdyn::NumericError& e) {
        std::cerr << "numeric error: " << e.what() << "\n";
        return numeric_error;
    } catch (const sc::IoError& e) {
        std::cerr << "i/o error: " << e.what() << "\n";
        return io_error;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return usage;
    }
    return usage;
}
