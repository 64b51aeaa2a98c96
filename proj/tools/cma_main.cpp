// cma: max-min time allocation planner for a shuttling aerial base station.
// Reads a scenario file, runs one of the four analyses, and emits CSV/JSON.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "cma/allocator.hpp"
#include "cma/delay.hpp"
#include "cma/emit.hpp"
#include "cma/model.hpp"
#include "cma/oracle.hpp"
#include "cma/scenario_io.hpp"
#include "cma/search.hpp"

namespace {

unsigned sweep_threads() {
    unsigned n = std::thread::hardware_concurrency();
    if (n == 0) n = 1;
    if (const char* env = std::getenv("CMA_THREADS")) {
        const auto parsed = cma::detail::parse_number(env);
        if (!parsed || *parsed < 1.0 || *parsed != static_cast<long>(*parsed))
            throw std::runtime_error("CMA_THREADS must be a positive integer");
        if (static_cast<unsigned>(*parsed) < n) n = static_cast<unsigned>(*parsed);
    }
    return n;
}

void write_output(const std::string& destination, const std::string& payload) {
    if (destination == "stdout") {
        std::cout << payload;
        return;
    }
    std::ofstream out(destination, std::ios::binary);
    if (!out)
        throw std::runtime_error("cannot open output file '" + destination + "'");
    out << payload;
    if (!out)
        throw std::runtime_error("failed writing output file '" + destination + "'");
}

std::string resolve_format(const std::string& flag, const char* fallback) {
    if (flag.empty()) return fallback;
    if (flag != "csv" && flag != "json")
        throw std::runtime_error("format must be 'csv' or 'json'");
    return flag;
}

std::string dump_json(const nlohmann::json& doc) { return doc.dump(2) + "\n"; }

struct RatesArgs {
    std::optional<double> x_min;
    std::optional<double> x_max;
    int samples = 201;
};

struct TradeoffArgs {
    double d_bar_max = 2.0;
    double d_bar_step = 0.01;
    std::vector<double> phi;
    std::string scheme = "both";
};

int run(int argc, char** argv) {
    CLI::App app{"max-min time allocation for a shuttling aerial base station"};
    app.require_subcommand(1);
    app.fallthrough();

    std::string config_path;
    std::string output = "stdout";
    std::string format;
    app.add_option("--config", config_path, "scenario file")->required();
    app.add_option("--output", output, "output file path, or 'stdout'");
    app.add_option("--format", format, "csv or json (default depends on the command)");

    RatesArgs rates_args;
    CLI::App* rates = app.add_subcommand("rates", "sample per-terminal rates along the ground track");
    rates->add_option("--xmin", rates_args.x_min, "left end of the sampled range (m); default -span/2");
    rates->add_option("--xmax", rates_args.x_max, "right end of the sampled range (m); default span/2");
    rates->add_option("--samples", rates_args.samples, "number of samples (>= 2)");

    CLI::App* allocate = app.add_subcommand("allocate", "compute the time allocation for the configured trajectory");
    CLI::App* stat = app.add_subcommand("static", "max-min throughput of the hovering benchmark");

    TradeoffArgs tr;
    CLI::App* tradeoff = app.add_subcommand("tradeoff", "sweep trajectory lengths and pick optima per delay budget");
    tradeoff->add_option("--dbar-max", tr.d_bar_max, "largest trajectory length / span to sweep");
    tradeoff->add_option("--dbar-step", tr.d_bar_step, "grid step for trajectory length / span");
    tradeoff->add_option("--phi", tr.phi, "RMS delay budgets in seconds")->delimiter(',');
    tradeoff->add_option("--scheme", tr.scheme, "optimal, equal, or both")
        ->check(CLI::IsMember({"optimal", "equal", "both"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        std::cout << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        throw std::runtime_error(std::string("usage error: ") + e.what());
    }

    const cma::ScenarioConfig cfg = cma::load_scenario_file(config_path);

    if (rates->parsed()) {
        const cma::Scenario s = cfg.to_scenario();
        const double x_min = rates_args.x_min.value_or(-0.5 * s.span_m);
        const double x_max = rates_args.x_max.value_or(0.5 * s.span_m);
        if (!(x_min < x_max))
            throw std::runtime_error("rates: x range is empty (set --xmin/--xmax)");
        if (rates_args.samples < 2)
            throw std::runtime_error("rates: --samples must be >= 2");
        const std::string fmt = resolve_format(format, "csv");
        write_output(output, fmt == "csv"
                                 ? cma::rates_csv(s, x_min, x_max, rates_args.samples)
                                 : dump_json(cma::rates_json_doc(s, x_min, x_max,
                                                                 rates_args.samples)));
        return 0;
    }

    if (allocate->parsed()) {
        if (!cfg.traj_length_m || !(*cfg.traj_length_m > 0.0))
            throw std::runtime_error("allocate: traj_length_m must be set to a positive value in the scenario file");
        const cma::Scenario s = cfg.to_scenario(*cfg.traj_length_m);
        const cma::Allocation alloc = cfg.scheme == cma::Scheme::optimal
                                          ? cma::maxmin_allocate(s, cfg.epsilon)
                                          : cma::equal_allocation(s);
        const cma::DelayProfile delays = cma::access_delays(alloc, s.speed_mps);
        const std::string fmt = resolve_format(format, "json");
        write_output(output, fmt == "json"
                                 ? dump_json(cma::allocation_json_doc(alloc, delays))
                                 : cma::allocation_csv(alloc, delays));
        return 0;
    }

    if (stat->parsed()) {
        const cma::Scenario s = cfg.to_scenario();
        const double tau = cma::static_maxmin(s);
        const std::string fmt = resolve_format(format, "json");
        write_output(output, fmt == "json" ? dump_json(cma::static_json_doc(tau))
                                           : cma::static_csv(tau));
        return 0;
    }

    // tradeoff
    const cma::Scenario base = cfg.to_scenario(0.0);
    const std::vector<double> grid = cma::make_dbar_grid(tr.d_bar_max, tr.d_bar_step);
    for (double phi : tr.phi)
        if (!(phi >= 0.0))
            throw std::runtime_error("tradeoff: --phi values must be >= 0");

    std::vector<cma::Scheme> schemes;
    if (tr.scheme == "optimal" || tr.scheme == "both")
        schemes.push_back(cma::Scheme::optimal);
    if (tr.scheme == "equal" || tr.scheme == "both")
        schemes.push_back(cma::Scheme::equal);

    const unsigned threads = sweep_threads();
    std::vector<std::vector<cma::TradeoffPoint>> parts;
    for (cma::Scheme scheme : schemes)
        parts.push_back(cma::sweep(base, scheme, grid, cfg.epsilon, threads));

    std::vector<cma::TradeoffPoint> points;
    for (const auto& part : parts)
        points.insert(points.end(), part.begin(), part.end());
    std::vector<cma::SelectedPoint> selections;
    for (double phi : tr.phi)
        for (const auto& part : parts)
            selections.push_back({phi, cma::best_under_tolerance(part, phi)});

    const std::string fmt = resolve_format(format, "csv");
    write_output(output, fmt == "csv"
                             ? cma::tradeoff_csv(points, selections)
                             : dump_json(cma::tradeoff_json_doc(points, selections)));
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const std::exception& e) {
        std::cerr << "cma: " << e.what() << '\n';
        return 1;
    }
}
