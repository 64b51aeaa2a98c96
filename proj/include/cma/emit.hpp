#pragma once

#include <charconv>
#include <string>
#include <vector>

#include "json.hpp"

#include "allocator.hpp"
#include "delay.hpp"
#include "model.hpp"
#include "search.hpp"

namespace cma {

// Shortest decimal form that parses back to the identical 64-bit value, so
// repeated runs emit byte-identical files.
inline std::string format_double(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

// A sweep selection: the best point for one delay budget.
struct SelectedPoint {
    double phi_s = 0.0;
    TradeoffPoint point;
};

// --- rates ---------------------------------------------------------------

inline std::string rates_csv(const Scenario& s, double x_min, double x_max,
                             int n_samples) {
    if (!(x_min < x_max))
        throw std::invalid_argument("x range is empty");
    if (n_samples < 2)
        throw std::invalid_argument("n_samples must be >= 2");
    const TerminalLayout layout = place_terminals(s.num_terminals, s.span_m);
    const LinearParams params = to_linear(s);

    std::string out = "x_m";
    for (int k = 1; k <= s.num_terminals; ++k)
        out += ",r_" + std::to_string(k);
    out += '\n';
    const double step = (x_max - x_min) / (n_samples - 1);
    for (int i = 0; i < n_samples; ++i) {
        const double x = i + 1 == n_samples ? x_max : x_min + i * step;
        out += format_double(x);
        for (double xk : layout.positions_m) {
            out += ',';
            out += format_double(rate(x, xk, params));
        }
        out += '\n';
    }
    return out;
}

inline nlohmann::json rates_json_doc(const Scenario& s, double x_min,
                                     double x_max, int n_samples) {
    if (!(x_min < x_max))
        throw std::invalid_argument("x range is empty");
    if (n_samples < 2)
        throw std::invalid_argument("n_samples must be >= 2");
    const TerminalLayout layout = place_terminals(s.num_terminals, s.span_m);
    const LinearParams params = to_linear(s);

    nlohmann::json xs = nlohmann::json::array();
    nlohmann::json rows = nlohmann::json::array();
    const double step = (x_max - x_min) / (n_samples - 1);
    for (int i = 0; i < n_samples; ++i) {
        const double x = i + 1 == n_samples ? x_max : x_min + i * step;
        xs.push_back(x);
        nlohmann::json row = nlohmann::json::array();
        for (double xk : layout.positions_m)
            row.push_back(rate(x, xk, params));
        rows.push_back(std::move(row));
    }
    return {{"x_m", std::move(xs)}, {"rates", std::move(rows)}};
}

// --- allocate ------------------------------------------------------------

inline nlohmann::json allocation_json_doc(const Allocation& alloc,
                                          const DelayProfile& delays) {
    return {{"delimiters", alloc.delimiters},
            {"portions", alloc.portions},
            {"throughputs", alloc.throughputs},
            {"min_throughput", alloc.min_throughput},
            {"iterations", alloc.iterations},
            {"delays", delays.per_terminal_s},
            {"rms_delay", delays.rms_s},
            {"period", delays.period_s}};
}

inline std::string allocation_csv(const Allocation& alloc,
                                  const DelayProfile& delays) {
    std::string out = "terminal,b_lo_m,b_hi_m,portion,throughput,delay_s\n";
    for (std::size_t k = 0; k < alloc.throughputs.size(); ++k) {
        out += std::to_string(k + 1);
        out += ',';
        out += format_double(alloc.delimiters[k]);
        out += ',';
        out += format_double(alloc.delimiters[k + 1]);
        out += ',';
        out += format_double(alloc.portions[k]);
        out += ',';
        out += format_double(alloc.throughputs[k]);
        out += ',';
        out += format_double(delays.per_terminal_s[k]);
        out += '\n';
    }
    out += '\n';
    out += "min_throughput,iterations,rms_delay_s,period_s\n";
    out += format_double(alloc.min_throughput);
    out += ',';
    out += std::to_string(alloc.iterations);
    out += ',';
    out += format_double(delays.rms_s);
    out += ',';
    out += format_double(delays.period_s);
    out += '\n';
    return out;
}

// --- static --------------------------------------------------------------

inline nlohmann::json static_json_doc(double max_min_throughput) {
    return {{"max_min_throughput", max_min_throughput}};
}

inline std::string static_csv(double max_min_throughput) {
    return "max_min_throughput\n" + format_double(max_min_throughput) + "\n";
}

// --- tradeoff ------------------------------------------------------------

inline std::string tradeoff_csv(const std::vector<TradeoffPoint>& points,
                                const std::vector<SelectedPoint>& selections) {
    std::string out = "scheme,d_bar,tau,rms_delay_s\n";
    for (const TradeoffPoint& pt : points) {
        out += to_string(pt.scheme);
        out += ',';
        out += format_double(pt.d_bar);
        out += ',';
        out += format_double(pt.max_min_throughput);
        out += ',';
        out += format_double(pt.rms_delay_s);
        out += '\n';
    }
    if (!selections.empty()) {
        out += '\n';
        out += "phi_s,scheme,d_bar_star,tau_star\n";
        for (const SelectedPoint& sel : selections) {
            out += format_double(sel.phi_s);
            out += ',';
            out += to_string(sel.point.scheme);
            out += ',';
            out += format_double(sel.point.d_bar);
            out += ',';
            out += format_double(sel.point.max_min_throughput);
            out += '\n';
        }
    }
    return out;
}

inline nlohmann::json tradeoff_json_doc(const std::vector<TradeoffPoint>& points,
                                        const std::vector<SelectedPoint>& selections) {
    nlohmann::json pts = nlohmann::json::array();
    for (const TradeoffPoint& pt : points)
        pts.push_back({{"scheme", to_string(pt.scheme)},
                       {"d_bar", pt.d_bar},
                       {"traj_length_m", pt.traj_length_m},
                       {"tau", pt.max_min_throughput},
                       {"rms_delay_s", pt.rms_delay_s}});
    nlohmann::json sels = nlohmann::json::array();
    for (const SelectedPoint& sel : selections)
        sels.push_back({{"phi_s", sel.phi_s},
                        {"scheme", to_string(sel.point.scheme)},
                        {"d_bar_star", sel.point.d_bar},
                        {"tau_star", sel.point.max_min_throughput}});
    nlohmann::json doc = {{"points", std::move(pts)}};
    if (!selections.empty()) doc["selections"] = std::move(sels);
    return doc;
}

}  // namespace cma
