#pragma once

#include <charconv>
#include <fstream>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <string_view>

#include "model.hpp"
#include "search.hpp"

namespace cma {

// Scenario description file: `key = value` pairs, one per line, `#` starts
// a comment. Unknown keys are errors so typos cannot silently fall back to
// defaults.
struct ScenarioConfig {
    int num_terminals = 0;
    double span_m = 0.0;
    double altitude_m = 0.0;
    double power_dbm = 0.0;
    double ref_snr_db = 0.0;
    double speed_mps = 0.0;
    std::optional<double> traj_length_m;  // commands may require or override it
    double epsilon = kDefaultEpsilon;
    Scheme scheme = Scheme::optimal;

    Scenario to_scenario() const {
        return to_scenario(traj_length_m.value_or(0.0));
    }
    Scenario to_scenario(double traj_length) const {
        return Scenario(num_terminals, span_m, altitude_m, power_dbm,
                        ref_snr_db, speed_mps, traj_length);
    }
};

inline std::optional<Scheme> scheme_from_string(std::string_view text) {
    if (text == "optimal") return Scheme::optimal;
    if (text == "equal") return Scheme::equal;
    return std::nullopt;
}

namespace detail {

inline std::string_view trim(std::string_view sv) {
    while (!sv.empty() && (sv.front() == ' ' || sv.front() == '\t' || sv.front() == '\r'))
        sv.remove_prefix(1);
    while (!sv.empty() && (sv.back() == ' ' || sv.back() == '\t' || sv.back() == '\r'))
        sv.remove_suffix(1);
    return sv;
}

inline std::optional<double> parse_number(std::string_view sv) {
    double value = 0.0;
    const char* end = sv.data() + sv.size();
    auto [ptr, ec] = std::from_chars(sv.data(), end, value);
    if (ec != std::errc{} || ptr != end) return std::nullopt;
    return value;
}

[[noreturn]] inline void config_error(int line, const std::string& what) {
    throw std::runtime_error("scenario line " + std::to_string(line) + ": " + what);
}

}  // namespace detail

inline ScenarioConfig parse_scenario_text(std::string_view text) {
    ScenarioConfig cfg;
    std::set<std::string> seen;

    int line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const std::size_t eol = text.find('\n', pos);
        std::string_view line = text.substr(
            pos, eol == std::string_view::npos ? text.size() - pos : eol - pos);
        pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;
        ++line_no;

        if (const std::size_t hash = line.find('#'); hash != std::string_view::npos)
            line = line.substr(0, hash);
        line = detail::trim(line);
        if (line.empty()) continue;

        const std::size_t eq = line.find('=');
        if (eq == std::string_view::npos)
            detail::config_error(line_no, "expected `key = value`");
        const std::string key{detail::trim(line.substr(0, eq))};
        const std::string_view value = detail::trim(line.substr(eq + 1));
        if (key.empty())
            detail::config_error(line_no, "missing key before `=`");
        if (value.empty())
            detail::config_error(line_no, "missing value for key '" + key + "'");
        if (!seen.insert(key).second)
            detail::config_error(line_no, "duplicate key '" + key + "'");

        auto number = [&]() {
            const auto parsed = detail::parse_number(value);
            if (!parsed)
                detail::config_error(line_no, "invalid number for key '" + key +
                                                  "': '" + std::string(value) + "'");
            return *parsed;
        };

        if (key == "num_terminals") {
            const double v = number();
            if (v != static_cast<double>(static_cast<int>(v)) || v < 1.0 || v > 1e6)
                detail::config_error(line_no, "num_terminals must be a positive integer");
            cfg.num_terminals = static_cast<int>(v);
        } else if (key == "span_m") {
            cfg.span_m = number();
        } else if (key == "altitude_m") {
            cfg.altitude_m = number();
        } else if (key == "power_dbm") {
            cfg.power_dbm = number();
        } else if (key == "ref_snr_db") {
            cfg.ref_snr_db = number();
        } else if (key == "speed_mps") {
            cfg.speed_mps = number();
        } else if (key == "traj_length_m") {
            cfg.traj_length_m = number();
        } else if (key == "epsilon") {
            cfg.epsilon = number();
        } else if (key == "scheme") {
            const auto s = scheme_from_string(value);
            if (!s)
                detail::config_error(line_no, "scheme must be 'optimal' or 'equal'");
            cfg.scheme = *s;
        } else {
            detail::config_error(line_no, "unknown key '" + key + "'");
        }
    }

    for (const char* required : {"num_terminals", "span_m", "altitude_m",
                                 "power_dbm", "ref_snr_db", "speed_mps"})
        if (!seen.count(required))
            throw std::runtime_error(std::string("scenario: missing required key '") +
                                     required + "'");

    if (!(cfg.epsilon > 0.0) || !std::isfinite(cfg.epsilon))
        throw std::runtime_error("scenario: epsilon must be > 0");
    return cfg;
}

inline ScenarioConfig load_scenario_file(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot open scenario file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_scenario_text(buf.str());
}

}  // namespace cma
