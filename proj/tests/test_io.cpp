#include <catch2/catch_amalgamated.hpp>

#include <cstdlib>
#include <string>
#include <vector>

#include "cma/delay.hpp"
#include "cma/emit.hpp"
#include "cma/scenario_io.hpp"

using Catch::Matchers::ContainsSubstring;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

std::vector<std::string> split_lines(const std::string& text) {
    std::vector<std::string> lines;
    std::size_t pos = 0;
    while (pos < text.size()) {
        const std::size_t eol = text.find('\n', pos);
        REQUIRE(eol != std::string::npos);  // every line must end in LF
        lines.push_back(text.substr(pos, eol - pos));
        pos = eol + 1;
    }
    return lines;
}

std::vector<std::string> split_fields(const std::string& line) {
    std::vector<std::string> fields;
    std::size_t pos = 0;
    while (true) {
        const std::size_t comma = line.find(',', pos);
        if (comma == std::string::npos) {
            fields.push_back(line.substr(pos));
            return fields;
        }
        fields.push_back(line.substr(pos, comma - pos));
        pos = comma + 1;
    }
}

}  // namespace

TEST_CASE("scenario text parses with comments and whitespace", "[io]") {
    const char* text =
        "# tenth-terminal reference setup\n"
        "num_terminals = 10\n"
        "span_m = 1000   # meters\n"
        "\taltitude_m=100\r\n"
        "power_dbm = 10\n"
        "ref_snr_db = 80\n"
        "\n"
        "speed_mps = 30\n"
        "traj_length_m = 500\n"
        "epsilon = 1e-6\n"
        "scheme = equal\n";
    const cma::ScenarioConfig cfg = cma::parse_scenario_text(text);
    CHECK(cfg.num_terminals == 10);
    CHECK(cfg.span_m == 1000.0);
    CHECK(cfg.altitude_m == 100.0);
    CHECK(cfg.power_dbm == 10.0);
    CHECK(cfg.ref_snr_db == 80.0);
    CHECK(cfg.speed_mps == 30.0);
    REQUIRE(cfg.traj_length_m.has_value());
    CHECK(*cfg.traj_length_m == 500.0);
    CHECK(cfg.epsilon == 1e-6);
    CHECK(cfg.scheme == cma::Scheme::equal);

    const cma::Scenario s = cfg.to_scenario();
    CHECK(s.traj_length_m == 500.0);
    CHECK(cfg.to_scenario(750.0).traj_length_m == 750.0);
}

TEST_CASE("scenario optional keys default", "[io]") {
    const cma::ScenarioConfig cfg = cma::parse_scenario_text(
        "num_terminals = 2\nspan_m = 800\naltitude_m = 100\n"
        "power_dbm = 10\nref_snr_db = 80\nspeed_mps = 30\n");
    CHECK_FALSE(cfg.traj_length_m.has_value());
    CHECK(cfg.epsilon == cma::kDefaultEpsilon);
    CHECK(cfg.scheme == cma::Scheme::optimal);
}

TEST_CASE("scenario parse failures carry the line and key", "[io]") {
    const std::string base =
        "num_terminals = 2\nspan_m = 800\naltitude_m = 100\n"
        "power_dbm = 10\nref_snr_db = 80\nspeed_mps = 30\n";

    CHECK_THROWS_WITH(cma::parse_scenario_text(base + "just words\n"),
                      ContainsSubstring("line 7") &&
                          ContainsSubstring("key = value"));
    CHECK_THROWS_WITH(cma::parse_scenario_text(base + "= 5\n"),
                      ContainsSubstring("missing key"));
    CHECK_THROWS_WITH(cma::parse_scenario_text(base + "span_m =\n"),
                      ContainsSubstring("missing value") &&
                          ContainsSubstring("span_m"));
    CHECK_THROWS_WITH(cma::parse_scenario_text(base + "span_m = 900\n"),
                      ContainsSubstring("duplicate key 'span_m'"));
    CHECK_THROWS_WITH(cma::parse_scenario_text(base + "spam_m = 900\n"),
                      ContainsSubstring("unknown key 'spam_m'") &&
                          ContainsSubstring("line 7"));
    CHECK_THROWS_WITH(cma::parse_scenario_text("altitude_m = ten\n"),
                      ContainsSubstring("invalid number") &&
                          ContainsSubstring("'ten'"));
    CHECK_THROWS_WITH(cma::parse_scenario_text(base + "scheme = fastest\n"),
                      ContainsSubstring("'optimal' or 'equal'"));
    CHECK_THROWS_WITH(cma::parse_scenario_text(base + "epsilon = 0\n"),
                      ContainsSubstring("epsilon must be > 0"));
    CHECK_THROWS_WITH(cma::parse_scenario_text(
                          "num_terminals = 2.5\nspan_m = 800\n"),
                      ContainsSubstring("positive integer"));

    // a missing required key is called out by name
    CHECK_THROWS_WITH(cma::parse_scenario_text(
                          "num_terminals = 2\nspan_m = 800\naltitude_m = 100\n"
                          "power_dbm = 10\nref_snr_db = 80\n"),
                      ContainsSubstring("missing required key 'speed_mps'"));
}

TEST_CASE("scenario files load from disk", "[io]") {
    const cma::ScenarioConfig cfg =
        cma::load_scenario_file(std::string(CMA_SCENARIO_DIR) + "/default.cfg");
    CHECK(cfg.num_terminals == 10);
    CHECK(cfg.span_m == 1000.0);
    REQUIRE(cfg.traj_length_m.has_value());
    CHECK(*cfg.traj_length_m == 500.0);

    CHECK_THROWS_WITH(cma::load_scenario_file("/nonexistent/path.cfg"),
                      ContainsSubstring("/nonexistent/path.cfg"));
}

TEST_CASE("format_double round-trips exactly", "[io]") {
    for (double v : {0.0, 1.0, -250.0, 0.1, 1.0 / 3.0, 0.4663432528202252,
                     1e-9, -3.5e300}) {
        const std::string text = cma::format_double(v);
        CHECK(std::strtod(text.c_str(), nullptr) == v);
    }
    CHECK(cma::format_double(250.0) == "250");
    CHECK(cma::format_double(0.1) == "0.1");
}

TEST_CASE("rates tables cover the requested range", "[io]") {
    const cma::Scenario s(10, 1000.0, 100.0, 10.0, 80.0, 30.0, 500.0);
    const std::string csv = cma::rates_csv(s, -500.0, 500.0, 201);
    const auto lines = split_lines(csv);
    REQUIRE(lines.size() == 202);
    CHECK(lines[0] ==
          "x_m,r_1,r_2,r_3,r_4,r_5,r_6,r_7,r_8,r_9,r_10");
    CHECK(split_fields(lines[1])[0] == "-500");
    CHECK(split_fields(lines[201])[0] == "500");

    // row 101 sits at x = 0; terminals 5 and 6 are mirror images there
    const auto mid = split_fields(lines[101]);
    REQUIRE(mid.size() == 11);
    CHECK(mid[0] == "0");
    CHECK(mid[5] == mid[6]);
    CHECK_THAT(std::strtod(mid[5].c_str(), nullptr),
               WithinRel(6.2745429843293365, 1e-12));

    CHECK(cma::rates_csv(s, -500.0, 500.0, 201) == csv);  // byte-identical

    const nlohmann::json doc = cma::rates_json_doc(s, -500.0, 500.0, 201);
    REQUIRE(doc.at("x_m").size() == 201);
    REQUIRE(doc.at("rates").size() == 201);
    REQUIRE(doc.at("rates").at(100).size() == 10);
    CHECK(doc.at("x_m").at(100).get<double>() == 0.0);
    CHECK_THAT(doc.at("rates").at(100).at(4).get<double>(),
               WithinRel(6.2745429843293365, 1e-12));

    CHECK_THROWS_AS(cma::rates_csv(s, 500.0, -500.0, 201), std::invalid_argument);
    CHECK_THROWS_AS(cma::rates_csv(s, -500.0, 500.0, 1), std::invalid_argument);
}

TEST_CASE("allocation documents round-trip through JSON", "[io]") {
    const cma::Scenario s(10, 1000.0, 100.0, 10.0, 80.0, 30.0, 500.0);
    const cma::Allocation alloc = cma::maxmin_allocate(s);
    const cma::DelayProfile delays = cma::access_delays(alloc, s.speed_mps);

    const nlohmann::json doc = cma::allocation_json_doc(alloc, delays);
    for (const char* key : {"delimiters", "portions", "throughputs",
                            "min_throughput", "iterations", "delays",
                            "rms_delay", "period"})
        CHECK(doc.contains(key));

    // serialized delimiters must regenerate the serialized throughputs
    const nlohmann::json parsed = nlohmann::json::parse(doc.dump(2));
    const auto b = parsed.at("delimiters").get<std::vector<double>>();
    const auto th = parsed.at("throughputs").get<std::vector<double>>();
    REQUIRE(b.size() == 11);
    REQUIRE(th.size() == 10);
    const cma::TerminalLayout layout = cma::place_terminals(10, 1000.0);
    const cma::LinearParams params = cma::to_linear(s);
    for (std::size_t k = 0; k < th.size(); ++k) {
        const double recomputed = cma::segment_throughput(
            b[k], b[k + 1], layout.positions_m[k], 500.0, params);
        CHECK_THAT(recomputed, WithinAbs(th[k], 1e-12));
    }
    CHECK(parsed.at("min_throughput").get<double>() == alloc.min_throughput);
    CHECK(parsed.at("iterations").get<long>() == alloc.iterations);
}

TEST_CASE("allocation CSV has the per-terminal and summary sections", "[io]") {
    const cma::Scenario s(3, 1000.0, 100.0, 10.0, 80.0, 30.0, 500.0);
    const cma::Allocation alloc = cma::maxmin_allocate(s);
    const cma::DelayProfile delays = cma::access_delays(alloc, s.speed_mps);

    const auto lines = split_lines(cma::allocation_csv(alloc, delays));
    REQUIRE(lines.size() == 7);
    CHECK(lines[0] == "terminal,b_lo_m,b_hi_m,portion,throughput,delay_s");
    CHECK(split_fields(lines[1])[0] == "1");
    CHECK(split_fields(lines[3])[0] == "3");
    CHECK(lines[4].empty());
    CHECK(lines[5] == "min_throughput,iterations,rms_delay_s,period_s");
    const auto summary = split_fields(lines[6]);
    REQUIRE(summary.size() == 4);
    CHECK(std::strtod(summary[0].c_str(), nullptr) == alloc.min_throughput);
    CHECK(std::stol(summary[1]) == alloc.iterations);
}

TEST_CASE("static documents", "[io]") {
    const nlohmann::json doc = cma::static_json_doc(0.25);
    CHECK(doc.at("max_min_throughput").get<double>() == 0.25);
    CHECK(cma::static_csv(0.25) == "max_min_throughput\n0.25\n");
}

TEST_CASE("tradeoff documents carry points and selections", "[io]") {
    std::vector<cma::TradeoffPoint> points = {
        {0.0, 0.0, 0.35, 0.0, cma::Scheme::optimal},
        {0.5, 500.0, 0.6, 20.0, cma::Scheme::optimal},
        {0.5, 500.0, 0.59, 21.0, cma::Scheme::equal},
    };
    std::vector<cma::SelectedPoint> selections = {
        {60.0, points[1]},
        {0.0, points[0]},
    };

    const auto lines = split_lines(cma::tradeoff_csv(points, selections));
    REQUIRE(lines.size() == 8);
    CHECK(lines[0] == "scheme,d_bar,tau,rms_delay_s");
    CHECK(lines[1] == "optimal,0,0.35,0");
    CHECK(lines[3] == "equal,0.5,0.59,21");
    CHECK(lines[4].empty());
    CHECK(lines[5] == "phi_s,scheme,d_bar_star,tau_star");
    CHECK(lines[6] == "60,optimal,0.5,0.6");
    CHECK(lines[7] == "0,optimal,0,0.35");

    // without selections the second section disappears entirely
    const auto bare = split_lines(cma::tradeoff_csv(points, {}));
    CHECK(bare.size() == 4);

    const nlohmann::json doc = cma::tradeoff_json_doc(points, selections);
    REQUIRE(doc.at("points").size() == 3);
    CHECK(doc.at("points").at(1).at("tau").get<double>() == 0.6);
    CHECK(doc.at("points").at(1).at("traj_length_m").get<double>() == 500.0);
    REQUIRE(doc.at("selections").size() == 2);
    CHECK(doc.at("selections").at(0).at("phi_s").get<double>() == 60.0);
    CHECK(doc.at("selections").at(0).at("d_bar_star").get<double>() == 0.5);
    CHECK_FALSE(cma::tradeoff_json_doc(points, {}).contains("selections"));
}
