#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "pursuit/commands.hpp"

#include <algorithm>
#include <sstream>
#include <string>
#include <vector>

using namespace pursuit;

namespace {

std::vector<std::vector<std::string>> csv(const std::string& text) {
    std::vector<std::vector<std::string>> rows;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        std::vector<std::string> cols;
        std::size_t pos = 0;
        while (true) {
            const auto c = line.find(',', pos);
            cols.push_back(line.substr(pos, c == std::string::npos ? std::string::npos : c - pos));
            if (c == std::string::npos) {
                break;
            }
            pos = c + 1;
        }
        rows.push_back(cols);
    }
    return rows;
}

Scenario ideal20() {
    Scenario s;
    s.layout = dialplate_layout(20);
    s.schedule = {{3, 0.0, 2.5}};
    return s;
}

struct BothStats {
    std::vector<int> samples = std::vector<int>(21, 0); // cond_both = 1 per target
    std::vector<int> longest = std::vector<int>(21, 0); // longest consecutive run
};

BothStats both_stats(const std::string& trace) {
    BothStats st;
    const auto rows = csv(trace);
    for (std::size_t i = 1; i < rows.size(); ++i) {
        const auto id = std::stoul(rows[i][1]);
        st.samples[id] += rows[i][8] == "1";
        st.longest[id] = std::max(st.longest[id], std::stoi(rows[i][9]));
    }
    return st;
}

} // namespace

TEST_CASE("trace rows: shape and invariants") {
    std::ostringstream out;
    const auto run = cli::cmd_trace(ideal20(), DetectorConfig::defaults(Method::slope), out);
    const auto rows = csv(out.str());
    REQUIRE(rows.size() == 1 + 150 * 21);
    CHECK(rows[0] == std::vector<std::string>{"t", "target", "slope_x", "slope_y", "corr_x", "corr_y", "cond_x",
                                              "cond_y", "cond_both", "consecutive", "event"});
    std::size_t events = 0;
    for (std::size_t i = 1; i < rows.size(); ++i) {
        const auto& r = rows[i];
        REQUIRE(r.size() == 11);
        CHECK((r[8] == "1") == (r[6] == "1" && r[7] == "1"));
        if (r[10] == "1") {
            ++events;
            CHECK(r[8] == "1");
        }
    }
    CHECK(events == run.events.size());
}

TEST_CASE("trace: slope x/y conditions barely overlap on neighbours, correlation ones do") {
    Scenario sc = ideal20();
    sc.duration_s = 10.0;
    sc.schedule = {{3, 0.0, 10.0}};
    std::ostringstream slope, corr;
    cli::cmd_trace(sc, DetectorConfig::defaults(Method::slope), slope);
    cli::cmd_trace(sc, DetectorConfig::defaults(Method::correlation), corr);
    const auto s = both_stats(slope.str());
    const auto c = both_stats(corr.str());
    int neighbour_samples = 0;
    for (int id = 0; id < 21; ++id) {
        if (id != 3) {
            // isolated coincidences only, far below the 15-sample minimum duration
            CHECK(s.longest[id] <= 1);
            neighbour_samples += s.samples[id];
        }
    }
    CHECK(neighbour_samples < 0.01 * 600 * 20);
    CHECK(s.samples[3] > 0);
    CHECK(c.longest[2] + c.longest[4] >= 20);
    CHECK(c.samples[2] > 0);
    CHECK(c.samples[4] > 0);
}

TEST_CASE("trace of a fixation has only empty metric cells") {
    Scenario s;
    s.layout = dialplate_layout(6);
    std::ostringstream out;
    cli::cmd_trace(s, DetectorConfig::defaults(Method::correlation), out);
    const auto rows = csv(out.str());
    for (std::size_t i = 1; i < rows.size(); ++i) {
        for (int col = 2; col <= 5; ++col) {
            CHECK(rows[i][col].empty());
        }
        CHECK(rows[i][8] == "0");
    }
}

TEST_CASE("replay of a generated log reproduces the scenario events") {
    Scenario s = ideal20();
    s.duration_s = 10.0;
    s.schedule = {{3, 0.0, 4.0}, {std::nullopt, 4.0, 5.0}, {11, 5.0, 10.0}};
    s.gaze.noise_sigma = 1.0;
    s.seed = 5;
    std::stringstream log;
    cli::cmd_gaze(s, log);
    const auto samples = read_gaze_log(log);
    for (Method m : {Method::slope, Method::correlation}) {
        const auto cfg = DetectorConfig::defaults(m);
        const auto expected = run_scenario(s, {cfg}).methods[0].run;
        std::ostringstream ev1, ev2, tr1, tr2;
        const auto a = cli::cmd_replay(samples, s.layout, cfg, ev1, &tr1);
        const auto b = cli::cmd_replay(samples, s.layout, cfg, ev2, &tr2);
        CHECK(a.events == expected.events);
        CHECK(ev1.str() == ev2.str());
        CHECK(tr1.str() == tr2.str());
    }
}

TEST_CASE("layout command") {
    std::ostringstream out;
    cli::cmd_layout(dialplate_layout(6), 0.0, out);
    const auto rows = csv(out.str());
    REQUIRE(rows.size() == 8);
    CHECK(rows[1] == std::vector<std::string>{"0", "0", "1090", "540", "130", "2.5", "0", "cw"});
    CHECK(rows[7][1] == "CANCEL");
    CHECK(rows[7][2] == "1040");
    CHECK(rows[7][7] == "ccw");
}
