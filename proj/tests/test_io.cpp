#include "doctest.h"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "mondyn/error.hpp"
#include "mondyn/io.hpp"

using namespace mondyn;
using io::Json;

namespace {

std::string error_of(const Json& j) {
    try {
        io::config_from_json(j);
    } catch (const InvalidArgument& e) {
        return e.what();
    }
    return "";
}

Json base_config() {
    return Json::parse(R"({
        "game": {"payoff": [[3, 0, 0], [0, 3, 0], [2, 2, 1]]},
        "x0": [0.4, 0.4, 0.2],
        "targets": [{"p": [0, 0, 1], "q": [0.5, 0.5, 0]}]
    })");
}

}  // namespace

TEST_CASE("display rounding and non-finite numbers") {
    CHECK(io::round_sig(3.14159265358979) == 3.14159);
    CHECK(io::round_sig(123456789.0) == 123457000.0);
    CHECK(io::round_sig(0.0) == 0.0);
    CHECK(io::number(INFINITY) == "inf");
    CHECK(io::number(-INFINITY) == "-inf");
    CHECK(io::number(NAN) == "nan");
    CHECK(io::number(0.25) == 0.25);
}

TEST_CASE("game JSON round trip preserves payoffs") {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(-10, 10);
    for (int n = 0; n < 50; ++n) {
        std::vector<std::vector<double>> a(3, std::vector<double>(4));
        for (auto& row : a)
            for (auto& v : row) v = u(rng);
        const Game g(a, {"r1", "r2", "r3"}, {});
        const Game back = io::game_from_json(Json::parse(io::game_to_json(g).dump()));
        CHECK(back == g);
        const auto y = MixedStrategy::uniform(4);
        for (std::size_t i = 0; i < 3; ++i) CHECK(payoff_pure(back, i, y) == payoff_pure(g, i, y));
    }
}

TEST_CASE("config parsing") {
    const auto c = io::config_from_json(base_config());
    CHECK(c.game.rows() == 3);
    CHECK(!c.discrete);
    CHECK(c.rule.is_replicator());
    REQUIRE(c.targets.size() == 1);
    CHECK(c.targets[0].p);
    CHECK(c.targets[0].label == "targets[0]");
    CHECK(std::holds_alternative<opponent::SelfPlay>(c.opponent));

    Json j = base_config();
    j["mode"] = "discrete";
    j["rule"] = {{"kind", "payoff-functional"}, {"link", "sqrt"}};
    j["background"] = {{"kind", "geometric"}, {"c0", 1}, {"r", 2}};
    j["iterator"] = {{"n_max", 50}};
    const auto d = io::config_from_json(j);
    CHECK(d.discrete);
    CHECK(d.iterator.n_max == 50);
    CHECK(d.background.kind() == BackgroundFitness::Kind::geometric);
    CHECK(d.rule.link());

    const auto sched = io::schedule_from_json(Json::parse(R"({"alternating": 10})"));
    CHECK(sched.period() == 20);
    const auto f = io::link_from_json(Json::parse(R"({"family": "linear", "alpha": 2, "beta": 1, "domain": [0, 5]})"));
    CHECK(f(2.0) == 5.0);
    CHECK(f.hi() == 5.0);
}

TEST_CASE("config errors name the field") {
    Json j = base_config();
    j["targets"][0]["q"] = {0.5, 0.5};
    CHECK(error_of(j).find("targets[0].q") != std::string::npos);
    CHECK(error_of(j).find("has 2 weights") != std::string::npos);

    j = base_config();
    j["x0"] = {0.5, 0.6, 0.0};
    CHECK(error_of(j).rfind("x0:", 0) == 0);

    j = base_config();
    j.erase("game");
    CHECK(error_of(j).find("missing field 'game'") != std::string::npos);

    j = base_config();
    j["game"]["payoff"][1][2] = "x";
    CHECK(error_of(j).find("game.payoff[1][2]") != std::string::npos);

    j = base_config();
    j["mode"] = "hybrid";
    CHECK(error_of(j).rfind("mode:", 0) == 0);

    j = base_config();
    j["background"] = 0;
    CHECK(error_of(j).rfind("background:", 0) == 0);

    j = base_config();
    j["opponent"] = {{"mode", "scripted"}, {"schedule", {{"alternating", 5}}}};
    CHECK(error_of(j).rfind("opponent.schedule:", 0) == 0);

    j = base_config();
    j["rule"] = {{"kind", "payoff-functional"}};
    CHECK(error_of(j).find("missing field 'link'") != std::string::npos);

    j = base_config();
    j["game"] = {{"payoff", {{1, 0, 0}, {0, 1, 0}}}};
    CHECK(error_of(j).find("self-play needs a square game") != std::string::npos);

    CHECK_THROWS_AS(io::load_config("/nonexistent/run.json"), InvalidArgument);
}

TEST_CASE("game file resolves against the config directory") {
    const auto dir = std::filesystem::temp_directory_path() / "mondyn_test_io";
    std::filesystem::create_directories(dir);
    std::ofstream(dir / "g.json") << R"({"payoff": [[3, 0], [5, 1]]})";
    std::ofstream(dir / "run.json") << R"({"game_file": "g.json", "outputs": {"report": "out.json"}})";
    const auto c = io::load_config(dir / "run.json");
    CHECK(c.game == Game({{3, 0}, {5, 1}}));
    REQUIRE(c.report_path);
    CHECK(*c.report_path == dir / "out.json");
    std::filesystem::remove_all(dir);
}

TEST_CASE("trajectory CSV") {
    Trajectory tr;
    tr.times = {0.0, 0.1};
    tr.states = {MixedStrategy::from({0.5, 0.5}), MixedStrategy::from({0.1, 0.9})};
    tr.opp_states = {MixedStrategy::from({1.0}), MixedStrategy::from({1.0})};
    std::ostringstream out;
    io::write_trajectory_csv(out, tr, {.w = {0.0, 1.0}});
    std::istringstream in(out.str());
    std::string header, row0, row1;
    std::getline(in, header);
    std::getline(in, row0);
    std::getline(in, row1);
    CHECK(header == "t,x1,x2,y1,w");
    CHECK(row0 == "0,0.5,0.5,1,0");
    CHECK(row1 == "0.10000000000000001,0.10000000000000001,0.90000000000000002,1,1");
}

TEST_CASE("verdict JSON carries display and raw values") {
    Verdict v;
    v.status = VerdictStatus::eliminated;
    v.metric_final = 1.234567891e-9;
    v.metric_trend = -INFINITY;
    v.metric_floor = 1.234567891e-9;
    v.witness = "min_support<1e-06";
    const Json j = io::verdict_to_json(v);
    CHECK(j["status"] == "eliminated");
    CHECK(j["metric_final"] == 1.23457e-9);
    CHECK(j["metric_trend"] == "-inf");
    CHECK(j["raw"]["metric_final"] == 1.234567891e-9);
}
