#include "doctest.h"

#include <cmath>
#include <random>

#include "mondyn/dominance.hpp"
#include "mondyn/error.hpp"
#include "mondyn/experiments.hpp"
#include "mondyn/scenarios.hpp"

using namespace mondyn;

TEST_CASE("survival construction for sqrt spans the box") {
    const auto con = build_survival(LinkFunction::sqrt(), SurvivalVariant::nonconvex, {1, 9});
    CHECK(con.a == doctest::Approx(1.0));
    CHECK(con.b == doctest::Approx(9.0));
    CHECK(con.eps == doctest::Approx(0.5).epsilon(1e-6));
    // (sqrt 1 + sqrt 9)/2 = 2 < sqrt(4.5)
    CHECK(con.alpha == doctest::Approx(std::sqrt(4.5) - 2.0).epsilon(1e-6));
    CHECK(con.game.rows() == 3);
    CHECK(con.game.cols() == 2);
    CHECK(con.game.at(1, 0) == doctest::Approx(4.5));
    CHECK(con.game.row_labels() == std::vector<std::string>{"T", "M", "B"});
    CHECK(con.margin == doctest::Approx(0.5).epsilon(1e-6));
    CHECK(con.T > (2 * con.Cf + 1) / con.alpha + 1);
    CHECK(con.T == std::floor(con.T));

    const auto r = find_dominator(con.game, MixedStrategy::vertex(3, 1), full_set(3), full_set(2), DominatorKind::mixed);
    CHECK(r.dominated);
}

TEST_CASE("linear link admits no survival construction") {
    for (auto v : {SurvivalVariant::nonconvex, SurvivalVariant::nonconcave}) {
        try {
            build_survival(LinkFunction::linear(), v, {1, 9});
            FAIL("expected Infeasible");
        } catch (const Infeasible& e) {
            const std::string msg = e.what();
            const char* want = v == SurvivalVariant::nonconvex ? "no convexity" : "no concavity";
            const bool named = msg.find(want) != std::string::npos;
            CHECK(named);
        }
    }
    CHECK_THROWS_AS(build_survival(LinkFunction::sqrt(), SurvivalVariant::nonconcave, {1, 9}), Infeasible);
    CHECK_THROWS_AS(build_survival(LinkFunction::power(2), SurvivalVariant::nonconvex, {0, 3}), Infeasible);
}

TEST_CASE("nonconcave construction for u^2") {
    const auto con = build_survival(LinkFunction::power(2), SurvivalVariant::nonconcave, {0, 3});
    CHECK(con.a == doctest::Approx(0.0));
    CHECK(con.b == doctest::Approx(3.0));
    CHECK(std::pow(1.5 + con.eps, 2) < 4.5);
    CHECK(con.alpha > 0.0);
    // M dominates the T/B mixture.
    const auto half = MixedStrategy::from({0.5, 0, 0.5});
    CHECK(strict_margin(con.game, MixedStrategy::vertex(3, 1), half, full_set(2)) == doctest::Approx(con.eps));

    const auto manual = make_survival(LinkFunction::power(2), SurvivalVariant::nonconcave, 0, 3, 0.5);
    CHECK(manual.eps == 0.5);
    CHECK_THROWS_AS(make_survival(LinkFunction::power(2), SurvivalVariant::nonconcave, 0, 3, 1.4), Infeasible);
    CHECK_THROWS_AS(make_survival(LinkFunction::sqrt(), SurvivalVariant::nonconvex, 9, 1, 0.5), InvalidArgument);
}

TEST_CASE("dual RPS construction for the exponential link") {
    const auto con = make_rps4(LinkFunction::exponential(1), Rps4Variant::dual, 1, 2, -2, 0.1, 0.1);
    CHECK(con.m == doctest::Approx(1.0 / 3.0));
    CHECK(con.game.rows() == 4);
    CHECK(con.game.at(3, 3) == doctest::Approx(1.0 / 3.0));
    CHECK(con.game.at(0, 3) == doctest::Approx(1.0 / 3.0 - 0.1));
    CHECK(con.game.at(3, 0) == doctest::Approx(1.0 / 3.0 + 0.1));

    const auto built = build_rps4(LinkFunction::exponential(1), Rps4Variant::dual, {-2, 2});
    CHECK(built.c < built.a);
    CHECK(built.a < built.b);
    CHECK(built.a > 0.5 * (built.b + built.c));
    CHECK(std::exp(built.a) < 0.5 * (std::exp(built.b) + std::exp(built.c)));
    CHECK(built.margin > 0.0);
}

TEST_CASE("Hofbauer-Weibull construction") {
    CHECK_THROWS_AS(build_rps4(LinkFunction::linear(), Rps4Variant::hofbauer_weibull, {0.01, 20}), Infeasible);
    const auto con = build_rps4(LinkFunction::sqrt(), Rps4Variant::hofbauer_weibull, {0.01, 20});
    CHECK(con.c < con.a);
    CHECK(con.a < con.b);
    CHECK(con.a < 0.5 * (con.b + con.c));
    CHECK(std::sqrt(con.a) > 0.5 * (std::sqrt(con.b) + std::sqrt(con.c)));
    CHECK(con.m > con.a + con.beta);
    const auto r = find_dominator(con.game, MixedStrategy::vertex(4, 3), full_set(4), full_set(4), DominatorKind::mixed);
    CHECK(r.dominated);
    // Replicator mode rejects the same triple.
    CHECK_THROWS_AS(make_rps4(LinkFunction::linear(), Rps4Variant::hofbauer_weibull, con.a, con.b, con.c, con.beta,
                              con.gamma),
                    Infeasible);
}

TEST_CASE("basin K membership and sampling") {
    const BasinK k30(1.0 / 30.0, 0.05);
    const double s = 1.0 - 0.025;
    CHECK_FALSE(k30.contains(MixedStrategy::normalized({s / 3, s / 3, s / 3, 0.025})));

    const BasinK k(0.02, 0.05);
    CHECK(k.contains(MixedStrategy::from({0.6, 0.3, 0.08, 0.02})));
    for (std::size_t i = 0; i < 3; ++i) CHECK(k.contains(MixedStrategy::vertex(4, i)));
    CHECK_FALSE(k.contains(MixedStrategy::from({0.6, 0.3, 0.0, 0.1})));

    std::mt19937_64 rng(7);
    for (int n = 0; n < 200; ++n) {
        const auto x = k.sample(rng);
        CHECK(k.contains(x));
        CHECK(x[3] == doctest::Approx(0.025));
        CHECK(x[0] * x[1] * x[2] == doctest::Approx(0.01).epsilon(1e-9));
    }
    CHECK_THROWS_AS(BasinK(1.0 / 27.0, 0.05), InvalidArgument);
    CHECK_THROWS_AS(BasinK(0.01, 1.0), InvalidArgument);
}

TEST_CASE("named games") {
    CHECK(paper_game("discussion-3x3") == Game({{3, 0, 0}, {0, 3, 0}, {2, 2, 1}}));
    CHECK(paper_game("rps-base(1,2,-2)") == Game({{1, -2, 2}, {2, 1, -2}, {-2, 2, 1}}));
    CHECK(paper_game("rps-base(0,0,0)") == Game({{0, 0, 0}, {0, 0, 0}, {0, 0, 0}}));
    CHECK_THROWS_AS(paper_game("prisoners"), InvalidArgument);
}

TEST_CASE("scenario catalogue") {
    CHECK(scenario_names().size() == 7);
    CHECK_THROWS_AS(run_scenario("nope"), InvalidArgument);
    CHECK_THROWS_AS(run_scenario("survival-nonconvex", {.link = "linear:1,0"}), Infeasible);

    const auto r = run_scenario("discussion");
    CHECK(r.ok());
    CHECK(r.link == "linear:1,0");
    REQUIRE(r.find("min support < 1e-8"));
    CHECK(r.find("min support < 1e-8")->passed);
    CHECK(r.find("no such check") == nullptr);
    REQUIRE(r.trajectory);
}

TEST_CASE("discrete drift changes sign at the threshold") {
    const auto con = build_survival(LinkFunction::logarithm(), SurvivalVariant::nonconvex, {1, 30});
    const auto rule = GrowthRule::replicator();
    CHECK(discrete_period_drift(con, rule, 0.0) < 0.0);
    CHECK(discrete_period_drift(con, rule, 1e6) > 0.0);
    const auto cbar = find_background_threshold(con, rule, 0.0);
    REQUIRE(cbar);
    CHECK(discrete_period_drift(con, rule, *cbar * 0.99) <= 0.0);
    CHECK(discrete_period_drift(con, rule, *cbar * 1.01) > 0.0);
}
