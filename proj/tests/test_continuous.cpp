#include "doctest.h"

#include <cmath>
#include <random>

#include "mondyn/continuous.hpp"
#include "mondyn/error.hpp"

using namespace mondyn;

namespace {
Game discussion() { return Game({{3, 0, 0}, {0, 3, 0}, {2, 2, 1}}); }
}  // namespace

TEST_CASE("vector field") {
    const auto rep = GrowthRule::replicator();
    const Game constant({{1, 1}, {1, 1}});
    const auto half = MixedStrategy::uniform(2);
    for (double v : vector_field(rep, constant, half, half)) CHECK(v == 0.0);
    const Game tilted({{1, 1}, {0, 0}});
    const auto dx = vector_field(rep, tilted, half, half);
    CHECK(dx[0] == doctest::Approx(0.25));
    CHECK(dx[1] == doctest::Approx(-0.25));
    const auto e1 = MixedStrategy::vertex(3, 0);
    for (double v : vector_field(rep, discussion(), e1, e1)) CHECK(v == 0.0);
    const auto fast = vector_field(rep.with_speed(Speed::constant(2.0)), tilted, half, half);
    CHECK(fast[0] == 2.0 * dx[0]);
}

TEST_CASE("two-strategy closed form") {
    IntegratorSettings s;
    s.t_max = 5.0;
    s.dt = 1e-3;
    const auto x0 = MixedStrategy::from({0.3, 0.7});
    const auto tr = integrate(GrowthRule::replicator(), Game({{1, 1}, {0, 0}}), x0, opponent::SelfPlay{}, s);
    const auto& z = tr.log_states.back();
    CHECK(tr.times.back() == 5.0);
    CHECK(z[0] - z[1] - std::log(0.3 / 0.7) == doctest::Approx(5.0).epsilon(1e-6));
}

TEST_CASE("vertex start is a rest point") {
    IntegratorSettings s;
    s.t_max = 1.0;
    const auto tr = integrate(GrowthRule::replicator(), discussion(), MixedStrategy::vertex(3, 1), opponent::SelfPlay{}, s);
    for (const auto& x : tr.states) CHECK(x == MixedStrategy::vertex(3, 1));
}

TEST_CASE("dominated mixture dies in the discussion game") {
    IntegratorSettings s;
    s.t_max = 200.0;
    const auto tr = integrate(GrowthRule::replicator(), discussion(), MixedStrategy::from({0.4, 0.4, 0.2}),
                              opponent::SelfPlay{}, s);
    const auto& x = tr.states.back();
    CHECK(x[0] * x[1] < 1e-8);
    CHECK(tr.meta.max_sum_drift < 1e-10);
}

TEST_CASE("sampling grid") {
    IntegratorSettings s;
    s.t_max = 1.05;
    s.dt = 0.01;
    s.sample_every = 10;
    const auto tr = integrate(GrowthRule::replicator(), discussion(), MixedStrategy::uniform(3), opponent::SelfPlay{}, s);
    CHECK(tr.times.front() == 0.0);
    CHECK(tr.times.back() == doctest::Approx(1.05));
    CHECK(tr.size() == 12);
    CHECK(tr.meta.steps == 105);
}

TEST_CASE("bad settings and mismatched inputs") {
    IntegratorSettings s;
    s.dt = 0.0;
    CHECK_THROWS_AS(integrate(GrowthRule::replicator(), discussion(), MixedStrategy::uniform(3), opponent::SelfPlay{}, s),
                    InvalidArgument);
    CHECK_THROWS_AS(integrate(GrowthRule::replicator(), Game({{1, 2, 3}, {4, 5, 6}}), MixedStrategy::uniform(2),
                              opponent::SelfPlay{}),
                    InvalidArgument);
    CHECK_THROWS_AS(integrate(GrowthRule::replicator(), discussion(), MixedStrategy::uniform(2), opponent::SelfPlay{}),
                    InvalidArgument);
}

TEST_CASE("link domain violation carries the time") {
    IntegratorSettings s;
    s.t_max = 1.0;
    const auto rule = GrowthRule::payoff_functional(LinkFunction::sqrt().on(0.5, 3));
    try {
        integrate(rule, discussion(), MixedStrategy::from({0.05, 0.05, 0.9}), opponent::SelfPlay{}, s);
        FAIL("expected a numerical failure");
    } catch (const NumericalFailure& e) {
        REQUIRE(e.time());
        CHECK(*e.time() == 0.0);
    }
}

TEST_CASE("schedule evaluation") {
    const auto sch = Schedule::alternating(10.0);
    CHECK(eval_schedule(sch, 0.0) == MixedStrategy::vertex(2, 0));
    CHECK(eval_schedule(sch, 9.5)[0] == doctest::Approx(0.5));
    CHECK(eval_schedule(sch, 23.0) == MixedStrategy::vertex(2, 0));
    CHECK(eval_schedule(sch, 15.0) == MixedStrategy::vertex(2, 1));
    CHECK(eval_schedule(sch, 19.5)[0] == doctest::Approx(0.5));
    CHECK_THROWS_AS(eval_schedule(sch, -1.0), InvalidArgument);
    CHECK_THROWS_AS(Schedule(1.0, {{0.5, MixedStrategy::uniform(2)}}), InvalidArgument);
    const auto kinks = sch.kinks_between(0.0, 25.0);
    CHECK(kinks == std::vector<double>{9, 10, 19, 20});
}

TEST_CASE("scripted opponent steps land on breakpoints") {
    const Game g({{1, 0}, {0, 1}});
    IntegratorSettings s;
    s.t_max = 7.25;
    s.dt = 0.1;
    s.sample_every = 1;
    const Schedule sch(2.0, {{0.0, MixedStrategy::vertex(2, 0)}, {0.95, MixedStrategy::vertex(2, 1)}});
    const auto tr = integrate(GrowthRule::replicator(), g, MixedStrategy::uniform(2), opponent::Scripted{sch}, s);
    for (double k : {0.95, 2.0, 2.95, 4.0}) {
        bool hit = false;
        for (double t : tr.times) hit = hit || std::abs(t - k) < 1e-12;
        CAPTURE(k);
        CHECK(hit);
    }
    CHECK(tr.opp_states.size() == tr.size());
}

TEST_CASE("coupled populations") {
    // Matching pennies from both viewpoints: orbits of the replicator conserve
    // ln x1 + ln x2 + ln y1 + ln y2 for the zero-sum game.
    const Game a({{1, -1}, {-1, 1}});
    const Game b({{-1, 1}, {1, -1}});
    IntegratorSettings s;
    s.t_max = 20.0;
    s.dt = 1e-3;
    const auto x0 = MixedStrategy::from({0.7, 0.3});
    const auto y0 = MixedStrategy::from({0.4, 0.6});
    const auto tr = integrate(GrowthRule::replicator(), a, x0, opponent::Coupled{b, GrowthRule::replicator(), y0}, s);
    auto h = [](const MixedStrategy& x, const MixedStrategy& y) {
        return std::log(x[0]) + std::log(x[1]) + std::log(y[0]) + std::log(y[1]);
    };
    CHECK(h(tr.states.back(), tr.opp_states.back()) == doctest::Approx(h(x0, y0)).epsilon(1e-8));
    CHECK_THROWS_AS(integrate(GrowthRule::replicator(), a, x0, opponent::Coupled{b, GrowthRule::replicator(),
                                                                                 MixedStrategy::uniform(3)}),
                    InvalidArgument);
}

TEST_CASE("property: simplex and face invariance on random runs") {
    std::mt19937_64 rng(23);
    std::uniform_real_distribution<double> u(-3, 3), w(0, 1);
    std::bernoulli_distribution zero(0.3);
    for (int run = 0; run < 100; ++run) {
        std::vector<std::vector<double>> a(4, std::vector<double>(4));
        for (auto& r : a)
            for (auto& e : r) e = u(rng);
        std::vector<double> x(4);
        for (auto& e : x) e = zero(rng) ? 0.0 : w(rng) + 1e-3;
        if (x[0] + x[1] + x[2] + x[3] == 0.0) x[0] = 1.0;
        const auto x0 = MixedStrategy::normalized(x);
        IntegratorSettings s;
        s.t_max = 5.0;
        s.dt = 1e-2;
        s.sample_every = 50;
        const auto tr = integrate(GrowthRule::replicator(), Game(a), x0, opponent::SelfPlay{}, s);
        CHECK(tr.meta.max_sum_drift < 1e-10);
        for (const auto& st : tr.states) {
            double sum = 0.0;
            for (std::size_t i = 0; i < 4; ++i) {
                sum += st[i];
                if (x0[i] == 0.0) CHECK(st[i] == 0.0);
            }
            CHECK(std::abs(sum - 1.0) <= 1e-9);
        }
    }
}

TEST_CASE("property: constant speed is a time change") {
    IntegratorSettings s;
    s.t_max = 2.0;
    s.dt = 1e-3;
    const auto x0 = MixedStrategy::from({0.2, 0.5, 0.3});
    const auto fast = integrate(GrowthRule::replicator().with_speed(Speed::constant(2.0)), discussion(), x0,
                                opponent::SelfPlay{}, s);
    s.t_max = 4.0;
    const auto slow = integrate(GrowthRule::replicator(), discussion(), x0, opponent::SelfPlay{}, s);
    for (std::size_t i = 0; i < 3; ++i) CHECK(fast.states.back()[i] == doctest::Approx(slow.states.back()[i]).epsilon(1e-6));
}

TEST_CASE("property: identity link reproduces the replicator") {
    IntegratorSettings s;
    s.t_max = 3.0;
    const auto x0 = MixedStrategy::from({0.2, 0.5, 0.3});
    const auto rep = integrate(GrowthRule::replicator(), discussion(), x0, opponent::SelfPlay{}, s);
    const auto lin = integrate(GrowthRule::payoff_functional(LinkFunction::linear()), discussion(), x0,
                               opponent::SelfPlay{}, s);
    for (std::size_t i = 0; i < 3; ++i) CHECK(rep.states.back()[i] == doctest::Approx(lin.states.back()[i]).epsilon(1e-12));
}
