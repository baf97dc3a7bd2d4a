// Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any fail.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "mondyn/continuous.hpp"
#include "mondyn/diagnostics.hpp"
#include "mondyn/discrete.hpp"
#include "mondyn/dominance.hpp"
#include "mondyn/experiments.hpp"
#include "mondyn/link.hpp"
#include "mondyn/scenarios.hpp"

using namespace mondyn;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

std::string fmt(const char* f, auto... args) {
    char buf[512];
    std::snprintf(buf, sizeof buf, f, args...);
    return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// Collects the names of failed checks of a report.
std::string failures(const ScenarioReport& r) {
    std::string out;
    for (const auto* list : {&r.certificates, &r.expectations})
        for (const auto& c : *list)
            if (!c.passed) out += (out.empty() ? "" : "; ") + c.name + fmt(" (%.6g)", c.value);
    return out;
}

double check_value(const ScenarioReport& r, const char* name) {
    const Check* c = r.find(name);
    return c ? c->value : NAN;
}

bool check_passed(const ScenarioReport& r, const char* name) {
    const Check* c = r.find(name);
    return c && c->passed;
}

Outcome discussion_bound() {
    const auto t0 = std::chrono::steady_clock::now();
    const auto r = run_scenario("discussion");
    const double elapsed = seconds_since(t0);
    const bool ok = r.ok() && check_passed(r, "w(t_max) - w(0) >= margin * t_max * (1 - 1e-3)") &&
                    check_passed(r, "min support < 1e-8") && check_passed(r, "e3 beats (1/2,1/2,0) by 0.5") &&
                    elapsed < 2.0;
    return {ok, fmt("dw=%.6g min_support=%.3g t=%.2fs%s", check_value(r, "w(t_max) - w(0) >= margin * t_max * (1 - 1e-3)"),
                    check_value(r, "min support < 1e-8"), elapsed, ok ? "" : (" " + failures(r)).c_str())};
}

Outcome survival_nonconvex() {
    const auto t0 = std::chrono::steady_clock::now();
    const auto r = run_scenario("survival-nonconvex", {.link = "sqrt"});
    const double elapsed = seconds_since(t0);
    const bool ok = r.ok() && check_passed(r, "x_M final > 0.99") && elapsed < 5.0;
    return {ok, fmt("x_M=%.6g t=%.2fs %s", check_value(r, "x_M final > 0.99"), elapsed, failures(r).c_str())};
}

Outcome survival_nonconcave() {
    const auto r = run_scenario("survival-nonconcave", {.link = "pow:2"});
    const bool ok = r.ok() && check_passed(r, "x_M final < 1e-4") && check_passed(r, "periodic floor x_T*x_B > 0.01") &&
                    check_passed(r, "late max x_T*x_B in [0.235, 0.25]");
    return {ok, fmt("x_M=%.3g floor=%.4g max=%.4g %s", check_value(r, "x_M final < 1e-4"),
                    check_value(r, "periodic floor x_T*x_B > 0.01"), check_value(r, "late max x_T*x_B in [0.235, 0.25]"),
                    failures(r).c_str())};
}

Outcome dual_scenario() {
    const auto r = run_scenario("dual-4x4", {.link = "exp:1"});
    const bool ok = r.ok() && check_passed(r, "Taylor sign fraction = 1 at radius 0.01") &&
                    check_passed(r, "x4 final < 1e-4 and last-quarter min x1x2x3 > 1e-3 for all runs") &&
                    check_value(r, "x4 final < 1e-4 and last-quarter min x1x2x3 > 1e-3 for all runs") >= 10;
    return {ok, fmt("good runs=%g/10 taylor=%.3g %s",
                    check_value(r, "x4 final < 1e-4 and last-quarter min x1x2x3 > 1e-3 for all runs"),
                    check_value(r, "Taylor sign fraction = 1 at radius 0.01"), failures(r).c_str())};
}

Outcome hw_scenario() {
    const auto r = run_scenario("hw-4x4", {.link = "sqrt"});
    const bool ok = r.ok() && check_passed(r, "strategy 4 strictly dominated (LP margin > 0)") &&
                    check_passed(r, "x4 last-quarter min > 1e-3 for >= 8 of 10 runs");
    return {ok, fmt("LP margin=%.4g surviving runs=%g/10 %s", check_value(r, "strategy 4 strictly dominated (LP margin > 0)"),
                    check_value(r, "x4 last-quarter min > 1e-3 for >= 8 of 10 runs"), failures(r).c_str())};
}

Outcome prop4_threshold() {
    const auto r = run_scenario("prop4-threshold", {.link = "linear:1,0"});
    const bool ok = r.ok() && check_passed(r, "C = 0: M verdict survived") &&
                    check_passed(r, "finite threshold C-bar found") && check_passed(r, "C = 1e6: M verdict eliminated");
    return {ok, fmt("C-bar=%.6g C=1e6 final=%.3g %s", check_value(r, "finite threshold C-bar found"),
                    check_value(r, "C = 1e6: M verdict eliminated"), failures(r).c_str())};
}

Outcome prop5_schedules() {
    const auto r = run_scenario("prop5-schedules", {.link = "linear:1,0"});
    const bool ok = r.ok() && check_passed(r, "C_n = n+1: M verdict eliminated") &&
                    check_passed(r, "C_n = n+1: min support < 1e-4") && check_passed(r, "C_n = 2^n: M verdict survived") &&
                    check_passed(r, "C_n = 2^n: |w(n_max) - w(n_max/10)| < 0.05");
    return {ok, fmt("affine min=%.3g geometric floor=%.4g |dw|=%.3g %s", check_value(r, "C_n = n+1: min support < 1e-4"),
                    check_value(r, "C_n = 2^n: M verdict survived"),
                    check_value(r, "C_n = 2^n: |w(n_max) - w(n_max/10)| < 0.05"), failures(r).c_str())};
}

// All mixtures of n strategies with denominator <= d_max.
std::vector<MixedStrategy> rational_grid(std::size_t n, int d_max) {
    std::vector<MixedStrategy> out;
    std::vector<int> k(n);
    std::function<void(std::size_t, int, int)> rec = [&](std::size_t i, int left, int d) {
        if (i + 1 == n) {
            k[i] = left;
            std::vector<double> w(n);
            for (std::size_t j = 0; j < n; ++j) w[j] = static_cast<double>(k[j]) / d;
            out.push_back(MixedStrategy::normalized(std::move(w)));
            return;
        }
        for (int v = 0; v <= left; ++v) {
            k[i] = v;
            rec(i + 1, left - v, d);
        }
    };
    for (int d = 1; d <= d_max; ++d) rec(0, d, d);
    return out;
}

Outcome dominance_oracle() {
    const auto t0 = std::chrono::steady_clock::now();
    const auto grid = rational_grid(4, 20);
    const IndexSet all = full_set(4);
    std::mt19937_64 rng(0);
    std::uniform_int_distribution<int> entry(0, 9);
    int disagreements = 0, dominated = 0, checked = 0;
    for (int g = 0; g < 500; ++g) {
        std::vector<std::vector<double>> a(4, std::vector<double>(4));
        for (auto& row : a)
            for (auto& v : row) v = entry(rng);
        const Game game(a);
        std::vector<MixedStrategy> qs;
        for (std::size_t i = 0; i < 4; ++i) qs.push_back(MixedStrategy::vertex(4, i));
        qs.push_back(grid[rng() % grid.size()]);
        for (const auto& q : qs) {
            ++checked;
            double best = -INFINITY;
            for (const auto& p : grid) best = std::max(best, strict_margin(game, p, q, all));
            const auto lp = find_dominator(game, q, all, all, DominatorKind::mixed);
            bool ok = lp.margin >= best - 1e-9;
            if (lp.margin > 1e-6) {
                ++dominated;
                ok = ok && lp.dominated && lp.dominator &&
                     std::abs(strict_margin(game, *lp.dominator, q, all) - lp.margin) <= 1e-9;
            }
            if (best > 1e-9) ok = ok && lp.dominated;
            if (!ok) ++disagreements;
        }
    }
    const double elapsed = seconds_since(t0);
    return {disagreements == 0 && elapsed < 30.0,
            fmt("%d cases, %d dominated, %d disagreements, grid %zu points, t=%.2fs", checked, dominated, disagreements,
                grid.size(), elapsed)};
}

double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

Outcome integrator_properties() {
    // Step halving.
    const Game g6({{3, 0, 0}, {0, 3, 0}, {2, 2, 1}});
    std::vector<double> finals[3];
    const double dts[3] = {4e-3, 2e-3, 1e-3};
    for (int k = 0; k < 3; ++k) {
        IntegratorSettings s{.dt = dts[k], .t_max = 2.0, .sample_every = 1000000};
        finals[k] = integrate(GrowthRule::replicator(), g6, MixedStrategy::from({0.45, 0.5, 0.05}), opponent::SelfPlay{}, s)
                        .states.back()
                        .vec();
    }
    const double ratio = max_abs_diff(finals[0], finals[1]) / max_abs_diff(finals[1], finals[2]);
    const bool halving_ok = ratio >= 8.0 && ratio <= 24.0;

    // Simplex and face invariance.
    std::mt19937_64 rng(1);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    int bad_runs = 0;
    double worst_sum = 0.0, worst_drift = 0.0, worst_field = 0.0;
    const LinkFunction links[] = {LinkFunction::sqrt(), LinkFunction::exponential(1), LinkFunction::power(2)};
    for (int run = 0; run < 100; ++run) {
        const std::size_t n = 3 + rng() % 3;
        std::vector<std::vector<double>> a(n, std::vector<double>(n));
        for (auto& row : a)
            for (auto& v : row) v = 1.0 + 4.0 * u(rng);
        const Game game(a);
        std::vector<double> w(n);
        for (auto& v : w) v = u(rng) < 0.25 ? 0.0 : 0.05 + u(rng);
        w[rng() % n] = 1.0;
        const auto x0 = MixedStrategy::normalized(w);
        const GrowthRule rule =
            run % 4 == 0 ? GrowthRule::replicator() : GrowthRule::payoff_functional(links[run % 3].on(1.0, 5.0));
        IntegratorSettings s{.dt = 1e-3, .t_max = 20.0, .sample_every = 50};
        const auto tr = integrate(rule, game, x0, opponent::SelfPlay{}, s);
        bool ok = true;
        worst_drift = std::max(worst_drift, tr.meta.max_sum_drift);
        for (const auto& x : tr.states) {
            // The field itself is zero-sum.
            const auto v = vector_field(rule, game, x, x);
            double vsum = 0.0, vscale = 0.0;
            for (double d : v) vsum += d, vscale += std::abs(d);
            worst_field = std::max(worst_field, std::abs(vsum) / std::max(1.0, vscale));
            double sum = 0.0;
            for (std::size_t i = 0; i < n; ++i) {
                sum += x[i];
                if (x0[i] == 0.0 && x[i] != 0.0) ok = false;
                if (x[i] < 0.0) ok = false;
            }
            worst_sum = std::max(worst_sum, std::abs(sum - 1.0));
        }
        if (worst_sum > 1e-9 || worst_field > 1e-12) ok = false;
        if (!ok) ++bad_runs;
    }

    // Discrete map in ratio form versus increment form.
    double worst_identity = 0.0;
    for (int k = 0; k < 10000; ++k) {
        const std::size_t n = 2 + rng() % 4;
        std::vector<std::vector<double>> a(n, std::vector<double>(n));
        for (auto& row : a)
            for (auto& v : row) v = 10.0 * u(rng);
        const Game game(a);
        std::vector<double> w(n);
        for (auto& v : w) v = u(rng) + 1e-3;
        const auto x = MixedStrategy::normalized(w);
        const double C = u(rng) < 0.5 ? 0.0 : 100.0 * u(rng);
        const auto rule = k % 2 ? GrowthRule::replicator() : GrowthRule::payoff_functional(LinkFunction::sqrt().on(0, 10));
        const auto next = step(rule, game, x, x, C);
        std::vector<double> payoff(n), gr(n);
        rule.growth_rates(game, x.weights(), payoff, gr);
        double gbar = 0.0;
        for (std::size_t i = 0; i < n; ++i) gbar += x[i] * gr[i];
        for (std::size_t i = 0; i < n; ++i) {
            const double bis = x[i] + x[i] * (gr[i] - gbar) / (C + gbar);
            const double gen = x[i] * (C + gr[i]) / (C + gbar);
            worst_identity = std::max({worst_identity, std::abs(next[i] - bis), std::abs(next[i] - gen)});
        }
    }
    const bool identity_ok = worst_identity <= 1e-12;

    return {halving_ok && bad_runs == 0 && identity_ok,
            fmt("halving ratio=%.3f; invariance failures=%d/100 (max |sum-1|=%.2g, max |sum xdot|=%.2g, "
                "log-scheme step drift=%.2g); discrete identity max err=%.2g",
                ratio, bad_runs, worst_sum, worst_field, worst_drift, worst_identity)};
}

Outcome classifier_suite() {
    std::string detail;
    bool ok = true;
    auto expect = [&](const char* what, const LinkFunction& f, DynamicsLabel want) {
        const auto got = classify_link(f).label;
        if (got != want) {
            ok = false;
            detail += fmt("%s -> %s (want %s); ", what, to_string(got), to_string(want));
        }
    };
    expect("linear [0,10]", LinkFunction::linear().on(0, 10), DynamicsLabel::aggregate_monotonic);
    expect("exp(1) [0,3]", LinkFunction::exponential(1).on(0, 3), DynamicsLabel::convex_monotonic);
    expect("sqrt [1,9]", LinkFunction::sqrt().on(1, 9), DynamicsLabel::concave_monotonic);
    expect("ln(0 + u) [1,9]", discrete_effective_link(LinkFunction::linear().on(1, 9), 0.0),
           DynamicsLabel::concave_monotonic);
    expect("ln(0 + e^u) [0,3]", discrete_effective_link(LinkFunction::exponential(1).on(0, 3), 0.0),
           DynamicsLabel::aggregate_monotonic);

    std::mt19937_64 rng(2);
    std::uniform_real_distribution<double> u(-5.0, 5.0);
    int mismatches = 0;
    for (int k = 0; k < 100; ++k) {
        double v[3] = {u(rng), u(rng), u(rng)};
        std::sort(v, v + 3);
        const double c = v[0], a = v[1], b = v[2];
        const auto rep = rps_direction(std::nullopt, a, b, c, RpsMode::replicator());
        const auto lin = rps_direction(LinkFunction::linear().on(c, b), a, b, c, RpsMode::continuous());
        if (rep != lin) ++mismatches;
    }
    if (mismatches) ok = false;
    return {ok, detail + fmt("5 classifications checked; rps replicator/linear mismatches=%d/100", mismatches)};
}

}  // namespace

int main() {
    struct Criterion {
        const char* name;
        Outcome (*run)();
    };
    const Criterion criteria[] = {
        {"discussion game: w bound and elimination", discussion_bound},
        {"nonconvex survival of a dominated strategy", survival_nonconvex},
        {"nonconcave elimination of a dominating strategy", survival_nonconcave},
        {"dual RPS: dominated strategy vanishes, cycle persists", dual_scenario},
        {"Hofbauer-Weibull RPS: dominated strategy survives", hw_scenario},
        {"discrete map: survival at C=0, elimination at large C", prop4_threshold},
        {"background schedules: divergent vs summable", prop5_schedules},
        {"dominance LP against rational grid", dominance_oracle},
        {"integrator and map properties", integrator_properties},
        {"link classifier suite", classifier_suite},
    };
    int failed = 0, index = 0;
    for (const auto& c : criteria) {
        ++index;
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        if (!o.pass) ++failed;
        std::printf("%s [%d] %s: %s\n", o.pass ? "PASS" : "FAIL", index, c.name, o.detail.c_str());
        std::fflush(stdout);
    }
    std::printf("%d/%d criteria passed\n", index - failed, index);
    return failed == 0 ? 0 : 1;
}
