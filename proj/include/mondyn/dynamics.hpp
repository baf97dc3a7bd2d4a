#pragma once

#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "mondyn/game.hpp"
#include "mondyn/link.hpp"

namespace mondyn {

// Speed factor lambda of speed-scaled payoff-functional dynamics. The table
// form interpolates over the focal population's mean payoff x·U(y) and is
// held constant outside its knots.
class Speed {
public:
    static Speed constant(double v);
    static Speed table(std::vector<double> mean_payoff_knots, std::vector<double> values);

    bool is_constant() const { return knots_.empty(); }
    double value() const { return value_; }
    const std::vector<double>& knots() const { return knots_; }
    const std::vector<double>& values() const { return values_; }

    double at(double mean_payoff) const;

private:
    double value_ = 1.0;
    std::vector<double> knots_;
    std::vector<double> values_;
};

// Growth rates g_i = f(U_i(y)), optionally scaled by a speed factor.
class GrowthRule {
public:
    static GrowthRule replicator();
    static GrowthRule payoff_functional(LinkFunction f);
    GrowthRule with_speed(Speed s) const;

    bool is_replicator() const { return !link_; }
    const std::optional<LinkFunction>& link() const { return link_; }
    const Speed& speed() const { return speed_; }

    double fitness(double payoff) const { return link_ ? (*link_)(payoff) : payoff; }
    // g_i for every row of game against y; payoff scratch has rows() entries.
    void growth_rates(const Game& game, std::span<const double> y, std::span<double> payoff,
                      std::span<double> g) const;

    std::string describe() const;

private:
    std::optional<LinkFunction> link_;
    Speed speed_ = Speed::constant(1.0);
};

// Periodic piecewise-linear opponent strategy.
class Schedule {
public:
    struct Breakpoint {
        double t = 0.0;
        MixedStrategy y;
    };

    // Breakpoints start at 0, strictly increase, and lie in [0, period]. The
    // last segment joins the final breakpoint back to the first one at t =
    // period; a breakpoint placed at t = period must equal the first.
    Schedule(double period, std::vector<Breakpoint> breakpoints);

    // The 2T-periodic left/right schedule: y_L = 1 on [0, T-1], 0 on
    // [T, 2T-1], linear in between.
    static Schedule alternating(double T);

    double period() const { return period_; }
    const std::vector<Breakpoint>& breakpoints() const { return points_; }
    std::size_t dimension() const { return points_.front().y.size(); }

    MixedStrategy at(double t) const;
    void eval_into(double t, std::span<double> out) const;
    // Breakpoint times (all periods) strictly inside (t0, t1), ascending.
    std::vector<double> kinks_between(double t0, double t1) const;

private:
    double period_;
    std::vector<Breakpoint> points_;
};

MixedStrategy eval_schedule(const Schedule& s, double t);

namespace opponent {
// y(t) = x(t); requires a square game.
struct SelfPlay {};
// A second population evolving under its own game and rule. opponent_game is
// from the opponent's viewpoint: rows are its strategies, columns the focal
// player's.
struct Coupled {
    Game opponent_game;
    GrowthRule opponent_rule;
    MixedStrategy y0;
};
struct Scripted {
    Schedule schedule;
};
}  // namespace opponent

using OpponentModel = std::variant<opponent::SelfPlay, opponent::Coupled, opponent::Scripted>;

std::string describe(const OpponentModel& opp);

struct TrajectoryMeta {
    bool discrete = false;
    double dt = 0.0;  // 1 for discrete runs
    std::string rule;
    std::string opponent;
    std::string game_digest;
    std::size_t steps = 0;
    // Largest |sum_i x_i - 1| seen before renormalization.
    double max_sum_drift = 0.0;
};

struct Trajectory {
    std::vector<double> times;
    std::vector<MixedStrategy> states;
    // ln x_i per sample; -inf on coordinates outside the initial support.
    // Kept separately because x_i may underflow long before ln x_i does.
    std::vector<std::vector<double>> log_states;
    // Empty under self-play.
    std::vector<MixedStrategy> opp_states;
    TrajectoryMeta meta;

    std::size_t size() const { return times.size(); }
    bool has_opponent() const { return !opp_states.empty(); }
};

}  // namespace mondyn
