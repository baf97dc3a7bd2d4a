#include "mondyn/discrete.hpp"

#include <cmath>
#include <cstdio>
#include <limits>

#include "mondyn/error.hpp"
#include "population.hpp"

namespace mondyn {

BackgroundFitness BackgroundFitness::constant(double C) {
    if (std::isnan(C)) throw InvalidArgument("background fitness is NaN");
    BackgroundFitness b;
    b.kind_ = Kind::constant;
    b.c0_ = C;
    return b;
}

BackgroundFitness BackgroundFitness::affine(double c0, double c1) {
    if (!std::isfinite(c0) || !std::isfinite(c1) || c1 < 0.0)
        throw InvalidArgument("affine background fitness needs finite c0 and c1 >= 0");
    BackgroundFitness b;
    b.kind_ = Kind::affine;
    b.c0_ = c0;
    b.c1_ = c1;
    return b;
}

BackgroundFitness BackgroundFitness::geometric(double c0, double r) {
    if (!(c0 > 0.0) || !(r > 0.0) || !std::isfinite(c0) || !std::isfinite(r))
        throw InvalidArgument("geometric background fitness needs c0 > 0 and r > 0");
    BackgroundFitness b;
    b.kind_ = Kind::geometric;
    b.c0_ = c0;
    b.c1_ = r;
    return b;
}

double BackgroundFitness::at(std::uint64_t n) const {
    const double nd = static_cast<double>(n);
    switch (kind_) {
        case Kind::constant: return c0_;
        case Kind::affine: return c0_ + c1_ * nd;
        case Kind::geometric: return c0_ * std::pow(c1_, nd);
    }
    return c0_;
}

bool BackgroundFitness::diverges() const {
    switch (kind_) {
        case Kind::constant: return std::isfinite(c0_);
        case Kind::affine: return true;
        case Kind::geometric: return c1_ <= 1.0;
    }
    return true;
}

std::string BackgroundFitness::describe() const {
    char buf[96];
    switch (kind_) {
        case Kind::constant: std::snprintf(buf, sizeof buf, "C=%.17g", c0_); break;
        case Kind::affine: std::snprintf(buf, sizeof buf, "C_n=%.17g+%.17g*n", c0_, c1_); break;
        case Kind::geometric: std::snprintf(buf, sizeof buf, "C_n=%.17g*%.17g^n", c0_, c1_); break;
    }
    return buf;
}

namespace {

using detail::Population;

// ln(x'_i / x_i) = log1p((g_i - gbar) / (C + gbar)) on the support.
void log_factors(Population& pop, const std::vector<double>& x, const std::vector<double>& y, double C,
                 std::vector<double>& out) {
    pop.rule->growth_rates(*pop.game, y, pop.payoff, pop.g);
    double gbar = 0.0;
    for (std::size_t i : pop.support) {
        if (!(C + pop.g[i] > 0.0)) {
            char buf[128];
            std::snprintf(buf, sizeof buf, "C + g_%zu = %.6g is not positive", i + 1, C + pop.g[i]);
            throw NumericalFailure(buf);
        }
        gbar += x[i] * pop.g[i];
    }
    const double denom = C + gbar;
    for (std::size_t i : pop.support) out[i] = std::isinf(C) ? 0.0 : std::log1p((pop.g[i] - gbar) / denom);
}

}  // namespace

MixedStrategy step(const GrowthRule& rule, const Game& game, const MixedStrategy& x, const MixedStrategy& y, double C) {
    if (x.size() != game.rows()) throw InvalidArgument("x has wrong dimension");
    if (y.size() != game.cols()) throw InvalidArgument("y has wrong dimension");
    if (std::isnan(C)) throw InvalidArgument("background fitness is NaN");
    Population pop(game, rule, x);
    std::vector<double> payoff(game.rows()), g(game.rows());
    rule.growth_rates(game, y.weights(), payoff, g);
    double gbar = 0.0;
    for (std::size_t i : pop.support) {
        if (!(C + g[i] > 0.0)) {
            char buf[128];
            std::snprintf(buf, sizeof buf, "C + g_%zu = %.6g is not positive", i + 1, C + g[i]);
            throw NumericalFailure(buf);
        }
        gbar += x[i] * g[i];
    }
    std::vector<double> out(x.size(), 0.0);
    double sum = 0.0;
    for (std::size_t i : pop.support) {
        out[i] = std::isinf(C) ? x[i] : x[i] * (1.0 + (g[i] - gbar) / (C + gbar));
        sum += out[i];
    }
    if (std::abs(sum - 1.0) > 1e-12) throw NumericalFailure("discrete step lost normalization");
    return MixedStrategy::normalized(std::move(out));
}

double discrete_w_increment(const GrowthRule& rule, const Game& game, const MixedStrategy& x, const MixedStrategy& y,
                            double C, const MixedStrategy& p, const MixedStrategy& q) {
    if (x.size() != game.rows() || p.size() != game.rows() || q.size() != game.rows())
        throw InvalidArgument("strategy dimension does not match the game's rows");
    if (y.size() != game.cols()) throw InvalidArgument("y has wrong dimension");
    Population pop(game, rule, x);
    std::vector<double> xv = x.vec(), yv = y.vec(), dz(x.size(), 0.0);
    log_factors(pop, xv, yv, C, dz);
    double dw = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double c = p[i] - q[i];
        if (c == 0.0) continue;
        if (x[i] == 0.0) throw InvalidArgument("w increment needs x interior on supp(p - q)");
        dw += c * dz[i];
    }
    return dw;
}

Trajectory iterate(const GrowthRule& rule, const Game& game, const MixedStrategy& x0, const OpponentModel& opp,
                   const BackgroundFitness& bg, const IteratorSettings& settings) {
    if (settings.sample_every == 0) throw InvalidArgument("sample_every must be at least 1");
    const std::size_t n = game.rows(), m = game.cols();
    if (x0.size() != n) throw InvalidArgument("x0 has wrong dimension");

    Population focal(game, rule, x0);
    std::optional<Population> other;
    const Schedule* schedule = nullptr;
    std::vector<double> z = focal.initial_logs(x0), zy;
    if (std::holds_alternative<opponent::SelfPlay>(opp)) {
        if (n != m) throw InvalidArgument("self-play needs a square game");
    } else if (const auto* c = std::get_if<opponent::Coupled>(&opp)) {
        if (c->opponent_game.rows() != m || c->opponent_game.cols() != n)
            throw InvalidArgument("opponent game must be cols x rows of the focal game");
        if (c->y0.size() != m) throw InvalidArgument("opponent y0 has wrong dimension");
        other.emplace(c->opponent_game, c->opponent_rule, c->y0);
        zy = other->initial_logs(c->y0);
    } else {
        schedule = &std::get<opponent::Scripted>(opp).schedule;
        if (schedule->dimension() != m) throw InvalidArgument("schedule dimension does not match the game's columns");
    }

    Trajectory traj;
    traj.meta.discrete = true;
    traj.meta.dt = 1.0;
    traj.meta.rule = rule.describe();
    traj.meta.opponent = describe(opp);
    traj.meta.game_digest = game.digest();

    std::vector<double> x(n), y(m), dz(n, 0.0), dzy(m, 0.0);
    auto opponent_state = [&](std::uint64_t k) {
        if (other) other->to_simplex(zy, y);
        else if (schedule) schedule->eval_into(static_cast<double>(k), y);
        else y = x;
    };
    auto record = [&](std::uint64_t k) {
        focal.to_simplex(z, x);
        traj.times.push_back(static_cast<double>(k));
        traj.states.push_back(MixedStrategy::normalized(x));
        traj.log_states.push_back(z);
        if (other || schedule) {
            opponent_state(k);
            traj.opp_states.push_back(MixedStrategy::normalized(y));
        }
    };

    double drift = 0.0;
    record(0);
    bool recorded_last = true;
    for (std::uint64_t k = 0; k < settings.n_max; ++k) {
        const double C = bg.at(k);
        focal.to_simplex(z, x);
        opponent_state(k);
        try {
            log_factors(focal, x, y, C, dz);
            if (other) log_factors(*other, y, x, C, dzy);
        } catch (const NumericalFailure& e) {
            throw NumericalFailure(e.what(), static_cast<double>(k));
        }
        for (std::size_t i : focal.support) z[i] += dz[i];
        drift = std::max(drift, focal.renormalize(z));
        if (other) {
            for (std::size_t j : other->support) zy[j] += dzy[j];
            drift = std::max(drift, other->renormalize(zy));
        }
        if (!focal.finite(z) || (other && !other->finite(zy)))
            throw NumericalFailure("non-finite state", static_cast<double>(k + 1));
        recorded_last = (k + 1) % settings.sample_every == 0;
        if (recorded_last) record(k + 1);
    }
    if (!recorded_last) record(settings.n_max);
    traj.meta.steps = settings.n_max;
    traj.meta.max_sum_drift = drift;
    return traj;
}

}  // namespace mondyn
