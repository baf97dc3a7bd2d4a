#include "mondyn/continuous.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "mondyn/error.hpp"
#include "population.hpp"

namespace mondyn {

namespace {

using detail::Population;

enum class Mode { self_play, coupled, scripted };

class Flow {
public:
    Flow(const GrowthRule& rule, const Game& game, const MixedStrategy& x0, const OpponentModel& opp)
        : focal_(game, rule, x0), n_(game.rows()), m_(game.cols()) {
        if (x0.size() != n_) throw InvalidArgument("x0 has " + std::to_string(x0.size()) + " weights, game has " +
                                                   std::to_string(n_) + " rows");
        if (std::holds_alternative<opponent::SelfPlay>(opp)) {
            if (n_ != m_) throw InvalidArgument("self-play needs a square game");
            mode_ = Mode::self_play;
        } else if (const auto* c = std::get_if<opponent::Coupled>(&opp)) {
            if (c->opponent_game.rows() != m_ || c->opponent_game.cols() != n_)
                throw InvalidArgument("opponent game must be cols x rows of the focal game");
            if (c->y0.size() != m_) throw InvalidArgument("opponent y0 has wrong dimension");
            mode_ = Mode::coupled;
            other_.emplace(c->opponent_game, c->opponent_rule, c->y0);
            y0_ = c->y0;
        } else {
            const auto& s = std::get<opponent::Scripted>(opp).schedule;
            if (s.dimension() != m_) throw InvalidArgument("schedule dimension does not match the game's columns");
            mode_ = Mode::scripted;
            schedule_ = &s;
        }
        x_.resize(n_);
        y_.resize(m_);
        z_ = focal_.initial_logs(x0);
        if (other_) zy_ = other_->initial_logs(*y0_);
        for (auto* buf : {&k1_, &k2_, &k3_, &k4_, &tmp_}) buf->assign(state_size(), 0.0);
    }

    Mode mode() const { return mode_; }
    std::size_t state_size() const { return n_ + (other_ ? m_ : 0); }

    // RK4 step of size h from time t.
    void step(double t, double h) {
        pack(state_);
        eval(t, state_, k1_);
        axpy(state_, 0.5 * h, k1_, tmp_);
        eval(t + 0.5 * h, tmp_, k2_);
        axpy(state_, 0.5 * h, k2_, tmp_);
        eval(t + 0.5 * h, tmp_, k3_);
        axpy(state_, h, k3_, tmp_);
        eval(t + h, tmp_, k4_);
        for (std::size_t k = 0; k < state_.size(); ++k) {
            if (!std::isfinite(state_[k])) continue;  // off-support coordinate
            state_[k] += h / 6.0 * (k1_[k] + 2.0 * k2_[k] + 2.0 * k3_[k] + k4_[k]);
        }
        unpack(state_);
        drift_ = std::max(drift_, focal_.renormalize(z_));
        if (other_) drift_ = std::max(drift_, other_->renormalize(zy_));
        if (!focal_.finite(z_) || (other_ && !other_->finite(zy_)))
            throw NumericalFailure("non-finite state", t + h);
    }

    void record(double t, Trajectory& traj) {
        focal_.to_simplex(z_, x_);
        traj.times.push_back(t);
        traj.states.push_back(MixedStrategy::normalized(x_));
        traj.log_states.push_back(z_);
        if (mode_ == Mode::coupled) {
            other_->to_simplex(zy_, y_);
            traj.opp_states.push_back(MixedStrategy::normalized(y_));
        } else if (mode_ == Mode::scripted) {
            traj.opp_states.push_back(schedule_->at(t));
        }
    }

    double drift() const { return drift_; }

private:
    void pack(std::vector<double>& s) const {
        s.assign(z_.begin(), z_.end());
        if (other_) s.insert(s.end(), zy_.begin(), zy_.end());
    }
    void unpack(const std::vector<double>& s) {
        std::copy(s.begin(), s.begin() + static_cast<std::ptrdiff_t>(n_), z_.begin());
        if (other_) std::copy(s.begin() + static_cast<std::ptrdiff_t>(n_), s.end(), zy_.begin());
    }
    static void axpy(const std::vector<double>& s, double a, const std::vector<double>& k, std::vector<double>& out) {
        for (std::size_t i = 0; i < s.size(); ++i) out[i] = std::isfinite(s[i]) ? s[i] + a * k[i] : s[i];
    }

    void eval(double t, const std::vector<double>& s, std::vector<double>& ds) {
        std::fill(ds.begin(), ds.end(), 0.0);
        zs_.assign(s.begin(), s.begin() + static_cast<std::ptrdiff_t>(n_));
        focal_.to_simplex(zs_, x_);
        try {
            switch (mode_) {
                case Mode::self_play: y_ = x_; break;
                case Mode::scripted: schedule_->eval_into(t, y_); break;
                case Mode::coupled:
                    zys_.assign(s.begin() + static_cast<std::ptrdiff_t>(n_), s.end());
                    other_->to_simplex(zys_, y_);
                    break;
            }
            dzs_.assign(n_, 0.0);
            focal_.rates(x_, y_, dzs_);
            std::copy(dzs_.begin(), dzs_.end(), ds.begin());
            if (other_) {
                dzys_.assign(m_, 0.0);
                other_->rates(y_, x_, dzys_);
                std::copy(dzys_.begin(), dzys_.end(), ds.begin() + static_cast<std::ptrdiff_t>(n_));
            }
        } catch (const NumericalFailure& e) {
            if (e.time()) throw;
            throw NumericalFailure(e.what(), t);
        }
    }

    Population focal_;
    std::optional<Population> other_;
    std::optional<MixedStrategy> y0_;
    const Schedule* schedule_ = nullptr;
    Mode mode_ = Mode::self_play;
    std::size_t n_, m_;
    std::vector<double> z_, zy_, x_, y_;
    std::vector<double> state_, k1_, k2_, k3_, k4_, tmp_;
    std::vector<double> zs_, zys_, dzs_, dzys_;
    double drift_ = 0.0;
};

}  // namespace

std::vector<double> vector_field(const GrowthRule& rule, const Game& game, const MixedStrategy& x,
                                 const MixedStrategy& y) {
    if (x.size() != game.rows()) throw InvalidArgument("x has wrong dimension");
    if (y.size() != game.cols()) throw InvalidArgument("y has wrong dimension");
    std::vector<double> payoff(game.rows()), g(game.rows());
    rule.growth_rates(game, y.weights(), payoff, g);
    double gbar = 0.0, ubar = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        gbar += x[i] * g[i];
        ubar += x[i] * payoff[i];
    }
    const double lambda = rule.speed().at(ubar);
    std::vector<double> dx(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) dx[i] = lambda * x[i] * (g[i] - gbar);
    return dx;
}

Trajectory integrate(const GrowthRule& rule, const Game& game, const MixedStrategy& x0, const OpponentModel& opp,
                     const IntegratorSettings& settings) {
    if (!(settings.dt > 0.0) || !std::isfinite(settings.dt)) throw InvalidArgument("dt must be positive");
    if (!(settings.t_max >= settings.dt)) throw InvalidArgument("t_max must be at least dt");
    if (settings.sample_every == 0) throw InvalidArgument("sample_every must be at least 1");

    Flow flow(rule, game, x0, opp);

    std::vector<double> bounds{0.0};
    if (const auto* s = std::get_if<opponent::Scripted>(&opp)) {
        const auto kinks = s->schedule.kinks_between(0.0, settings.t_max);
        bounds.insert(bounds.end(), kinks.begin(), kinks.end());
    }
    bounds.push_back(settings.t_max);

    Trajectory traj;
    traj.meta.discrete = false;
    traj.meta.dt = settings.dt;
    traj.meta.rule = rule.describe();
    traj.meta.opponent = describe(opp);
    traj.meta.game_digest = game.digest();

    flow.record(0.0, traj);
    std::size_t steps = 0;
    bool recorded_last = true;
    for (std::size_t seg = 0; seg + 1 < bounds.size(); ++seg) {
        const double ta = bounds[seg], tb = bounds[seg + 1];
        const auto n = static_cast<std::size_t>(std::max(1.0, std::ceil((tb - ta) / settings.dt - 1e-9)));
        const double h = (tb - ta) / static_cast<double>(n);
        for (std::size_t k = 0; k < n; ++k) {
            const double t = ta + static_cast<double>(k) * h;
            flow.step(t, h);
            ++steps;
            const double t_next = k + 1 == n ? tb : ta + static_cast<double>(k + 1) * h;
            recorded_last = steps % settings.sample_every == 0;
            if (recorded_last) flow.record(t_next, traj);
        }
    }
    if (!recorded_last) flow.record(settings.t_max, traj);
    traj.meta.steps = steps;
    traj.meta.max_sum_drift = flow.drift();
    return traj;
}

}  // namespace mondyn
