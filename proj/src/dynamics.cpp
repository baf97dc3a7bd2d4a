#include "mondyn/dynamics.hpp"

#include <algorithm>
#include <cmath>

#include "mondyn/error.hpp"

namespace mondyn {

Speed Speed::constant(double v) {
    if (!(v > 0.0) || !std::isfinite(v)) throw InvalidArgument("speed must be positive and finite");
    Speed s;
    s.value_ = v;
    return s;
}

Speed Speed::table(std::vector<double> knots, std::vector<double> values) {
    if (knots.empty() || knots.size() != values.size()) throw InvalidArgument("speed table needs matching knots and values");
    for (std::size_t i = 0; i < knots.size(); ++i) {
        if (!std::isfinite(knots[i])) throw InvalidArgument("speed knots must be finite");
        if (!(values[i] > 0.0) || !std::isfinite(values[i])) throw InvalidArgument("speed values must be positive");
        if (i > 0 && !(knots[i] > knots[i - 1])) throw InvalidArgument("speed knots must be strictly increasing");
    }
    Speed s;
    s.knots_ = std::move(knots);
    s.values_ = std::move(values);
    s.value_ = s.values_.front();
    return s;
}

double Speed::at(double mean_payoff) const {
    if (knots_.empty()) return value_;
    if (mean_payoff <= knots_.front()) return values_.front();
    if (mean_payoff >= knots_.back()) return values_.back();
    const auto hi = static_cast<std::size_t>(std::upper_bound(knots_.begin(), knots_.end(), mean_payoff) - knots_.begin());
    const std::size_t lo = hi - 1;
    const double s = (mean_payoff - knots_[lo]) / (knots_[hi] - knots_[lo]);
    return values_[lo] + s * (values_[hi] - values_[lo]);
}

GrowthRule GrowthRule::replicator() { return GrowthRule{}; }

GrowthRule GrowthRule::payoff_functional(LinkFunction f) {
    GrowthRule r;
    r.link_ = std::move(f);
    return r;
}

GrowthRule GrowthRule::with_speed(Speed s) const {
    GrowthRule r = *this;
    r.speed_ = std::move(s);
    return r;
}

void GrowthRule::growth_rates(const Game& game, std::span<const double> y, std::span<double> payoff,
                              std::span<double> g) const {
    payoff_vector(game, y, payoff);
    if (!link_) {
        std::copy(payoff.begin(), payoff.end(), g.begin());
        return;
    }
    for (std::size_t i = 0; i < game.rows(); ++i) g[i] = (*link_)(payoff[i]);
}

std::string GrowthRule::describe() const {
    std::string s = link_ ? "payoff-functional(" + link_->spec() + ")" : "replicator";
    if (!speed_.is_constant()) s += " speed=table";
    else if (speed_.value() != 1.0) s += " speed=" + std::to_string(speed_.value());
    return s;
}

Schedule::Schedule(double period, std::vector<Breakpoint> breakpoints) : period_(period), points_(std::move(breakpoints)) {
    if (!(period_ > 0.0) || !std::isfinite(period_)) throw InvalidArgument("schedule period must be positive");
    if (points_.empty()) throw InvalidArgument("schedule needs at least one breakpoint");
    if (points_.front().t != 0.0) throw InvalidArgument("schedule must start at t=0");
    const std::size_t m = points_.front().y.size();
    for (std::size_t k = 0; k < points_.size(); ++k) {
        if (points_[k].y.size() != m) throw InvalidArgument("schedule breakpoints have different dimensions");
        if (points_[k].t < 0.0 || points_[k].t > period_) throw InvalidArgument("schedule breakpoint outside [0, period]");
        if (k > 0 && !(points_[k].t > points_[k - 1].t)) throw InvalidArgument("schedule times must strictly increase");
    }
    if (points_.back().t == period_) {
        if (points_.size() < 2) throw InvalidArgument("schedule period equals its only breakpoint");
        for (std::size_t j = 0; j < m; ++j)
            if (std::abs(points_.back().y[j] - points_.front().y[j]) > 1e-12)
                throw InvalidArgument("schedule is discontinuous across the period wrap");
        points_.pop_back();
    }
}

Schedule Schedule::alternating(double T) {
    if (!(T > 1.0)) throw InvalidArgument("alternating schedule needs T > 1");
    const auto left = MixedStrategy::vertex(2, 0);
    const auto right = MixedStrategy::vertex(2, 1);
    return Schedule(2.0 * T, {{0.0, left}, {T - 1.0, left}, {T, right}, {2.0 * T - 1.0, right}});
}

void Schedule::eval_into(double t, std::span<double> out) const {
    double tau = std::fmod(t, period_);
    if (tau < 0.0) tau += period_;
    const auto it = std::upper_bound(points_.begin(), points_.end(), tau,
                                     [](double v, const Breakpoint& b) { return v < b.t; });
    const std::size_t k = static_cast<std::size_t>(it - points_.begin()) - 1;
    const Breakpoint& a = points_[k];
    const bool wrap = k + 1 == points_.size();
    const Breakpoint& b = wrap ? points_.front() : points_[k + 1];
    const double t_end = wrap ? period_ : b.t;
    const double s = tau == a.t ? 0.0 : (tau - a.t) / (t_end - a.t);
    for (std::size_t j = 0; j < out.size(); ++j) out[j] = (1.0 - s) * a.y[j] + s * b.y[j];
}

MixedStrategy Schedule::at(double t) const {
    std::vector<double> y(dimension());
    eval_into(t, y);
    return MixedStrategy::from(std::move(y), 1e-9);
}

std::vector<double> Schedule::kinks_between(double t0, double t1) const {
    std::vector<double> out;
    if (!(t1 > t0)) return out;
    const double first_cycle = std::floor(t0 / period_);
    for (double cyc = first_cycle;; cyc += 1.0) {
        const double base = cyc * period_;
        if (base >= t1) break;
        for (const auto& b : points_) {
            const double t = base + b.t;
            if (t > t0 && t < t1) out.push_back(t);
        }
    }
    return out;
}

MixedStrategy eval_schedule(const Schedule& s, double t) {
    if (t < 0.0) throw InvalidArgument("schedule evaluated at negative time");
    return s.at(t);
}

std::string describe(const OpponentModel& opp) {
    if (std::holds_alternative<opponent::SelfPlay>(opp)) return "self-play";
    if (std::holds_alternative<opponent::Coupled>(opp)) return "coupled";
    return "scripted";
}

}  // namespace mondyn
