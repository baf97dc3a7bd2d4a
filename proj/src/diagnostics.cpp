#include "mondyn/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <random>

#include "mondyn/continuous.hpp"
#include "mondyn/error.hpp"

namespace mondyn {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

void check_rows(const Trajectory& traj, const MixedStrategy& q) {
    if (traj.size() == 0) throw InvalidArgument("empty trajectory");
    if (q.size() != traj.log_states.front().size())
        throw InvalidArgument("strategy dimension does not match the trajectory");
}

double log_min_support(const std::vector<double>& z, const MixedStrategy& q) {
    double m = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < q.size(); ++i)
        if (q[i] > 0.0) m = std::min(m, z[i]);
    return m;
}

std::string fmt_threshold(const char* op, double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "min_support%s%g", op, v);
    return buf;
}

}  // namespace

std::vector<double> w_series(const Trajectory& traj, const MixedStrategy& p, const MixedStrategy& q) {
    check_rows(traj, q);
    if (p.size() != q.size()) throw InvalidArgument("p and q have different dimensions");
    std::vector<double> w;
    w.reserve(traj.size());
    for (const auto& z : traj.log_states) {
        double s = 0.0;
        for (std::size_t i = 0; i < z.size(); ++i) {
            const double c = p[i] - q[i];
            if (c != 0.0) s += c * z[i];
        }
        w.push_back(s);
    }
    return w;
}

EliminationMetrics elimination_metrics(const Trajectory& traj, const MixedStrategy& q) {
    check_rows(traj, q);
    double qmin = 1.0;
    for (std::size_t i = 0; i < q.size(); ++i)
        if (q[i] > 0.0) qmin = std::min(qmin, q[i]);
    EliminationMetrics out;
    out.min_support.reserve(traj.size());
    out.product.reserve(traj.size());
    for (const auto& z : traj.log_states) {
        const double lmin = log_min_support(z, q);
        double lprod = 0.0;
        for (std::size_t i = 0; i < q.size(); ++i)
            if (q[i] > 0.0) lprod += q[i] * z[i];
        out.min_support.push_back(std::exp(lmin));
        out.product.push_back(std::exp(lprod));
        if (std::isfinite(lmin)) {
            const double slack = 1e-12 * std::max(1.0, std::abs(lmin));
            if (lprod < lmin - slack || lprod > qmin * lmin + slack) out.bound_ok = false;
        } else if (std::isfinite(lprod)) {
            out.bound_ok = false;
        }
    }
    return out;
}

const char* to_string(VerdictStatus s) {
    switch (s) {
        case VerdictStatus::eliminated: return "eliminated";
        case VerdictStatus::survived: return "survived";
        case VerdictStatus::inconclusive: return "inconclusive";
    }
    return "?";
}

Verdict verdict(const Trajectory& traj, const MixedStrategy& q, double elim_threshold, double surv_threshold) {
    if (!(elim_threshold > 0.0) || !(surv_threshold > elim_threshold))
        throw InvalidArgument("verdict thresholds need 0 < elim_threshold < surv_threshold");
    check_rows(traj, q);
    Verdict v;
    const std::size_t n = traj.size();
    const double last = log_min_support(traj.log_states.back(), q);
    v.metric_final = std::exp(last);
    if (n < 10) {
        v.witness = "fewer than 10 samples";
        return v;
    }

    const std::size_t start = n - n / 3;
    double floor = std::numeric_limits<double>::infinity();
    bool hit_zero = false;
    // Least squares over (k, ln metric_k), k = start..n-1.
    double sk = 0.0, sl = 0.0, skk = 0.0, skl = 0.0;
    for (std::size_t k = start; k < n; ++k) {
        const double l = log_min_support(traj.log_states[k], q);
        floor = std::min(floor, l);
        if (!std::isfinite(l)) {
            hit_zero = true;
            continue;
        }
        const double kk = static_cast<double>(k - start);
        sk += kk;
        sl += l;
        skk += kk * kk;
        skl += kk * l;
    }
    const double m = static_cast<double>(n - start);
    if (hit_zero) {
        v.metric_trend = kNegInf;
    } else {
        const double den = m * skk - sk * sk;
        v.metric_trend = den > 0.0 ? (m * skl - sk * sl) / den : 0.0;
    }
    v.metric_floor = std::exp(floor);

    if (v.metric_final < elim_threshold && v.metric_trend < 0.0) {
        v.status = VerdictStatus::eliminated;
        v.witness = fmt_threshold("<", elim_threshold);
    } else if (v.metric_floor >= surv_threshold) {
        v.status = VerdictStatus::survived;
        v.witness = fmt_threshold(">=", surv_threshold);
    } else {
        v.witness = "between thresholds";
    }
    return v;
}

WindowExtent periodic_window(const Trajectory& traj, std::pair<std::size_t, std::size_t> coords, double period) {
    if (!(period > 0.0)) throw InvalidArgument("period must be positive");
    if (traj.size() == 0) throw InvalidArgument("empty trajectory");
    const auto [i, j] = coords;
    if (i >= traj.log_states.front().size() || j >= traj.log_states.front().size())
        throw InvalidArgument("coordinate index out of range");
    const double t_end = traj.times.back();
    if (t_end - traj.times.front() < 3.0 * period * (1.0 - 1e-12))
        throw InvalidArgument("trajectory covers fewer than three periods");
    const double t_start = t_end - period;
    WindowExtent w{std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity()};
    for (std::size_t k = 0; k < traj.size(); ++k) {
        if (traj.times[k] < t_start - 1e-9 * period) continue;
        const double v = std::exp(traj.log_states[k][i] + traj.log_states[k][j]);
        w.min = std::min(w.min, v);
        w.max = std::max(w.max, v);
    }
    return w;
}

double periodic_floor(const Trajectory& traj, std::pair<std::size_t, std::size_t> coords, double period) {
    return periodic_window(traj, coords, period).min;
}

double taylor_sign_check(const GrowthRule& rule, const Game& game, double radius, int samples, std::uint64_t seed) {
    if (game.rows() != 3 || game.cols() != 3) throw InvalidArgument("Taylor check needs a 3x3 game");
    const double a = game.at(0, 0), c = game.at(0, 1), b = game.at(0, 2);
    for (std::size_t i = 0; i < 3; ++i) {
        if (game.at(i, i) != a || game.at(i, (i + 1) % 3) != c || game.at(i, (i + 2) % 3) != b)
            throw InvalidArgument("Taylor check needs an RPS circulant game");
    }
    if (!(c < a && a < b)) throw InvalidArgument("Taylor check needs c < a < b");
    if (a == 0.5 * (b + c)) throw InvalidArgument("degenerate RPS game: a = (b+c)/2");
    if (!(radius > 0.0) || radius > 0.05) throw InvalidArgument("radius must lie in (0, 0.05]");
    if (samples < 1) throw InvalidArgument("samples must be positive");

    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss;
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    int negative = 0, counted = 0;
    for (int s = 0; s < samples; ++s) {
        double h[3] = {gauss(rng), gauss(rng), gauss(rng)};
        const double mean = (h[0] + h[1] + h[2]) / 3.0;
        double norm = 0.0;
        for (double& v : h) {
            v -= mean;
            norm += v * v;
        }
        norm = std::sqrt(norm);
        const double r = radius * std::sqrt(unif(rng));
        if (norm == 0.0 || r == 0.0) continue;  // the rest point itself
        std::vector<double> x(3);
        for (std::size_t i = 0; i < 3; ++i) x[i] = 1.0 / 3.0 + r * h[i] / norm;
        const auto xs = MixedStrategy::normalized(x);
        const auto dx = vector_field(rule, game, xs, xs);
        double drift = 0.0;
        for (std::size_t i = 0; i < 3; ++i) drift += dx[i] / xs[i];
        ++counted;
        if (drift < 0.0) ++negative;
    }
    if (counted == 0) throw NumericalFailure("Taylor check drew no usable samples");
    return static_cast<double>(negative) / counted;
}

}  // namespace mondyn
