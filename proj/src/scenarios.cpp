#include "mondyn/scenarios.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <string>

#include "mondyn/dominance.hpp"
#include "mondyn/error.hpp"

namespace mondyn {

namespace {

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

void require(bool ok, const std::string& what) {
    if (!ok) throw Infeasible("construction check failed: " + what);
}

void check_box(Interval box) {
    if (!std::isfinite(box.lo) || !std::isfinite(box.hi) || !(box.hi > box.lo))
        throw InvalidArgument("search box must be a finite interval with lo < hi");
}

LinkFunction restrict_to_game(const LinkFunction& f, const Game& g) {
    return f.on(g.min_entry(), g.max_entry());
}

// Signed distance from the inequality the variant needs; positive means the
// construction works at this eps.
double survival_gap(const LinkFunction& f, SurvivalVariant v, double a, double b, double eps) {
    const double mean = 0.5 * (f.eval_unchecked(a) + f.eval_unchecked(b));
    const double mid = 0.5 * (a + b);
    return v == SurvivalVariant::nonconvex ? f.eval_unchecked(mid - eps) - mean : mean - f.eval_unchecked(mid + eps);
}

// Largest eps in (0, (b-a)/2] with a positive gap, scanning then bisecting
// the first sign change.
double survival_slack(const LinkFunction& f, SurvivalVariant v, double a, double b) {
    const double half = 0.5 * (b - a);
    constexpr int kScan = 1000;
    double prev = 0.0;
    for (int k = 1; k <= kScan; ++k) {
        const double e = half * k / kScan;
        if (survival_gap(f, v, a, b, e) > 0.0) {
            prev = e;
            continue;
        }
        double lo = prev, hi = e;
        for (int it = 0; it < 100; ++it) {
            const double midp = 0.5 * (lo + hi);
            (survival_gap(f, v, a, b, midp) > 0.0 ? lo : hi) = midp;
        }
        return lo;
    }
    return half;
}

double max_abs_on(const LinkFunction& f, double lo, double hi) {
    double m = 0.0;
    for (int k = 0; k <= 1000; ++k) m = std::max(m, std::abs(f.eval_unchecked(lo + (hi - lo) * k / 1000.0)));
    return m;
}

double spread_of(const LinkFunction& f, double lo, double hi) {
    double fmin = std::numeric_limits<double>::infinity(), fmax = -fmin;
    for (int k = 0; k <= 200; ++k) {
        const double v = f.eval_unchecked(lo + (hi - lo) * k / 200.0);
        fmin = std::min(fmin, v);
        fmax = std::max(fmax, v);
    }
    return std::max(fmax - fmin, 1e-300);
}

}  // namespace

const char* to_string(SurvivalVariant v) { return v == SurvivalVariant::nonconvex ? "nonconvex" : "nonconcave"; }
const char* to_string(Rps4Variant v) { return v == Rps4Variant::dual ? "dual" : "hofbauer-weibull"; }

SurvivalConstruction make_survival(const LinkFunction& f, SurvivalVariant variant, double a, double b, double eps) {
    if (!(a < b) || !std::isfinite(a) || !std::isfinite(b)) throw InvalidArgument("survival game needs finite a < b");
    if (!(eps > 0.0) || eps > 0.5 * (b - a)) throw InvalidArgument("eps must lie in (0, (b-a)/2]");
    const LinkFunction fab = f.on(a, b);
    const double mid = 0.5 * (a + b);
    const double mrow = variant == SurvivalVariant::nonconvex ? mid - eps : mid + eps;
    Game game({{a, b}, {mrow, mrow}, {b, a}}, {"T", "M", "B"}, {"L", "R"});

    const double alpha = survival_gap(fab, variant, a, b, eps);
    if (!(alpha > 0.0))
        throw Infeasible(std::string("no ") + (variant == SurvivalVariant::nonconvex ? "convexity" : "concavity") +
                         " violation at a=" + num(a) + ", b=" + num(b) + ", eps=" + num(eps));
    const double Cf = max_abs_on(fab, a, b);
    const double T = std::floor((2.0 * Cf + 1.0) / alpha + 1.0) + 1.0;

    const auto half = MixedStrategy::from({0.5, 0.0, 0.5});
    const auto M = MixedStrategy::vertex(3, 1);
    const double margin = variant == SurvivalVariant::nonconvex ? strict_margin(game, half, M, full_set(2))
                                                                : strict_margin(game, M, half, full_set(2));
    require(margin > kStrictnessTolerance, "dominance margin " + num(margin));
    require(T > (2.0 * Cf + 1.0) / alpha + 1.0, "period bound");

    LinkFunction link = restrict_to_game(f, game);
    return SurvivalConstruction{.game = std::move(game),
                                .variant = variant,
                                .a = a,
                                .b = b,
                                .eps = eps,
                                .alpha = alpha,
                                .Cf = Cf,
                                .T = T,
                                .schedule = Schedule::alternating(T),
                                .link = std::move(link),
                                .margin = margin};
}

SurvivalConstruction build_survival(const LinkFunction& f, SurvivalVariant variant, Interval box, double eps_frac) {
    check_box(box);
    if (!(eps_frac > 0.0 && eps_frac < 1.0)) throw InvalidArgument("eps_frac must lie in (0, 1)");
    const LinkFunction fb = f.on(box.lo, box.hi);
    const double tol = 1e-9 * std::max(1.0, max_abs_on(fb, box.lo, box.hi));

    // The eps -> 0 gap measures how strongly f bends between a and b.
    auto score = [&](double a, double b) { return survival_gap(fb, variant, a, b, 0.0); };
    constexpr int kGrid = 51;
    const double h = (box.hi - box.lo) / (kGrid - 1);
    double best = -std::numeric_limits<double>::infinity(), ba = 0.0, bb = 0.0;
    for (int i = 0; i < kGrid; ++i)
        for (int j = i + 1; j < kGrid; ++j) {
            const double a = box.lo + i * h, b = box.lo + j * h;
            const double s = score(a, b);
            if (s > best) best = s, ba = a, bb = b;
        }
    // One local refinement around the coarse optimum.
    const double h2 = h / 10.0;
    const double ca = ba, cb = bb;
    for (int i = -10; i <= 10; ++i)
        for (int j = -10; j <= 10; ++j) {
            const double a = std::clamp(ca + i * h2, box.lo, box.hi), b = std::clamp(cb + j * h2, box.lo, box.hi);
            if (!(a < b)) continue;
            const double s = score(a, b);
            if (s > best) best = s, ba = a, bb = b;
        }
    if (!(best > tol))
        throw Infeasible(std::string("no ") + (variant == SurvivalVariant::nonconvex ? "convexity" : "concavity") +
                         " violation of " + f.spec() + " on [" + num(box.lo) + ", " + num(box.hi) + "]");
    const double slack = survival_slack(fb, variant, ba, bb);
    return make_survival(f, variant, ba, bb, eps_frac * slack);
}

Game rps_base(double a, double b, double c) { return Game({{a, c, b}, {b, a, c}, {c, b, a}}); }

Rps4Construction make_rps4(const LinkFunction& f, Rps4Variant variant, double a, double b, double c, double beta,
                           double gamma, RpsMode mode) {
    require(c < a && a < b, "c < a < b");
    require(beta > 0.0, "beta > 0");
    require(gamma > 0.0, "gamma > 0");
    const double m = (a + b + c) / 3.0;
    const bool hw = variant == Rps4Variant::hofbauer_weibull;
    std::vector<std::vector<double>> rows;
    if (hw) {
        require(m > a + beta, "(a+b+c)/3 > a + beta");
        require(a < 0.5 * (b + c), "a < (b+c)/2");
        rows = {{a, c, b, gamma}, {b, a, c, gamma}, {c, b, a, gamma}, {a + beta, a + beta, a + beta, 0.0}};
    } else {
        require(a > 0.5 * (b + c), "a > (b+c)/2");
        rows = {{a, c, b, m - gamma}, {b, a, c, m - gamma}, {c, b, a, m - gamma}, {m + beta, m + beta, m + beta, m}};
    }
    Game game(rows);
    LinkFunction link = restrict_to_game(f, game);
    const auto dir = rps_direction(link, a, b, c, mode);
    require(dir == (hw ? CycleDirection::outward : CycleDirection::inward),
            hw ? "f(a) > [f(b)+f(c)]/2" : "f(a) < [f(b)+f(c)]/2");

    const auto p = MixedStrategy::from({1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0, 0.0});
    const auto e4 = MixedStrategy::vertex(4, 3);
    const double margin = hw ? strict_margin(game, p, e4, full_set(4)) : strict_margin(game, e4, p, full_set(4));
    require(margin > kStrictnessTolerance, "strategy 4 dominance margin " + num(margin));
    if (!hw) require(margin >= std::min(beta, gamma) * (1.0 - 1e-12), "margin >= min(beta, gamma)");

    return Rps4Construction{.game = std::move(game),
                            .variant = variant,
                            .a = a,
                            .b = b,
                            .c = c,
                            .beta = beta,
                            .gamma = gamma,
                            .m = m,
                            .link = std::move(link),
                            .mode = mode,
                            .margin = margin};
}

Rps4Construction build_rps4(const LinkFunction& f, Rps4Variant variant, Interval box, RpsMode mode, double beta_frac,
                            double gamma_frac, double hw_rep_margin) {
    check_box(box);
    const LinkFunction fb = f.on(box.lo, box.hi);
    const bool hw = variant == Rps4Variant::hofbauer_weibull;
    const double width = box.hi - box.lo;
    const double fscale = spread_of(fb, box.lo, box.hi);
    auto F = [&](double u) {
        const double v = fb.eval_unchecked(u);
        return mode.kind == RpsMode::Kind::discrete ? std::log(mode.C + v) : v;
    };
    // HW: largest f-gap while keeping the replicator inequality by a small
    // margin, so the interior equilibrium attracts only weakly and the
    // boundary cycle wins. Dual: both inequalities normalized, the smaller
    // one is the score.
    auto score = [&](double a, double b, double c) {
        constexpr double kNegInf = -std::numeric_limits<double>::infinity();
        if (!(c < a && a < b)) return kNegInf;
        if (mode.kind == RpsMode::Kind::discrete && !(mode.C + fb.eval_unchecked(c) > 0.0)) return kNegInf;
        const double rep = (0.5 * (b + c) - a) / width;
        const double fun = (F(a) - 0.5 * (F(b) + F(c))) / fscale;
        if (hw) return rep >= hw_rep_margin ? fun : kNegInf;
        return std::min(-rep, -fun);
    };

    constexpr int kGrid = 50;
    const double h = width / (kGrid - 1);
    double best = -std::numeric_limits<double>::infinity(), ba = 0, bb = 0, bc = 0;
    for (int i = 0; i < kGrid; ++i)
        for (int j = 0; j < kGrid; ++j)
            for (int k = 0; k < kGrid; ++k) {
                const double a = box.lo + i * h, b = box.lo + j * h, c = box.lo + k * h;
                const double s = score(a, b, c);
                if (s > best) best = s, ba = a, bb = b, bc = c;
            }
    const double h2 = h / 5.0;
    const double ca = ba, cb = bb, cc = bc;
    for (int i = -5; i <= 5; ++i)
        for (int j = -5; j <= 5; ++j)
            for (int k = -5; k <= 5; ++k) {
                const double a = std::clamp(ca + i * h2, box.lo, box.hi);
                const double b = std::clamp(cb + j * h2, box.lo, box.hi);
                const double c = std::clamp(cc + k * h2, box.lo, box.hi);
                const double s = score(a, b, c);
                if (s > best) best = s, ba = a, bb = b, bc = c;
            }
    if (!(best > 1e-9))
        throw Infeasible(std::string("no ") + to_string(variant) + " RPS payoffs for " + f.spec() + " on [" +
                         num(box.lo) + ", " + num(box.hi) + "]");

    const double spread = bb - bc;
    const double m = (ba + bb + bc) / 3.0;
    const double beta = hw ? std::min(beta_frac * spread, 0.5 * (m - ba)) : beta_frac * spread;
    return make_rps4(f, variant, ba, bb, bc, beta, gamma_frac * spread, mode);
}

BasinK::BasinK(double rho, double eps4) : rho_(rho), eps4_(eps4) {
    if (!(rho > 0.0 && rho < 1.0 / 27.0)) throw InvalidArgument("rho must lie in (0, 1/27)");
    if (!(eps4 > 0.0 && eps4 < 1.0)) throw InvalidArgument("eps4 must lie in (0, 1)");
}

bool BasinK::contains(const MixedStrategy& x) const {
    if (x.size() != 4) throw InvalidArgument("K lives in the 4-strategy simplex");
    return x[0] * x[1] * x[2] <= rho_ && x[3] <= eps4_;
}

MixedStrategy BasinK::sample(std::mt19937_64& rng) const {
    std::exponential_distribution<double> ex(1.0);
    double r[3] = {ex(rng), ex(rng), ex(rng)};
    const double rs = r[0] + r[1] + r[2];
    for (double& v : r) v /= rs;
    double d[3];
    double smax = std::numeric_limits<double>::infinity();
    for (int i = 0; i < 3; ++i) {
        d[i] = r[i] - 1.0 / 3.0;
        if (d[i] < 0.0) smax = std::min(smax, (1.0 / 3.0) / -d[i]);
    }
    if (!std::isfinite(smax)) return sample(rng);  // direction collapsed onto the centre
    const double scale = 1.0 - 0.5 * eps4_;
    const double target = 0.5 * rho_;
    auto prod = [&](double s) {
        double p = scale * scale * scale;
        for (int i = 0; i < 3; ++i) p *= 1.0 / 3.0 + s * d[i];
        return p;
    };
    // The product falls monotonically from the centre to the face boundary.
    double lo = 0.0, hi = smax;
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        (prod(mid) > target ? lo : hi) = mid;
    }
    const double s = 0.5 * (lo + hi);
    std::vector<double> x(4);
    for (int i = 0; i < 3; ++i) x[static_cast<std::size_t>(i)] = scale * (1.0 / 3.0 + s * d[i]);
    x[3] = 0.5 * eps4_;
    return MixedStrategy::normalized(std::move(x));
}

BasinK dual_basin_k(const Rps4Construction& con, double rho, double eps4) {
    if (con.variant != Rps4Variant::dual) throw InvalidArgument("K is defined for the dual construction");
    return BasinK(rho, eps4);
}

Game paper_game(std::string_view name) {
    if (name == "discussion-3x3") return Game({{3, 0, 0}, {0, 3, 0}, {2, 2, 1}});
    constexpr std::string_view prefix = "rps-base(";
    if (name.substr(0, prefix.size()) == prefix && name.back() == ')') {
        const std::string args(name.substr(prefix.size(), name.size() - prefix.size() - 1));
        double v[3];
        char tail;
        if (std::sscanf(args.c_str(), "%lf,%lf,%lf%c", &v[0], &v[1], &v[2], &tail) == 3)
            return rps_base(v[0], v[1], v[2]);
    }
    throw InvalidArgument("unknown named game '" + std::string(name) + "'");
}

}  // namespace mondyn
