#include "mondyn/link.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <string>

#include "mondyn/error.hpp"

namespace mondyn {

namespace lf = link_family;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

bool is_integer(double g) { return std::floor(g) == g; }

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

// Widest interval each family is defined on.
std::pair<double, double> natural_domain(const LinkFamily& fam) {
    return std::visit(overloaded{
                          [](const lf::Linear&) { return std::pair{-kInf, kInf}; },
                          [](const lf::Exponential&) { return std::pair{-kInf, kInf}; },
                          [](const lf::Power& p) {
                              if (is_integer(p.gamma) && p.gamma >= 0) return std::pair{-kInf, kInf};
                              if (p.gamma > 0) return std::pair{0.0, kInf};
                              return std::pair{std::numeric_limits<double>::min(), kInf};
                          },
                          [](const lf::Logarithm&) { return std::pair{std::numeric_limits<double>::min(), kInf}; },
                          [](const lf::Sqrt&) { return std::pair{0.0, kInf}; },
                          [](const lf::Table& t) { return std::pair{t.knots.front(), t.knots.back()}; },
                      },
                      fam);
}

double interpolate(const lf::Table& t, double u) {
    const auto& k = t.knots;
    if (u <= k.front()) return t.values.front();
    if (u >= k.back()) return t.values.back();
    const auto it = std::upper_bound(k.begin(), k.end(), u);
    const std::size_t hi = static_cast<std::size_t>(it - k.begin());
    const std::size_t lo = hi - 1;
    const double s = (u - k[lo]) / (k[hi] - k[lo]);
    return t.values[lo] + s * (t.values[hi] - t.values[lo]);
}

}  // namespace

LinkFunction::LinkFunction(LinkFamily fam, double lo, double hi) : family_(std::move(fam)), lo_(lo), hi_(hi) {}

LinkFunction LinkFunction::linear(double alpha, double beta) {
    if (!std::isfinite(alpha) || !std::isfinite(beta)) throw InvalidArgument("linear link needs finite coefficients");
    return LinkFunction(lf::Linear{alpha, beta}, -kInf, kInf);
}

LinkFunction LinkFunction::power(double gamma) {
    if (!std::isfinite(gamma)) throw InvalidArgument("power link needs a finite exponent");
    lf::Power p{gamma};
    auto [lo, hi] = natural_domain(p);
    return LinkFunction(p, lo, hi);
}

LinkFunction LinkFunction::exponential(double k) {
    if (!std::isfinite(k)) throw InvalidArgument("exponential link needs a finite rate");
    return LinkFunction(lf::Exponential{k}, -kInf, kInf);
}

LinkFunction LinkFunction::logarithm() {
    return LinkFunction(lf::Logarithm{}, std::numeric_limits<double>::min(), kInf);
}

LinkFunction LinkFunction::sqrt() { return LinkFunction(lf::Sqrt{}, 0.0, kInf); }

LinkFunction LinkFunction::table(std::vector<double> knots, std::vector<double> values) {
    if (knots.size() < 2 || knots.size() != values.size())
        throw InvalidArgument("table link needs at least two knots and one value per knot");
    for (std::size_t i = 0; i < knots.size(); ++i) {
        if (!std::isfinite(knots[i]) || !std::isfinite(values[i])) throw InvalidArgument("table link entries must be finite");
        if (i > 0 && !(knots[i] > knots[i - 1])) throw InvalidArgument("table knots must be strictly increasing");
    }
    const double lo = knots.front(), hi = knots.back();
    return LinkFunction(lf::Table{std::move(knots), std::move(values)}, lo, hi);
}

LinkFunction LinkFunction::on(double lo, double hi) const {
    if (!(lo <= hi) || std::isnan(lo) || std::isnan(hi)) throw InvalidArgument("link domain must satisfy lo <= hi");
    auto [nlo, nhi] = natural_domain(family_);
    if (lo < nlo || hi > nhi) {
        throw InvalidArgument("link " + spec() + " is undefined somewhere on [" + num(lo) + ", " + num(hi) + "]");
    }
    if (const auto* p = std::get_if<lf::Power>(&family_); p && p->gamma < 0 && lo <= 0.0 && hi >= 0.0)
        throw InvalidArgument("negative power link is undefined at 0");
    if (std::holds_alternative<lf::Logarithm>(family_) && lo <= 0.0)
        throw InvalidArgument("logarithm link needs a positive domain");
    return LinkFunction(family_, lo, hi);
}

bool LinkFunction::bounded() const { return std::isfinite(lo_) && std::isfinite(hi_); }

bool LinkFunction::is_identity() const {
    const auto* l = std::get_if<lf::Linear>(&family_);
    return l && l->alpha == 1.0 && l->beta == 0.0;
}

double LinkFunction::eval_unchecked(double u) const {
    return std::visit(overloaded{
                          [u](const lf::Linear& l) { return l.alpha * u + l.beta; },
                          [u](const lf::Power& p) { return std::pow(u, p.gamma); },
                          [u](const lf::Exponential& e) { return std::exp(e.k * u); },
                          [u](const lf::Logarithm&) { return std::log(u); },
                          [u](const lf::Sqrt&) { return std::sqrt(u); },
                          [u](const lf::Table& t) { return interpolate(t, u); },
                      },
                      family_);
}

double LinkFunction::operator()(double u) const {
    if (std::isnan(u)) throw NumericalFailure("link evaluated at NaN");
    if (u < lo_ || u > hi_) {
        const double tol = 1e-9 * std::max({1.0, std::isfinite(lo_) ? std::abs(lo_) : 0.0,
                                            std::isfinite(hi_) ? std::abs(hi_) : 0.0});
        if (u < lo_ - tol || u > hi_ + tol)
            throw NumericalFailure("payoff " + num(u) + " outside link domain [" + num(lo_) + ", " + num(hi_) + "]");
        u = std::clamp(u, lo_, hi_);
    }
    const double v = eval_unchecked(u);
    if (!std::isfinite(v)) throw NumericalFailure("link value is not finite at u=" + num(u));
    return v;
}

std::string LinkFunction::spec() const {
    return std::visit(overloaded{
                          [](const lf::Linear& l) { return "linear:" + num(l.alpha) + "," + num(l.beta); },
                          [](const lf::Power& p) { return "pow:" + num(p.gamma); },
                          [](const lf::Exponential& e) { return "exp:" + num(e.k); },
                          [](const lf::Logarithm&) { return std::string("log"); },
                          [](const lf::Sqrt&) { return std::string("sqrt"); },
                          [](const lf::Table& t) { return "table[" + std::to_string(t.knots.size()) + "]"; },
                      },
                      family_);
}

double eval_link(const LinkFunction& f, double u) { return f(u); }

LinkFunction parse_link(std::string_view spec) {
    const auto colon = spec.find(':');
    const std::string name(spec.substr(0, colon));
    std::vector<double> args;
    if (colon != std::string_view::npos) {
        std::string rest(spec.substr(colon + 1));
        std::size_t pos = 0;
        while (pos <= rest.size()) {
            const auto comma = rest.find(',', pos);
            const std::string tok = rest.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
            try {
                std::size_t used = 0;
                args.push_back(std::stod(tok, &used));
                if (used != tok.size()) throw std::invalid_argument(tok);
            } catch (const std::exception&) {
                throw InvalidArgument("bad number '" + tok + "' in link spec '" + std::string(spec) + "'");
            }
            if (comma == std::string::npos) break;
            pos = comma + 1;
        }
    }
    auto want = [&](std::size_t lo, std::size_t hi) {
        if (args.size() < lo || args.size() > hi)
            throw InvalidArgument("wrong number of parameters in link spec '" + std::string(spec) + "'");
    };
    if (name == "linear") {
        want(0, 2);
        return LinkFunction::linear(args.size() > 0 ? args[0] : 1.0, args.size() > 1 ? args[1] : 0.0);
    }
    if (name == "pow" || name == "power") {
        want(1, 1);
        return LinkFunction::power(args[0]);
    }
    if (name == "exp" || name == "exponential") {
        want(0, 1);
        return LinkFunction::exponential(args.empty() ? 1.0 : args[0]);
    }
    if (name == "log" || name == "logarithm") {
        want(0, 0);
        return LinkFunction::logarithm();
    }
    if (name == "sqrt") {
        want(0, 0);
        return LinkFunction::sqrt();
    }
    throw InvalidArgument("unknown link family '" + name + "'");
}

const char* to_string(DynamicsLabel l) {
    switch (l) {
        case DynamicsLabel::aggregate_monotonic: return "aggregate-monotonic";
        case DynamicsLabel::convex_monotonic: return "convex-monotonic";
        case DynamicsLabel::concave_monotonic: return "concave-monotonic";
        case DynamicsLabel::monotonic_only: return "monotonic-only";
        case DynamicsLabel::non_monotonic: return "non-monotonic";
    }
    return "unknown";
}

DynamicsClass classify_link(const LinkFunction& f, int grid_points, double rel_tol) {
    if (grid_points < 5) throw InvalidArgument("classification needs at least 5 grid points");
    if (!f.bounded()) throw InvalidArgument("classification needs a bounded domain");
    const double lo = f.lo(), hi = f.hi();
    if (hi - lo < 1e-9) throw InvalidArgument("link domain too small to classify");

    const auto n = static_cast<std::size_t>(grid_points);
    std::vector<double> u(n), v(n);
    double scale = 1.0;
    for (std::size_t k = 0; k < n; ++k) {
        u[k] = k + 1 == n ? hi : lo + (hi - lo) * static_cast<double>(k) / static_cast<double>(n - 1);
        v[k] = f(u[k]);
        scale = std::max(scale, std::abs(v[k]));
    }
    const double tol = rel_tol * scale;

    DynamicsClass out;
    bool nondecreasing = true, moves = false;
    for (std::size_t k = 1; k < n; ++k) {
        const double d = v[k] - v[k - 1];
        if (!(d > -tol)) nondecreasing = false;
        if (d > tol) moves = true;
    }
    out.increasing = nondecreasing && moves;
    out.convex = out.concave = true;
    for (std::size_t k = 1; k + 1 < n; ++k) {
        const double d2 = v[k + 1] - 2.0 * v[k] + v[k - 1];
        if (d2 < -tol) out.convex = false;
        if (d2 > tol) out.concave = false;
    }
    out.linear = out.convex && out.concave;
    for (std::size_t k = 0; k < n; ++k) {
        const double chord = v.front() + (v.back() - v.front()) * (u[k] - lo) / (hi - lo);
        out.nonlinearity = std::max(out.nonlinearity, std::abs(v[k] - chord));
    }

    if (!out.increasing) out.label = DynamicsLabel::non_monotonic;
    else if (out.linear) out.label = DynamicsLabel::aggregate_monotonic;
    else if (out.convex) out.label = DynamicsLabel::convex_monotonic;
    else if (out.concave) out.label = DynamicsLabel::concave_monotonic;
    else out.label = DynamicsLabel::monotonic_only;
    return out;
}

LinkFunction discrete_effective_link(const LinkFunction& f, double C) {
    if (!f.bounded()) throw InvalidArgument("effective link needs a bounded domain");
    constexpr std::size_t kKnots = 1001;
    const double lo = f.lo(), hi = f.hi();
    if (!(hi > lo)) throw InvalidArgument("effective link needs a nondegenerate domain");
    std::vector<double> knots(kKnots), values(kKnots);
    for (std::size_t k = 0; k < kKnots; ++k) {
        knots[k] = k + 1 == kKnots ? hi : lo + (hi - lo) * static_cast<double>(k) / static_cast<double>(kKnots - 1);
        const double arg = C + f(knots[k]);
        if (!(arg > 0.0))
            throw InvalidArgument("C + f(u) <= 0 at u=" + num(knots[k]) + "; ln(C + f) is undefined");
        values[k] = std::log(arg);
    }
    return LinkFunction::table(std::move(knots), std::move(values));
}

const char* to_string(CycleDirection d) {
    switch (d) {
        case CycleDirection::inward: return "inward";
        case CycleDirection::outward: return "outward";
        case CycleDirection::degenerate: return "degenerate";
    }
    return "unknown";
}

CycleDirection rps_direction(const std::optional<LinkFunction>& f, double a, double b, double c, RpsMode mode) {
    if (!(c < a && a < b)) throw InvalidArgument("RPS payoffs must satisfy c < a < b");
    auto fit = [&](double u) {
        switch (mode.kind) {
            case RpsMode::Kind::replicator: return u;
            case RpsMode::Kind::continuous: return f ? (*f)(u) : u;
            case RpsMode::Kind::discrete: {
                const double arg = mode.C + (f ? (*f)(u) : u);
                if (!(arg > 0.0)) throw InvalidArgument("C + f(u) <= 0 in discrete RPS criterion");
                return std::log(arg);
            }
        }
        return u;
    };
    const double fa = fit(a), fb = fit(b), fc = fit(c);
    const double gap = fa - 0.5 * (fb + fc);
    const double tol = 1e-12 * std::max({1.0, std::abs(fa), std::abs(fb), std::abs(fc)});
    if (std::abs(gap) <= tol) return CycleDirection::degenerate;
    return gap > 0 ? CycleDirection::outward : CycleDirection::inward;
}

}  // namespace mondyn
