#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace mondyn {

namespace link_family {
struct Linear {
    double alpha = 1.0;
    double beta = 0.0;
};
struct Power {
    double gamma = 1.0;
};
struct Exponential {
    double k = 1.0;
};
struct Logarithm {};
struct Sqrt {};
// Piecewise-linear interpolation between knots.
struct Table {
    std::vector<double> knots;
    std::vector<double> values;
};
}  // namespace link_family

using LinkFamily = std::variant<link_family::Linear, link_family::Power, link_family::Exponential,
                                link_family::Logarithm, link_family::Sqrt, link_family::Table>;

// Payoff-to-fitness map f together with the interval it is evaluated on.
class LinkFunction {
public:
    static LinkFunction linear(double alpha = 1.0, double beta = 0.0);
    static LinkFunction power(double gamma);
    static LinkFunction exponential(double k = 1.0);
    static LinkFunction logarithm();
    static LinkFunction sqrt();
    static LinkFunction table(std::vector<double> knots, std::vector<double> values);

    // Same family on [lo, hi]; throws if f is undefined somewhere on it.
    LinkFunction on(double lo, double hi) const;

    const LinkFamily& family() const { return family_; }
    double lo() const { return lo_; }
    double hi() const { return hi_; }
    bool bounded() const;
    bool is_identity() const;

    // Checked evaluation; values within a relative 1e-9 of the domain are
    // clamped onto it, anything further out throws.
    double operator()(double u) const;
    double eval_unchecked(double u) const;

    // Round-trips through parse_link, e.g. "linear:1,0", "exp:1", "pow:2".
    std::string spec() const;

private:
    LinkFunction(LinkFamily fam, double lo, double hi);
    LinkFamily family_;
    double lo_;
    double hi_;
};

double eval_link(const LinkFunction& f, double u);

// "linear:a,b" | "pow:g" | "exp:k" | "log" | "sqrt".
LinkFunction parse_link(std::string_view spec);

enum class DynamicsLabel { aggregate_monotonic, convex_monotonic, concave_monotonic, monotonic_only, non_monotonic };

struct DynamicsClass {
    bool increasing = false;
    bool convex = false;
    bool concave = false;
    bool linear = false;
    DynamicsLabel label = DynamicsLabel::non_monotonic;
    // Largest gap between f and its chord over the domain.
    double nonlinearity = 0.0;
};

const char* to_string(DynamicsLabel l);

// Sampled classification on a uniform grid over the link's domain.
// Differences are compared against rel_tol * max(1, max |f|).
DynamicsClass classify_link(const LinkFunction& f, int grid_points = 1001, double rel_tol = 1e-9);

// u -> ln(C + f(u)) as a 1001-knot table on f's domain.
LinkFunction discrete_effective_link(const LinkFunction& f, double C);

enum class CycleDirection { inward, outward, degenerate };
const char* to_string(CycleDirection d);

struct RpsMode {
    enum class Kind { replicator, continuous, discrete };
    Kind kind = Kind::replicator;
    double C = 0.0;  // background fitness, discrete only

    static RpsMode replicator() { return {Kind::replicator, 0.0}; }
    static RpsMode continuous() { return {Kind::continuous, 0.0}; }
    static RpsMode discrete(double C) { return {Kind::discrete, C}; }
};

// Direction of cycling near the boundary of the RPS game with diagonal a,
// winning payoff b and losing payoff c (c < a < b). Outward means the
// heteroclinic boundary cycle attracts: f(a) > [f(b) + f(c)] / 2, with f
// the identity for the replicator and ln(C + f) in discrete time.
CycleDirection rps_direction(const std::optional<LinkFunction>& f, double a, double b, double c, RpsMode mode);

}  // namespace mondyn
