#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "mondyn/dynamics.hpp"

namespace mondyn {

// w(t) = sum_i (p_i - q_i) ln x_i(t) per sample. Faces give +-inf.
std::vector<double> w_series(const Trajectory& traj, const MixedStrategy& p, const MixedStrategy& q);

struct EliminationMetrics {
    std::vector<double> min_support;  // min over supp(q) of x_i
    std::vector<double> product;      // prod_i x_i^{q_i}
    // min <= product <= min^{min positive q_i} held at every sample.
    bool bound_ok = true;
};

EliminationMetrics elimination_metrics(const Trajectory& traj, const MixedStrategy& q);

enum class VerdictStatus { eliminated, survived, inconclusive };
const char* to_string(VerdictStatus s);

struct Verdict {
    VerdictStatus status = VerdictStatus::inconclusive;
    double metric_final = 0.0;
    // Least-squares slope of ln(min support) against sample index over the
    // last third; -inf once the metric hits an exact zero.
    double metric_trend = 0.0;
    // Smallest metric over the last third.
    double metric_floor = 0.0;
    std::string witness;
};

inline constexpr double kDefaultElimThreshold = 1e-6;
inline constexpr double kDefaultSurvThreshold = 1e-3;

// Finite-horizon judgement on min_{i in supp q} x_i. Runs with fewer than
// 10 samples are inconclusive.
Verdict verdict(const Trajectory& traj, const MixedStrategy& q, double elim_threshold = kDefaultElimThreshold,
                double surv_threshold = kDefaultSurvThreshold);

struct WindowExtent {
    double min = 0.0;
    double max = 0.0;
};

// Min and max of x_i x_j over the last full period of the run. Needs at
// least three periods of coverage.
WindowExtent periodic_window(const Trajectory& traj, std::pair<std::size_t, std::size_t> coords, double period);
double periodic_floor(const Trajectory& traj, std::pair<std::size_t, std::size_t> coords, double period);

// Fraction of random points x = (1/3,1/3,1/3) + h, 0 < |h| <= radius,
// sum h = 0, where d/dt ln(x1 x2 x3) < 0 under self-play. The game must be
// a 3x3 RPS circulant with c < a < b and a != (b+c)/2.
double taylor_sign_check(const GrowthRule& rule, const Game& game, double radius, int samples,
                         std::uint64_t seed = 0);

}  // namespace mondyn
