#pragma once

#include <cstdint>

#include "mondyn/dynamics.hpp"

namespace mondyn {

// Step-dependent background fitness C_n.
class BackgroundFitness {
public:
    enum class Kind { constant, affine, geometric };

    static BackgroundFitness constant(double C);
    // C_n = c0 + c1 n, c1 >= 0.
    static BackgroundFitness affine(double c0, double c1);
    // C_n = c0 r^n, c0 > 0, r > 0.
    static BackgroundFitness geometric(double c0, double r);

    Kind kind() const { return kind_; }
    double c0() const { return c0_; }
    double c1() const { return c1_; }

    double at(std::uint64_t n) const;
    // Whether sum_n 1/C_n diverges.
    bool diverges() const;
    std::string describe() const;

private:
    Kind kind_ = Kind::constant;
    double c0_ = 0.0;
    double c1_ = 0.0;
};

struct IteratorSettings {
    std::uint64_t n_max = 10000;
    std::uint64_t sample_every = 1;
};

// x'_i = x_i (C + g_i) / (C + sum_k x_k g_k). Requires C + g_i > 0 on the
// support of x. Stays finite for C = +inf (the map is then the identity).
MixedStrategy step(const GrowthRule& rule, const Game& game, const MixedStrategy& x, const MixedStrategy& y, double C);

// Iterates the map with C = C_n at step n. Scripted opponents are sampled at
// t = n. Trajectory times are step indices; log_states carry ln x_i updated
// additively, so they stay exact after x_i underflows.
Trajectory iterate(const GrowthRule& rule, const Game& game, const MixedStrategy& x0, const OpponentModel& opp,
                   const BackgroundFitness& bg, const IteratorSettings& settings = {});

// One-step change of w = sum_i (p_i - q_i) ln x_i, i.e.
// sum_i (p_i - q_i) ln(C + g_i).
double discrete_w_increment(const GrowthRule& rule, const Game& game, const MixedStrategy& x, const MixedStrategy& y,
                            double C, const MixedStrategy& p, const MixedStrategy& q);

}  // namespace mondyn
