#pragma once

#include <vector>

#include "mondyn/dynamics.hpp"

namespace mondyn {

struct IntegratorSettings {
    double dt = 1e-3;
    double t_max = 200.0;
    std::size_t sample_every = 100;
};

// xdot_i = lambda(x,y) x_i [g_i(y) - sum_k x_k g_k(y)].
std::vector<double> vector_field(const GrowthRule& rule, const Game& game, const MixedStrategy& x,
                                 const MixedStrategy& y);

// Fixed-step classic RK4 on z_i = ln x_i over the support of x0, with
// renormalization after every step. Coordinates outside the support stay
// exactly zero. Scripted schedules get mandatory step boundaries at their
// breakpoints.
Trajectory integrate(const GrowthRule& rule, const Game& game, const MixedStrategy& x0, const OpponentModel& opp,
                     const IntegratorSettings& settings = {});

}  // namespace mondyn
