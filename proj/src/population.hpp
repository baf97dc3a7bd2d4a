#pragma once

// Internal: one population's state in log coordinates, shared by the
// continuous and discrete drivers.

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "mondyn/dynamics.hpp"

namespace mondyn::detail {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

// One population in log coordinates: z_i = ln x_i on the support.
struct Population {
    const Game* game = nullptr;
    const GrowthRule* rule = nullptr;
    std::vector<std::size_t> support;
    std::vector<double> payoff, g;

    Population(const Game& gm, const GrowthRule& r, const MixedStrategy& start)
        : game(&gm), rule(&r), payoff(gm.rows()), g(gm.rows()) {
        for (std::size_t i = 0; i < start.size(); ++i)
            if (start[i] > 0.0) support.push_back(i);
    }

    std::vector<double> initial_logs(const MixedStrategy& start) const {
        std::vector<double> z(start.size(), kNegInf);
        for (std::size_t i : support) z[i] = std::log(start[i]);
        return z;
    }

    // x = softmax(z) over the support, exact zeros elsewhere.
    void to_simplex(const std::vector<double>& z, std::vector<double>& x) const {
        std::fill(x.begin(), x.end(), 0.0);
        double zmax = kNegInf;
        for (std::size_t i : support) zmax = std::max(zmax, z[i]);
        double sum = 0.0;
        for (std::size_t i : support) {
            x[i] = std::exp(z[i] - zmax);
            sum += x[i];
        }
        for (std::size_t i : support) x[i] /= sum;
    }

    // dz_i = lambda (g_i - gbar) given own state x and opponent state y.
    void rates(const std::vector<double>& x, const std::vector<double>& y, std::vector<double>& dz) {
        rule->growth_rates(*game, y, payoff, g);
        double gbar = 0.0, ubar = 0.0;
        for (std::size_t i : support) {
            gbar += x[i] * g[i];
            ubar += x[i] * payoff[i];
        }
        const double lambda = rule->speed().at(ubar);
        for (std::size_t i : support) dz[i] = lambda * (g[i] - gbar);
    }

    // Shifts z so that sum exp(z) = 1; returns |sum exp(z) - 1| before the shift.
    double renormalize(std::vector<double>& z) const {
        double zmax = kNegInf;
        for (std::size_t i : support) zmax = std::max(zmax, z[i]);
        double sum = 0.0;
        for (std::size_t i : support) sum += std::exp(z[i] - zmax);
        const double lse = zmax + std::log(sum);
        for (std::size_t i : support) z[i] -= lse;
        return std::abs(std::expm1(lse));
    }

    bool finite(const std::vector<double>& z) const {
        for (std::size_t i : support)
            if (!std::isfinite(z[i])) return false;
        return true;
    }
};

}  // namespace mondyn::detail
