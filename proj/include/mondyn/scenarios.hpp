#pragma once

#include <random>
#include <string>
#include <string_view>

#include "mondyn/dynamics.hpp"
#include "mondyn/link.hpp"

namespace mondyn {

struct Interval {
    double lo = 0.0;
    double hi = 0.0;
};

enum class SurvivalVariant { nonconvex, nonconcave };
const char* to_string(SurvivalVariant v);

// 3x2 game with rows T = (a, b), M = ((a+b)/2 -+ eps twice), B = (b, a),
// columns L, R, plus the 2T-periodic left/right schedule.
//  nonconvex:  M is dominated by (1/2,0,1/2) yet f(M) beats the T/B average.
//  nonconcave: M dominates (1/2,0,1/2) yet the T/B average beats f(M).
struct SurvivalConstruction {
    Game game;
    SurvivalVariant variant = SurvivalVariant::nonconvex;
    double a = 0.0;
    double b = 0.0;
    double eps = 0.0;
    double alpha = 0.0;  // growth-rate gap the schedule exploits
    double Cf = 0.0;     // max |f| on [a, b]
    double T = 0.0;
    Schedule schedule;
    LinkFunction link;  // f restricted to [min A, max A]
    double margin = 0.0;  // strict dominance margin of the construction
};

// Grid search over a < b in the box for the largest violation of convexity
// (nonconvex) or concavity (nonconcave); eps = eps_frac times the largest
// admissible eps. Throws Infeasible when f has no such violation on the box.
SurvivalConstruction build_survival(const LinkFunction& f, SurvivalVariant variant, Interval box,
                                    double eps_frac = 0.5);
// Same construction at a given (a, b, eps); validates everything.
SurvivalConstruction make_survival(const LinkFunction& f, SurvivalVariant variant, double a, double b, double eps);

enum class Rps4Variant { hofbauer_weibull, dual };
const char* to_string(Rps4Variant v);

// RPS base (rows (a,c,b), (b,a,c), (c,b,a)) plus a fourth strategy.
//  hofbauer_weibull: column 4 = gamma, row 4 = a + beta, corner 0.
//  dual:             column 4 = m - gamma, row 4 = m + beta, corner m.
struct Rps4Construction {
    Game game;
    Rps4Variant variant = Rps4Variant::hofbauer_weibull;
    double a = 0.0, b = 0.0, c = 0.0;
    double beta = 0.0, gamma = 0.0;
    double m = 0.0;
    LinkFunction link;  // restricted to [min A, max A]
    RpsMode mode;
    double margin = 0.0;  // dominance margin between strategy 4 and (1/3,1/3,1/3,0)
};

// Validates the variant's inequality system and assembles the game.
Rps4Construction make_rps4(const LinkFunction& f, Rps4Variant variant, double a, double b, double c, double beta,
                           double gamma, RpsMode mode = RpsMode::continuous());

// Grid search (50 points per axis, then local refinement) for (a,b,c) in the
// box; beta = min(beta_frac * spread, (m - a)/2) for the HW variant, else
// beta_frac * spread, and gamma = gamma_frac * spread, spread = b - c. The HW
// search keeps (b+c)/2 - a >= hw_rep_margin * box width.
Rps4Construction build_rps4(const LinkFunction& f, Rps4Variant variant, Interval box,
                            RpsMode mode = RpsMode::continuous(), double beta_frac = 0.02, double gamma_frac = 0.1,
                            double hw_rep_margin = 0.02);

// K = {x : x1 x2 x3 <= rho, x4 <= eps4} in the 4-simplex.
class BasinK {
public:
    BasinK(double rho, double eps4);
    double rho() const { return rho_; }
    double eps4() const { return eps4_; }
    bool contains(const MixedStrategy& x) const;
    // Interior point with x4 = eps4/2 and x1 x2 x3 = rho/2, along a random ray
    // from the centre of the face x4 = 0.
    MixedStrategy sample(std::mt19937_64& rng) const;

private:
    double rho_;
    double eps4_;
};

BasinK dual_basin_k(const Rps4Construction& con, double rho, double eps4);

Game rps_base(double a, double b, double c);
// "discussion-3x3" or "rps-base(a,b,c)".
Game paper_game(std::string_view name);

}  // namespace mondyn
