#include "mondyn/dominance.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "mondyn/error.hpp"
#include "mondyn/lp.hpp"

namespace mondyn {

namespace {

void check_restriction(const IndexSet& s, std::size_t n, const char* what) {
    if (s.empty()) throw InvalidArgument(std::string("empty ") + what + " restriction");
    for (std::size_t k : s)
        if (k >= n) throw InvalidArgument(std::string(what) + " restriction index out of range");
}

// U_p(e_j) for every column.
std::vector<double> column_payoffs(const Game& game, const MixedStrategy& p) {
    std::vector<double> out(game.cols(), 0.0);
    for (std::size_t i = 0; i < game.rows(); ++i) {
        if (p[i] == 0.0) continue;
        auto r = game.row(i);
        for (std::size_t j = 0; j < game.cols(); ++j) out[j] += p[i] * r[j];
    }
    return out;
}

DominanceResult finish(const Game& game, const MixedStrategy& q, const IndexSet& cols, MixedStrategy dominator) {
    DominanceResult r;
    r.margin = strict_margin(game, dominator, q, cols);
    r.dominated = r.margin > kStrictnessTolerance;
    r.degenerate = std::abs(r.margin) <= kStrictnessTolerance;
    r.dominator = std::move(dominator);
    return r;
}

}  // namespace

const char* to_string(EliminationMode m) {
    return m == EliminationMode::pure_by_pure ? "pure-by-pure" : "pure-by-mixed";
}

const char* to_string(DominatorKind k) { return k == DominatorKind::pure ? "pure" : "mixed"; }

IndexSet full_set(std::size_t n) {
    IndexSet s(n);
    for (std::size_t k = 0; k < n; ++k) s[k] = k;
    return s;
}

double strict_margin(const Game& game, const MixedStrategy& p, const MixedStrategy& q, const IndexSet& restrict_cols) {
    if (p.size() != game.rows() || q.size() != game.rows())
        throw InvalidArgument("strategy dimension does not match the game");
    check_restriction(restrict_cols, game.cols(), "column");
    const auto up = column_payoffs(game, p);
    const auto uq = column_payoffs(game, q);
    double m = std::numeric_limits<double>::infinity();
    for (std::size_t j : restrict_cols) m = std::min(m, up[j] - uq[j]);
    return m;
}

DominanceResult find_dominator(const Game& game, const MixedStrategy& q, const IndexSet& restrict_rows,
                               const IndexSet& restrict_cols, DominatorKind kind) {
    if (q.size() != game.rows()) throw InvalidArgument("q has wrong dimension");
    check_restriction(restrict_rows, game.rows(), "row");
    check_restriction(restrict_cols, game.cols(), "column");

    if (kind == DominatorKind::pure) {
        std::optional<DominanceResult> best;
        for (std::size_t k : restrict_rows) {
            auto r = finish(game, q, restrict_cols, MixedStrategy::vertex(game.rows(), k));
            if (!best || r.margin > best->margin) best = std::move(r);
        }
        return *best;
    }

    // Variables: p_k for k in restrict_rows, then e = eps + shift >= 0.
    // The shift exceeds the payoff spread, so e >= 0 never binds.
    const auto uq = column_payoffs(game, q);
    double lo = std::numeric_limits<double>::infinity(), hi = -lo;
    for (std::size_t k : restrict_rows)
        for (std::size_t j : restrict_cols) {
            lo = std::min(lo, game.at(k, j));
            hi = std::max(hi, game.at(k, j));
        }
    for (std::size_t j : restrict_cols) {
        lo = std::min(lo, uq[j]);
        hi = std::max(hi, uq[j]);
    }
    const double spread = hi - lo;
    const double shift = spread + 1.0;
    const std::size_t nr = restrict_rows.size();

    lp::LinearProgram prog;
    prog.objective.assign(nr + 1, 0.0);
    prog.objective[nr] = 1.0;
    for (std::size_t j : restrict_cols) {
        std::vector<double> row(nr + 1, 0.0);
        for (std::size_t k = 0; k < nr; ++k) row[k] = -game.at(restrict_rows[k], j);
        row[nr] = 1.0;
        prog.le_rows.push_back(std::move(row));
        prog.le_rhs.push_back(shift - uq[j]);
    }
    std::vector<double> simplex_row(nr + 1, 1.0);
    simplex_row[nr] = 0.0;
    prog.eq_rows.push_back(std::move(simplex_row));
    prog.eq_rhs.push_back(1.0);

    const auto sol = lp::solve(prog);
    if (sol.status != lp::Status::optimal)
        throw NumericalFailure(std::string("dominance LP failed: ") + lp::to_string(sol.status));
    const double eps_lp = sol.x[nr] - shift;
    if (eps_lp > spread + 1e-9 || eps_lp < -spread - 1e-9)
        throw NumericalFailure("dominance LP returned an out-of-range margin");

    std::vector<double> w(game.rows(), 0.0);
    for (std::size_t k = 0; k < nr; ++k) w[restrict_rows[k]] = std::max(0.0, sol.x[k]);
    auto r = finish(game, q, restrict_cols, MixedStrategy::normalized(std::move(w)));
    if (std::abs(r.margin - eps_lp) > 1e-7 * std::max(1.0, spread))
        throw NumericalFailure("dominance LP optimum disagrees with its realized margin");
    return r;
}

EliminationTrace iterate_elimination(const Game& game, EliminationMode mode, const std::optional<Game>& opponent_game) {
    const Game* opp = nullptr;
    if (opponent_game) {
        if (opponent_game->rows() != game.cols() || opponent_game->cols() != game.rows())
            throw InvalidArgument("opponent game must be cols x rows of the focal game");
        opp = &*opponent_game;
    } else {
        if (game.rows() != game.cols())
            throw InvalidArgument("non-square game needs an explicit opponent payoff matrix");
        opp = &game;
    }
    const DominatorKind kind = mode == EliminationMode::pure_by_pure ? DominatorKind::pure : DominatorKind::mixed;

    EliminationTrace trace;
    trace.mode = mode;
    trace.rounds.emplace_back(full_set(game.rows()), full_set(game.cols()));

    // Removes, from own, every strategy dominated against other.
    auto sweep = [&](const Game& g, const IndexSet& own, const IndexSet& other, bool is_opp, std::size_t round) {
        IndexSet keep;
        for (std::size_t s : own) {
            auto r = find_dominator(g, MixedStrategy::vertex(g.rows(), s), own, other, kind);
            if (r.dominated) {
                trace.removals.push_back({round, is_opp, s, std::move(r)});
            } else {
                keep.push_back(s);
            }
        }
        return keep;
    };

    while (true) {
        const std::size_t round = trace.rounds.size() - 1;
        const auto [rows, cols] = trace.rounds.back();
        IndexSet next_rows = sweep(game, rows, cols, false, round);
        IndexSet next_cols = sweep(*opp, cols, rows, true, round);
        if (next_rows.size() == rows.size() && next_cols.size() == cols.size()) break;
        trace.rounds.emplace_back(std::move(next_rows), std::move(next_cols));
    }
    return trace;
}

DominanceResult is_mixed_iteratively_dominated(const Game& game, const std::optional<Game>& opponent_game,
                                               const MixedStrategy& q, DominatorKind kind) {
    if (q.size() != game.rows()) throw InvalidArgument("q has wrong dimension");
    const auto mode = kind == DominatorKind::mixed ? EliminationMode::pure_by_mixed : EliminationMode::pure_by_pure;
    const auto trace = iterate_elimination(game, mode, opponent_game);
    return find_dominator(game, q, trace.focal_survivors(), trace.opponent_survivors(), kind);
}

}  // namespace mondyn
