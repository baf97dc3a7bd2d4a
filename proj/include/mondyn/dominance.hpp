#pragma once

#include <optional>
#include <vector>

#include "mondyn/game.hpp"

namespace mondyn {

// Margins at or below this count as "not dominated".
inline constexpr double kStrictnessTolerance = 1e-9;

enum class DominatorKind { pure, mixed };
enum class EliminationMode { pure_by_pure, pure_by_mixed };

using IndexSet = std::vector<std::size_t>;  // sorted, zero-based

struct DominanceResult {
    bool dominated = false;
    // Best achievable min over the column restriction of U_p(e_j) - U_q(e_j).
    double margin = 0.0;
    // The maximizing strategy, spread over the full row set.
    std::optional<MixedStrategy> dominator;
    // |margin| <= kStrictnessTolerance.
    bool degenerate = false;
};

struct EliminationStep {
    std::size_t round = 0;  // the round whose restriction certified the removal
    bool opponent = false;
    std::size_t strategy = 0;
    DominanceResult certificate;
};

struct EliminationTrace {
    EliminationMode mode = EliminationMode::pure_by_pure;
    // rounds[0] is the full game; each later entry is the surviving
    // (focal, opponent) pair after one simultaneous removal pass.
    std::vector<std::pair<IndexSet, IndexSet>> rounds;
    std::vector<EliminationStep> removals;

    const IndexSet& focal_survivors() const { return rounds.back().first; }
    const IndexSet& opponent_survivors() const { return rounds.back().second; }
};

IndexSet full_set(std::size_t n);

// min over j in restrict_cols of U_p(e_j) - U_q(e_j).
double strict_margin(const Game& game, const MixedStrategy& p, const MixedStrategy& q,
                     const IndexSet& restrict_cols);

// Searches for a strategy supported on restrict_rows that strictly dominates
// q against every column in restrict_cols. Mixed mode solves the max-margin
// LP; pure mode enumerates the rows.
DominanceResult find_dominator(const Game& game, const MixedStrategy& q, const IndexSet& restrict_rows,
                               const IndexSet& restrict_cols, DominatorKind kind);

// Iterated removal of strictly dominated pure strategies for both roles.
// opponent_game is the opponent's payoff from its own viewpoint (rows are
// the opponent's strategies); when absent the game must be square and is
// reused, i.e. the symmetric convention B = A^T.
EliminationTrace iterate_elimination(const Game& game, EliminationMode mode,
                                     const std::optional<Game>& opponent_game = std::nullopt);

// Iterated elimination to the fixed point, then one round of elimination of
// q by strategies supported on the survivors. kind = mixed answers
// membership in the mixed hierarchy; kind = pure the hierarchy with pure
// dominators.
DominanceResult is_mixed_iteratively_dominated(const Game& game, const std::optional<Game>& opponent_game,
                                               const MixedStrategy& q,
                                               DominatorKind kind = DominatorKind::mixed);

const char* to_string(EliminationMode m);
const char* to_string(DominatorKind k);

}  // namespace mondyn
