#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "mondyn/continuous.hpp"
#include "mondyn/diagnostics.hpp"
#include "mondyn/discrete.hpp"
#include "mondyn/experiments.hpp"

namespace mondyn::io {

using Json = nlohmann::ordered_json;

// Rounds to `digits` significant decimal digits (display values in reports).
double round_sig(double v, int digits = 6);
// Finite numbers as-is; infinities and NaN as the strings "inf", "-inf", "nan".
Json number(double v);

// {"payoff": [[...]], "row_labels": [...], "col_labels": [...]}
Json game_to_json(const Game& g);
Game game_from_json(const Json& j);
Game load_game(const std::filesystem::path& path);

// Either a spec string ("sqrt", "exp:1", ...) or
// {"family": "linear", "alpha": 1, "beta": 0, "domain": [lo, hi]}.
LinkFunction link_from_json(const Json& j);
// {"kind": "replicator"} or {"kind": "payoff-functional", "link": ..., "speed": 1.0}
// where speed may also be {"knots": [...], "values": [...]}.
GrowthRule rule_from_json(const Json& j);
// {"period": P, "breakpoints": [{"t": 0, "y": [...]}, ...]} or {"alternating": T}.
Schedule schedule_from_json(const Json& j);
// {"kind": "constant", "C": 0} | {"kind": "affine", "c0", "c1"} | {"kind": "geometric", "c0", "r"}
BackgroundFitness background_from_json(const Json& j);

struct Target {
    std::string label;
    std::optional<MixedStrategy> p;
    MixedStrategy q;
};

struct RunConfig {
    Game game;
    GrowthRule rule = GrowthRule::replicator();
    OpponentModel opponent = opponent::SelfPlay{};
    bool discrete = false;
    IntegratorSettings integrator;
    IteratorSettings iterator;
    BackgroundFitness background = BackgroundFitness::constant(0.0);
    MixedStrategy x0;
    std::vector<Target> targets;
    double elim_threshold = kDefaultElimThreshold;
    double surv_threshold = kDefaultSurvThreshold;
    std::optional<std::filesystem::path> trajectory_path;
    std::optional<std::filesystem::path> report_path;
};

// Relative file names inside the config resolve against base_dir. Errors
// name the offending field.
RunConfig config_from_json(const Json& j, const std::filesystem::path& base_dir = {});
RunConfig load_config(const std::filesystem::path& path);

struct CsvExtras {
    std::vector<double> w;
    std::vector<double> min_support;
    std::vector<double> product;
};

// Header t,x1..xN[,y1..yM][,w][,min_support][,product]; %.17g values.
void write_trajectory_csv(std::ostream& out, const Trajectory& traj, const CsvExtras& extras = {});

Json verdict_to_json(const Verdict& v);
Json report_to_json(const ScenarioReport& r);

// Writes text to path, or to stdout when path is empty or "-".
void write_text(const std::optional<std::filesystem::path>& path, const std::string& text);

}  // namespace mondyn::io
