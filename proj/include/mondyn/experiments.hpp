#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "mondyn/diagnostics.hpp"
#include "mondyn/scenarios.hpp"

namespace mondyn {

struct Check {
    std::string name;
    bool passed = false;
    double value = 0.0;
    std::string detail;
};

struct LabeledVerdict {
    std::string label;
    Verdict verdict;
};

struct ScenarioReport {
    std::string scenario;
    std::string link;
    std::uint64_t seed = 0;
    std::vector<std::pair<std::string, double>> parameters;
    // Self-checks of the construction.
    std::vector<Check> certificates;
    // Expected dynamical outcomes.
    std::vector<Check> expectations;
    std::vector<LabeledVerdict> verdicts;
    std::vector<std::string> notes;
    // One representative run, for CSV export.
    std::optional<Trajectory> trajectory;

    bool ok() const;
    const Check* find(std::string_view name) const;
};

struct ScenarioOptions {
    std::optional<std::string> link;
    std::uint64_t seed = 0;
    std::optional<double> t_max;
    std::optional<double> dt;
    std::optional<std::uint64_t> n_max;
    std::optional<Interval> box;
};

const std::vector<std::string>& scenario_names();

// Builds the named construction, runs its experiment and fills in the report.
// Construction failures propagate as exceptions; failed expectations are
// reported through ScenarioReport::ok().
ScenarioReport run_scenario(std::string_view name, const ScenarioOptions& options = {});

// Per-period change of w = (ln x_T + ln x_B)/2 - ln x_M for the discrete map
// with constant background fitness C against the construction's schedule.
// Positive means M loses ground.
double discrete_period_drift(const SurvivalConstruction& con, const GrowthRule& rule, double C);

// Doubling search (then bisection) for the smallest C with positive
// per-period drift, starting from c_start. Returns nullopt when none is found
// below c_limit.
std::optional<double> find_background_threshold(const SurvivalConstruction& con, const GrowthRule& rule,
                                                 double c_start, double c_limit = 1e12);

}  // namespace mondyn
