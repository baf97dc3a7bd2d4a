// mondyn: command-line front end for the monotone-dynamics toolkit.
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "mondyn/continuous.hpp"
#include "mondyn/diagnostics.hpp"
#include "mondyn/discrete.hpp"
#include "mondyn/dominance.hpp"
#include "mondyn/error.hpp"
#include "mondyn/experiments.hpp"
#include "mondyn/io.hpp"
#include "mondyn/link.hpp"

using namespace mondyn;
using io::Json;

namespace {

enum Exit { kOk = 0, kConfig = 1, kNumerical = 2, kExpectation = 3 };

// Comma-separated numbers; each entry may be a fraction "a/b".
std::vector<double> parse_list(const std::string& text, const char* flag) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        const auto slash = item.find('/');
        auto num = [&](const std::string& s) {
            char* end = nullptr;
            const double v = std::strtod(s.c_str(), &end);
            if (s.empty() || end == s.c_str() || *end != '\0')
                throw InvalidArgument(std::string(flag) + ": cannot parse '" + item + "'");
            return v;
        };
        out.push_back(slash == std::string::npos ? num(item)
                                                 : num(item.substr(0, slash)) / num(item.substr(slash + 1)));
    }
    if (out.empty()) throw InvalidArgument(std::string(flag) + ": empty list");
    return out;
}

Json strategy_json(const MixedStrategy& x) {
    Json a = Json::array();
    for (double v : x.vec()) a.push_back(io::number(v));
    return a;
}

Json index_json(const IndexSet& s) {
    Json a = Json::array();
    for (auto i : s) a.push_back(i + 1);
    return a;
}

Json dominance_json(const DominanceResult& d) {
    Json j;
    j["dominated"] = d.dominated;
    j["degenerate"] = d.degenerate;
    j["margin"] = io::number(io::round_sig(d.margin));
    j["dominator"] = d.dominator ? strategy_json(*d.dominator) : Json(nullptr);
    j["raw"] = {{"margin", io::number(d.margin)}};
    return j;
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

std::optional<std::filesystem::path> opt_path(const std::string& s) {
    if (s.empty()) return std::nullopt;
    return std::filesystem::path(s);
}

// ---- simulate ----------------------------------------------------------

struct SimulateArgs {
    std::string config, out, traj;
    std::optional<double> t_max, dt;
    std::optional<std::uint64_t> n_max;
};

int cmd_simulate(const SimulateArgs& a) {
    auto cfg = io::load_config(a.config);
    if (a.t_max) {
        if (cfg.discrete) throw InvalidArgument("--t-max: not used in discrete mode (use --n-max)");
        cfg.integrator.t_max = *a.t_max;
    }
    if (a.dt) {
        if (cfg.discrete) throw InvalidArgument("--dt: not used in discrete mode");
        cfg.integrator.dt = *a.dt;
    }
    if (a.n_max) {
        if (!cfg.discrete) throw InvalidArgument("--n-max: only used in discrete mode");
        cfg.iterator.n_max = *a.n_max;
    }
    if (!a.out.empty()) cfg.report_path = a.out;
    if (!a.traj.empty()) cfg.trajectory_path = a.traj;

    const Trajectory traj = cfg.discrete
                                ? iterate(cfg.rule, cfg.game, cfg.x0, cfg.opponent, cfg.background, cfg.iterator)
                                : integrate(cfg.rule, cfg.game, cfg.x0, cfg.opponent, cfg.integrator);

    Json rep;
    rep["mode"] = cfg.discrete ? "discrete" : "continuous";
    rep["rule"] = traj.meta.rule;
    rep["opponent"] = traj.meta.opponent;
    rep["game_digest"] = traj.meta.game_digest;
    if (cfg.discrete) {
        rep["background"] = cfg.background.describe();
        rep["n_max"] = cfg.iterator.n_max;
    } else {
        rep["dt"] = io::number(cfg.integrator.dt);
        rep["t_max"] = io::number(cfg.integrator.t_max);
    }
    rep["steps"] = traj.meta.steps;
    rep["samples"] = traj.size();
    rep["final_state"] = strategy_json(traj.states.back());

    io::CsvExtras extras;
    Json targets = Json::array();
    for (std::size_t k = 0; k < cfg.targets.size(); ++k) {
        const auto& t = cfg.targets[k];
        const auto metrics = elimination_metrics(traj, t.q);
        Json e;
        e["label"] = t.label;
        e["q"] = strategy_json(t.q);
        if (t.p) {
            e["p"] = strategy_json(*t.p);
            const auto w = w_series(traj, *t.p, t.q);
            e["w_initial"] = io::number(io::round_sig(w.front()));
            e["w_final"] = io::number(io::round_sig(w.back()));
            e["w_raw"] = {{"initial", io::number(w.front())}, {"final", io::number(w.back())}};
            if (k == 0) extras.w = w;
        }
        e["bound_ok"] = metrics.bound_ok;
        e["verdict"] = io::verdict_to_json(verdict(traj, t.q, cfg.elim_threshold, cfg.surv_threshold));
        if (k == 0) {
            extras.min_support = metrics.min_support;
            extras.product = metrics.product;
        }
        targets.push_back(std::move(e));
    }
    rep["targets"] = targets;

    if (cfg.trajectory_path) {
        std::ostringstream csv;
        io::write_trajectory_csv(csv, traj, extras);
        io::write_text(cfg.trajectory_path, csv.str());
    }
    io::write_text(cfg.report_path, dump(rep));
    return kOk;
}

// ---- dominance ---------------------------------------------------------

struct DominanceArgs {
    std::string game, opponent_game, q, mode = "mixed", out;
    bool iterate = false;
};

int cmd_dominance(const DominanceArgs& a) {
    const Game game = io::load_game(a.game);
    std::optional<Game> opp;
    if (!a.opponent_game.empty()) opp = io::load_game(a.opponent_game);
    if (a.mode != "pure" && a.mode != "mixed") throw InvalidArgument("--mode: expected 'pure' or 'mixed'");
    const DominatorKind kind = a.mode == "pure" ? DominatorKind::pure : DominatorKind::mixed;

    Json rep;
    rep["game_digest"] = game.digest();
    rep["mode"] = a.mode;
    std::optional<MixedStrategy> q;
    if (!a.q.empty()) {
        auto w = parse_list(a.q, "--q");
        if (w.size() != game.rows())
            throw InvalidArgument("--q: has " + std::to_string(w.size()) + " weights, game has " +
                                  std::to_string(game.rows()) + " rows");
        try {
            q = MixedStrategy::from(std::move(w));
        } catch (const InvalidArgument& e) {
            throw InvalidArgument(std::string("--q: ") + e.what());
        }
        rep["q"] = strategy_json(*q);
    }

    if (a.iterate) {
        const auto trace = iterate_elimination(
            game, kind == DominatorKind::pure ? EliminationMode::pure_by_pure : EliminationMode::pure_by_mixed, opp);
        Json rounds = Json::array();
        for (const auto& [f, o] : trace.rounds) rounds.push_back({{"focal", index_json(f)}, {"opponent", index_json(o)}});
        Json removals = Json::array();
        for (const auto& s : trace.removals) {
            Json e = dominance_json(s.certificate);
            e["round"] = s.round;
            e["role"] = s.opponent ? "opponent" : "focal";
            e["strategy"] = s.strategy + 1;
            removals.push_back(std::move(e));
        }
        rep["trace"] = {{"mode", to_string(trace.mode)}, {"rounds", rounds}, {"removals", removals}};
        if (q) rep["iterated"] = dominance_json(is_mixed_iteratively_dominated(game, opp, *q, kind));
    } else if (q) {
        rep["result"] = dominance_json(find_dominator(game, *q, full_set(game.rows()), full_set(game.cols()), kind));
    } else {
        Json rows = Json::array();
        for (std::size_t i = 0; i < game.rows(); ++i) {
            Json e = dominance_json(find_dominator(game, MixedStrategy::vertex(game.rows(), i), full_set(game.rows()),
                                                   full_set(game.cols()), kind));
            e["strategy"] = i + 1;
            rows.push_back(std::move(e));
        }
        rep["pure_strategies"] = rows;
    }
    io::write_text(opt_path(a.out), dump(rep));
    return kOk;
}

// ---- classify / rps-direction -----------------------------------------

struct ClassifyArgs {
    std::string link, interval, out;
    std::optional<double> discrete_C;
    int grid = 1001;
};

int cmd_classify(const ClassifyArgs& a) {
    const auto iv = parse_list(a.interval, "--interval");
    if (iv.size() != 2) throw InvalidArgument("--interval: expected lo,hi");
    LinkFunction f = parse_link(a.link).on(iv[0], iv[1]);
    if (a.discrete_C) f = discrete_effective_link(f, *a.discrete_C);
    const auto c = classify_link(f, a.grid);
    Json rep;
    rep["link"] = a.link;
    rep["interval"] = {io::number(iv[0]), io::number(iv[1])};
    if (a.discrete_C) rep["discrete_C"] = io::number(*a.discrete_C);
    rep["label"] = to_string(c.label);
    rep["increasing"] = c.increasing;
    rep["convex"] = c.convex;
    rep["concave"] = c.concave;
    rep["linear"] = c.linear;
    rep["nonlinearity"] = io::number(io::round_sig(c.nonlinearity));
    rep["raw"] = {{"nonlinearity", io::number(c.nonlinearity)}};
    io::write_text(opt_path(a.out), dump(rep));
    return kOk;
}

struct RpsArgs {
    std::string link = "replicator", abc, mode = "continuous", out;
    double C = 0.0;
};

int cmd_rps(const RpsArgs& a) {
    const auto v = parse_list(a.abc, "--abc");
    if (v.size() != 3) throw InvalidArgument("--abc: expected a,b,c");
    RpsMode mode;
    if (a.mode == "replicator") mode = RpsMode::replicator();
    else if (a.mode == "continuous") mode = RpsMode::continuous();
    else if (a.mode == "discrete") mode = RpsMode::discrete(a.C);
    else throw InvalidArgument("--mode: expected replicator, continuous or discrete");
    std::optional<LinkFunction> f;
    if (a.link != "replicator") f = parse_link(a.link);
    const auto d = rps_direction(f, v[0], v[1], v[2], mode);
    Json rep;
    rep["link"] = a.link;
    rep["abc"] = {io::number(v[0]), io::number(v[1]), io::number(v[2])};
    rep["mode"] = a.mode;
    if (a.mode == "discrete") rep["C"] = io::number(a.C);
    rep["direction"] = to_string(d);
    io::write_text(opt_path(a.out), dump(rep));
    return kOk;
}

// ---- scenario ----------------------------------------------------------

struct ScenarioArgs {
    std::string name, link, out, traj, box;
    std::uint64_t seed = 0;
    std::optional<double> t_max, dt;
    std::optional<std::uint64_t> n_max;
};

int cmd_scenario(const ScenarioArgs& a) {
    ScenarioOptions opts;
    if (!a.link.empty()) opts.link = a.link;
    opts.seed = a.seed;
    opts.t_max = a.t_max;
    opts.dt = a.dt;
    opts.n_max = a.n_max;
    if (!a.box.empty()) {
        const auto b = parse_list(a.box, "--box");
        if (b.size() != 2 || !(b[0] < b[1])) throw InvalidArgument("--box: expected lo,hi with lo < hi");
        opts.box = Interval{b[0], b[1]};
    }
    const auto report = run_scenario(a.name, opts);
    if (!a.traj.empty() && report.trajectory) {
        std::ostringstream csv;
        io::write_trajectory_csv(csv, *report.trajectory);
        io::write_text(opt_path(a.traj), csv.str());
    }
    io::write_text(opt_path(a.out), dump(io::report_to_json(report)));
    if (!report.ok()) {
        for (const auto* list : {&report.certificates, &report.expectations})
            for (const auto& c : *list)
                if (!c.passed) std::cerr << "mondyn: expectation failed: " << c.name << "\n";
        return kExpectation;
    }
    return kOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Simulate and analyse payoff-monotone evolutionary dynamics"};
    app.require_subcommand(1);

    SimulateArgs sim;
    auto* s = app.add_subcommand("simulate", "Run a configured simulation and judge its targets");
    s->add_option("--config", sim.config, "JSON run configuration")->required()->check(CLI::ExistingFile);
    s->add_option("--out", sim.out, "Report JSON path (default: config's, else stdout)");
    s->add_option("--traj", sim.traj, "Trajectory CSV path");
    s->add_option("--t-max", sim.t_max, "Continuous horizon");
    s->add_option("--dt", sim.dt, "RK4 step");
    s->add_option("--n-max", sim.n_max, "Discrete horizon");

    DominanceArgs dom;
    auto* d = app.add_subcommand("dominance", "Strict dominance and iterated elimination");
    d->add_option("--game", dom.game, "Game JSON")->required()->check(CLI::ExistingFile);
    d->add_option("--opponent-game", dom.opponent_game, "Opponent's game, own viewpoint")->check(CLI::ExistingFile);
    d->add_option("--q", dom.q, "Strategy to test, e.g. 0.5,0.5,0");
    d->add_option("--mode", dom.mode, "pure or mixed dominators");
    d->add_flag("--iterate", dom.iterate, "Run iterated elimination");
    d->add_option("--out", dom.out, "Report JSON path");

    ClassifyArgs cls;
    auto* c = app.add_subcommand("classify", "Classify a link function on an interval");
    c->add_option("--link", cls.link, "Link spec, e.g. sqrt, exp:1, linear:1,0")->required();
    c->add_option("--interval", cls.interval, "lo,hi")->required();
    c->add_option("--discrete-C", cls.discrete_C, "Classify u -> ln(C + f(u)) instead");
    c->add_option("--grid", cls.grid, "Grid points")->check(CLI::Range(3, 1000000));
    c->add_option("--out", cls.out, "Report JSON path");

    RpsArgs rps;
    auto* r = app.add_subcommand("rps-direction", "Boundary cycling direction of an RPS game");
    r->add_option("--link", rps.link, "Link spec, or 'replicator'");
    r->add_option("--abc", rps.abc, "a,b,c with c < a < b")->required();
    r->add_option("--mode", rps.mode, "replicator, continuous or discrete");
    r->add_option("--C", rps.C, "Background fitness (discrete mode)");
    r->add_option("--out", rps.out, "Report JSON path");

    ScenarioArgs sc;
    auto* e = app.add_subcommand("scenario", "Build and run a catalogued construction");
    e->add_option("name", sc.name, "Scenario name")->required()->check(CLI::IsMember(scenario_names()));
    e->add_option("--link", sc.link, "Link spec (default depends on the scenario)");
    e->add_option("--out", sc.out, "Report JSON path");
    e->add_option("--traj", sc.traj, "Representative trajectory CSV path");
    e->add_option("--seed", sc.seed, "Seed for sampled initial conditions");
    e->add_option("--t-max", sc.t_max, "Continuous horizon");
    e->add_option("--dt", sc.dt, "RK4 step");
    e->add_option("--n-max", sc.n_max, "Discrete horizon");
    e->add_option("--box", sc.box, "Search box lo,hi");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& ex) {
        return app.exit(ex);
    } catch (const CLI::CallForAllHelp& ex) {
        return app.exit(ex);
    } catch (const CLI::ParseError& ex) {
        app.exit(ex);
        return kConfig;
    }

    try {
        if (*s) return cmd_simulate(sim);
        if (*d) return cmd_dominance(dom);
        if (*c) return cmd_classify(cls);
        if (*r) return cmd_rps(rps);
        return cmd_scenario(sc);
    } catch (const NumericalFailure& ex) {
        std::cerr << "mondyn: numerical failure: " << ex.what() << "\n";
        return kNumerical;
    } catch (const Infeasible& ex) {
        std::cerr << "mondyn: infeasible: " << ex.what() << "\n";
        return kConfig;
    } catch (const InvalidArgument& ex) {
        std::cerr << "mondyn: " << ex.what() << "\n";
        return kConfig;
    } catch (const nlohmann::json::exception& ex) {
        std::cerr << "mondyn: malformed config: " << ex.what() << "\n";
        return kConfig;
    }
}
