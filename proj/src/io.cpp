#include "mondyn/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "mondyn/error.hpp"

namespace mondyn::io {

namespace fs = std::filesystem;

double round_sig(double v, int digits) {
    if (!std::isfinite(v) || v == 0.0) return v;
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*g", digits, v);
    return std::strtod(buf, nullptr);
}

Json number(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    return v;
}

namespace {

[[noreturn]] void fail(const std::string& path, const std::string& what) {
    throw InvalidArgument(path + ": " + what);
}

const Json& need(const Json& j, const char* key, const std::string& path) {
    if (!j.is_object()) fail(path, "expected an object");
    const auto it = j.find(key);
    if (it == j.end()) fail(path, std::string("missing field '") + key + "'");
    return *it;
}

std::string sub(const std::string& path, const char* key) { return path.empty() ? key : path + "." + key; }

double as_number(const Json& j, const std::string& path) {
    if (!j.is_number()) fail(path, "expected a number");
    return j.get<double>();
}

std::vector<double> as_vector(const Json& j, const std::string& path) {
    if (!j.is_array()) fail(path, "expected an array of numbers");
    std::vector<double> v;
    for (std::size_t i = 0; i < j.size(); ++i) v.push_back(as_number(j[i], path + "[" + std::to_string(i) + "]"));
    return v;
}

MixedStrategy as_strategy(const Json& j, const std::string& path, std::size_t n, const char* owner) {
    auto v = as_vector(j, path);
    if (v.size() != n)
        fail(path, "has " + std::to_string(v.size()) + " weights, " + owner + " has " + std::to_string(n) + " strategies");
    try {
        return MixedStrategy::from(std::move(v));
    } catch (const InvalidArgument& e) {
        fail(path, e.what());
    }
}

std::vector<std::string> as_strings(const Json& j, const std::string& path) {
    if (!j.is_array()) fail(path, "expected an array of strings");
    std::vector<std::string> out;
    for (const auto& e : j) {
        if (!e.is_string()) fail(path, "expected an array of strings");
        out.push_back(e.get<std::string>());
    }
    return out;
}

Json read_json(const fs::path& path) {
    std::ifstream in(path);
    if (!in) throw InvalidArgument("cannot open " + path.string());
    try {
        return Json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw InvalidArgument(path.string() + ": " + e.what());
    }
}

Game game_at(const Json& j, const std::string& path) {
    try {
        return game_from_json(j);
    } catch (const InvalidArgument& e) {
        fail(path, e.what());
    }
}

Json round_json(double v) { return number(round_sig(v)); }

}  // namespace

Json game_to_json(const Game& g) {
    Json j;
    j["payoff"] = g.matrix();
    if (!g.row_labels().empty()) j["row_labels"] = g.row_labels();
    if (!g.col_labels().empty()) j["col_labels"] = g.col_labels();
    return j;
}

Game game_from_json(const Json& j) {
    const Json& p = need(j, "payoff", "game");
    if (!p.is_array()) fail("game.payoff", "expected an array of rows");
    std::vector<std::vector<double>> rows;
    for (std::size_t i = 0; i < p.size(); ++i) rows.push_back(as_vector(p[i], "game.payoff[" + std::to_string(i) + "]"));
    std::vector<std::string> rl, cl;
    if (j.contains("row_labels")) rl = as_strings(j["row_labels"], "game.row_labels");
    if (j.contains("col_labels")) cl = as_strings(j["col_labels"], "game.col_labels");
    return Game(std::move(rows), std::move(rl), std::move(cl));
}

Game load_game(const fs::path& path) {
    const Json j = read_json(path);
    return game_from_json(j.contains("game") ? j["game"] : j);
}

LinkFunction link_from_json(const Json& j) {
    if (j.is_string()) return parse_link(j.get<std::string>());
    const std::string family = need(j, "family", "link").is_string() ? j["family"].get<std::string>() : "";
    auto get = [&](const char* key, double def) {
        return j.contains(key) ? as_number(j[key], sub("link", key)) : def;
    };
    LinkFunction f = LinkFunction::linear();
    if (family == "linear") f = LinkFunction::linear(get("alpha", 1.0), get("beta", 0.0));
    else if (family == "power" || family == "pow") f = LinkFunction::power(need(j, "gamma", "link").get<double>());
    else if (family == "exponential" || family == "exp") f = LinkFunction::exponential(get("k", 1.0));
    else if (family == "logarithm" || family == "log") f = LinkFunction::logarithm();
    else if (family == "sqrt") f = LinkFunction::sqrt();
    else if (family == "table")
        f = LinkFunction::table(as_vector(need(j, "knots", "link"), "link.knots"),
                                as_vector(need(j, "values", "link"), "link.values"));
    else fail("link.family", "unknown family '" + family + "'");
    if (j.contains("domain")) {
        const auto d = as_vector(j["domain"], "link.domain");
        if (d.size() != 2) fail("link.domain", "expected [lo, hi]");
        f = f.on(d[0], d[1]);
    }
    return f;
}

GrowthRule rule_from_json(const Json& j) {
    if (j.is_string() && j.get<std::string>() == "replicator") return GrowthRule::replicator();
    const Json& kind = need(j, "kind", "rule");
    GrowthRule r = GrowthRule::replicator();
    if (kind == "replicator") {
    } else if (kind == "payoff-functional") {
        r = GrowthRule::payoff_functional(link_from_json(need(j, "link", "rule")));
    } else {
        fail("rule.kind", "expected 'replicator' or 'payoff-functional'");
    }
    if (j.contains("speed")) {
        const Json& s = j["speed"];
        if (s.is_number()) r = r.with_speed(Speed::constant(s.get<double>()));
        else
            r = r.with_speed(Speed::table(as_vector(need(s, "knots", "rule.speed"), "rule.speed.knots"),
                                          as_vector(need(s, "values", "rule.speed"), "rule.speed.values")));
    }
    return r;
}

Schedule schedule_from_json(const Json& j) {
    if (j.is_object() && j.contains("alternating")) return Schedule::alternating(as_number(j["alternating"], "schedule.alternating"));
    const double period = as_number(need(j, "period", "schedule"), "schedule.period");
    const Json& bps = need(j, "breakpoints", "schedule");
    if (!bps.is_array() || bps.empty()) fail("schedule.breakpoints", "expected a nonempty array");
    std::vector<Schedule::Breakpoint> out;
    for (std::size_t k = 0; k < bps.size(); ++k) {
        const std::string path = "schedule.breakpoints[" + std::to_string(k) + "]";
        const double t = as_number(need(bps[k], "t", path), path + ".t");
        auto y = as_vector(need(bps[k], "y", path), path + ".y");
        try {
            out.push_back({t, MixedStrategy::from(std::move(y))});
        } catch (const InvalidArgument& e) {
            fail(path + ".y", e.what());
        }
    }
    return Schedule(period, std::move(out));
}

BackgroundFitness background_from_json(const Json& j) {
    if (j.is_number()) return BackgroundFitness::constant(j.get<double>());
    const Json& kind = need(j, "kind", "background");
    auto get = [&](const char* key) { return as_number(need(j, key, "background"), sub("background", key)); };
    if (kind == "constant") return BackgroundFitness::constant(get("C"));
    if (kind == "affine") return BackgroundFitness::affine(get("c0"), get("c1"));
    if (kind == "geometric") return BackgroundFitness::geometric(get("c0"), get("r"));
    fail("background.kind", "expected 'constant', 'affine' or 'geometric'");
}

RunConfig config_from_json(const Json& j, const fs::path& base_dir) {
    if (!j.is_object()) fail("config", "expected an object");
    RunConfig c;
    if (j.contains("game_file")) {
        if (j.contains("game")) fail("config", "give either 'game' or 'game_file', not both");
        c.game = load_game(base_dir / j["game_file"].get<std::string>());
    } else {
        c.game = game_at(need(j, "game", "config"), "game");
    }
    const std::size_t n = c.game.rows(), m = c.game.cols();
    if (j.contains("rule")) c.rule = rule_from_json(j["rule"]);

    if (j.contains("opponent")) {
        const Json& o = j["opponent"];
        const Json& mode = need(o, "mode", "opponent");
        if (mode == "self-play") {
            c.opponent = opponent::SelfPlay{};
        } else if (mode == "coupled") {
            Game og = game_at(need(o, "game", "opponent"), "opponent.game");
            GrowthRule orule = o.contains("rule") ? rule_from_json(o["rule"]) : GrowthRule::replicator();
            if (og.rows() != m || og.cols() != n) fail("opponent.game", "must be cols x rows of the focal game");
            auto y0 = o.contains("y0") ? as_strategy(o["y0"], "opponent.y0", m, "opponent")
                                       : MixedStrategy::uniform(m);
            c.opponent = opponent::Coupled{std::move(og), std::move(orule), std::move(y0)};
        } else if (mode == "scripted") {
            auto s = schedule_from_json(need(o, "schedule", "opponent"));
            if (s.dimension() != m) fail("opponent.schedule", "dimension does not match the game's columns");
            c.opponent = opponent::Scripted{std::move(s)};
        } else {
            fail("opponent.mode", "expected 'self-play', 'coupled' or 'scripted'");
        }
    }
    if (std::holds_alternative<opponent::SelfPlay>(c.opponent) && n != m)
        fail("opponent", "self-play needs a square game");

    const std::string mode = j.value("mode", std::string("continuous"));
    if (mode != "continuous" && mode != "discrete") fail("mode", "expected 'continuous' or 'discrete'");
    c.discrete = mode == "discrete";
    if (j.contains("integrator")) {
        if (c.discrete) fail("integrator", "not allowed in discrete mode");
        const Json& s = j["integrator"];
        if (s.contains("dt")) c.integrator.dt = as_number(s["dt"], "integrator.dt");
        if (s.contains("t_max")) c.integrator.t_max = as_number(s["t_max"], "integrator.t_max");
        if (s.contains("sample_every")) c.integrator.sample_every = s["sample_every"].get<std::size_t>();
    }
    if (j.contains("iterator")) {
        if (!c.discrete) fail("iterator", "only allowed in discrete mode");
        const Json& s = j["iterator"];
        if (s.contains("n_max")) c.iterator.n_max = s["n_max"].get<std::uint64_t>();
        if (s.contains("sample_every")) c.iterator.sample_every = s["sample_every"].get<std::uint64_t>();
    }
    if (j.contains("background")) {
        if (!c.discrete) fail("background", "only allowed in discrete mode");
        c.background = background_from_json(j["background"]);
    }

    c.x0 = j.contains("x0") ? as_strategy(j["x0"], "x0", n, "game") : MixedStrategy::uniform(n);

    if (j.contains("targets")) {
        const Json& ts = j["targets"];
        if (!ts.is_array()) fail("targets", "expected an array");
        for (std::size_t k = 0; k < ts.size(); ++k) {
            const std::string path = "targets[" + std::to_string(k) + "]";
            Target t;
            t.q = as_strategy(need(ts[k], "q", path), path + ".q", n, "game");
            if (ts[k].contains("p")) t.p = as_strategy(ts[k]["p"], path + ".p", n, "game");
            t.label = ts[k].value("label", path);
            c.targets.push_back(std::move(t));
        }
    }
    if (j.contains("thresholds")) {
        const Json& t = j["thresholds"];
        if (t.contains("elim")) c.elim_threshold = as_number(t["elim"], "thresholds.elim");
        if (t.contains("surv")) c.surv_threshold = as_number(t["surv"], "thresholds.surv");
        if (!(c.elim_threshold > 0.0 && c.surv_threshold > c.elim_threshold))
            fail("thresholds", "need 0 < elim < surv");
    }
    if (j.contains("outputs")) {
        const Json& o = j["outputs"];
        if (o.contains("trajectory")) c.trajectory_path = base_dir / o["trajectory"].get<std::string>();
        if (o.contains("report")) c.report_path = base_dir / o["report"].get<std::string>();
    }
    return c;
}

RunConfig load_config(const fs::path& path) { return config_from_json(read_json(path), path.parent_path()); }

void write_trajectory_csv(std::ostream& out, const Trajectory& traj, const CsvExtras& extras) {
    if (traj.size() == 0) return;
    const std::size_t n = traj.states.front().size();
    const std::size_t m = traj.has_opponent() ? traj.opp_states.front().size() : 0;
    out << 't';
    for (std::size_t i = 1; i <= n; ++i) out << ",x" << i;
    for (std::size_t j = 1; j <= m; ++j) out << ",y" << j;
    const bool w = !extras.w.empty(), ms = !extras.min_support.empty(), pr = !extras.product.empty();
    if (w) out << ",w";
    if (ms) out << ",min_support";
    if (pr) out << ",product";
    out << '\n';
    char buf[40];
    auto put = [&](double v) {
        std::snprintf(buf, sizeof buf, "%.17g", v);
        out << buf;
    };
    for (std::size_t k = 0; k < traj.size(); ++k) {
        put(traj.times[k]);
        for (std::size_t i = 0; i < n; ++i) out << ',', put(traj.states[k][i]);
        for (std::size_t j = 0; j < m; ++j) out << ',', put(traj.opp_states[k][j]);
        if (w) out << ',', put(extras.w[k]);
        if (ms) out << ',', put(extras.min_support[k]);
        if (pr) out << ',', put(extras.product[k]);
        out << '\n';
    }
}

Json verdict_to_json(const Verdict& v) {
    Json j;
    j["status"] = to_string(v.status);
    j["metric_final"] = round_json(v.metric_final);
    j["metric_trend"] = round_json(v.metric_trend);
    j["metric_floor"] = round_json(v.metric_floor);
    j["witness"] = v.witness;
    j["raw"] = {{"metric_final", number(v.metric_final)},
                {"metric_trend", number(v.metric_trend)},
                {"metric_floor", number(v.metric_floor)}};
    return j;
}

namespace {

Json checks_to_json(const std::vector<Check>& checks) {
    Json arr = Json::array();
    for (const auto& c : checks) {
        Json e;
        e["name"] = c.name;
        e["passed"] = c.passed;
        e["value"] = round_json(c.value);
        if (!c.detail.empty()) e["detail"] = c.detail;
        e["raw"] = {{"value", number(c.value)}};
        arr.push_back(std::move(e));
    }
    return arr;
}

}  // namespace

Json report_to_json(const ScenarioReport& r) {
    Json j;
    j["scenario"] = r.scenario;
    j["link"] = r.link;
    j["seed"] = r.seed;
    j["ok"] = r.ok();
    Json params = Json::object(), raw = Json::object();
    for (const auto& [k, v] : r.parameters) {
        params[k] = round_json(v);
        raw[k] = number(v);
    }
    j["parameters"] = params;
    j["certificates"] = checks_to_json(r.certificates);
    j["expectations"] = checks_to_json(r.expectations);
    Json vs = Json::array();
    for (const auto& lv : r.verdicts) {
        Json e = verdict_to_json(lv.verdict);
        e["label"] = lv.label;
        vs.push_back(std::move(e));
    }
    j["verdicts"] = vs;
    if (!r.notes.empty()) j["notes"] = r.notes;
    j["raw"] = {{"parameters", raw}};
    return j;
}

void write_text(const std::optional<fs::path>& path, const std::string& text) {
    if (!path || path->empty() || *path == "-") {
        std::cout << text;
        std::cout.flush();
        return;
    }
    std::ofstream out(*path, std::ios::binary);
    if (!out) throw InvalidArgument("cannot write " + path->string());
    out << text;
}

}  // namespace mondyn::io
