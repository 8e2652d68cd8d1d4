// treeprobe: distance-query games on hidden trees. Subcommands drive the
// adaptive questioners, the adversary tournaments, the non-adaptive
// plans/decoders, the exact game solver, and the bounds verifier.

#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "treeprobe/adaptive.hpp"
#include "treeprobe/harness.hpp"
#include "treeprobe/io.hpp"
#include "treeprobe/solver.hpp"

using namespace treeprobe;
using nlohmann::json;

namespace {

json spec_to_json(const QueryGraphSpec& spec) {
    json missing = json::array();
    for (auto [a, b] : spec.missing) missing.push_back({a, b});
    return {{"n", spec.n}, {"missing", missing}};
}

QueryGraphSpec spec_from_json(const json& j) {
    QueryGraphSpec spec;
    spec.n = j.at("n").get<int>();
    for (auto& e : j.at("missing")) spec.missing.push_back(make_edge(e[0], e[1]));
    std::sort(spec.missing.begin(), spec.missing.end());
    return spec;
}

json report_to_json(const BoundsReport& report) {
    json rows = json::array();
    for (auto& r : report.rows) {
        rows.push_back({{"n", r.n},
                        {"id", r.id},
                        {"measured", r.measured},
                        {"bound", r.bound_expr},
                        {"bound_value", r.bound_value},
                        {"direction", std::string(1, r.direction)},
                        {"pass", r.pass}});
    }
    return {{"rows", rows}, {"all_pass", report.all_pass()}};
}

void emit_report(const BoundsReport& report, bool as_json, bool as_csv) {
    if (as_json) {
        std::cout << report_to_json(report).dump(2) << "\n";
    } else if (as_csv) {
        std::cout << report.to_csv();
    } else {
        report.print(std::cout);
    }
}

json strategy_to_json(const StrategyNode& node) {
    if (node.done) return {{"done", true}};
    json children = json::object();
    for (auto& [answer, child] : node.children)
        children[std::to_string(answer)] = strategy_to_json(*child);
    return {{"query", {node.query.first, node.query.second}}, {"children", children}};
}

// --tree argument: a file path, "random:n" or "all:n"
struct TreeSource {
    std::string kind;  // file | random | all
    std::string path;
    int n = 0;
};

TreeSource parse_tree_source(const std::string& arg) {
    TreeSource src;
    if (arg.rfind("random:", 0) == 0) {
        src.kind = "random";
        src.n = std::stoi(arg.substr(7));
    } else if (arg.rfind("all:", 0) == 0) {
        src.kind = "all";
        src.n = std::stoi(arg.substr(4));
    } else {
        src.kind = "file";
        src.path = arg;
    }
    return src;
}

int run_adaptive(const std::string& algo, const TreeSource& src, std::uint64_t seed,
                 bool as_json, int cap) {
    auto run_one = [&](const LabeledTree& hidden) -> json {
        int n = hidden.n;
        QuerySession s(hidden);
        json out{{"n", n}, {"algo", algo}};
        if (algo == "diameter") {
            DiameterResult r = find_diameter_pair(s, n);
            DistanceMatrix m = all_pairs_distance(hidden);
            out["pair"] = {r.a, r.b};
            out["distance"] = r.distance;
            out["queries"] = r.queries_used;
            out["bound"] = 2 * n - 4;
            out["correct"] = (r.distance == m.diameter() && m.at(r.a, r.b) == m.diameter());
        } else if (algo == "reconstruct") {
            ReconstructionResult r = reconstruct_tree(s, n);
            out["queries"] = r.queries_used;
            out["bound"] = (n - 1) + (n - 1) * (n - 1) / 4;
            out["correct"] = (r.tree == hidden);
            out["tree"] = tree_to_json(r.tree);
        } else if (algo == "spider") {
            ReconstructionResult r = identify_spider(s, n);
            int m = n / 2;
            out["queries"] = r.queries_used;
            out["bound"] = (n - m) * (n - m - 1) / 2 + 5 * n;
            out["correct"] = (r.tree == hidden);
            out["tree"] = tree_to_json(r.tree);
        } else {
            throw DomainError("unknown --algo " + algo);
        }
        return out;
    };

    if (src.kind == "all") {
        if (algo == "spider")
            throw DomainError("spider identification runs on spiders; use --tree random:n");
        BoundsReport report = run_exhaustive(src.n, src.n, algo, cap);
        emit_report(report, as_json, false);
        return report.all_pass() ? 0 : 1;
    }
    LabeledTree hidden(0, {});
    if (src.kind == "random") {
        std::mt19937_64 rng(seed);
        hidden = random_tree(src.n, rng);
        if (algo == "spider") {
            // a uniformly relabeled canonical spider
            int n = src.n, m = n / 2;
            std::vector<int> perm(n);
            std::iota(perm.begin(), perm.end(), 0);
            std::shuffle(perm.begin(), perm.end(), rng);
            std::vector<Edge> edges;
            for (int i = 1; i <= m; ++i) edges.push_back(make_edge(perm[0], perm[i]));
            for (int j = 1; j <= n - m - 1; ++j)
                edges.push_back(make_edge(perm[j], perm[m + j]));
            hidden = LabeledTree(n, std::move(edges));
        }
    } else {
        hidden = tree_from_json(load_json_file(src.path));
    }
    json out = run_one(hidden);
    if (as_json) {
        std::cout << out.dump(2) << "\n";
    } else {
        std::cout << "algo=" << algo << " n=" << out["n"] << " queries=" << out["queries"]
                  << " bound=" << out["bound"]
                  << " correct=" << (out["correct"].get<bool>() ? "yes" : "no") << "\n";
    }
    return out["correct"].get<bool>() && out["queries"].get<int>() <= out["bound"].get<int>()
               ? 0
               : 1;
}

void write_game_log(const std::string& path, const std::vector<GameEvent>& log) {
    std::ofstream out(path, std::ios::app);
    for (auto& ev : log) {
        json line{{"pair", {ev.pair.first, ev.pair.second}},
                  {"answer", ev.answer},
                  {"count", ev.count}};
        if (!ev.free_info.empty()) {
            json fi = json::array();
            for (auto& f : ev.free_info) fi.push_back({f[0], f[1], f[2]});
            line["free_info"] = fi;
        }
        out << line.dump() << "\n";
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"distance-query games on hidden trees"};
    app.require_subcommand(1);
    app.fallthrough();

    std::uint64_t seed = 1;
    bool as_json = false, as_csv = false;
    int cap = kDefaultEnumerationCap;
    app.add_option("--seed", seed, "seed for randomized runs");
    app.add_flag("--json", as_json, "machine-readable output");
    app.add_flag("--csv", as_csv, "CSV report output");
    app.add_option("--cap", cap, "enumeration cap override");

    // adaptive
    auto* adaptive = app.add_subcommand("adaptive", "run an adaptive questioner");
    std::string algo = "diameter", tree_arg = "random:12";
    adaptive->add_option("--algo", algo, "diameter|reconstruct|spider")->required();
    adaptive->add_option("--tree", tree_arg, "tree file, random:n or all:n")->required();

    // adversary tournaments
    auto* adversary = app.add_subcommand("adversary", "play questioners against an adversary");
    std::string strategy = "doublestar", questioner = "random", log_path;
    int adv_n = 10, games = 10;
    adversary->add_option("--strategy", strategy, "doublestar|layered|spider|spider-hidden")
        ->required();
    adversary
        ->add_option("--questioner", questioner,
                     "paper-diameter|paper-reconstruct|paper-spider|random|greedy")
        ->required();
    adversary->add_option("--n", adv_n, "vertex count")->required();
    adversary->add_option("--games", games, "number of games");
    adversary->add_option("--log", log_path, "append JSON-lines game log here");

    // nonadaptive
    auto* nonadaptive = app.add_subcommand("nonadaptive", "non-adaptive plans and decoders");
    nonadaptive->require_subcommand(1);
    std::string variant = "reconstruction", spec_path, answers_path, out_path;
    int na_n = 13;
    auto* na_build = nonadaptive->add_subcommand("build", "emit a query plan");
    na_build->add_option("--n", na_n, "vertex count")->required();
    na_build->add_option("--variant", variant, "reconstruction|mindegree");
    na_build->add_option("--out", out_path, "write the plan here instead of stdout");
    auto* na_decode = nonadaptive->add_subcommand("decode-exact", "reconstruct from answers");
    na_decode->add_option("--answers", answers_path, "transcript file")->required();
    na_decode->add_option("--spec", spec_path, "plan file (default: matching plan)");
    auto* na_iso = nonadaptive->add_subcommand("decode-iso", "identify up to isomorphism");
    na_iso->add_option("--answers", answers_path, "transcript file")->required();
    na_iso->add_option("--spec", spec_path, "plan file (default: min-degree plan)");
    auto* na_max = nonadaptive->add_subcommand("max-pair", "find a maximum-distance pair");
    na_max->add_option("--answers", answers_path, "transcript file")->required();
    na_max->add_option("--spec", spec_path, "plan file (default: min-degree plan)");
    auto* na_wit = nonadaptive->add_subcommand("witness", "indistinguishable tree pair");
    na_wit->add_option("--n", na_n, "vertex count");
    na_wit->add_option("--spec", spec_path, "plan file with a low-degree vertex")->required();

    // solver
    auto* solve = app.add_subcommand("solve", "exact game values for tiny n");
    solve->require_subcommand(1);
    std::string goal_name = "maxdist", emit_path;
    int solve_n = 4;
    int solver_cap = kSolverCap;
    auto* solve_a = solve->add_subcommand("adaptive", "minimax value");
    solve_a->add_option("--goal", goal_name, "maxdist|exact|iso")->required();
    solve_a->add_option("--n", solve_n, "vertex count")->required();
    solve_a->add_option("--emit-strategy", emit_path, "write the optimal decision tree here");
    solve_a->add_option("--solver-cap", solver_cap, "lift the solver cap (7 is slow)");
    auto* solve_n_cmd = solve->add_subcommand("nonadaptive", "smallest feasible plan");
    solve_n_cmd->add_option("--goal", goal_name, "maxdist|exact|iso")->required();
    solve_n_cmd->add_option("--n", solve_n, "vertex count")->required();
    solve_n_cmd->add_option("--solver-cap", solver_cap, "lift the solver cap");

    // exhaustive + bounds
    auto* exhaustive = app.add_subcommand("exhaustive", "sweep all trees of given sizes");
    std::string ex_algo = "diameter";
    int ex_from = 4, ex_to = 7;
    exhaustive->add_option("--algo", ex_algo, "diameter|reconstruct|decode-exact")->required();
    exhaustive->add_option("--from", ex_from, "smallest n");
    exhaustive->add_option("--to", ex_to, "largest n");

    auto* verify = app.add_subcommand("verify-bounds", "evaluate every closed-form bound");

    CLI11_PARSE(app, argc, argv);

    try {
        if (adaptive->parsed()) {
            return run_adaptive(algo, parse_tree_source(tree_arg), seed, as_json, cap);
        }
        if (adversary->parsed()) {
            std::mt19937_64 rng(seed);
            if (!log_path.empty()) {
                for (int g = 0; g < games; ++g) {
                    GameResult r;
                    if (strategy == "doublestar")
                        r = play_double_star_game(questioner, adv_n, rng, true);
                    else if (strategy == "layered")
                        r = play_layered_game(questioner, adv_n, rng, true);
                    else
                        r = play_spider_game(questioner, adv_n, strategy == "spider", rng, true);
                    write_game_log(log_path, r.log);
                }
            }
            BoundsReport report = run_tournament(strategy, questioner, adv_n, games, seed);
            emit_report(report, as_json, as_csv);
            return report.all_pass() ? 0 : 1;
        }
        if (nonadaptive->parsed()) {
            if (na_build->parsed()) {
                QueryGraphSpec spec = variant == "mindegree"
                                          ? build_min_degree_query_graph(na_n)
                                          : build_reconstruction_query_graph(na_n);
                json j = spec_to_json(spec);
                if (out_path.empty()) std::cout << j.dump(2) << "\n";
                else save_json_file(out_path, j);
                return 0;
            }
            if (na_wit->parsed()) {
                QueryGraphSpec spec = spec_from_json(load_json_file(spec_path));
                auto [t, tp] = low_degree_witness(spec);
                json out{{"tree", tree_to_json(t)}, {"twin", tree_to_json(tp)}};
                std::cout << out.dump(2) << "\n";
                return 0;
            }
            AnsweredQueryGraph answers = transcript_from_json(load_json_file(answers_path));
            if (na_decode->parsed()) {
                QueryGraphSpec spec = spec_path.empty()
                                          ? build_reconstruction_query_graph(answers.n)
                                          : spec_from_json(load_json_file(spec_path));
                LabeledTree t = decode_exact(spec, answers);
                std::cout << tree_to_json(t).dump(as_json ? 2 : -1) << "\n";
                return 0;
            }
            if (na_iso->parsed()) {
                QueryGraphSpec spec = spec_path.empty()
                                          ? build_min_degree_query_graph(answers.n)
                                          : spec_from_json(load_json_file(spec_path));
                CanonicalCode code = decode_isomorphism(spec, answers);
                std::cout << json{{"code", code.code}}.dump(as_json ? 2 : -1) << "\n";
                return 0;
            }
            if (na_max->parsed()) {
                QueryGraphSpec spec = spec_path.empty()
                                          ? build_min_degree_query_graph(answers.n)
                                          : spec_from_json(load_json_file(spec_path));
                MaxPairResult r = find_max_distance_pair_nonadaptive(spec, answers);
                std::cout << json{{"pair", {r.a, r.b}}, {"distance", r.distance}}.dump(
                                 as_json ? 2 : -1)
                          << "\n";
                return 0;
            }
            return 1;
        }
        if (solve->parsed()) {
            Goal goal = goal_name == "exact"   ? Goal::ExactTree
                        : goal_name == "iso"   ? Goal::IsoClass
                                               : Goal::MaxDistPair;
            if (solve_a->parsed()) {
                int value = solve_adaptive(solve_n, goal, solver_cap);
                if (!emit_path.empty()) {
                    auto root = optimal_strategy_extract(solve_n, goal, solver_cap);
                    save_json_file(emit_path, strategy_to_json(*root));
                }
                std::cout << json{{"n", solve_n}, {"goal", goal_name}, {"value", value}}.dump(
                                 as_json ? 2 : -1)
                          << "\n";
                return 0;
            }
            int value = solve_nonadaptive(solve_n, goal, solver_cap);
            std::cout << json{{"n", solve_n}, {"goal", goal_name}, {"value", value}}.dump(
                             as_json ? 2 : -1)
                      << "\n";
            return 0;
        }
        if (exhaustive->parsed()) {
            BoundsReport report = run_exhaustive(ex_from, ex_to, ex_algo, cap);
            emit_report(report, as_json, as_csv);
            return report.all_pass() ? 0 : 1;
        }
        if (verify->parsed()) {
            HarnessConfig cfg;
            cfg.seed = seed;
            BoundsReport report = verify_bounds_table(cfg);
            emit_report(report, as_json, as_csv);
            return report.all_pass() ? 0 : 1;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 1;
}
