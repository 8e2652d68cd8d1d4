#pragma once

#include <algorithm>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "treeprobe/adaptive.hpp"
#include "treeprobe/adversary_double_star.hpp"
#include "treeprobe/adversary_layered.hpp"
#include "treeprobe/adversary_spider.hpp"
#include "treeprobe/nonadaptive.hpp"
#include "treeprobe/query.hpp"
#include "treeprobe/solver.hpp"

namespace treeprobe {

struct BoundsRow {
    int n = 0;
    std::string id;          // algorithm or strategy under test
    long measured = 0;
    std::string bound_expr;  // closed form the row checks against
    long bound_value = 0;
    char direction = '<';    // '<' measured <= bound, '>' measured >= bound, '=' equal
    bool pass = false;
};

struct BoundsReport {
    std::vector<BoundsRow> rows;

    bool all_pass() const {
        for (auto& r : rows)
            if (!r.pass) return false;
        return true;
    }

    void add(int n, std::string id, long measured, std::string expr, long bound, char dir) {
        BoundsRow row{n, std::move(id), measured, std::move(expr), bound, dir, false};
        switch (dir) {
            case '<': row.pass = measured <= bound; break;
            case '>': row.pass = measured >= bound; break;
            default: row.pass = measured == bound; break;
        }
        rows.push_back(std::move(row));
    }

    void merge(const BoundsReport& other) {
        rows.insert(rows.end(), other.rows.begin(), other.rows.end());
    }

    std::string to_csv() const {
        std::ostringstream out;
        out << "n,id,measured,bound,bound_value,direction,pass\n";
        for (auto& r : rows) {
            out << r.n << ',' << r.id << ',' << r.measured << ',' << '"' << r.bound_expr
                << '"' << ',' << r.bound_value << ',' << r.direction << ','
                << (r.pass ? "pass" : "FAIL") << '\n';
        }
        return out.str();
    }

    void print(std::ostream& os) const {
        for (auto& r : rows) {
            os << (r.pass ? "[pass] " : "[FAIL] ") << r.id << " n=" << r.n
               << ": measured " << r.measured << ' '
               << (r.direction == '<' ? "<=" : r.direction == '>' ? ">=" : "==") << ' '
               << r.bound_value << "  (" << r.bound_expr << ")\n";
        }
    }
};

struct GameEvent {
    Edge pair;
    int answer = 0;
    std::vector<std::array<int, 3>> free_info;
    int count = 0;
};

struct GameResult {
    int n = 0;
    int queries_at_end = 0;
    int certificate = 0;       // |E(G1 u G2)| for the double-star game
    int informative = 0;       // layered game
    int cross_queries = 0;     // spider game
    bool audit_pass = false;
    bool ended = false;
    std::vector<GameEvent> log;
};

namespace harness_detail {

template <class AskFn>
void fill_until(int n, AskFn&& ask_if_open, std::mt19937_64& rng) {
    std::vector<Edge> pairs;
    for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b) pairs.push_back({a, b});
    std::shuffle(pairs.begin(), pairs.end(), rng);
    for (auto [x, y] : pairs) {
        if (!ask_if_open(x, y)) return;
    }
}

}  // namespace harness_detail

// One double-star game. Known questioners: paper-diameter, random, greedy
// (greedy needs n within the enumeration cap). The game runs until the
// adversary declares the end; a questioner whose plan finishes early keeps
// probing random leftover pairs.
inline GameResult play_double_star_game(const std::string& questioner, int n,
                                        std::mt19937_64& rng, bool keep_log = false) {
    DoubleStarAdversary adv(n);
    GameResult result;
    result.n = n;
    auto ask = [&](int x, int y) {
        if (adv.ended()) return false;
        Edge e = make_edge(x, y);
        bool fresh = !adv.recorded().count(e);
        auto reply = adv.answer(x, y);
        if (keep_log && fresh)
            result.log.push_back({e, reply.distance, reply.revealed, adv.query_count()});
        return !adv.ended();
    };

    if (questioner == "paper-diameter") {
        DoubleStarAdversary& a = adv;
        struct Session {
            DoubleStarAdversary& adv;
            GameResult& result;
            bool keep_log;
            int ask(int x, int y) {
                Edge e = make_edge(x, y);
                bool fresh = !adv.recorded().count(e);
                auto reply = adv.answer(x, y);
                if (keep_log && fresh)
                    result.log.push_back({e, reply.distance, reply.revealed, adv.query_count()});
                return reply.distance;
            }
        } session{a, result, keep_log};
        try {
            find_diameter_pair(session, n);
        } catch (const ProtocolError&) {
        }
        harness_detail::fill_until(n, ask, rng);
    } else if (questioner == "greedy") {
        if (n > kDefaultEnumerationCap)
            throw CapExceeded("greedy questioner needs n within the enumeration cap");
        while (!adv.ended()) {
            // pick the unasked pair splitting the consistent set most
            std::vector<LabeledTree> consistent;
            for_each_tree(n, [&](const LabeledTree& t) {
                DistanceMatrix m = all_pairs_distance(t);
                bool ok = true;
                for (auto& [e, d] : adv.recorded())
                    if (m.at(e.first, e.second) != d) ok = false;
                if (ok) consistent.push_back(t);
            });
            int best_pair = -1, best_split = 0;
            for (int a = 0; a < n; ++a) {
                for (int b = a + 1; b < n; ++b) {
                    if (adv.recorded().count({a, b})) continue;
                    std::set<int> values;
                    for (auto& t : consistent) values.insert(all_pairs_distance(t).at(a, b));
                    if (static_cast<int>(values.size()) > best_split) {
                        best_split = static_cast<int>(values.size());
                        best_pair = a * n + b;
                    }
                }
            }
            if (best_pair < 0) break;
            ask(best_pair / n, best_pair % n);
        }
    } else {  // random
        harness_detail::fill_until(n, ask, rng);
    }
    result.ended = adv.ended();
    result.queries_at_end = adv.count_at_end();
    result.certificate = adv.certificate_edges();
    return result;
}

inline GameResult play_layered_game(const std::string& questioner, int n, std::mt19937_64& rng,
                                    bool keep_log = false) {
    LayeredAdversary adv(n);
    GameResult result;
    result.n = n;
    struct Session {
        LayeredAdversary& adv;
        GameResult& result;
        bool keep_log;
        int ask(int x, int y) {
            Edge e = make_edge(x, y);
            bool fresh = !adv.answered().count(e);
            int d = adv.answer(x, y);
            if (keep_log && fresh) result.log.push_back({e, d, {}, adv.query_count()});
            return d;
        }
    } session{adv, result, keep_log};

    if (questioner == "paper-reconstruct") {
        reconstruct_tree(session, n);
    } else {  // random play until the assignment is pinned
        std::vector<Edge> pairs;
        for (int a = 0; a < n; ++a)
            for (int b = a + 1; b < n; ++b) pairs.push_back({a, b});
        std::shuffle(pairs.begin(), pairs.end(), rng);
        for (auto [x, y] : pairs) {
            session.ask(x, y);
            if (adv.identified()) break;
        }
    }
    result.ended = adv.identified();
    result.queries_at_end = adv.query_count();
    result.informative = adv.informative_count();
    return result;
}

inline GameResult play_spider_game(const std::string& questioner, int n, bool reveal_roles,
                                   std::mt19937_64& rng, bool keep_log = false) {
    SpiderAdversary adv(n, reveal_roles);
    GameResult result;
    result.n = n;
    struct Session {
        SpiderAdversary& adv;
        GameResult& result;
        bool keep_log;
        int ask(int x, int y) {
            Edge e = make_edge(x, y);
            bool fresh = !adv.answered().count(e);
            int d = adv.answer(x, y);
            if (keep_log && fresh) result.log.push_back({e, d, {}, adv.query_count()});
            return d;
        }
    } session{adv, result, keep_log};

    if (questioner == "paper-spider") {
        identify_spider(session, n);
    } else {
        std::vector<Edge> pairs;
        for (int a = 0; a < n; ++a)
            for (int b = a + 1; b < n; ++b) pairs.push_back({a, b});
        std::shuffle(pairs.begin(), pairs.end(), rng);
        for (auto [x, y] : pairs) session.ask(x, y);
    }
    result.ended = true;
    result.queries_at_end = adv.query_count();
    result.cross_queries = adv.cross_query_count();
    AnsweredQueryGraph transcript(n);
    for (auto& [e, d] : adv.answered()) transcript.record(e.first, e.second, d);
    result.audit_pass = pairwise_coverage_audit(transcript, adv.witness_matching());
    return result;
}

// Exhaustive sweeps of the adaptive algorithms and the exact decoder.
inline BoundsReport run_exhaustive(int n_lo, int n_hi, const std::string& algo,
                                   int cap = kDefaultEnumerationCap) {
    BoundsReport report;
    for (int n = n_lo; n <= n_hi; ++n) {
        if (n > cap) throw CapExceeded("run_exhaustive: n exceeds enumeration cap");
        long worst = 0;
        long failures = 0;
        if (algo == "diameter") {
            for_each_tree(n, [&](const LabeledTree& t) {
                DistanceMatrix m = all_pairs_distance(t);
                QuerySession s(t);
                DiameterResult r = find_diameter_pair(s, n);
                if (m.at(r.a, r.b) != m.diameter() || r.distance != m.diameter()) ++failures;
                worst = std::max(worst, static_cast<long>(r.queries_used));
            });
            report.add(n, "diameter-correct", failures, "exact on every tree", 0, '=');
            report.add(n, "diameter-queries", worst, "2n-4", 2L * n - 4, '<');
        } else if (algo == "reconstruct") {
            for_each_tree(n, [&](const LabeledTree& t) {
                QuerySession s(t);
                ReconstructionResult r = reconstruct_tree(s, n);
                if (r.tree != t) ++failures;
                worst = std::max(worst, static_cast<long>(r.queries_used));
            });
            report.add(n, "reconstruct-correct", failures, "exact on every tree", 0, '=');
            report.add(n, "reconstruct-queries", worst, "(n-1)+floor((n-1)^2/4)",
                       (n - 1) + static_cast<long>(n - 1) * (n - 1) / 4, '<');
        } else if (algo == "decode-exact") {
            if (n < 5) throw DomainError("decode-exact needs n >= 5");
            QueryGraphSpec spec = build_reconstruction_query_graph(n);
            for_each_tree(n, [&](const LabeledTree& t) {
                if (decode_exact(spec, answers_for(spec, t)) != t) ++failures;
            });
            report.add(n, "decode-exact-correct", failures, "exact on every tree", 0, '=');
            report.add(n, "decode-exact-queries", spec.queried_count(), "ceil(n(n-2)/2)",
                       (static_cast<long>(n) * (n - 2) + 1) / 2, '=');
        } else {
            throw DomainError("run_exhaustive: unknown algorithm " + algo);
        }
    }
    return report;
}

// Repeated games against one adversary; aggregates the forcing statistics.
inline BoundsReport run_tournament(const std::string& adversary, const std::string& questioner,
                                   int n, int games, std::uint64_t seed) {
    BoundsReport report;
    std::mt19937_64 rng(seed);
    if (adversary == "doublestar") {
        long min_end = 1 << 30, min_cert = 1 << 30;
        for (int g = 0; g < games; ++g) {
            GameResult r = play_double_star_game(questioner, n, rng);
            min_end = std::min(min_end, static_cast<long>(r.queries_at_end));
            min_cert = std::min(min_cert, static_cast<long>(r.certificate));
        }
        report.add(n, "doublestar-end/" + questioner, min_end, "2n-9", 2L * n - 9, '>');
        report.add(n, "doublestar-certificate/" + questioner, min_cert, "2n-7", 2L * n - 7,
                   '>');
    } else if (adversary == "layered") {
        long min_informative = 1 << 30;
        for (int g = 0; g < games; ++g) {
            GameResult r = play_layered_game(questioner, n, rng);
            if (r.ended) min_informative = std::min(min_informative,
                                                    static_cast<long>(r.informative));
        }
        int m = n / 2;
        report.add(n, "layered-informative/" + questioner, min_informative,
                   "(floor(n/2)-1)(n-floor(n/2)-1)", static_cast<long>(m - 1) * (n - m - 1),
                   '>');
    } else if (adversary == "spider" || adversary == "spider-hidden") {
        bool reveal = adversary == "spider";
        long min_cross = 1 << 30;
        long audits = 0;
        for (int g = 0; g < games; ++g) {
            GameResult r = play_spider_game(questioner, n, reveal, rng);
            min_cross = std::min(min_cross, static_cast<long>(r.cross_queries));
            if (r.audit_pass) ++audits;
        }
        long legs = (n - 1) / 2;
        report.add(n, adversary + "-cross/" + questioner, min_cross, "C((n-1)/2,2)",
                   legs * (legs - 1) / 2, '>');
        report.add(n, adversary + "-audit/" + questioner, audits, "all games", games, '=');
    } else {
        throw DomainError("run_tournament: unknown adversary " + adversary);
    }
    return report;
}

struct HarnessConfig {
    std::uint64_t seed = 1;
    int exhaustive_lo = 4, exhaustive_hi = 7;
    std::vector<int> nonadaptive_sizes{5, 6, 7, 8, 13, 20, 30, 40};
    std::vector<int> doublestar_sizes{10, 20};
    std::vector<int> layered_sizes{10, 12};
    std::vector<int> spider_sizes{9, 11};
    int games = 25;
    int random_trials = 200;
    std::vector<int> random_tree_sizes{20, 50, 100};
};

// Every closed-form bound, evaluated against constructor sizes, measured
// counts and solver values.
inline BoundsReport verify_bounds_table(const HarnessConfig& cfg = {}) {
    BoundsReport report;
    std::mt19937_64 rng(cfg.seed);

    for (int n : cfg.nonadaptive_sizes) {
        if (n >= 5) {
            report.add(n, "g_N-plan", build_reconstruction_query_graph(n).queried_count(),
                       "ceil(n(n-2)/2)", (static_cast<long>(n) * (n - 2) + 1) / 2, '=');
        }
        if (n >= 13) {
            report.add(n, "f_N-plan", build_min_degree_query_graph(n).queried_count(),
                       "n(n-3)/2", static_cast<long>(n) * (n - 3) / 2, '=');
            report.add(n, "h_N-plan", build_min_degree_query_graph(n).queried_count(),
                       "n(n-3)/2", static_cast<long>(n) * (n - 3) / 2, '=');
        }
    }

    report.merge(run_exhaustive(cfg.exhaustive_lo, cfg.exhaustive_hi, "diameter"));
    report.merge(run_exhaustive(cfg.exhaustive_lo, cfg.exhaustive_hi, "reconstruct"));
    report.merge(run_exhaustive(std::max(5, cfg.exhaustive_lo), cfg.exhaustive_hi,
                                "decode-exact"));

    // randomized upper-bound checks at larger n
    for (int n : cfg.random_tree_sizes) {
        long worst_diam = 0, worst_rec = 0, diam_fail = 0, rec_fail = 0;
        for (int trial = 0; trial < cfg.random_trials; ++trial) {
            LabeledTree t = random_tree(n, rng);
            DistanceMatrix m = all_pairs_distance(t);
            QuerySession sd(t);
            DiameterResult rd = find_diameter_pair(sd, n);
            if (rd.distance != m.diameter()) ++diam_fail;
            worst_diam = std::max(worst_diam, static_cast<long>(rd.queries_used));
            QuerySession sr(t);
            ReconstructionResult rr = reconstruct_tree(sr, n);
            if (rr.tree != t) ++rec_fail;
            worst_rec = std::max(worst_rec, static_cast<long>(rr.queries_used));
        }
        report.add(n, "diameter-random-correct", diam_fail, "exact on every tree", 0, '=');
        report.add(n, "diameter-random", worst_diam, "2n-4", 2L * n - 4, '<');
        report.add(n, "reconstruct-random-correct", rec_fail, "exact on every tree", 0, '=');
        report.add(n, "reconstruct-random", worst_rec, "(n-1)+floor((n-1)^2/4)",
                   (n - 1) + static_cast<long>(n - 1) * (n - 1) / 4, '<');
    }

    // spider identification on random spiders
    for (int n : {9, 12, 16, 21}) {
        int m = n / 2;
        long worst = 0, fails = 0;
        for (int trial = 0; trial < 50; ++trial) {
            std::vector<int> perm(n);
            std::iota(perm.begin(), perm.end(), 0);
            std::shuffle(perm.begin(), perm.end(), rng);
            std::vector<Edge> edges;
            for (int i = 1; i <= m; ++i) edges.push_back(make_edge(perm[0], perm[i]));
            for (int j = 1; j <= n - m - 1; ++j)
                edges.push_back(make_edge(perm[j], perm[m + j]));
            LabeledTree spider(n, std::move(edges));
            QuerySession s(spider);
            ReconstructionResult r = identify_spider(s, n);
            if (r.tree != spider) ++fails;
            worst = std::max(worst, static_cast<long>(r.queries_used));
        }
        report.add(n, "spider-correct", fails, "exact on every spider", 0, '=');
        report.add(n, "spider-queries", worst, "C(n-floor(n/2),2)+5n",
                   static_cast<long>(n - m) * (n - m - 1) / 2 + 5L * n, '<');
    }

    for (int n : cfg.doublestar_sizes) {
        report.merge(run_tournament("doublestar", "paper-diameter", n, 1, cfg.seed));
        report.merge(run_tournament("doublestar", "random", n, cfg.games, cfg.seed + n));
    }
    for (int n : cfg.layered_sizes)
        report.merge(run_tournament("layered", "paper-reconstruct", n, 1, cfg.seed));
    for (int n : cfg.spider_sizes)
        report.merge(run_tournament("spider", "paper-spider", n, 1, cfg.seed));

    // solver ground truth against the paper algorithms and closed forms
    report.add(3, "f_A-solver", solve_adaptive(3, Goal::MaxDistPair), "hand minimax", 2, '=');
    report.add(5, "g_N-solver", solve_nonadaptive(5, Goal::ExactTree), "ceil(n(n-2)/2)", 8,
               '=');
    for (int n : {4, 5}) {
        long measured = 0;
        for_each_tree(n, [&](const LabeledTree& t) {
            QuerySession s(t);
            measured = std::max(measured, (long)find_diameter_pair(s, n).queries_used);
        });
        report.add(n, "f_A-sandwich", solve_adaptive(n, Goal::MaxDistPair),
                   "<= measured paper-algorithm count", measured, '<');
    }
    return report;
}

}  // namespace treeprobe
