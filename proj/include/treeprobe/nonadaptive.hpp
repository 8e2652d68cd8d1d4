#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "treeprobe/canonical.hpp"
#include "treeprobe/labeled_tree.hpp"
#include "treeprobe/query.hpp"

namespace treeprobe {

// A non-adaptive query plan, stored as the complement of the query graph.
struct QueryGraphSpec {
    int n = 0;
    std::vector<Edge> missing;  // pairs NOT queried

    long queried_count() const {
        return static_cast<long>(n) * (n - 1) / 2 - static_cast<long>(missing.size());
    }

    bool is_missing(int a, int b) const {
        return std::find(missing.begin(), missing.end(), make_edge(a, b)) != missing.end();
    }

    std::vector<Edge> queried_pairs() const {
        std::set<Edge> gone(missing.begin(), missing.end());
        std::vector<Edge> out;
        for (int a = 0; a < n; ++a) {
            for (int b = a + 1; b < n; ++b) {
                if (!gone.count({a, b})) out.push_back({a, b});
            }
        }
        return out;
    }
};

// Complete graph minus a perfect-or-near-perfect matching: ceil(n(n-2)/2)
// queries, enough to reconstruct the tree exactly.
inline QueryGraphSpec build_reconstruction_query_graph(int n) {
    if (n < 5) throw DomainError("build_reconstruction_query_graph: need n >= 5");
    QueryGraphSpec spec;
    spec.n = n;
    for (int i = 0; 2 * i + 1 < n; ++i) spec.missing.push_back({2 * i, 2 * i + 1});
    return spec;
}

// Complete graph minus a Hamiltonian cycle: every vertex keeps degree n-3,
// n(n-3)/2 queries, enough to identify the tree up to isomorphism and name
// a maximum-distance pair.
inline QueryGraphSpec build_min_degree_query_graph(int n) {
    if (n < 13) throw DomainError("build_min_degree_query_graph: need n >= 13");
    QueryGraphSpec spec;
    spec.n = n;
    for (int i = 0; i < n; ++i) spec.missing.push_back(make_edge(i, (i + 1) % n));
    std::sort(spec.missing.begin(), spec.missing.end());
    return spec;
}

namespace detail {

inline void require_answers_cover(const QueryGraphSpec& spec, const AnsweredQueryGraph& answers) {
    if (answers.n != spec.n) throw DomainError("answers and query spec disagree on n");
    std::set<Edge> gone(spec.missing.begin(), spec.missing.end());
    long expected = spec.queried_count();
    if (static_cast<long>(answers.answers.size()) != expected)
        throw DomainError("answers must cover exactly the queried pairs");
    for (auto& [e, d] : answers.answers) {
        if (gone.count(e)) throw DomainError("answer provided for a missing pair");
    }
}

}  // namespace detail

// Exact reconstruction decoder for the matching-complement plan. Queried
// pairs answered 1 are edges; each missing pair (a,b) is decided by the
// yardstick rule: any third vertex whose two distances do not differ by
// exactly one rules the edge out, a missing endpoint with no answered
// distance-1 partner must hang on its matching partner, and in the
// remaining leaf-leaf case the pair (x,y) of unique neighbors settles it.
inline LabeledTree decode_exact(const QueryGraphSpec& spec, const AnsweredQueryGraph& answers) {
    if (spec.n < 5) throw DomainError("decode_exact: need n >= 5");
    std::vector<int> missing_deg(spec.n, 0);
    for (auto [a, b] : spec.missing) {
        ++missing_deg[a];
        ++missing_deg[b];
    }
    for (int z = 0; z < spec.n; ++z) {
        if (missing_deg[z] > 1)
            throw DomainError("decode_exact: complement must be a matching");
    }
    detail::require_answers_cover(spec, answers);

    const int n = spec.n;
    // decide whether a missing pair is an edge; depth guards the one legal
    // level of recursion (the deciding pair may itself be missing, and a
    // second level would mean {a,b,x,y} is cut off from the rest)
    auto decide = [&](auto&& self, int a, int b, int depth) -> bool {
        for (int w = 0; w < n; ++w) {
            if (w == a || w == b) continue;
            if (std::abs(answers.at(a, w) - answers.at(b, w)) != 1) return false;
        }
        std::vector<int> na, nb;
        for (int w = 0; w < n; ++w) {
            if (w == a || w == b) continue;
            if (answers.at(a, w) == 1) na.push_back(w);
            if (answers.at(b, w) == 1) nb.push_back(w);
        }
        if (na.empty() || nb.empty()) return true;   // missing partner is the only neighbor
        if (na.size() > 1 || nb.size() > 1) return true;  // a non-leaf endpoint
        int x = na[0], y = nb[0];
        if (!spec.is_missing(x, y)) return answers.at(x, y) != 1;
        if (depth > 0) throw DecodeError("disconnection", "mutually deciding missing pairs");
        return !self(self, x, y, depth + 1);
    };

    std::vector<Edge> edges;
    for (auto& [e, d] : answers.answers) {
        if (d == 1) edges.push_back(e);
    }
    for (auto [a, b] : spec.missing) {
        if (decide(decide, a, b, 0)) edges.push_back(make_edge(a, b));
    }
    LabeledTree t(n, std::move(edges));
    if (!t.valid()) throw DecodeError("spanning-tree", "decoded edge set is not a tree");
    DistanceMatrix m = all_pairs_distance(t);
    if (!answers.consistent_with(m))
        throw DecodeError("metric", "decoded tree does not reproduce the answers");
    return t;
}

struct CompletionSet {
    std::vector<LabeledTree> completions;
    CanonicalCode shared_code;
};

namespace detail {

class CompletionSearch {
public:
    CompletionSearch(const QueryGraphSpec& spec, const AnsweredQueryGraph& answers,
                     int max_solutions)
        : n_(spec.n), max_solutions_(max_solutions), missing_(spec.missing) {
        std::sort(missing_.begin(), missing_.end());
        d_.assign(static_cast<size_t>(n_) * n_, -1);
        for (int z = 0; z < n_; ++z) at(z, z) = 0;
        for (auto& [e, dist] : answers.answers) {
            at(e.first, e.second) = dist;
            at(e.second, e.first) = dist;
        }
    }

    std::vector<LabeledTree> run() {
        dfs(0);
        return found_;
    }

    const std::string& failure() const { return failure_; }

private:
    int& at(int a, int b) { return d_[static_cast<size_t>(a) * n_ + b]; }
    int at(int a, int b) const { return d_[static_cast<size_t>(a) * n_ + b]; }

    void note_failure(const std::string& rule) {
        if (failure_.empty()) failure_ = rule;
    }

    // distance candidates for one missing pair given the current matrix
    std::vector<int> candidates(int a, int b) {
        int lo = 1, hi = n_ - 1;
        int parity = -1;
        for (int w = 0; w < n_; ++w) {
            if (w == a || w == b) continue;
            int da = at(a, w), db = at(b, w);
            if (da < 0 || db < 0) continue;
            lo = std::max(lo, std::abs(da - db));
            hi = std::min(hi, da + db);
            int p = (da + db) & 1;
            if (parity < 0) {
                parity = p;
            } else if (parity != p) {
                note_failure("parity");
                return {};
            }
        }
        if (lo > hi) {
            note_failure("bound-window");
            return {};
        }
        std::vector<int> out;
        for (int d = lo; d <= hi; ++d) {
            if (parity >= 0 && (d & 1) != parity) continue;
            out.push_back(d);
        }
        if (out.empty()) note_failure("parity");
        return out;
    }

    // four-point condition on quadruples whose six distances are all known,
    // restricted to those involving the fresh pair
    bool four_point_ok(int a, int b) {
        for (int c = 0; c < n_; ++c) {
            if (c == a || c == b) continue;
            if (at(a, c) < 0 || at(b, c) < 0) continue;
            for (int e = c + 1; e < n_; ++e) {
                if (e == a || e == b) continue;
                if (at(a, e) < 0 || at(b, e) < 0 || at(c, e) < 0) continue;
                int s1 = at(a, b) + at(c, e);
                int s2 = at(a, c) + at(b, e);
                int s3 = at(a, e) + at(b, c);
                int hi = std::max({s1, s2, s3});
                if ((s1 == hi) + (s2 == hi) + (s3 == hi) < 2) return false;
            }
        }
        return true;
    }

    void dfs(size_t idx) {
        if (static_cast<int>(found_.size()) >= max_solutions_) return;
        if (idx == missing_.size()) {
            finish();
            return;
        }
        auto [a, b] = missing_[idx];
        for (int d : candidates(a, b)) {
            at(a, b) = d;
            at(b, a) = d;
            if (four_point_ok(a, b)) {
                dfs(idx + 1);
            } else {
                note_failure("four-point");
            }
            at(a, b) = -1;
            at(b, a) = -1;
            if (static_cast<int>(found_.size()) >= max_solutions_) return;
        }
    }

    // a full assignment is kept only if the distance-1 graph is a spanning
    // tree whose metric reproduces the whole matrix
    void finish() {
        std::vector<Edge> edges;
        for (int a = 0; a < n_; ++a) {
            for (int b = a + 1; b < n_; ++b) {
                if (at(a, b) == 1) edges.push_back({a, b});
            }
        }
        if (static_cast<int>(edges.size()) != n_ - 1) {
            note_failure("spanning-tree");
            return;
        }
        LabeledTree t(n_, std::move(edges));
        if (!t.valid()) {
            note_failure("spanning-tree");
            return;
        }
        DistanceMatrix m = all_pairs_distance(t);
        for (int a = 0; a < n_; ++a) {
            for (int b = a + 1; b < n_; ++b) {
                if (m.at(a, b) != at(a, b)) {
                    note_failure("metric");
                    return;
                }
            }
        }
        found_.push_back(std::move(t));
    }

    int n_;
    int max_solutions_;
    std::vector<Edge> missing_;
    std::vector<int> d_;
    std::vector<LabeledTree> found_;
    std::string failure_;
};

}  // namespace detail

// Backtracking over the missing pairs: each candidate distance respects the
// parity forced by common queried neighbors and the triangle window, the
// four-point condition prunes partial assignments, and full assignments are
// validated as genuine tree metrics. Returns up to max_solutions trees.
inline CompletionSet complete_missing_distances(const QueryGraphSpec& spec,
                                                const AnsweredQueryGraph& answers,
                                                int max_solutions = 64) {
    detail::require_answers_cover(spec, answers);
    detail::CompletionSearch search(spec, answers, max_solutions);
    std::vector<LabeledTree> found = search.run();
    if (found.empty()) {
        std::string rule = search.failure().empty() ? "no-completion" : search.failure();
        throw DecodeError(rule, "no tree realizes the answers");
    }
    CompletionSet out;
    out.shared_code = canonical_code(found.front());
    out.completions = std::move(found);
    return out;
}

// Identification up to isomorphism: all completions must share one
// canonical code (guaranteed for min-degree n-3 plans with n >= 13).
inline CanonicalCode decode_isomorphism(const QueryGraphSpec& spec,
                                        const AnsweredQueryGraph& answers,
                                        int max_solutions = 64) {
    CompletionSet set = complete_missing_distances(spec, answers, max_solutions);
    for (auto& t : set.completions) {
        if (canonical_code(t) != set.shared_code)
            throw InvariantViolation(
                "decode_isomorphism: two non-isomorphic completions for a min-degree plan");
    }
    return set.shared_code;
}

struct MaxPairResult {
    int a = -1, b = -1;
    int distance = 0;
};

// A pair realizing the diameter in every completion.
inline MaxPairResult find_max_distance_pair_nonadaptive(const QueryGraphSpec& spec,
                                                        const AnsweredQueryGraph& answers,
                                                        int max_solutions = 64) {
    CompletionSet set = complete_missing_distances(spec, answers, max_solutions);
    std::vector<DistanceMatrix> ms;
    std::vector<int> diam;
    for (auto& t : set.completions) {
        ms.push_back(all_pairs_distance(t));
        diam.push_back(ms.back().diameter());
    }
    for (int a = 0; a < spec.n; ++a) {
        for (int b = a + 1; b < spec.n; ++b) {
            bool ok = true;
            for (size_t i = 0; i < ms.size() && ok; ++i) {
                if (ms[i].at(a, b) != diam[i]) ok = false;
            }
            if (!ok) continue;
            int d = ms[0].at(a, b);
            for (size_t i = 1; i < ms.size(); ++i) {
                if (d >= 4 && ms[i].at(a, b) != d)
                    throw InvariantViolation("max pair distance not rigid at >= 4");
            }
            if (diam[0] <= 3) {
                int max_answer = 0;
                for (auto& [e, ad] : answers.answers) max_answer = std::max(max_answer, ad);
                if (d != max_answer)
                    throw InvariantViolation("low-diameter pair must match the largest answer");
            }
            return {a, b, d};
        }
    }
    throw InvariantViolation("no pair realizes the diameter in every completion");
}

// The indistinguishable pair behind the min-degree lower bound: when some
// vertex misses three queries, a diameter-4 tree and a diameter-3 tree
// answer every queried pair identically.
inline std::pair<LabeledTree, LabeledTree> low_degree_witness(const QueryGraphSpec& spec) {
    if (spec.n < 13) throw DomainError("low_degree_witness: need n >= 13");
    std::vector<std::vector<int>> missing_at(spec.n);
    for (auto [a, b] : spec.missing) {
        missing_at[a].push_back(b);
        missing_at[b].push_back(a);
    }
    int v = -1;
    for (int z = 0; z < spec.n; ++z) {
        if (missing_at[z].size() >= 3) {
            v = z;
            break;
        }
    }
    if (v < 0) throw DomainError("low_degree_witness: no vertex misses three pairs");
    std::sort(missing_at[v].begin(), missing_at[v].end());
    int u1 = missing_at[v][0], u2 = missing_at[v][1], u4 = missing_at[v][2];
    int u3 = -1;
    for (int z = 0; z < spec.n; ++z) {
        if (z != v && z != u1 && z != u2 && z != u4) {
            u3 = z;
            break;
        }
    }
    std::vector<Edge> base = {make_edge(u1, u2), make_edge(u2, u3), make_edge(u3, u4)};
    for (int z = 0; z < spec.n; ++z) {
        if (z == v || z == u1 || z == u2 || z == u3 || z == u4) continue;
        base.push_back(make_edge(u3, z));
    }
    std::vector<Edge> t_edges = base, tp_edges = base;
    t_edges.push_back(make_edge(u4, v));
    tp_edges.push_back(make_edge(u2, v));
    return {LabeledTree(spec.n, std::move(t_edges)), LabeledTree(spec.n, std::move(tp_edges))};
}

// Every four vertices must share a queried neighbor; holds for any plan of
// minimum degree n-3 once n >= 13.
inline bool common_neighbor_audit(const QueryGraphSpec& spec) {
    if (spec.n < 13) throw DomainError("common_neighbor_audit: need n >= 13");
    std::set<Edge> gone(spec.missing.begin(), spec.missing.end());
    auto queried = [&](int x, int y) { return x != y && !gone.count(make_edge(x, y)); };
    for (int a = 0; a < spec.n; ++a)
        for (int b = a + 1; b < spec.n; ++b)
            for (int c = b + 1; c < spec.n; ++c)
                for (int d = c + 1; d < spec.n; ++d) {
                    bool found = false;
                    for (int w = 0; w < spec.n && !found; ++w) {
                        if (w == a || w == b || w == c || w == d) continue;
                        if (queried(w, a) && queried(w, b) && queried(w, c) && queried(w, d))
                            found = true;
                    }
                    if (!found) return false;
                }
    return true;
}

// Answers for a hidden tree restricted to the plan's queried pairs.
inline AnsweredQueryGraph answers_for(const QueryGraphSpec& spec, const LabeledTree& hidden) {
    DistanceMatrix m = all_pairs_distance(hidden);
    AnsweredQueryGraph aqg(spec.n);
    std::set<Edge> gone(spec.missing.begin(), spec.missing.end());
    for (int a = 0; a < spec.n; ++a) {
        for (int b = a + 1; b < spec.n; ++b) {
            if (!gone.count({a, b})) aqg.record(a, b, m.at(a, b));
        }
    }
    return aqg;
}

}  // namespace treeprobe
