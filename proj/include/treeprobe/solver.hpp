#pragma once

#include <algorithm>
#include <map>
#include <memory>
#include <numeric>
#include <string>
#include <unordered_map>
#include <vector>

#include "treeprobe/canonical.hpp"
#include "treeprobe/labeled_tree.hpp"

namespace treeprobe {

enum class Goal { MaxDistPair, ExactTree, IsoClass };

inline const char* to_string(Goal g) {
    switch (g) {
        case Goal::MaxDistPair: return "maxdist";
        case Goal::ExactTree: return "exact";
        case Goal::IsoClass: return "iso";
    }
    return "?";
}

// Shared tabulated universe: all labeled trees on n vertices with their
// metrics, diameters and canonical codes.
struct TreeUniverse {
    int n = 0;
    int pair_count = 0;
    std::vector<Edge> pairs;                 // index -> unordered pair
    std::vector<std::vector<int>> dist;      // tree id -> per-pair distance
    std::vector<int> diameter;               // tree id -> diameter
    std::vector<int> iso_class;              // tree id -> canonical class id
    std::vector<LabeledTree> trees;

    explicit TreeUniverse(int n_) : n(n_) {
        for (int a = 0; a < n; ++a)
            for (int b = a + 1; b < n; ++b) pairs.push_back({a, b});
        pair_count = static_cast<int>(pairs.size());
        std::map<CanonicalCode, int> classes;
        for_each_tree(n, [&](const LabeledTree& t) {
            DistanceMatrix m = all_pairs_distance(t);
            std::vector<int> row(pair_count);
            int diam = 0;
            for (int p = 0; p < pair_count; ++p) {
                row[p] = m.at(pairs[p].first, pairs[p].second);
                diam = std::max(diam, row[p]);
            }
            dist.push_back(std::move(row));
            diameter.push_back(diam);
            CanonicalCode code = canonical_code(t);
            auto [it, fresh] = classes.emplace(code, static_cast<int>(classes.size()));
            iso_class.push_back(it->second);
            trees.push_back(t);
        });
    }

    // goal predicate over a nonempty set of consistent trees
    bool goal_reached(const std::vector<int>& ids, Goal goal) const {
        if (ids.empty()) throw DomainError("goal_reached: empty consistent set");
        switch (goal) {
            case Goal::ExactTree:
                return ids.size() == 1;
            case Goal::IsoClass: {
                for (size_t i = 1; i < ids.size(); ++i) {
                    if (iso_class[ids[i]] != iso_class[ids[0]]) return false;
                }
                return true;
            }
            case Goal::MaxDistPair: {
                for (int p = 0; p < pair_count; ++p) {
                    bool ok = true;
                    for (int id : ids) {
                        if (dist[id][p] != diameter[id]) {
                            ok = false;
                            break;
                        }
                    }
                    if (ok) return true;
                }
                return false;
            }
        }
        return false;
    }
};

// one node of an extracted optimal decision tree
struct StrategyNode {
    bool done = false;
    Edge query{-1, -1};
    std::map<int, std::unique_ptr<StrategyNode>> children;  // answer -> next

    int depth() const {
        if (done) return 0;
        int d = 0;
        for (auto& [ans, child] : children) d = std::max(d, child->depth());
        return 1 + d;
    }
};

inline constexpr int kSolverCap = 6;

namespace detail {

class AdaptiveSolver {
public:
    AdaptiveSolver(int n, Goal goal, bool memoize)
        : n_(n), goal_(goal), memoize_(memoize), uni_(n) {
        perms_ = all_permutations(n);
    }

    int solve() {
        std::vector<int> ids(uni_.trees.size());
        std::iota(ids.begin(), ids.end(), 0);
        return value(0u, ids);
    }

    std::unique_ptr<StrategyNode> extract() {
        std::vector<int> ids(uni_.trees.size());
        std::iota(ids.begin(), ids.end(), 0);
        return extract_node(0u, ids);
    }

    const TreeUniverse& universe() const { return uni_; }

private:
    static std::vector<std::vector<int>> all_permutations(int n) {
        std::vector<std::vector<int>> out;
        std::vector<int> p(n);
        std::iota(p.begin(), p.end(), 0);
        do {
            out.push_back(p);
        } while (std::next_permutation(p.begin(), p.end()));
        return out;
    }

    // the answered graph up to vertex relabeling identifies the game state
    std::string canonical_key(uint32_t mask, const std::vector<int>& ids) const {
        const std::vector<int>& ref = uni_.dist[ids[0]];
        std::string best;
        std::vector<std::array<int, 3>> entries;
        for (const auto& perm : perms_) {
            entries.clear();
            for (int p = 0; p < uni_.pair_count; ++p) {
                if (!(mask & (1u << p))) continue;
                int a = perm[uni_.pairs[p].first];
                int b = perm[uni_.pairs[p].second];
                if (a > b) std::swap(a, b);
                entries.push_back({a, b, ref[p]});
            }
            std::sort(entries.begin(), entries.end());
            std::string key;
            key.reserve(entries.size() * 3);
            for (auto& e : entries) {
                key.push_back(static_cast<char>('0' + e[0]));
                key.push_back(static_cast<char>('0' + e[1]));
                key.push_back(static_cast<char>('0' + e[2]));
            }
            if (best.empty() || key < best) best = std::move(key);
        }
        return best;
    }

    // split the consistent set by the answer to pair p
    std::map<int, std::vector<int>> partition(const std::vector<int>& ids, int p) const {
        std::map<int, std::vector<int>> parts;
        for (int id : ids) parts[uni_.dist[id][p]].push_back(id);
        return parts;
    }

    int value(uint32_t mask, const std::vector<int>& ids) {
        if (uni_.goal_reached(ids, goal_)) return 0;
        std::string key;
        if (memoize_) {
            key = canonical_key(mask, ids);
            auto it = memo_.find(key);
            if (it != memo_.end()) return it->second;
        }
        // candidate moves: unasked pairs with at least two feasible answers,
        // ordered by the size of their largest part
        std::vector<std::pair<int, int>> moves;  // (max part size, pair)
        for (int p = 0; p < uni_.pair_count; ++p) {
            if (mask & (1u << p)) continue;
            auto parts = partition(ids, p);
            if (parts.size() < 2) continue;
            int biggest = 0;
            for (auto& [d, part] : parts) biggest = std::max(biggest, (int)part.size());
            moves.push_back({biggest, p});
        }
        std::sort(moves.begin(), moves.end());
        int best = 1 << 20;
        for (auto [biggest, p] : moves) {
            auto parts = partition(ids, p);
            int worst = 0;
            for (auto& [d, part] : parts) {
                worst = std::max(worst, 1 + value(mask | (1u << p), part));
                if (worst >= best) break;  // cannot improve on the best move
            }
            best = std::min(best, worst);
            if (best == 1) break;  // a single query cannot be beaten here
        }
        if (memoize_) memo_[key] = best;
        return best;
    }

    std::unique_ptr<StrategyNode> extract_node(uint32_t mask, const std::vector<int>& ids) {
        auto node = std::make_unique<StrategyNode>();
        if (uni_.goal_reached(ids, goal_)) {
            node->done = true;
            return node;
        }
        int target = value(mask, ids);
        // smallest pair (lexicographic) achieving the optimal value
        for (int p = 0; p < uni_.pair_count; ++p) {
            if (mask & (1u << p)) continue;
            auto parts = partition(ids, p);
            if (parts.size() < 2) continue;
            int worst = 0;
            for (auto& [d, part] : parts)
                worst = std::max(worst, 1 + value(mask | (1u << p), part));
            if (worst != target) continue;
            node->query = uni_.pairs[p];
            for (auto& [d, part] : parts)
                node->children[d] = extract_node(mask | (1u << p), part);
            return node;
        }
        throw InvariantViolation("strategy extraction found no optimal move");
    }

    int n_;
    Goal goal_;
    bool memoize_;
    TreeUniverse uni_;
    std::vector<std::vector<int>> perms_;
    std::unordered_map<std::string, int> memo_;
};

}  // namespace detail

// Optimal worst-case query count with both players playing perfectly.
inline int solve_adaptive(int n, Goal goal, int cap = kSolverCap, bool memoize = true) {
    if (n < 2) throw DomainError("solve_adaptive: need n >= 2");
    if (n > cap) throw CapExceeded("solve_adaptive: n exceeds solver cap");
    detail::AdaptiveSolver solver(n, goal, memoize);
    return solver.solve();
}

// Replayable witness of the minimax value.
inline std::unique_ptr<StrategyNode> optimal_strategy_extract(int n, Goal goal,
                                                              int cap = kSolverCap) {
    if (n < 2) throw DomainError("optimal_strategy_extract: need n >= 2");
    if (n > cap) throw CapExceeded("optimal_strategy_extract: n exceeds solver cap");
    detail::AdaptiveSolver solver(n, goal, true);
    return solver.extract();
}

// Smallest non-adaptive plan: minimum |Q| such that partitioning all
// labeled trees by their answer vector on Q leaves only goal-satisfying
// classes. Query graphs are scanned in increasing size, skipping
// relabelings of already-checked graphs.
inline int solve_nonadaptive(int n, Goal goal, int cap = kSolverCap) {
    if (n < 2) throw DomainError("solve_nonadaptive: need n >= 2");
    if (n > cap) throw CapExceeded("solve_nonadaptive: n exceeds solver cap");
    TreeUniverse uni(n);
    const int P = uni.pair_count;
    // permutation action on pair indices
    std::vector<int> pi_of(static_cast<size_t>(n) * n, -1);
    for (int p = 0; p < P; ++p)
        pi_of[uni.pairs[p].first * n + uni.pairs[p].second] = p;
    std::vector<std::vector<int>> perm_pair;
    {
        std::vector<int> perm(n);
        std::iota(perm.begin(), perm.end(), 0);
        do {
            std::vector<int> map(P);
            for (int p = 0; p < P; ++p) {
                int a = perm[uni.pairs[p].first], b = perm[uni.pairs[p].second];
                if (a > b) std::swap(a, b);
                map[p] = pi_of[a * n + b];
            }
            perm_pair.push_back(std::move(map));
        } while (std::next_permutation(perm.begin(), perm.end()));
    }
    auto is_canonical = [&](uint32_t mask) {
        for (const auto& map : perm_pair) {
            uint32_t other = 0;
            for (int p = 0; p < P; ++p) {
                if (mask & (1u << p)) other |= 1u << map[p];
            }
            if (other < mask) return false;
        }
        return true;
    };
    auto feasible = [&](uint32_t mask) {
        // partition all trees by their answers on the plan
        std::map<std::vector<int>, std::vector<int>> classes;
        std::vector<int> sig;
        for (size_t id = 0; id < uni.trees.size(); ++id) {
            sig.clear();
            for (int p = 0; p < P; ++p) {
                if (mask & (1u << p)) sig.push_back(uni.dist[id][p]);
            }
            classes[sig].push_back(static_cast<int>(id));
        }
        for (auto& [s, ids] : classes) {
            if (!uni.goal_reached(ids, goal)) return false;
        }
        return true;
    };
    for (int q = 0; q <= P; ++q) {
        // all masks with q bits, canonical only
        std::vector<int> idx(q);
        std::iota(idx.begin(), idx.end(), 0);
        while (true) {
            uint32_t mask = 0;
            for (int i : idx) mask |= 1u << i;
            if (is_canonical(mask) && feasible(mask)) return q;
            // next combination
            int i = q - 1;
            while (i >= 0 && idx[i] == P - q + i) --i;
            if (i < 0) break;
            ++idx[i];
            for (int j = i + 1; j < q; ++j) idx[j] = idx[j - 1] + 1;
        }
    }
    throw InvariantViolation("solve_nonadaptive: even the complete plan failed");
}

}  // namespace treeprobe
