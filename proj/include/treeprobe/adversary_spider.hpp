#pragma once

#include <map>
#include <set>
#include <vector>

#include "treeprobe/labeled_tree.hpp"
#include "treeprobe/query.hpp"

namespace treeprobe {

namespace detail {

// Augmenting-path matching saturating the right side (leaves) of a small
// bipartite graph given as allowed[v][w].
class LeafMatcher {
public:
    LeafMatcher(int middles, int leaves) : m_(middles), l_(leaves) {
        allowed_.assign(m_, std::vector<char>(l_, 1));
    }

    void forbid(int v, int w) { allowed_[v][w] = 0; }
    void allow(int v, int w) { allowed_[v][w] = 1; }
    bool allowed(int v, int w) const { return allowed_[v][w]; }

    // matching that covers every leaf, or empty if none exists
    std::vector<int> saturating() const {  // leaf -> middle, or empty
        std::vector<int> match_mid(m_, -1), match_leaf(l_, -1);
        for (int w = 0; w < l_; ++w) {
            std::vector<char> seen(m_, 0);
            if (!augment(w, seen, match_mid, match_leaf)) return {};
        }
        return match_leaf;
    }

private:
    bool augment(int w, std::vector<char>& seen, std::vector<int>& match_mid,
                 std::vector<int>& match_leaf) const {
        for (int v = 0; v < m_; ++v) {
            if (!allowed_[v][w] || seen[v]) continue;
            seen[v] = 1;
            if (match_mid[v] < 0 || augment(match_mid[v], seen, match_mid, match_leaf)) {
                match_mid[v] = w;
                match_leaf[w] = v;
                return true;
            }
        }
        return false;
    }

    int m_, l_;
    std::vector<std::vector<char>> allowed_;
};

}  // namespace detail

// Spider adversary: the hidden tree is a spider with center u = 0, middles
// 1..floor(n/2) and pendant leaves on the first leaf-count middles under some
// matching the adversary never commits to early. Middle-leaf queries are
// answered 3 unless the edge lies in every leaf-saturating matching of the
// remaining bipartite graph, in which case the answer is 1. With
// reveal_roles the partition is free information (the identification game);
// without it the Questioner must also establish that the tree is a spider.
class SpiderAdversary {
public:
    SpiderAdversary(int n, bool reveal_roles)
        : n_(n), m_(n / 2), reveal_(reveal_roles), matcher_(n / 2, n - n / 2 - 1) {
        if (n < 7) throw DomainError("SpiderAdversary: need n >= 7");
        leaf_count_ = n_ - m_ - 1;
    }

    bool roles_revealed() const { return reveal_; }
    int center() const { return 0; }
    bool is_middle(int x) const { return x >= 1 && x <= m_; }
    bool is_leaf(int x) const { return x > m_ && x < n_; }
    int middle_count() const { return m_; }
    int leaf_count() const { return leaf_count_; }

    bool is_cross_pair(int x, int y) const {
        return (is_middle(x) && is_leaf(y)) || (is_leaf(x) && is_middle(y));
    }

    int answer(int x, int y) {
        if (x == y || x < 0 || y < 0 || x >= n_ || y >= n_)
            throw DomainError("answer: bad pair");
        Edge e = make_edge(x, y);
        auto it = answered_.find(e);
        if (it != answered_.end()) return it->second;

        int d;
        if (x == 0 || y == 0) {
            d = is_middle(x == 0 ? y : x) ? 1 : 2;
        } else if (is_middle(x) && is_middle(y)) {
            d = 2;
        } else if (is_cross_pair(x, y)) {
            int v = is_middle(x) ? x : y;
            int w = is_middle(x) ? y : x;
            d = cross_answer(v - 1, w - m_ - 1);
            ++cross_count_;
        } else {
            d = 4;  // two pendant leaves
        }
        answered_.emplace(e, d);
        ++count_;
        return d;
    }

    int query_count() const { return count_; }
    int cross_query_count() const { return cross_count_; }
    const std::map<Edge, int>& answered() const { return answered_; }

    bool matching_exists() const { return !matcher_.saturating().empty(); }

    // leaf vertex -> middle vertex under some consistent matching
    std::map<int, int> witness_matching() const {
        std::vector<int> match = matcher_.saturating();
        if (match.empty()) throw InvariantViolation("spider adversary: no saturating matching");
        std::map<int, int> out;
        for (int w = 0; w < leaf_count_; ++w) out[m_ + 1 + w] = match[w] + 1;
        return out;
    }

    LabeledTree witness_tree() const {
        std::vector<Edge> edges;
        for (int v = 1; v <= m_; ++v) edges.push_back({0, v});
        for (auto [w, v] : witness_matching()) edges.push_back(make_edge(v, w));
        return LabeledTree(n_, std::move(edges));
    }

private:
    // 3 unless edge (v,w) lies in every saturating matching.
    int cross_answer(int v, int w) {
        matcher_.forbid(v, w);
        bool avoidable = !matcher_.saturating().empty();
        if (avoidable) return 3;
        matcher_.allow(v, w);
        // pin the edge: w takes v, no other middle may take w
        for (int v2 = 0; v2 < m_; ++v2) {
            if (v2 != v) matcher_.forbid(v2, w);
        }
        for (int w2 = 0; w2 < leaf_count_; ++w2) {
            if (w2 != w) matcher_.forbid(v, w2);
        }
        return 1;
    }

    int n_, m_, leaf_count_;
    bool reveal_;
    int count_ = 0;
    int cross_count_ = 0;
    std::map<Edge, int> answered_;
    detail::LeafMatcher matcher_;
};

// Cross-leg coverage certificate: for every pair of matched legs
// (v_i, w_i), (v_j, w_j) of a completed identification game, the transcript
// must contain a query taking one vertex from each leg; otherwise swapping
// the two legs yields a second consistent spider.
inline bool pairwise_coverage_audit(const AnsweredQueryGraph& transcript,
                                    const std::map<int, int>& matching) {
    std::vector<std::pair<int, int>> legs;  // (middle, leaf)
    for (auto [w, v] : matching) legs.push_back({v, w});
    for (size_t i = 0; i < legs.size(); ++i) {
        for (size_t j = i + 1; j < legs.size(); ++j) {
            auto [vi, wi] = legs[i];
            auto [vj, wj] = legs[j];
            bool covered = transcript.has(vi, vj) || transcript.has(vi, wj) ||
                           transcript.has(wi, vj) || transcript.has(wi, wj);
            if (!covered) return false;
        }
    }
    return true;
}

}  // namespace treeprobe
