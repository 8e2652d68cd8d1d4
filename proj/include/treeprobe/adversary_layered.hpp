#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "treeprobe/labeled_tree.hpp"
#include "treeprobe/query.hpp"

namespace treeprobe {

// Adversary for the layered family: a root u = 0, middles 1..floor(n/2)
// adjacent to u, and the remaining vertices pendant leaves each hanging off
// some middle. The role partition is announced for free; only middle-leaf
// (1 or 3) and leaf-leaf (2 or 4) answers carry information, and the larger
// answer is given whenever some leaf-to-middle assignment stays realizable.
class LayeredAdversary {
public:
    explicit LayeredAdversary(int n) : n_(n), m_(n / 2) {
        if (n < 5) throw DomainError("LayeredAdversary: need n >= 5");
        leaf_count_ = n_ - m_ - 1;
        forbidden_.assign(leaf_count_, std::set<int>());
        forced_.assign(leaf_count_, -1);
    }

    // free information announced at game start
    int root() const { return 0; }
    bool is_middle(int x) const { return x >= 1 && x <= m_; }
    bool is_leaf(int x) const { return x > m_ && x < n_; }
    int middle_count() const { return m_; }
    int leaf_count() const { return leaf_count_; }

    bool informative(int x, int y) const {
        return x != 0 && y != 0 && !(is_middle(x) && is_middle(y));
    }

    int answer(int x, int y) {
        if (x == y || x < 0 || y < 0 || x >= n_ || y >= n_)
            throw DomainError("answer: bad pair");
        Edge e = make_edge(x, y);
        auto it = answered_.find(e);
        if (it != answered_.end()) return it->second;

        int d;
        if (x == 0 || y == 0) {
            int other = x == 0 ? y : x;
            d = is_middle(other) ? 1 : 2;
        } else if (is_middle(x) && is_middle(y)) {
            d = 2;
        } else if (is_middle(x) || is_middle(y)) {
            int v = is_middle(x) ? x : y;
            int w = leaf_index(is_middle(x) ? y : x);
            d = middle_leaf_answer(v, w);
        } else {
            d = leaf_leaf_answer(leaf_index(x), leaf_index(y));
        }
        answered_.emplace(e, d);
        ++count_;
        if (informative(x, y)) ++informative_count_;
        return d;
    }

    int query_count() const { return count_; }
    int informative_count() const { return informative_count_; }
    const std::map<Edge, int>& answered() const { return answered_; }

    bool assignment_exists() const { return feasible(Probe{}); }

    // Some assignment of leaves to middles honoring every constraint.
    std::vector<int> witness_assignment() const {
        std::vector<int> assign(leaf_count_, -1);
        if (!search(assign, 0, Probe{}))
            throw InvariantViolation("layered adversary: no witness assignment");
        return assign;
    }

    // True once every consistent assignment coincides (the tree is pinned).
    bool identified() const {
        std::vector<int> base = witness_assignment();
        for (int w = 0; w < leaf_count_; ++w) {
            for (int v = 1; v <= m_; ++v) {
                if (v == base[w]) continue;
                Probe p;
                p.force_w = w;
                p.force_v = v;
                if (feasible(p)) return false;  // w could sit elsewhere
            }
        }
        return true;
    }

    LabeledTree witness_tree() const {
        std::vector<int> assign = witness_assignment();
        std::vector<Edge> edges;
        for (int v = 1; v <= m_; ++v) edges.push_back({0, v});
        for (int w = 0; w < leaf_count_; ++w) edges.push_back(make_edge(assign[w], m_ + 1 + w));
        return LabeledTree(n_, std::move(edges));
    }

private:
    struct Probe {
        int avoid_w = -1, avoid_v = -1;  // leaf avoid_w must not take avoid_v
        int sep_a = -1, sep_b = -1;      // these leaves must take different middles
        int force_w = -1, force_v = -1;  // leaf force_w must take force_v
    };

    int leaf_index(int x) const { return x - m_ - 1; }

    // 3 when some assignment avoids w -> v, else 1 (and the edge is forced).
    int middle_leaf_answer(int v, int w) {
        Probe p;
        p.avoid_w = w;
        p.avoid_v = v;
        if (feasible(p)) {
            forbidden_[w].insert(v);
            return 3;
        }
        forced_[w] = v;
        return 1;
    }

    // 4 when some assignment separates w1 and w2, else 2 (same parent).
    int leaf_leaf_answer(int w1, int w2) {
        Probe p;
        p.sep_a = std::min(w1, w2);
        p.sep_b = std::max(w1, w2);
        if (feasible(p)) {
            different_.insert({p.sep_a, p.sep_b});
            return 4;
        }
        same_.insert({p.sep_a, p.sep_b});
        return 2;
    }

    bool feasible(const Probe& p) const {
        std::string key = signature(p);
        auto it = memo_.find(key);
        if (it != memo_.end()) return it->second;
        std::vector<int> assign(leaf_count_, -1);
        bool ok = search(assign, 0, p);
        memo_.emplace(std::move(key), ok);
        return ok;
    }

    // Plain backtracking over leaves in index order.
    bool search(std::vector<int>& assign, int w, const Probe& p) const {
        if (w == leaf_count_) return true;
        for (int v = 1; v <= m_; ++v) {
            if (forced_[w] >= 0 && forced_[w] != v) continue;
            if (forbidden_[w].count(v)) continue;
            if (p.avoid_w == w && p.avoid_v == v) continue;
            if (p.force_w == w && p.force_v != v) continue;
            bool ok = true;
            for (int w2 = 0; w2 < w && ok; ++w2) {
                int lo = std::min(w, w2), hi = std::max(w, w2);
                if (assign[w2] == v) {
                    if (different_.count({lo, hi})) ok = false;
                    if (lo == p.sep_a && hi == p.sep_b) ok = false;
                } else {
                    if (same_.count({lo, hi})) ok = false;
                }
            }
            if (!ok) continue;
            assign[w] = v;
            if (search(assign, w + 1, p)) return true;
            assign[w] = -1;
        }
        return false;
    }

    std::string signature(const Probe& p) const {
        std::string s;
        for (int w = 0; w < leaf_count_; ++w) {
            s += std::to_string(forced_[w]);
            s += ':';
            for (int v : forbidden_[w]) s += std::to_string(v) + ",";
            s += ';';
        }
        for (auto& [a, b] : same_) s += "s" + std::to_string(a) + "." + std::to_string(b);
        for (auto& [a, b] : different_) s += "d" + std::to_string(a) + "." + std::to_string(b);
        s += "|";
        for (int x : {p.avoid_w, p.avoid_v, p.sep_a, p.sep_b, p.force_w, p.force_v})
            s += std::to_string(x) + ",";
        return s;
    }

    int n_, m_, leaf_count_;
    int count_ = 0;
    int informative_count_ = 0;
    std::map<Edge, int> answered_;
    std::vector<std::set<int>> forbidden_;  // per leaf: middles ruled out
    std::vector<int> forced_;               // per leaf: pinned middle or -1
    std::set<std::pair<int, int>> same_, different_;
    mutable std::map<std::string, bool> memo_;
};

}  // namespace treeprobe
