#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <queue>
#include <random>
#include <utility>
#include <vector>

#include "treeprobe/errors.hpp"

namespace treeprobe {

using Edge = std::pair<int, int>;

inline Edge make_edge(int a, int b) {
    if (a > b) std::swap(a, b);
    return {a, b};
}

// A tree on vertices 0..n-1, stored as a sorted list of normalized edges.
struct LabeledTree {
    int n = 0;
    std::vector<Edge> edges;

    LabeledTree() = default;
    LabeledTree(int n_, std::vector<Edge> edges_) : n(n_), edges(std::move(edges_)) {
        normalize();
    }

    void normalize() {
        for (auto& e : edges) e = make_edge(e.first, e.second);
        std::sort(edges.begin(), edges.end());
    }

    bool operator==(const LabeledTree& o) const { return n == o.n && edges == o.edges; }
    bool operator!=(const LabeledTree& o) const { return !(*this == o); }

    std::vector<std::vector<int>> adjacency() const {
        std::vector<std::vector<int>> adj(n);
        for (auto [a, b] : edges) {
            adj[a].push_back(b);
            adj[b].push_back(a);
        }
        for (auto& row : adj) std::sort(row.begin(), row.end());
        return adj;
    }

    std::vector<int> degrees() const {
        std::vector<int> deg(n, 0);
        for (auto [a, b] : edges) {
            ++deg[a];
            ++deg[b];
        }
        return deg;
    }

    bool has_edge(int a, int b) const {
        return std::binary_search(edges.begin(), edges.end(), make_edge(a, b));
    }

    // Checks all LabeledTree invariants: n-1 distinct proper edges, connected.
    bool valid() const {
        if (n < 1) return false;
        if (static_cast<int>(edges.size()) != n - 1) return false;
        for (auto [a, b] : edges) {
            if (a < 0 || b < 0 || a >= n || b >= n || a >= b) return false;
        }
        if (std::adjacent_find(edges.begin(), edges.end()) != edges.end()) return false;
        // connectivity by BFS
        std::vector<std::vector<int>> adj = adjacency();
        std::vector<char> seen(n, 0);
        std::queue<int> q;
        q.push(0);
        seen[0] = 1;
        int reached = 1;
        while (!q.empty()) {
            int x = q.front();
            q.pop();
            for (int y : adj[x]) {
                if (!seen[y]) {
                    seen[y] = 1;
                    ++reached;
                    q.push(y);
                }
            }
        }
        return reached == n;
    }
};

// Symmetric hop-count matrix of a tree.
struct DistanceMatrix {
    int n = 0;
    std::vector<int> d;  // row-major n*n

    int at(int a, int b) const { return d[static_cast<size_t>(a) * n + b]; }
    int& at(int a, int b) { return d[static_cast<size_t>(a) * n + b]; }

    int diameter() const {
        int best = 0;
        for (int v : d) best = std::max(best, v);
        return best;
    }
};

// BFS from every vertex; O(n^2) total, n is small everywhere.
inline DistanceMatrix all_pairs_distance(const LabeledTree& t) {
    DistanceMatrix m;
    m.n = t.n;
    m.d.assign(static_cast<size_t>(t.n) * t.n, -1);
    auto adj = t.adjacency();
    std::vector<int> frontier, next;
    for (int s = 0; s < t.n; ++s) {
        m.at(s, s) = 0;
        frontier.assign(1, s);
        int dist = 0;
        while (!frontier.empty()) {
            ++dist;
            next.clear();
            for (int x : frontier) {
                for (int y : adj[x]) {
                    if (m.at(s, y) < 0) {
                        m.at(s, y) = dist;
                        next.push_back(y);
                    }
                }
            }
            frontier.swap(next);
        }
    }
    return m;
}

// Lexicographically smallest pair attaining the maximum distance.
struct DiameterPair {
    int a = -1, b = -1;
    int distance = 0;
};

inline DiameterPair diameter_pair(const LabeledTree& t) {
    if (t.n < 2) throw DomainError("diameter_pair: need at least two vertices");
    DistanceMatrix m = all_pairs_distance(t);
    DiameterPair best;
    best.distance = -1;
    for (int a = 0; a < t.n; ++a) {
        for (int b = a + 1; b < t.n; ++b) {
            if (m.at(a, b) > best.distance) best = {a, b, m.at(a, b)};
        }
    }
    return best;
}

inline std::vector<int> prufer_encode(const LabeledTree& t) {
    if (t.n < 2) throw DomainError("prufer_encode: need n >= 2");
    std::vector<int> deg = t.degrees();
    auto adj = t.adjacency();
    std::vector<char> removed(t.n, 0);
    std::vector<int> seq;
    seq.reserve(std::max(0, t.n - 2));
    // repeatedly strip the smallest leaf and record its neighbor
    std::priority_queue<int, std::vector<int>, std::greater<int>> leaves;
    for (int v = 0; v < t.n; ++v) {
        if (deg[v] == 1) leaves.push(v);
    }
    for (int step = 0; step < t.n - 2; ++step) {
        int leaf = leaves.top();
        leaves.pop();
        removed[leaf] = 1;
        int parent = -1;
        for (int y : adj[leaf]) {
            if (!removed[y]) {
                parent = y;
                break;
            }
        }
        seq.push_back(parent);
        if (--deg[parent] == 1) leaves.push(parent);
    }
    return seq;
}

inline LabeledTree prufer_decode(const std::vector<int>& seq, int n) {
    if (n < 2) throw DomainError("prufer_decode: need n >= 2");
    if (static_cast<int>(seq.size()) != n - 2)
        throw DomainError("prufer_decode: sequence length must be n-2");
    for (int v : seq) {
        if (v < 0 || v >= n) throw DomainError("prufer_decode: entry out of range");
    }
    std::vector<int> deg(n, 1);
    for (int v : seq) ++deg[v];
    std::priority_queue<int, std::vector<int>, std::greater<int>> leaves;
    for (int v = 0; v < n; ++v) {
        if (deg[v] == 1) leaves.push(v);
    }
    std::vector<Edge> edges;
    edges.reserve(n - 1);
    for (int v : seq) {
        int leaf = leaves.top();
        leaves.pop();
        edges.push_back(make_edge(leaf, v));
        if (--deg[v] == 1) leaves.push(v);
    }
    int a = leaves.top();
    leaves.pop();
    int b = leaves.top();
    edges.push_back(make_edge(a, b));
    return LabeledTree(n, std::move(edges));
}

inline constexpr int kDefaultEnumerationCap = 9;

inline std::uint64_t labeled_tree_count(int n) {
    // Cayley: n^(n-2)
    std::uint64_t c = 1;
    for (int i = 0; i < n - 2; ++i) c *= static_cast<std::uint64_t>(n);
    return c;
}

// Visits all n^(n-2) labeled trees once, in Prufer-sequence order, until
// fn returns true. Items are independently recomputable, so callers may
// partition the sequence range across workers.
template <class Fn>
bool for_each_tree_until(int n, Fn&& fn, int cap = kDefaultEnumerationCap) {
    if (n < 2) throw DomainError("for_each_tree: need n >= 2");
    if (n > cap) throw CapExceeded("for_each_tree: n exceeds enumeration cap");
    std::vector<int> seq(std::max(0, n - 2), 0);
    while (true) {
        if (fn(prufer_decode(seq, n))) return true;
        int i = static_cast<int>(seq.size()) - 1;
        while (i >= 0 && seq[i] == n - 1) seq[i--] = 0;
        if (i < 0) return false;
        ++seq[i];
    }
}

template <class Fn>
void for_each_tree(int n, Fn&& fn, int cap = kDefaultEnumerationCap) {
    for_each_tree_until(
        n,
        [&](const LabeledTree& t) {
            fn(t);
            return false;
        },
        cap);
}

// Uniform over all labeled trees via a uniform random Prufer sequence.
inline LabeledTree random_tree(int n, std::mt19937_64& rng) {
    if (n < 2) throw DomainError("random_tree: need n >= 2");
    std::uniform_int_distribution<int> pick(0, n - 1);
    std::vector<int> seq(n - 2);
    for (int& v : seq) v = pick(rng);
    return prufer_decode(seq, n);
}

enum class TreeShape { Star, DoubleStar, RealCaterpillar, Spider, Path, Other };

inline const char* to_string(TreeShape s) {
    switch (s) {
        case TreeShape::Star: return "Star";
        case TreeShape::DoubleStar: return "DoubleStar";
        case TreeShape::RealCaterpillar: return "RealCaterpillar";
        case TreeShape::Spider: return "Spider";
        case TreeShape::Path: return "Path";
        case TreeShape::Other: return "Other";
    }
    return "?";
}

// Spider: one center adjacent to floor(n/2) middles, every middle carrying
// at most one pendant leaf, all other vertices being exactly those leaves.
inline bool is_spider(const LabeledTree& t) {
    int m = t.n / 2;
    std::vector<int> deg = t.degrees();
    auto adj = t.adjacency();
    for (int u = 0; u < t.n; ++u) {
        if (deg[u] != m) continue;
        bool ok = true;
        std::vector<char> is_middle(t.n, 0);
        for (int v : adj[u]) {
            is_middle[v] = 1;
            if (deg[v] > 2) ok = false;
        }
        if (!ok) continue;
        for (int w = 0; w < t.n && ok; ++w) {
            if (w == u || is_middle[w]) continue;
            if (deg[w] != 1 || !is_middle[adj[w][0]]) ok = false;
        }
        if (ok) return true;
    }
    return false;
}

// Tags follow degree-sequence tests. DoubleStar and RealCaterpillar are
// detected purely from the count of non-leaf vertices, so small paths land
// in those classes (P4 is a double star, P5 a real caterpillar).
inline TreeShape classify_shape(const LabeledTree& t) {
    if (t.n < 2) throw DomainError("classify_shape: need n >= 2");
    if (t.n == 2) return TreeShape::Path;
    std::vector<int> deg = t.degrees();
    int non_leaves = 0;
    int max_deg = 0;
    for (int d : deg) {
        if (d >= 2) ++non_leaves;
        max_deg = std::max(max_deg, d);
    }
    if (non_leaves == 1) return TreeShape::Star;
    if (non_leaves == 2) return TreeShape::DoubleStar;
    if (non_leaves == 3) return TreeShape::RealCaterpillar;
    if (is_spider(t)) return TreeShape::Spider;
    if (max_deg <= 2) return TreeShape::Path;
    return TreeShape::Other;
}

}  // namespace treeprobe
