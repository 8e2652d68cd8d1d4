#pragma once

#include <algorithm>
#include <numeric>
#include <set>
#include <vector>

#include "treeprobe/canonical.hpp"
#include "treeprobe/labeled_tree.hpp"

namespace treeprobe::testing {

inline LabeledTree path_tree(int n) {
    std::vector<Edge> edges;
    for (int i = 0; i + 1 < n; ++i) edges.push_back({i, i + 1});
    return LabeledTree(n, std::move(edges));
}

inline LabeledTree star_tree(int n, int center = 0) {
    std::vector<Edge> edges;
    for (int i = 0; i < n; ++i) {
        if (i != center) edges.push_back(make_edge(center, i));
    }
    return LabeledTree(n, std::move(edges));
}

// Prop.-4 shape: center 0, middles 1..m, leaf m+i attached to middle i.
inline LabeledTree canonical_spider(int n) {
    int m = n / 2;
    std::vector<Edge> edges;
    for (int i = 1; i <= m; ++i) edges.push_back({0, i});
    for (int j = 1; j <= n - m - 1; ++j) edges.push_back({j, m + j});
    return LabeledTree(n, std::move(edges));
}

inline LabeledTree relabel(const LabeledTree& t, const std::vector<int>& perm) {
    std::vector<Edge> edges;
    for (auto [a, b] : t.edges) edges.push_back(make_edge(perm[a], perm[b]));
    return LabeledTree(t.n, std::move(edges));
}

// Independent isomorphism oracle: tries all n! vertex bijections.
inline bool brute_force_isomorphic(const LabeledTree& a, const LabeledTree& b) {
    if (a.n != b.n) return false;
    std::vector<int> perm(a.n);
    std::iota(perm.begin(), perm.end(), 0);
    std::set<Edge> target(b.edges.begin(), b.edges.end());
    do {
        bool ok = true;
        for (auto [x, y] : a.edges) {
            if (!target.count(make_edge(perm[x], perm[y]))) {
                ok = false;
                break;
            }
        }
        if (ok) return true;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return false;
}

// Four-point condition: among the three pairings of any four vertices,
// the two largest pair-sums are equal.
inline bool satisfies_four_point(const DistanceMatrix& m) {
    for (int a = 0; a < m.n; ++a)
        for (int b = a + 1; b < m.n; ++b)
            for (int c = b + 1; c < m.n; ++c)
                for (int d = c + 1; d < m.n; ++d) {
                    int s1 = m.at(a, b) + m.at(c, d);
                    int s2 = m.at(a, c) + m.at(b, d);
                    int s3 = m.at(a, d) + m.at(b, c);
                    int hi = std::max({s1, s2, s3});
                    int cnt = (s1 == hi) + (s2 == hi) + (s3 == hi);
                    if (cnt < 2) return false;
                }
    return true;
}

}  // namespace treeprobe::testing
