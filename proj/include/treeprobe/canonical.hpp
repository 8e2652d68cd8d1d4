#pragma once

#include <algorithm>
#include <string>
#include <vector>

#include "treeprobe/labeled_tree.hpp"

namespace treeprobe {

// One or two middle vertices left after iteratively peeling leaves.
inline std::vector<int> tree_centers(const LabeledTree& t) {
    if (t.n == 1) return {0};
    auto adj = t.adjacency();
    std::vector<int> deg = t.degrees();
    std::vector<int> layer;
    for (int v = 0; v < t.n; ++v) {
        if (deg[v] <= 1) layer.push_back(v);
    }
    int remaining = t.n;
    while (remaining > 2) {
        std::vector<int> next;
        remaining -= static_cast<int>(layer.size());
        for (int leaf : layer) {
            deg[leaf] = 0;
            for (int y : adj[leaf]) {
                if (deg[y] > 0 && --deg[y] == 1) next.push_back(y);
            }
        }
        layer.swap(next);
    }
    std::sort(layer.begin(), layer.end());
    return layer;
}

// Permutation-invariant identifier of the isomorphism class.
struct CanonicalCode {
    std::string code;

    bool operator==(const CanonicalCode& o) const { return code == o.code; }
    bool operator!=(const CanonicalCode& o) const { return code != o.code; }
    bool operator<(const CanonicalCode& o) const { return code < o.code; }
};

namespace detail {

inline std::string ahu_encode(const std::vector<std::vector<int>>& adj, int root) {
    // iterative post-order; children codes sorted at each vertex
    int n = static_cast<int>(adj.size());
    std::vector<int> parent(n, -1), order;
    order.reserve(n);
    std::vector<int> stack{root};
    parent[root] = root;
    while (!stack.empty()) {
        int x = stack.back();
        stack.pop_back();
        order.push_back(x);
        for (int y : adj[x]) {
            if (parent[y] < 0) {
                parent[y] = x;
                stack.push_back(y);
            }
        }
    }
    std::vector<std::vector<std::string>> child_codes(n);
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
        int x = *it;
        auto& codes = child_codes[x];
        std::sort(codes.begin(), codes.end());
        std::string mine = "(";
        for (auto& c : codes) mine += c;
        mine += ")";
        if (x == root) return mine;
        child_codes[parent[x]].push_back(std::move(mine));
    }
    return "()";  // single vertex
}

}  // namespace detail

// AHU encoding rooted at the tree center; for bicentral trees both centers
// are tried and the lexicographic minimum is taken.
inline CanonicalCode canonical_code(const LabeledTree& t) {
    auto adj = t.adjacency();
    std::string best;
    for (int c : tree_centers(t)) {
        std::string code = detail::ahu_encode(adj, c);
        if (best.empty() || code < best) best = std::move(code);
    }
    return CanonicalCode{std::move(best)};
}

}  // namespace treeprobe
