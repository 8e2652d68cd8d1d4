#pragma once

#include <array>
#include <map>
#include <optional>
#include <queue>
#include <vector>

#include "treeprobe/caterpillar_realizer.hpp"
#include "treeprobe/labeled_tree.hpp"
#include "treeprobe/query.hpp"

namespace treeprobe {

// Result of the two-edge augmentation applied when the opposite-answer graph
// first reaches exactly three components. spanning_edges is a spanning tree
// of the augmented graph with `leaf` as a degree-1 vertex lying in the
// not-larger partite set; tests verify the post-condition from these fields.
struct AugmentResult {
    Edge e, f;
    int leaf = -1;
    std::vector<Edge> spanning_edges;
};

namespace detail {

struct ComponentView {
    std::vector<int> vertices;       // sorted
    std::vector<int> class1, class2; // |class1| <= |class2|; tie: class1 holds the smallest vertex
    std::vector<Edge> spanning;      // BFS tree edges
    std::vector<int> tree_leaves;    // degree-1 vertices of the spanning tree (empty if isolated)

    bool isolated() const { return vertices.size() == 1; }
};

inline ComponentView analyze_component(const std::vector<std::vector<int>>& adj,
                                        const std::vector<int>& comp_vertices) {
    ComponentView cv;
    cv.vertices = comp_vertices;
    int root = comp_vertices.front();
    std::map<int, int> color;  // vertex -> 0/1
    color[root] = 0;
    std::queue<int> q;
    q.push(root);
    std::map<int, int> tree_deg;
    while (!q.empty()) {
        int x = q.front();
        q.pop();
        for (int y : adj[x]) {
            if (!color.count(y)) {
                color[y] = color[x] ^ 1;
                cv.spanning.push_back(make_edge(x, y));
                ++tree_deg[x];
                ++tree_deg[y];
                q.push(y);
            }
        }
    }
    std::vector<int> c0, c1;
    for (int v : comp_vertices) (color[v] == 0 ? c0 : c1).push_back(v);
    // tie goes to c0, which holds the component's smallest vertex (the root)
    bool zero_first = c0.size() <= c1.size();
    cv.class1 = zero_first ? c0 : c1;
    cv.class2 = zero_first ? c1 : c0;
    for (auto& [v, d] : tree_deg) {
        if (d == 1) cv.tree_leaves.push_back(v);
    }
    return cv;
}

inline bool contains(const std::vector<int>& sorted_vec, int v) {
    return std::binary_search(sorted_vec.begin(), sorted_vec.end(), v);
}

// A spanning-tree leaf in class1, allowing the equal-size class swap.
inline std::optional<int> class1_leaf(ComponentView& cv) {
    for (int w : cv.tree_leaves) {
        if (contains(cv.class1, w)) return w;
    }
    if (cv.class1.size() == cv.class2.size()) {
        for (int w : cv.tree_leaves) {
            if (contains(cv.class2, w)) {
                std::swap(cv.class1, cv.class2);
                return w;
            }
        }
    }
    return std::nullopt;
}

}  // namespace detail

// Adds two edges to a bipartite graph with exactly three components so that
// the result is connected, bipartite, and carries a spanning tree with a
// leaf from the two components away from `uv_vertex`, placed in the
// not-larger partite set. Ties everywhere break toward the smallest index.
inline AugmentResult three_components_augment(int n, const std::vector<Edge>& g1_edges,
                                              int uv_vertex) {
    std::vector<std::vector<int>> adj(n);
    for (auto [a, b] : g1_edges) {
        adj[a].push_back(b);
        adj[b].push_back(a);
    }
    for (auto& row : adj) std::sort(row.begin(), row.end());

    // component split
    std::vector<int> comp_id(n, -1);
    int comps = 0;
    for (int s = 0; s < n; ++s) {
        if (comp_id[s] >= 0) continue;
        std::queue<int> q;
        q.push(s);
        comp_id[s] = comps;
        while (!q.empty()) {
            int x = q.front();
            q.pop();
            for (int y : adj[x])
                if (comp_id[y] < 0) {
                    comp_id[y] = comps;
                    q.push(y);
                }
        }
        ++comps;
    }
    if (comps != 3) throw DomainError("three_components_augment: need exactly 3 components");

    std::vector<std::vector<int>> members(3);
    for (int v = 0; v < n; ++v) members[comp_id[v]].push_back(v);
    int c_idx = comp_id[uv_vertex];
    if (members[c_idx].size() < 2)
        throw DomainError("three_components_augment: center component too small");
    std::vector<int> order;
    for (int i = 0; i < 3; ++i)
        if (i != c_idx) order.push_back(i);

    detail::ComponentView C = detail::analyze_component(adj, members[c_idx]);
    detail::ComponentView Cp = detail::analyze_component(adj, members[order[0]]);
    detail::ComponentView Cpp = detail::analyze_component(adj, members[order[1]]);

    AugmentResult res;
    auto finish = [&](Edge e, Edge f, int leaf) {
        res.e = e;
        res.f = f;
        res.leaf = leaf;
        for (auto& cv : {C, Cp, Cpp})
            res.spanning_edges.insert(res.spanning_edges.end(), cv.spanning.begin(),
                                      cv.spanning.end());
        res.spanning_edges.push_back(e);
        res.spanning_edges.push_back(f);
    };

    // Case 1: some outer component has a spanning-tree leaf in its smaller class
    std::optional<int> wp = detail::class1_leaf(Cp);
    std::optional<int> wpp = wp ? std::nullopt : detail::class1_leaf(Cpp);
    if (wp || wpp) {
        int x = C.class1.front();
        int y = Cp.class2.front();
        int z = Cpp.class2.front();
        finish(make_edge(x, y), make_edge(x, z), wp ? *wp : *wpp);
        return res;
    }

    // Case 2: no such leaf; order outer components by class-size imbalance
    detail::ComponentView* big = &Cp;
    detail::ComponentView* small = &Cpp;
    auto imbalance = [](const detail::ComponentView& cv) {
        return static_cast<long>(cv.class2.size()) - static_cast<long>(cv.class1.size());
    };
    if (imbalance(*big) < imbalance(*small)) std::swap(big, small);

    if (small->class2.size() >= 2) {
        // Case 2.1: its spanning tree has a leaf in the larger class
        int x = small->tree_leaves.front();
        int xp = -1;
        for (int v : small->class2)
            if (v != x) {
                xp = v;
                break;
            }
        int y = C.class2.front();
        int z = big->class2.front();
        int t = C.class1.front();
        finish(make_edge(xp, y), make_edge(z, t), x);
        return res;
    }
    // Case 2.2: the more balanced outer component is an isolated vertex
    int x = small->vertices.front();
    int y = C.class2.front();
    int z = big->class2.front();
    int t = C.class1.front();
    finish(make_edge(x, y), make_edge(z, t), x);
    return res;
}

// The double-star adversary: answers every query as "opposite side" unless
// the opposite-answer graph forces "same", keeps a double star and a real
// caterpillar alive as long as possible, and certifies at least 2n-7 edges
// once no consistent real caterpillar remains.
class DoubleStarAdversary {
public:
    struct Reply {
        int distance = 0;
        bool declared_centers = false;                    // set on the first reply
        std::vector<std::array<int, 3>> revealed;         // free edges {a,b,dist}
    };

    explicit DoubleStarAdversary(int n) : n_(n), g1_components_(n), g1_adj_(n), g2_adj_(n) {
        if (n < 4) throw DomainError("DoubleStarAdversary: need n >= 4");
        dsu1_parent_.resize(n);
        dsu1_parity_.assign(n, 0);
        dsu2_parent_.resize(n);
        for (int i = 0; i < n; ++i) dsu1_parent_[i] = dsu2_parent_[i] = i;
    }

    Reply answer(int x, int y) {
        if (x == y || x < 0 || y < 0 || x >= n_ || y >= n_)
            throw DomainError("answer: bad pair");
        Edge e = make_edge(x, y);
        auto it = recorded_.find(e);
        if (it != recorded_.end()) return Reply{it->second, false, {}};
        if (ended_) throw ProtocolError("answer: the game is over");

        Reply reply;
        if (u_ < 0) {
            u_ = x;
            v_ = y;
            reply.declared_centers = true;
            reply.distance = 1;
            record_opposite(e, 1);
            ++count_;
        } else {
            auto [rx, px] = find1(x);
            auto [ry, py] = find1(y);
            bool forced_same = (rx == ry && px == py);
            reply.distance = forced_same ? same_distance(x, y) : opposite_distance(x, y);
            if (forced_same) {
                record_same(e, reply.distance);
            } else {
                record_opposite(e, reply.distance);
            }
            ++count_;
        }
        maybe_augment(reply);
        refresh_ended();
        return reply;
    }

    bool ended() const { return ended_; }
    int query_count() const { return count_; }
    int count_at_end() const {
        if (!ended_) throw ProtocolError("count_at_end: game still running");
        return count_at_end_;
    }
    int centers_u() const { return u_; }
    int centers_v() const { return v_; }
    bool special_moment_passed() const { return special_passed_; }

    // |E(G1 union G2)|, including the two revealed edges; valid once ended.
    int certificate_edges() const {
        if (!ended_) throw ProtocolError("certificate_edges: game still running");
        int edges = static_cast<int>(recorded_.size());
        if (edges < 2 * n_ - 7)
            throw InvariantViolation("certificate_edges: fewer than 2n-7 edges at game end");
        return edges;
    }

    // All answered pairs, free edges included: the constraint set every
    // consistent tree must satisfy.
    const std::map<Edge, int>& recorded() const { return recorded_; }

    const std::vector<std::array<int, 3>>& revealed_edges() const { return revealed_; }

    // Structural test: does some real caterpillar realize all recorded answers?
    bool caterpillar_consistent() const {
        return consistent_caterpillar().has_value();
    }

    // A double star consistent with every recorded answer; always exists.
    LabeledTree consistent_double_star() const {
        if (u_ < 0) throw ProtocolError("consistent_double_star: centers not fixed yet");
        auto [side_u, side_v] = witness_sides();
        return double_star_tree(side_u, side_v);
    }

    // A real caterpillar consistent with every recorded answer, when one
    // exists. The last witness is cached and revalidated only against the
    // answers recorded since, so the per-answer cost stays near constant
    // until a query actually kills the witness.
    std::optional<LabeledTree> consistent_caterpillar() const {
        if (u_ < 0) throw ProtocolError("consistent_caterpillar: centers not fixed yet");
        if (cat_cache_) {
            while (cat_cache_checked_ < recorded_order_.size()) {
                auto& [e, d] = recorded_order_[cat_cache_checked_];
                if (cat_cache_metric_.at(e.first, e.second) != d) {
                    cat_cache_.reset();
                    break;
                }
                ++cat_cache_checked_;
            }
            if (cat_cache_) return cat_cache_;
        }
        std::optional<LabeledTree> found;
        if (!special_passed_) {
            if (g1_components_ >= 3) found = pre_special_caterpillar();
        } else {
            found = quick_moved_component_caterpillar();
            if (!found) found = CaterpillarRealizer(n_, u_, v_, recorded_).search();
        }
        if (found) {
            cat_cache_ = found;
            cat_cache_metric_ = all_pairs_distance(*found);
            cat_cache_checked_ = recorded_order_.size();
        }
        return found;
    }

private:
    // --- parity DSU over G1 ---
    std::pair<int, int> find1(int x) const {
        int parity = 0;
        while (dsu1_parent_[x] != x) {
            parity ^= dsu1_parity_[x];
            x = dsu1_parent_[x];
        }
        return {x, parity};
    }

    void union1(int x, int y) {  // records that x and y are in opposite classes
        auto [rx, px] = find1(x);
        auto [ry, py] = find1(y);
        if (rx == ry) return;
        dsu1_parent_[ry] = rx;
        dsu1_parity_[ry] = px ^ py ^ 1;
        --g1_components_;
        // path compression is skipped; n is small and unions are rare
    }

    int find2(int x) const {
        while (dsu2_parent_[x] != x) x = dsu2_parent_[x];
        return x;
    }

    void union2(int x, int y) {
        int rx = find2(x), ry = find2(y);
        if (rx != ry) dsu2_parent_[ry] = rx;
    }

    bool is_center(int x) const { return x == u_ || x == v_; }

    int opposite_distance(int x, int y) const {
        if (is_center(x) && is_center(y)) return 1;
        if (is_center(x) || is_center(y)) return 2;
        return 3;
    }

    int same_distance(int x, int y) const {
        if (is_center(x) || is_center(y)) return 1;
        return 2;
    }

    void record_opposite(Edge e, int dist) {
        recorded_.emplace(e, dist);
        recorded_order_.push_back({e, dist});
        g1_edges_.push_back(e);
        g1_adj_[e.first].push_back(e.second);
        g1_adj_[e.second].push_back(e.first);
        union1(e.first, e.second);
    }

    void record_same(Edge e, int dist) {
        recorded_.emplace(e, dist);
        recorded_order_.push_back({e, dist});
        g2_adj_[e.first].push_back(e.second);
        g2_adj_[e.second].push_back(e.first);
        union2(e.first, e.second);
    }

    void maybe_augment(Reply& reply) {
        if (special_passed_ || g1_components_ != 3) return;
        AugmentResult aug = three_components_augment(n_, g1_edges_, u_);
        special_passed_ = true;
        for (Edge e : {aug.e, aug.f}) {
            int dist = opposite_distance(e.first, e.second);
            record_opposite(e, dist);
            revealed_.push_back({e.first, e.second, dist});
            reply.revealed.push_back({e.first, e.second, dist});
        }
    }

    void refresh_ended() {
        if (ended_) return;
        if (!caterpillar_consistent()) {
            ended_ = true;
            count_at_end_ = count_;
        }
    }

    std::pair<std::vector<int>, std::vector<int>> fixed_sides() const {
        std::vector<int> side_u, side_v;
        auto [ru, pu] = find1(u_);
        for (int z = 0; z < n_; ++z) {
            auto [r, p] = find1(z);
            (p == pu ? side_u : side_v).push_back(z);
        }
        return {side_u, side_v};
    }

    // Sides of some consistent double star. After the special moment the
    // bipartition is fixed; before it, component classes are placed so that
    // both sides have at least two vertices.
    std::pair<std::vector<int>, std::vector<int>> witness_sides() const {
        if (special_passed_) return fixed_sides();
        return pre_special_sides(-1, -1);
    }

    // Pre-special side assignment. If k_vertex >= 0, the component class
    // containing it goes to u's side, x_vertex's class goes to v's side, and
    // every unconstrained component bolsters u's side so that the moved
    // component leaves u another leaf. Without constraints, one component is
    // flipped to v's side so that both sides reach size two.
    std::pair<std::vector<int>, std::vector<int>> pre_special_sides(int k_vertex,
                                                                    int x_vertex) const {
        auto [ru, pu] = find1(u_);
        std::map<int, std::vector<std::pair<int, int>>> comps;  // root -> (vertex, parity)
        for (int z = 0; z < n_; ++z) {
            auto [r, p] = find1(z);
            comps[r].push_back({z, p});
        }
        std::vector<int> side_u, side_v;
        bool constrained = k_vertex >= 0;
        bool flipped_one_to_v = false;
        for (auto& [root, vs] : comps) {
            bool root_to_u;
            if (root == ru) {
                root_to_u = (pu == 0);  // u's class to side U
            } else if (constrained && std::any_of(vs.begin(), vs.end(), [&](auto pr) {
                           return pr.first == k_vertex;
                       })) {
                root_to_u = (find1(k_vertex).second == 0);
            } else if (constrained && std::any_of(vs.begin(), vs.end(), [&](auto pr) {
                           return pr.first == x_vertex;
                       })) {
                root_to_u = (find1(x_vertex).second == 1);  // x' joins v's side
            } else if (!constrained && !flipped_one_to_v) {
                root_to_u = false;  // first free component bolsters side V
                flipped_one_to_v = true;
            } else {
                root_to_u = true;
            }
            for (auto [z, p] : vs) {
                bool on_u = root_to_u ? (p == 0) : (p == 1);
                (on_u ? side_u : side_v).push_back(z);
            }
        }
        std::sort(side_u.begin(), side_u.end());
        std::sort(side_v.begin(), side_v.end());
        return {side_u, side_v};
    }

    LabeledTree double_star_tree(const std::vector<int>& side_u,
                                 const std::vector<int>& side_v) const {
        std::vector<Edge> edges;
        edges.push_back(make_edge(u_, v_));
        for (int z : side_u)
            if (z != u_) edges.push_back(make_edge(u_, z));
        for (int z : side_v)
            if (z != v_) edges.push_back(make_edge(v_, z));
        return LabeledTree(n_, std::move(edges));
    }

    // Post-special fast path: find a component of same-answers on one side,
    // not touching its center, movable onto an uncovered receiver on the
    // other side. Sound but not complete; the full realizer runs after it.
    std::optional<LabeledTree> quick_moved_component_caterpillar() const {
        auto [side_u, side_v] = fixed_sides();
        for (int pass = 0; pass < 2; ++pass) {
            const std::vector<int>& S = pass == 0 ? side_u : side_v;
            const std::vector<int>& other = pass == 0 ? side_v : side_u;
            int c = pass == 0 ? u_ : v_;
            int other_center = pass == 0 ? v_ : u_;
            if (other.size() < 2) continue;
            std::map<int, std::vector<int>> comps;
            for (int z : S)
                if (z != c) comps[find2(z)].push_back(z);
            int c_root = find2(c);
            for (auto& [root, K] : comps) {
                if (root == c_root) continue;
                if (K.size() + 2 > S.size()) continue;  // K must leave c another leaf
                std::vector<char> hit(n_, 0);
                for (int k : K)
                    for (int y : g1_adj_[k]) hit[y] = 1;
                for (int xp : other) {
                    if (xp == other_center || hit[xp]) continue;
                    return moved_component_tree(side_u, side_v, c, xp, K);
                }
            }
        }
        return std::nullopt;
    }

    LabeledTree moved_component_tree(const std::vector<int>& side_u,
                                     const std::vector<int>& side_v, int center, int receiver,
                                     const std::vector<int>& moved) const {
        LabeledTree ds = double_star_tree(side_u, side_v);
        std::vector<Edge> edges;
        for (auto [a, b] : ds.edges) {
            bool drop = false;
            for (int k : moved) {
                if (make_edge(a, b) == make_edge(center, k)) drop = true;
            }
            if (!drop) edges.push_back(make_edge(a, b));
        }
        for (int k : moved) edges.push_back(make_edge(receiver, k));
        return LabeledTree(n_, std::move(edges));
    }

    // Pre-special caterpillar: move the smallest G2 component of the first
    // outer G1 component onto a vertex of the second outer component.
    std::optional<LabeledTree> pre_special_caterpillar() const {
        auto [ru, pu] = find1(u_);
        std::map<int, std::vector<int>> comps;
        for (int z = 0; z < n_; ++z) comps[find1(z).first].push_back(z);
        if (comps.size() < 3) return std::nullopt;
        std::vector<int> outer_roots;
        for (auto& [root, vs] : comps)
            if (root != ru) outer_roots.push_back(root);
        // K: the G2 component of the smallest vertex of the first outer comp
        int k0 = comps[outer_roots[0]].front();
        int k0_root = find2(k0);
        std::vector<int> K;
        for (int z : comps[outer_roots[0]])
            if (find2(z) == k0_root) K.push_back(z);
        int xp = comps[outer_roots[1]].front();
        auto [side_u, side_v] = pre_special_sides(k0, xp);
        return moved_component_tree(side_u, side_v, u_, xp, K);
    }

    int n_;
    int u_ = -1, v_ = -1;
    int count_ = 0;
    int count_at_end_ = -1;
    bool special_passed_ = false;
    bool ended_ = false;
    int g1_components_ = 0;

    std::map<Edge, int> recorded_;
    std::vector<std::pair<Edge, int>> recorded_order_;
    std::vector<Edge> g1_edges_;
    std::vector<std::vector<int>> g1_adj_, g2_adj_;
    std::vector<std::array<int, 3>> revealed_;

    mutable std::vector<int> dsu1_parent_;
    mutable std::vector<int> dsu1_parity_;
    mutable std::vector<int> dsu2_parent_;

    mutable std::optional<LabeledTree> cat_cache_;
    mutable DistanceMatrix cat_cache_metric_;
    mutable size_t cat_cache_checked_ = 0;
};

// Lets the adaptive questioner templates drive an adversary game.
class DoubleStarSession {
public:
    explicit DoubleStarSession(DoubleStarAdversary& adv) : adv_(adv) {}
    int ask(int x, int y) { return adv_.answer(x, y).distance; }

private:
    DoubleStarAdversary& adv_;
};

}  // namespace treeprobe
