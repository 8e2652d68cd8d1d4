#pragma once

#include <algorithm>
#include <array>
#include <map>
#include <optional>
#include <vector>

#include "treeprobe/labeled_tree.hpp"

namespace treeprobe {

// Decides whether some real caterpillar realizes a set of answered distances
// that includes d(u,v) = 1, and produces one when it exists.
//
// Any such caterpillar places the adjacent pair u,v in one of six ways:
// both on the spine (u or v in the middle slot), or one on the spine (end
// or middle slot) with the other hanging off it as a leaf. Once the spine
// (s1,s2,s3) is fixed, every other vertex z needs a host slot h(z) in
// {1,2,3} with d(z, s_i) = |h(z)-i| + 1 and d(z,w) = |h(z)-h(w)| + 2 for
// non-spine w, so each recorded answer becomes a unary domain restriction
// or an |h-h'| = c constraint with c in {0,1,2}. That system decomposes
// into a two-level two-coloring (slot parity {1,3} vs {2}, then 1 vs 3),
// plus the requirement that both end slots carry at least one leaf.
class CaterpillarRealizer {
public:
    CaterpillarRealizer(int n, int u, int v, const std::map<Edge, int>& recorded)
        : n_(n), u_(u), v_(v), recorded_(recorded) {
        rec_at_.assign(n_, {});
        for (auto& [e, d] : recorded_) {
            rec_at_[e.first].push_back({e.second, d});
            rec_at_[e.second].push_back({e.first, d});
        }
    }

    std::optional<LabeledTree> search() const {
        // a middle-slot vertex cannot carry any distance-3 answer, and a
        // center hanging as a leaf cannot carry a distance-1 answer except
        // the uv pair itself
        std::vector<char> middle_ok(n_, 1);
        for (auto& [e, d] : recorded_) {
            if (d == 3) middle_ok[e.first] = middle_ok[e.second] = 0;
        }

        // both centers on the spine, third slot t at either end
        for (int t = 0; t < n_; ++t) {
            if (t == u_ || t == v_) continue;
            if (middle_ok[v_] && pair_ok(u_, t, 2) && pair_ok(v_, t, 1)) {
                if (auto r = try_spine({u_, v_, t}, {})) return r;
            }
            if (middle_ok[u_] && pair_ok(u_, t, 1) && pair_ok(v_, t, 2)) {
                if (auto r = try_spine({t, u_, v_}, {})) return r;
            }
        }
        // one center on the spine, the other a leaf of it
        for (int pass = 0; pass < 2; ++pass) {
            int on_spine = pass == 0 ? u_ : v_;
            int hanging = pass == 0 ? v_ : u_;
            if (!center_can_hang(hanging)) continue;
            // spine (on_spine, m, t): the spine center takes an end slot
            for (int m = 0; m < n_; ++m) {
                if (m == u_ || m == v_ || !middle_ok[m]) continue;
                if (!pair_ok(on_spine, m, 1) || !pair_ok(hanging, m, 2)) continue;
                for (int t = 0; t < n_; ++t) {
                    if (t == u_ || t == v_ || t == m) continue;
                    if (!pair_ok(on_spine, t, 2)) continue;
                    if (recorded_.count(make_edge(hanging, t))) continue;  // distance would be 3
                    if (!pair_ok(m, t, 1)) continue;
                    if (auto r = try_spine({on_spine, m, t}, {{hanging, 1}})) return r;
                }
            }
            // spine (a, on_spine, b): the spine center takes the middle slot
            if (!middle_ok[on_spine]) continue;
            for (int a = 0; a < n_; ++a) {
                if (a == u_ || a == v_) continue;
                if (!pair_ok(on_spine, a, 1) || !pair_ok(hanging, a, 2)) continue;
                for (int b = a + 1; b < n_; ++b) {
                    if (b == u_ || b == v_) continue;
                    if (!pair_ok(on_spine, b, 1) || !pair_ok(hanging, b, 2)) continue;
                    if (!pair_ok(a, b, 2)) continue;
                    if (auto r = try_spine({a, on_spine, b}, {{hanging, 2}})) return r;
                }
            }
        }
        return std::nullopt;
    }

private:
    bool pair_ok(int a, int b, int wanted) const {
        auto it = recorded_.find(make_edge(a, b));
        return it == recorded_.end() || it->second == wanted;
    }

    bool center_can_hang(int c) const {
        for (auto [w, d] : rec_at_[c]) {
            if (d == 1 && w != u_ && w != v_) return false;
        }
        return true;
    }

    std::optional<LabeledTree> try_spine(std::array<int, 3> spine,
                                         std::vector<std::pair<int, int>> fixed) const {
        std::vector<int> pos(n_, 0);  // 1..3 for spine vertices, 0 otherwise
        for (int i = 0; i < 3; ++i) pos[spine[i]] = i + 1;

        std::vector<std::array<char, 4>> dom(n_, {0, 1, 1, 1});  // dom[z][h], h in 1..3
        std::vector<std::array<int, 3>> cons;                    // (a, b, |h diff|)
        for (auto& [e, d] : recorded_) {
            int a = e.first, b = e.second;
            if (pos[a] && pos[b]) {
                if (std::abs(pos[a] - pos[b]) != d) return std::nullopt;
            } else if (pos[a] || pos[b]) {
                int s = pos[a] ? pos[a] : pos[b];
                int z = pos[a] ? b : a;
                for (int h = 1; h <= 3; ++h) {
                    if (std::abs(s - h) + 1 != d) dom[z][h] = 0;
                }
            } else {
                int c = d - 2;
                if (c < 0) return std::nullopt;
                cons.push_back({a, b, c});
            }
        }
        for (auto [z, h] : fixed) {
            for (int k = 1; k <= 3; ++k) {
                if (k != h) dom[z][k] = 0;
            }
        }

        HostSolver solver(n_, pos, dom, cons);
        std::vector<int> host;
        if (!solver.solve(host)) return std::nullopt;

        std::vector<Edge> tree_edges;
        tree_edges.push_back(make_edge(spine[0], spine[1]));
        tree_edges.push_back(make_edge(spine[1], spine[2]));
        for (int z = 0; z < n_; ++z) {
            if (pos[z]) continue;
            tree_edges.push_back(make_edge(spine[host[z] - 1], z));
        }
        return LabeledTree(n_, std::move(tree_edges));
    }

    // Assigns a host slot in {1,2,3} to every non-spine vertex subject to
    // unary domains and |h-h'| = c constraints, covering slots 1 and 3.
    class HostSolver {
    public:
        HostSolver(int n, const std::vector<int>& pos, std::vector<std::array<char, 4>> dom,
                   const std::vector<std::array<int, 3>>& cons)
            : n_(n), pos_(pos), dom_(std::move(dom)), adj_(n) {
            for (auto& [a, b, c] : cons) {
                adj_[a].push_back({b, c});
                adj_[b].push_back({a, c});
            }
        }

        bool solve(std::vector<int>& host_out) {
            std::vector<std::vector<int>> comps;
            std::vector<int> seen(n_, 0);
            for (int z = 0; z < n_; ++z) {
                if (pos_[z] || seen[z]) continue;
                std::vector<int> members{z};
                seen[z] = 1;
                for (size_t i = 0; i < members.size(); ++i) {
                    for (auto [w, c] : adj_[members[i]]) {
                        if (!seen[w]) {
                            seen[w] = 1;
                            members.push_back(w);
                        }
                    }
                }
                comps.push_back(std::move(members));
            }

            // per component: realizable (coverage mask -> concrete hosts)
            std::vector<std::map<int, std::vector<int>>> sols(comps.size());
            for (size_t i = 0; i < comps.size(); ++i) {
                sols[i] = component_solutions(comps[i]);
                if (sols[i].empty()) return false;
            }
            // DP over components on covered-slot mask {1,3}
            int target = 3;
            std::vector<std::array<int, 4>> choice(comps.size(), {-1, -1, -1, -1});
            std::array<char, 4> reach{1, 0, 0, 0};
            for (size_t i = 0; i < comps.size(); ++i) {
                std::array<char, 4> next{0, 0, 0, 0};
                for (int st = 0; st < 4; ++st) {
                    if (!reach[st]) continue;
                    for (auto& [cov, hosts] : sols[i]) {
                        int ns = st | cov;
                        if (!next[ns]) {
                            next[ns] = 1;
                            choice[i][ns] = st * 8 + cov;  // parent state + coverage used
                        }
                    }
                }
                reach = next;
            }
            if (!reach[target]) return false;
            // reconstruct
            host_out.assign(n_, 0);
            int st = target;
            for (int i = static_cast<int>(comps.size()) - 1; i >= 0; --i) {
                int enc = choice[i][st];
                int prev = enc / 8, cov = enc % 8;
                auto& hosts = sols[i].at(cov);
                for (size_t k = 0; k < comps[i].size(); ++k) host_out[comps[i][k]] = hosts[k];
                st = prev;
            }
            return true;
        }

    private:
        // All achievable coverage masks for one component, each with a
        // concrete host vector (parallel to members).
        std::map<int, std::vector<int>> component_solutions(const std::vector<int>& members) {
            std::map<int, std::vector<int>> out;
            for (int flip = 0; flip < 2; ++flip) {
                std::map<int, int> par;
                if (!parity_bfs(members, flip, par)) continue;
                bool dom_ok = true;
                for (int z : members) {
                    if (par.at(z) == 1 && !dom_[z][2]) dom_ok = false;
                    if (par.at(z) == 0 && !dom_[z][1] && !dom_[z][3]) dom_ok = false;
                }
                if (!dom_ok) continue;
                // sub-components among parity-0 vertices: c==0 same slot,
                // c==2 opposite slot (1 vs 3)
                std::map<int, int> cls;
                std::vector<std::vector<int>> subs;
                bool sub_ok = true;
                for (int z : members) {
                    if (par.at(z) != 0 || cls.count(z)) continue;
                    cls[z] = 0;
                    std::vector<int> sq{z};
                    for (size_t i = 0; i < sq.size() && sub_ok; ++i) {
                        for (auto [w, c] : adj_[sq[i]]) {
                            if (par.at(w) != 0) continue;
                            int want = c == 2 ? (cls[sq[i]] ^ 1) : cls[sq[i]];
                            auto it = cls.find(w);
                            if (it == cls.end()) {
                                cls[w] = want;
                                sq.push_back(w);
                            } else if (it->second != want) {
                                sub_ok = false;
                            }
                        }
                    }
                    subs.push_back(std::move(sq));
                }
                if (!sub_ok) continue;
                // per sub-component feasible orientations and coverages
                std::vector<std::vector<std::pair<int, int>>> opts(subs.size());
                bool all_ok = true;
                for (size_t s = 0; s < subs.size(); ++s) {
                    for (int o = 0; o < 2; ++o) {
                        bool ok = true;
                        int cover = 0;
                        for (int z : subs[s]) {
                            int slot = (cls[z] ^ o) ? 3 : 1;
                            if (!dom_[z][slot]) ok = false;
                            cover |= slot == 1 ? 1 : 2;
                        }
                        if (ok) opts[s].push_back({o, cover});
                    }
                    if (opts[s].empty()) all_ok = false;
                }
                if (!all_ok) continue;
                // DP across sub-components on coverage mask
                std::vector<std::array<int, 4>> pick(subs.size(), {-1, -1, -1, -1});
                std::array<char, 4> reach{1, 0, 0, 0};
                for (size_t s = 0; s < subs.size(); ++s) {
                    std::array<char, 4> next{0, 0, 0, 0};
                    for (int st = 0; st < 4; ++st) {
                        if (!reach[st]) continue;
                        for (auto [o, cover] : opts[s]) {
                            int ns = st | cover;
                            if (!next[ns]) {
                                next[ns] = 1;
                                pick[s][ns] = st * 8 + o;
                            }
                        }
                    }
                    reach = next;
                }
                for (int mask = 0; mask < 4; ++mask) {
                    if (!reach[mask] || out.count(mask)) continue;
                    // reconstruct orientations for this final mask
                    std::vector<int> orient(subs.size(), 0);
                    int st = mask;
                    for (int s = static_cast<int>(subs.size()) - 1; s >= 0; --s) {
                        int enc = pick[s][st];
                        orient[s] = enc % 8;
                        st = enc / 8;
                    }
                    std::vector<int> hosts(members.size(), 2);
                    std::map<int, int> slot_of;
                    for (size_t s = 0; s < subs.size(); ++s) {
                        for (int z : subs[s]) slot_of[z] = (cls[z] ^ orient[s]) ? 3 : 1;
                    }
                    for (size_t k = 0; k < members.size(); ++k) {
                        int z = members[k];
                        hosts[k] = par.at(z) == 1 ? 2 : slot_of.at(z);
                    }
                    out[mask] = std::move(hosts);
                }
            }
            return out;
        }

        bool parity_bfs(const std::vector<int>& members, int flip, std::map<int, int>& par) {
            par[members[0]] = flip;
            std::vector<int> queue{members[0]};
            for (size_t i = 0; i < queue.size(); ++i) {
                int z = queue[i];
                for (auto [w, c] : adj_[z]) {
                    if (c == 2 && par.at(z) == 1) return false;
                    int want = c == 1 ? (par.at(z) ^ 1) : par.at(z);
                    auto it = par.find(w);
                    if (it == par.end()) {
                        par[w] = want;
                        queue.push_back(w);
                    } else if (it->second != want) {
                        return false;
                    }
                }
            }
            return true;
        }

        int n_;
        const std::vector<int>& pos_;
        std::vector<std::array<char, 4>> dom_;
        std::vector<std::vector<std::pair<int, int>>> adj_;
    };

    int n_, u_, v_;
    const std::map<Edge, int>& recorded_;
    std::vector<std::vector<std::pair<int, int>>> rec_at_;  // vertex -> (other, dist)
};

}  // namespace treeprobe
