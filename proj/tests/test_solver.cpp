#include <fstream>

#include <json.hpp>

#include "gtest/gtest.h"
#include "test_helpers.hpp"
#include "treeprobe/adaptive.hpp"
#include "treeprobe/query.hpp"
#include "treeprobe/solver.hpp"

using namespace treeprobe;
using namespace treeprobe::testing;

TEST(GoalPredicate, SmallCases) {
    TreeUniverse uni(3);
    std::vector<int> all{0, 1, 2};
    EXPECT_FALSE(uni.goal_reached(all, Goal::MaxDistPair));  // no common diameter pair
    EXPECT_TRUE(uni.goal_reached(all, Goal::IsoClass));      // every tree on 3 is a path
    EXPECT_FALSE(uni.goal_reached(all, Goal::ExactTree));
    std::vector<int> one{1};
    EXPECT_TRUE(uni.goal_reached(one, Goal::MaxDistPair));
    EXPECT_TRUE(uni.goal_reached(one, Goal::ExactTree));
    EXPECT_TRUE(uni.goal_reached(one, Goal::IsoClass));
    EXPECT_THROW(uni.goal_reached({}, Goal::ExactTree), DomainError);
}

TEST(AdaptiveSolver, HandDerivableValues) {
    EXPECT_EQ(solve_adaptive(2, Goal::MaxDistPair), 0);  // unique tree
    EXPECT_EQ(solve_adaptive(2, Goal::ExactTree), 0);
    EXPECT_EQ(solve_adaptive(3, Goal::MaxDistPair), 2);
    EXPECT_THROW(solve_adaptive(9, Goal::MaxDistPair), CapExceeded);
    EXPECT_THROW(solve_adaptive(1, Goal::MaxDistPair), DomainError);
}

TEST(AdaptiveSolver, NeverBeatsThePaperAlgorithm) {
    for (int n : {4, 5}) {
        int solver = solve_adaptive(n, Goal::MaxDistPair);
        int measured = 0;
        for_each_tree(n, [&](const LabeledTree& t) {
            QuerySession s(t);
            measured = std::max(measured, find_diameter_pair(s, n).queries_used);
        });
        EXPECT_LE(solver, measured) << "n=" << n;
        EXPECT_LE(solver, 2 * n - 4);

        int solver_rec = solve_adaptive(n, Goal::ExactTree);
        int measured_rec = 0;
        for_each_tree(n, [&](const LabeledTree& t) {
            QuerySession s(t);
            measured_rec = std::max(measured_rec, reconstruct_tree(s, n).queries_used);
        });
        EXPECT_LE(solver_rec, measured_rec) << "n=" << n;
    }
}

TEST(AdaptiveSolver, ExactTreeDominatesIsoClass) {
    for (int n = 2; n <= 5; ++n) {
        EXPECT_GE(solve_adaptive(n, Goal::ExactTree), solve_adaptive(n, Goal::IsoClass));
    }
}

TEST(AdaptiveSolver, MemoizationIsSound) {
    for (int n = 2; n <= 4; ++n) {
        for (Goal g : {Goal::MaxDistPair, Goal::ExactTree, Goal::IsoClass}) {
            EXPECT_EQ(solve_adaptive(n, g, kSolverCap, true),
                      solve_adaptive(n, g, kSolverCap, false));
        }
    }
}

TEST(NonadaptiveSolver, KnownValues) {
    EXPECT_EQ(solve_nonadaptive(2, Goal::MaxDistPair), 0);
    EXPECT_EQ(solve_nonadaptive(2, Goal::ExactTree), 0);
    EXPECT_EQ(solve_nonadaptive(2, Goal::IsoClass), 0);
    EXPECT_EQ(solve_nonadaptive(5, Goal::ExactTree), 8);  // ceil(5*3/2)
    EXPECT_LE(solve_nonadaptive(4, Goal::MaxDistPair), 6);
    EXPECT_THROW(solve_nonadaptive(7, Goal::ExactTree), CapExceeded);
}

TEST(NonadaptiveSolver, DominancesAtSmallN) {
    for (int n = 2; n <= 5; ++n) {
        int exact = solve_nonadaptive(n, Goal::ExactTree);
        int iso = solve_nonadaptive(n, Goal::IsoClass);
        EXPECT_GE(exact, iso);
        // adaptive play never needs more queries than a non-adaptive plan
        for (Goal g : {Goal::MaxDistPair, Goal::ExactTree, Goal::IsoClass}) {
            EXPECT_LE(solve_adaptive(n, g), solve_nonadaptive(n, g)) << "n=" << n;
        }
    }
}

namespace {

// replay a strategy against a hidden tree; returns queries used
int replay(const StrategyNode& node, const LabeledTree& hidden, AnsweredQueryGraph& asked) {
    if (node.done) return 0;
    DistanceMatrix m = all_pairs_distance(hidden);
    int d = m.at(node.query.first, node.query.second);
    asked.record(node.query.first, node.query.second, d);
    auto it = node.children.find(d);
    if (it == node.children.end()) throw InvariantViolation("replay: unexpected answer");
    return 1 + replay(*it->second, hidden, asked);
}

}  // namespace

TEST(Strategy, ReplayReachesGoalWithinDepth) {
    for (int n = 2; n <= 5; ++n) {
        for (Goal g : {Goal::MaxDistPair, Goal::ExactTree, Goal::IsoClass}) {
            int val = solve_adaptive(n, g);
            auto root = optimal_strategy_extract(n, g);
            EXPECT_EQ(root->depth(), val) << "n=" << n << " goal=" << to_string(g);
            for_each_tree(n, [&](const LabeledTree& hidden) {
                AnsweredQueryGraph asked(n);
                int used = replay(*root, hidden, asked);
                ASSERT_LE(used, val);
                // at the leaf, the consistent set satisfies the goal
                std::vector<LabeledTree> consistent;
                for_each_tree(n, [&](const LabeledTree& t) {
                    if (asked.consistent_with(all_pairs_distance(t))) consistent.push_back(t);
                });
                ASSERT_FALSE(consistent.empty());
                if (g == Goal::ExactTree) {
                    ASSERT_EQ(consistent.size(), 1u);
                    ASSERT_EQ(consistent[0], hidden);
                } else if (g == Goal::IsoClass) {
                    for (auto& t : consistent)
                        ASSERT_EQ(canonical_code(t), canonical_code(consistent[0]));
                } else {
                    bool found = false;
                    for (int a = 0; a < n && !found; ++a) {
                        for (int b = a + 1; b < n && !found; ++b) {
                            bool ok = true;
                            for (auto& t : consistent) {
                                DistanceMatrix m = all_pairs_distance(t);
                                if (m.at(a, b) != m.diameter()) {
                                    ok = false;
                                    break;
                                }
                            }
                            found = ok;
                        }
                    }
                    ASSERT_TRUE(found);
                }
            });
        }
    }
}

TEST(Regression, FrozenSolverValues) {
    std::ifstream in(std::string(TREEPROBE_SOURCE_DIR) + "/data/solver_values.json");
    ASSERT_TRUE(in.good()) << "regression table missing";
    nlohmann::json table;
    in >> table;
    const std::map<std::string, Goal> goals{{"maxdist", Goal::MaxDistPair},
                                            {"exact", Goal::ExactTree},
                                            {"iso", Goal::IsoClass}};
    const std::map<std::string, std::string> keys{{"f_A", "maxdist"}, {"g_A", "exact"},
                                                  {"h_A", "iso"},     {"f_N", "maxdist"},
                                                  {"g_N", "exact"},   {"h_N", "iso"}};
    for (auto& [key, goal_name] : keys) {
        ASSERT_TRUE(table.contains(key)) << key;
        bool adaptive = key.back() == 'A';
        for (auto& [ns, expected] : table.at(key).items()) {
            int n = std::stoi(ns);
            int got = adaptive ? solve_adaptive(n, goals.at(goal_name))
                               : solve_nonadaptive(n, goals.at(goal_name));
            EXPECT_EQ(got, expected.get<int>()) << key << " at n=" << n;
        }
    }
}
