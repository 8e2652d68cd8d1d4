#include <map>
#include <set>

#include "gtest/gtest.h"
#include "test_helpers.hpp"
#include "treeprobe/canonical.hpp"
#include "treeprobe/labeled_tree.hpp"

using namespace treeprobe;
using namespace treeprobe::testing;

TEST(Prufer, SmallestCases) {
    LabeledTree t = prufer_decode({}, 2);
    EXPECT_EQ(t.edges, (std::vector<Edge>{{0, 1}}));

    LabeledTree star = prufer_decode({0, 0}, 4);
    EXPECT_EQ(star.edges, (std::vector<Edge>{{0, 1}, {0, 2}, {0, 3}}));
    EXPECT_EQ(classify_shape(star), TreeShape::Star);
}

TEST(Prufer, N4ShapeCensus) {
    // all 16 sequences for n=4: every tree distinct, 12 paths and 4 stars
    std::set<std::vector<Edge>> seen;
    std::map<TreeShape, int> census;
    for_each_tree(4, [&](const LabeledTree& t) {
        ASSERT_TRUE(t.valid());
        seen.insert(t.edges);
        TreeShape s = classify_shape(t);
        // P4 counts as a double star: exactly two non-leaf vertices
        ++census[s];
    });
    EXPECT_EQ(seen.size(), 16u);
    EXPECT_EQ(census[TreeShape::DoubleStar], 12);  // the 12 labeled paths
    EXPECT_EQ(census[TreeShape::Star], 4);
}

TEST(Prufer, RoundTripExhaustive) {
    for (int n = 2; n <= 7; ++n) {
        std::uint64_t count = 0;
        for_each_tree(n, [&](const LabeledTree& t) {
            ++count;
            EXPECT_EQ(prufer_decode(prufer_encode(t), n), t);
        });
        EXPECT_EQ(count, labeled_tree_count(n));
    }
    // encode(decode(s)) == s on random sequences
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 200; ++trial) {
        int n = 3 + static_cast<int>(rng() % 10);
        std::vector<int> seq(n - 2);
        for (int& v : seq) v = static_cast<int>(rng() % n);
        EXPECT_EQ(prufer_encode(prufer_decode(seq, n)), seq);
    }
}

TEST(Prufer, RejectsBadInput) {
    EXPECT_THROW(prufer_decode({5}, 3), DomainError);
    EXPECT_THROW(prufer_decode({-1}, 3), DomainError);
    EXPECT_THROW(prufer_decode({}, 1), DomainError);
}

TEST(Enumeration, CountsAndCap) {
    int c3 = 0, c4 = 0;
    for_each_tree(3, [&](const LabeledTree&) { ++c3; });
    for_each_tree(4, [&](const LabeledTree&) { ++c4; });
    EXPECT_EQ(c3, 3);
    EXPECT_EQ(c4, 16);

    std::set<std::vector<Edge>> distinct;
    for_each_tree(7, [&](const LabeledTree& t) { distinct.insert(t.edges); });
    EXPECT_EQ(distinct.size(), 16807u);

    EXPECT_THROW(for_each_tree(10, [](const LabeledTree&) {}), CapExceeded);
    EXPECT_NO_THROW(for_each_tree(2, [](const LabeledTree&) {}));
}

TEST(Distances, Basics) {
    LabeledTree p4 = path_tree(4);
    DistanceMatrix m = all_pairs_distance(p4);
    EXPECT_EQ(m.at(0, 3), 3);
    EXPECT_EQ(m.at(3, 0), 3);
    EXPECT_EQ(m.at(1, 1), 0);

    LabeledTree s5 = star_tree(5);
    DistanceMatrix ms = all_pairs_distance(s5);
    for (int i = 1; i < 5; ++i)
        for (int j = i + 1; j < 5; ++j) EXPECT_EQ(ms.at(i, j), 2);
}

TEST(Distances, DoubleStarMetric) {
    // centers 0,1; leaves 2,3 on 0 and 4,5 on 1
    LabeledTree ds(6, {{0, 1}, {0, 2}, {0, 3}, {1, 4}, {1, 5}});
    EXPECT_EQ(classify_shape(ds), TreeShape::DoubleStar);
    DistanceMatrix m = all_pairs_distance(ds);
    EXPECT_EQ(m.at(2, 4), 3);  // cross-side leaves
    EXPECT_EQ(m.at(2, 3), 2);  // same-side leaves
    EXPECT_EQ(m.at(0, 4), 2);  // center to far leaf
    EXPECT_EQ(m.at(0, 2), 1);
    EXPECT_EQ(m.diameter(), 3);
}

TEST(Distances, InvariantsExhaustive) {
    for (int n = 2; n <= 7; ++n) {
        for_each_tree(n, [&](const LabeledTree& t) {
            DistanceMatrix m = all_pairs_distance(t);
            for (int a = 0; a < n; ++a) {
                ASSERT_EQ(m.at(a, a), 0);
                for (int b = a + 1; b < n; ++b) {
                    ASSERT_EQ(m.at(a, b), m.at(b, a));
                    ASSERT_GE(m.at(a, b), 1);
                    ASSERT_LE(m.at(a, b), n - 1);
                }
            }
            ASSERT_TRUE(satisfies_four_point(m));
        });
    }
}

TEST(DiameterPair, Basics) {
    DiameterPair p = diameter_pair(path_tree(3));
    EXPECT_EQ(p.a, 0);
    EXPECT_EQ(p.b, 2);
    EXPECT_EQ(p.distance, 2);
    EXPECT_THROW(diameter_pair(LabeledTree(1, {})), DomainError);
}

TEST(DiameterPair, MatchesMatrixMaxOnN4) {
    for_each_tree(4, [&](const LabeledTree& t) {
        DiameterPair p = diameter_pair(t);
        DistanceMatrix m = all_pairs_distance(t);
        EXPECT_EQ(p.distance, m.diameter());
        EXPECT_EQ(m.at(p.a, p.b), p.distance);
    });
}

TEST(DiameterPair, TieBreakIsLexSmallest) {
    LabeledTree s5 = star_tree(5);
    DiameterPair p = diameter_pair(s5);
    EXPECT_EQ(p.a, 1);
    EXPECT_EQ(p.b, 2);
    EXPECT_EQ(p.distance, 2);
}

TEST(Shapes, Classification) {
    EXPECT_EQ(classify_shape(LabeledTree(4, {{0, 1}, {0, 2}, {0, 3}})), TreeShape::Star);
    EXPECT_EQ(classify_shape(path_tree(2)), TreeShape::Path);
    EXPECT_EQ(classify_shape(path_tree(7)), TreeShape::Path);
    // spine 0-1-2 with a leaf on every spine vertex
    LabeledTree cat(6, {{0, 1}, {1, 2}, {0, 3}, {1, 4}, {2, 5}});
    EXPECT_EQ(classify_shape(cat), TreeShape::RealCaterpillar);
    EXPECT_EQ(diameter_pair(cat).distance, 4);

    EXPECT_EQ(classify_shape(canonical_spider(7)), TreeShape::Spider);
    EXPECT_EQ(classify_shape(canonical_spider(8)), TreeShape::Spider);
    EXPECT_EQ(classify_shape(path_tree(6)), TreeShape::Path);
}

TEST(Shapes, DiameterLawsExhaustive) {
    // every real caterpillar has diameter 4; every double star diameter 3
    for (int n = 4; n <= 7; ++n) {
        for_each_tree(n, [&](const LabeledTree& t) {
            TreeShape s = classify_shape(t);
            if (s == TreeShape::RealCaterpillar) ASSERT_EQ(diameter_pair(t).distance, 4);
            if (s == TreeShape::DoubleStar) ASSERT_EQ(diameter_pair(t).distance, 3);
        });
    }
}

TEST(Canonical, RelabelInvariance) {
    LabeledTree p4 = path_tree(4);
    // relabeled as 2-0-3-1
    LabeledTree q = relabel(p4, {2, 0, 3, 1});
    EXPECT_EQ(canonical_code(p4), canonical_code(q));
    EXPECT_NE(canonical_code(star_tree(5)), canonical_code(path_tree(5)));
}

TEST(Canonical, AgreesWithBruteForceIsomorphism) {
    // collect one representative per edge set for n <= 6, then compare
    // code equality against the n!-bijection oracle on sampled pairs
    for (int n = 2; n <= 6; ++n) {
        std::vector<LabeledTree> trees;
        for_each_tree(n, [&](const LabeledTree& t) { trees.push_back(t); });
        // all pairs is quadratic in n^(n-2); subsample deterministically for n=6
        size_t stride = (n == 6) ? 17 : 1;
        for (size_t i = 0; i < trees.size(); i += stride) {
            for (size_t j = i; j < trees.size(); j += stride) {
                bool iso = brute_force_isomorphic(trees[i], trees[j]);
                bool same = canonical_code(trees[i]) == canonical_code(trees[j]);
                ASSERT_EQ(iso, same) << "n=" << n << " i=" << i << " j=" << j;
            }
        }
    }
}

TEST(Canonical, CentersPeeling) {
    EXPECT_EQ(tree_centers(path_tree(5)), (std::vector<int>{2}));
    EXPECT_EQ(tree_centers(path_tree(4)), (std::vector<int>{1, 2}));
    EXPECT_EQ(tree_centers(star_tree(6)), (std::vector<int>{0}));
}

TEST(RandomTree, UniformPruferIsValid) {
    std::mt19937_64 rng(42);
    for (int trial = 0; trial < 100; ++trial) {
        LabeledTree t = random_tree(20, rng);
        EXPECT_TRUE(t.valid());
    }
}
