#include <random>

#include "gtest/gtest.h"
#include "test_helpers.hpp"
#include "treeprobe/adaptive.hpp"
#include "treeprobe/adversary_layered.hpp"
#include "treeprobe/adversary_spider.hpp"
#include "treeprobe/query.hpp"

using namespace treeprobe;
using namespace treeprobe::testing;

namespace {

//驱动 adaptive algorithms against an adversary
template <class Adv>
struct AdvSession {
    Adv& adv;
    int ask(int x, int y) { return adv.answer(x, y); }
};

bool layered_tree_matches(const LabeledTree& t, const std::map<Edge, int>& answered) {
    DistanceMatrix m = all_pairs_distance(t);
    for (auto& [e, d] : answered) {
        if (m.at(e.first, e.second) != d) return false;
    }
    return true;
}

}  // namespace

TEST(Layered, DeterminedAnswers) {
    LayeredAdversary adv(10);  // u=0, middles 1..5, leaves 6..9
    EXPECT_EQ(adv.answer(0, 3), 1);
    EXPECT_EQ(adv.answer(0, 7), 2);
    EXPECT_EQ(adv.answer(2, 4), 2);
    EXPECT_EQ(adv.query_count(), 3);
    EXPECT_EQ(adv.informative_count(), 0);
}

TEST(Layered, FirstCrossQueryIsThree) {
    LayeredAdversary adv(7);
    EXPECT_EQ(adv.answer(1, 4), 3);  // never forced early
    EXPECT_EQ(adv.informative_count(), 1);
}

TEST(Layered, ForcedAnswersEventually) {
    // forbid leaf w from all middles but one; the last query must answer 1
    int n = 9;  // middles 1..4, leaves 5..8
    LayeredAdversary adv(n);
    EXPECT_EQ(adv.answer(1, 5), 3);
    EXPECT_EQ(adv.answer(2, 5), 3);
    EXPECT_EQ(adv.answer(3, 5), 3);
    EXPECT_EQ(adv.answer(4, 5), 1);  // only remaining parent
    EXPECT_TRUE(adv.assignment_exists());
}

TEST(Layered, LeafLeafSeparation) {
    int n = 7;  // middles 1..3, leaves 4..6
    LayeredAdversary adv(n);
    EXPECT_EQ(adv.answer(4, 5), 4);  // separable
    EXPECT_EQ(adv.answer(1, 4), 3);
    EXPECT_EQ(adv.answer(2, 4), 3);  // leaf 4 pinned to middle 3
    EXPECT_EQ(adv.answer(3, 4), 1);
    EXPECT_EQ(adv.answer(3, 5), 3);  // 5 separated from 4, cannot share middle 3
    EXPECT_TRUE(adv.assignment_exists());
}

TEST(Layered, AssignmentExistsAfterEveryAnswer) {
    std::mt19937_64 rng(7);
    for (int n : {7, 9, 11}) {
        LayeredAdversary adv(n);
        std::vector<Edge> pairs;
        for (int a = 0; a < n; ++a)
            for (int b = a + 1; b < n; ++b) pairs.push_back({a, b});
        std::shuffle(pairs.begin(), pairs.end(), rng);
        for (auto [x, y] : pairs) {
            adv.answer(x, y);
            ASSERT_TRUE(adv.assignment_exists());
            LabeledTree w = adv.witness_tree();
            ASSERT_TRUE(w.valid());
            ASSERT_TRUE(layered_tree_matches(w, adv.answered()));
        }
        EXPECT_TRUE(adv.identified());  // every pair asked pins the tree
    }
}

TEST(Layered, ReconstructForcedToQuadraticInformativeCount) {
    for (int n : {10, 12, 14}) {
        LayeredAdversary adv(n);
        AdvSession<LayeredAdversary> session{adv};
        ReconstructionResult r = reconstruct_tree(session, n);
        int m = n / 2;
        int bound = (m - 1) * (n - m - 1);
        EXPECT_GE(adv.informative_count(), bound) << "n=" << n;
        // the reconstruction matches the adversary's surviving witness
        EXPECT_TRUE(adv.identified());
        EXPECT_EQ(r.tree, adv.witness_tree());
    }
}

TEST(Spider, DeterminedAnswersAndFirstCross) {
    SpiderAdversary adv(11, true);  // u=0, middles 1..5, leaves 6..10
    EXPECT_EQ(adv.answer(0, 2), 1);
    EXPECT_EQ(adv.answer(0, 8), 2);
    EXPECT_EQ(adv.answer(3, 4), 2);
    EXPECT_EQ(adv.answer(7, 9), 4);
    EXPECT_EQ(adv.answer(2, 7), 3);  // fresh bipartite state is never forced
    EXPECT_EQ(adv.cross_query_count(), 1);
}

TEST(Spider, DegreeForcesAnEdge) {
    int n = 9;  // middles 1..4, leaves 5..8
    SpiderAdversary adv(n, true);
    EXPECT_EQ(adv.answer(1, 5), 3);
    EXPECT_EQ(adv.answer(2, 5), 3);
    EXPECT_EQ(adv.answer(3, 5), 3);
    EXPECT_EQ(adv.answer(4, 5), 1);  // leaf 5 has a single partner left
    EXPECT_TRUE(adv.matching_exists());
}

TEST(Spider, MatchingSurvivesRandomPlay) {
    std::mt19937_64 rng(13);
    for (int n : {9, 10, 12}) {
        SpiderAdversary adv(n, false);
        std::vector<Edge> pairs;
        for (int a = 0; a < n; ++a)
            for (int b = a + 1; b < n; ++b) pairs.push_back({a, b});
        std::shuffle(pairs.begin(), pairs.end(), rng);
        for (auto [x, y] : pairs) {
            adv.answer(x, y);
            ASSERT_TRUE(adv.matching_exists());
        }
        LabeledTree w = adv.witness_tree();
        ASSERT_TRUE(w.valid());
        EXPECT_EQ(classify_shape(w), TreeShape::Spider);
        DistanceMatrix m = all_pairs_distance(w);
        for (auto& [e, d] : adv.answered()) ASSERT_EQ(m.at(e.first, e.second), d);
    }
}

TEST(Spider, IdentifySpiderVsAdversaryForcing) {
    // Prop-4 style forcing: at odd n the identification algorithm must issue
    // at least C((n-1)/2, 2) middle-leaf queries before the matching is pinned
    for (int n : {9, 11, 13}) {
        SpiderAdversary adv(n, true);
        AdvSession<SpiderAdversary> session{adv};
        ReconstructionResult r = identify_spider(session, n);
        int legs = (n - 1) / 2;
        int bound = legs * (legs - 1) / 2;
        EXPECT_GE(adv.cross_query_count(), bound) << "n=" << n;
        // the answer is consistent with the adversary's final matching
        DistanceMatrix m = all_pairs_distance(r.tree);
        for (auto& [e, d] : adv.answered()) ASSERT_EQ(m.at(e.first, e.second), d);
    }
}

TEST(Spider, CoverageAuditOnCompletedGames) {
    for (int n : {9, 10, 11, 12}) {
        SpiderAdversary adv(n, false);
        AdvSession<SpiderAdversary> session{adv};
        identify_spider(session, n);
        AnsweredQueryGraph transcript(n);
        for (auto& [e, d] : adv.answered()) transcript.record(e.first, e.second, d);
        EXPECT_TRUE(pairwise_coverage_audit(transcript, adv.witness_matching())) << "n=" << n;
    }
}

TEST(Spider, CoverageAuditOnRealSpiders) {
    std::mt19937_64 rng(77);
    for (int trial = 0; trial < 30; ++trial) {
        int n = 7 + static_cast<int>(rng() % 14);
        std::vector<int> perm(n);
        std::iota(perm.begin(), perm.end(), 0);
        std::shuffle(perm.begin(), perm.end(), rng);
        LabeledTree hidden = relabel(canonical_spider(n), perm);
        QuerySession s(hidden);
        identify_spider(s, n);
        // legs of the hidden spider: middle -> its pendant leaf
        std::map<int, int> matching;
        auto deg = hidden.degrees();
        auto adj = hidden.adjacency();
        int m = n / 2;
        int center = -1;
        for (int z = 0; z < n; ++z)
            if (deg[z] == m) center = z;
        for (int z = 0; z < n; ++z) {
            if (z == center || deg[z] != 1) continue;
            if (adj[z][0] == center) continue;  // leafless middle, not a leg
            matching[z] = adj[z][0];            // leaf -> middle
        }
        EXPECT_TRUE(pairwise_coverage_audit(s.transcript(), matching));
    }
}

TEST(Spider, AuditFailsWithoutCrossQueries) {
    // legs (1,6) and (2,7): no query between them
    AnsweredQueryGraph transcript(11);
    transcript.record(1, 6, 1);
    transcript.record(2, 7, 1);
    std::map<int, int> matching{{6, 1}, {7, 2}};
    EXPECT_FALSE(pairwise_coverage_audit(transcript, matching));

    AnsweredQueryGraph empty(11);
    EXPECT_FALSE(pairwise_coverage_audit(empty, matching));

    transcript.record(1, 7, 3);  // one cross query fixes the pair
    EXPECT_TRUE(pairwise_coverage_audit(transcript, matching));
}
