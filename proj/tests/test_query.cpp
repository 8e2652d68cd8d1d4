#include "gtest/gtest.h"
#include "test_helpers.hpp"
#include "treeprobe/io.hpp"
#include "treeprobe/query.hpp"

using namespace treeprobe;
using namespace treeprobe::testing;

TEST(Session, FreshSession) {
    QuerySession s(path_tree(3));
    EXPECT_EQ(s.count(), 0);
    EXPECT_TRUE(check_consistency(s.transcript()).consistent);  // vacuous
}

TEST(Session, ZeroBudgetFailsFirstAsk) {
    QuerySession s(star_tree(5), 0);
    EXPECT_THROW(s.ask(1, 2), BudgetExhausted);
    EXPECT_EQ(s.count(), 0);
}

TEST(Session, AskBasicsAndCaching) {
    QuerySession s(path_tree(4));
    EXPECT_EQ(s.ask(0, 3), 3);
    EXPECT_EQ(s.count(), 1);
    EXPECT_EQ(s.ask(3, 0), 3);  // same unordered pair, cached
    EXPECT_EQ(s.count(), 1);
    EXPECT_THROW(s.ask(2, 2), DomainError);
    EXPECT_THROW(s.ask(0, 9), DomainError);

    QuerySession star(star_tree(5));
    EXPECT_EQ(star.ask(1, 2), 2);
}

TEST(Session, BudgetAccounting) {
    QuerySession s(path_tree(5), 3);
    s.ask(0, 1);
    s.ask(0, 2);
    s.ask(0, 1);  // cached, free
    s.ask(0, 3);
    EXPECT_EQ(s.count(), 3);
    EXPECT_THROW(s.ask(0, 4), BudgetExhausted);
    EXPECT_EQ(s.count(), 3);
}

TEST(Session, AnswersMatchPrecomputedMatrix) {
    std::mt19937_64 rng(123);
    for (int trial = 0; trial < 100; ++trial) {
        LabeledTree t = random_tree(20, rng);
        DistanceMatrix m = all_pairs_distance(t);
        QuerySession s(t);
        for (int k = 0; k < 30; ++k) {
            int x = static_cast<int>(rng() % 20);
            int y = static_cast<int>(rng() % 20);
            if (x == y) continue;
            ASSERT_EQ(s.ask(x, y), m.at(x, y));
        }
        EXPECT_TRUE(s.transcript().consistent_with(m));
    }
}

TEST(Consistency, SmallInstances) {
    AnsweredQueryGraph good(3);
    good.record(0, 1, 1);
    good.record(1, 2, 1);
    good.record(0, 2, 2);
    ConsistencyResult r = check_consistency(good);
    ASSERT_TRUE(r.consistent);
    ASSERT_TRUE(r.witness.has_value());
    EXPECT_EQ(r.witness->edges, (std::vector<Edge>{{0, 1}, {1, 2}}));

    AnsweredQueryGraph bad(3);
    bad.record(0, 1, 1);
    bad.record(1, 2, 1);
    bad.record(0, 2, 3);  // exceeds the max distance on 3 vertices
    EXPECT_FALSE(check_consistency(bad).consistent);
}

TEST(Consistency, RealAnswersAlwaysConsistent) {
    // answers drawn from a real tree on 4 of its pairs -> true for all trees
    for_each_tree(5, [&](const LabeledTree& t) {
        DistanceMatrix m = all_pairs_distance(t);
        AnsweredQueryGraph aqg(5);
        aqg.record(0, 1, m.at(0, 1));
        aqg.record(1, 2, m.at(1, 2));
        aqg.record(2, 3, m.at(2, 3));
        aqg.record(3, 4, m.at(3, 4));
        ASSERT_TRUE(check_consistency(aqg).consistent);
    });
}

TEST(Consistency, SessionTranscriptAlwaysRealizable) {
    std::mt19937_64 rng(5);
    for (int n = 4; n <= 7; ++n) {
        LabeledTree t = random_tree(n, rng);
        QuerySession s(t);
        for (int k = 0; k < 2 * n; ++k) {
            int x = static_cast<int>(rng() % n), y = static_cast<int>(rng() % n);
            if (x != y) s.ask(x, y);
            ConsistencyResult r = check_consistency(s.transcript());
            ASSERT_TRUE(r.consistent);
        }
    }
    EXPECT_THROW(check_consistency(AnsweredQueryGraph(12)), CapExceeded);
}

TEST(TranscriptIo, RoundTrip) {
    QuerySession s(path_tree(5));
    s.ask(0, 4);
    s.ask(1, 3);
    nlohmann::json j = transcript_to_json(s.transcript());
    AnsweredQueryGraph back = transcript_from_json(j);
    EXPECT_EQ(back.n, 5);
    EXPECT_EQ(back.answers, s.transcript().answers);
}

TEST(TreeIo, BothFormats) {
    nlohmann::json je = {{"n", 4}, {"edges", {{0, 1}, {1, 2}, {2, 3}}}};
    EXPECT_EQ(tree_from_json(je), path_tree(4));
    nlohmann::json jp = {{"n", 4}, {"prufer", {0, 0}}};
    EXPECT_EQ(tree_from_json(jp).edges, (std::vector<Edge>{{0, 1}, {0, 2}, {0, 3}}));
    nlohmann::json bad = {{"n", 4}, {"edges", {{0, 1}, {1, 2}, {1, 2}}}};
    EXPECT_THROW(tree_from_json(bad), DomainError);
    EXPECT_EQ(tree_from_json(tree_to_json(path_tree(6))), path_tree(6));
}
