#pragma once

#include <map>
#include <optional>
#include <utility>

#include "treeprobe/labeled_tree.hpp"

namespace treeprobe {

// Vertex pairs with their answered distances; the weighted query graph.
struct AnsweredQueryGraph {
    int n = 0;
    std::map<Edge, int> answers;

    AnsweredQueryGraph() = default;
    explicit AnsweredQueryGraph(int n_) : n(n_) {}

    bool has(int a, int b) const { return answers.count(make_edge(a, b)) > 0; }

    int at(int a, int b) const { return answers.at(make_edge(a, b)); }

    // Distances above n-1 are representable so that consistency checking can
    // reject them; realizable transcripts always stay within [1, n-1].
    void record(int a, int b, int dist) {
        if (a == b) throw DomainError("record: self-pair");
        if (a < 0 || b < 0 || a >= n || b >= n) throw DomainError("record: vertex out of range");
        if (dist < 1) throw DomainError("record: distance must be positive");
        auto [it, inserted] = answers.emplace(make_edge(a, b), dist);
        if (!inserted && it->second != dist)
            throw DomainError("record: pair already answered differently");
    }

    // True iff the tree's metric matches every answered pair.
    bool consistent_with(const DistanceMatrix& m) const {
        for (auto& [e, d] : answers) {
            if (m.at(e.first, e.second) != d) return false;
        }
        return true;
    }
};

// Oracle around a hidden tree: answers, counts and records distance queries.
// Repeated pairs return the cached answer without incrementing the count.
class QuerySession {
public:
    explicit QuerySession(LabeledTree hidden, std::optional<int> budget = std::nullopt)
        : hidden_(std::move(hidden)),
          metric_(all_pairs_distance(hidden_)),
          transcript_(hidden_.n),
          budget_(budget) {}

    int size() const { return hidden_.n; }

    int ask(int x, int y) {
        if (x == y) throw DomainError("ask: x == y");
        if (x < 0 || y < 0 || x >= hidden_.n || y >= hidden_.n)
            throw DomainError("ask: vertex out of range");
        if (transcript_.has(x, y)) return transcript_.at(x, y);
        if (budget_ && count_ >= *budget_) throw BudgetExhausted("ask: query budget exhausted");
        int d = metric_.at(x, y);
        transcript_.record(x, y, d);
        ++count_;
        return d;
    }

    int count() const { return count_; }
    const AnsweredQueryGraph& transcript() const { return transcript_; }
    const LabeledTree& hidden() const { return hidden_; }

private:
    LabeledTree hidden_;
    DistanceMatrix metric_;
    AnsweredQueryGraph transcript_;
    std::optional<int> budget_;
    int count_ = 0;
};

struct ConsistencyResult {
    bool consistent = false;
    std::optional<LabeledTree> witness;
};

// Exhaustive search for a realizing tree; desk-scale only.
inline ConsistencyResult check_consistency(const AnsweredQueryGraph& aqg,
                                           int cap = kDefaultEnumerationCap) {
    if (aqg.n > cap) throw CapExceeded("check_consistency: n exceeds enumeration cap");
    ConsistencyResult result;
    if (aqg.n < 2) {
        result.consistent = aqg.answers.empty();
        return result;
    }
    for_each_tree_until(aqg.n, [&](const LabeledTree& t) {
        if (!aqg.consistent_with(all_pairs_distance(t))) return false;
        result.consistent = true;
        result.witness = t;
        return true;
    });
    return result;
}

}  // namespace treeprobe
