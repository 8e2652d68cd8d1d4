#pragma once

#include <fstream>
#include <set>
#include <string>

#include <json.hpp>

#include "treeprobe/labeled_tree.hpp"
#include "treeprobe/query.hpp"

namespace treeprobe {

// Tree file format, repo-wide: {"n": int, "edges": [[a,b], ...]} or the
// Prufer alternative {"n": int, "prufer": [...]}.
inline LabeledTree tree_from_json(const nlohmann::json& j) {
    if (!j.contains("n")) throw DomainError("tree json: missing \"n\"");
    int n = j.at("n").get<int>();
    if (j.contains("prufer")) {
        return prufer_decode(j.at("prufer").get<std::vector<int>>(), n);
    }
    if (!j.contains("edges")) throw DomainError("tree json: need \"edges\" or \"prufer\"");
    std::vector<Edge> edges;
    for (auto& e : j.at("edges")) {
        if (e.size() != 2) throw DomainError("tree json: edge must be a pair");
        edges.push_back(make_edge(e[0].get<int>(), e[1].get<int>()));
    }
    LabeledTree t(n, std::move(edges));
    if (!t.valid()) throw DomainError("tree json: edge set is not a tree");
    return t;
}

inline nlohmann::json tree_to_json(const LabeledTree& t) {
    nlohmann::json edges = nlohmann::json::array();
    for (auto [a, b] : t.edges) edges.push_back({a, b});
    return {{"n", t.n}, {"edges", edges}};
}

// Transcript file format: {"n": int, "answers": [[a,b,d], ...]}.
inline AnsweredQueryGraph transcript_from_json(const nlohmann::json& j) {
    AnsweredQueryGraph aqg(j.at("n").get<int>());
    for (auto& row : j.at("answers")) {
        if (row.size() != 3) throw DomainError("transcript json: answer must be [a,b,d]");
        aqg.record(row[0].get<int>(), row[1].get<int>(), row[2].get<int>());
    }
    return aqg;
}

inline nlohmann::json transcript_to_json(const AnsweredQueryGraph& aqg) {
    nlohmann::json rows = nlohmann::json::array();
    for (auto& [e, d] : aqg.answers) rows.push_back({e.first, e.second, d});
    return {{"n", aqg.n}, {"answers", rows}};
}

inline nlohmann::json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DomainError("cannot open file: " + path);
    nlohmann::json j;
    in >> j;
    return j;
}

inline void save_json_file(const std::string& path, const nlohmann::json& j) {
    std::ofstream out(path);
    if (!out) throw DomainError("cannot write file: " + path);
    out << j.dump(2) << "\n";
}

}  // namespace treeprobe
