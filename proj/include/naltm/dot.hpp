#pragma once

// DOT rendering of the learned network: one cluster per column, one edge per
// link whose forward expectation clears the threshold. Output is a pure
// function of network state, byte-identical across calls.

#include <cstdio>
#include <set>
#include <string>

#include "naltm/network.hpp"

namespace naltm {

namespace detail {

inline std::string dot_escape(const Symbol& s) {
    std::string out;
    for (char c : s) {
        if (c == '"' || c == '\\') out.push_back('\\');
        out.push_back(c);
    }
    return out;
}

inline std::string format_truth_label(const TruthValue& t) {
    char buf[48];
    std::snprintf(buf, sizeof(buf), "f=%.2f,c=%.2f", t.frequency, t.confidence);
    return buf;
}

}  // namespace detail

inline std::string export_dot(const Network& net, double min_expectation) {
    std::vector<const Link*> edges;
    std::set<NodeId> participating;
    net.for_each_link([&](const Link& l) {
        if (expectation(l.forward) >= min_expectation) {
            edges.push_back(&l);
            participating.insert(l.source);
            participating.insert(l.target);
        }
    });

    std::string out = "digraph network {\n";
    for (const Column& col : net.columns()) {
        out += "  subgraph cluster_" + std::to_string(col.id) + " {\n";
        out += "    label=\"" + detail::dot_escape(col.symbol) + "\";\n";
        for (NodeId n : col.nodes) {
            if (participating.count(n)) {
                out += "    n" + std::to_string(n) + ";\n";
            }
        }
        out += "  }\n";
    }
    for (const Link* l : edges) {
        out += "  n" + std::to_string(l->source) + " -> n" +
               std::to_string(l->target) + " [label=\"" +
               detail::format_truth_label(l->forward) + "\"];\n";
    }
    out += "}\n";
    return out;
}

}  // namespace naltm
