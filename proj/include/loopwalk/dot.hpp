#pragma once

#include <string>

#include "loopwalk/loop_graph.hpp"

namespace loopwalk {

namespace detail {

inline std::string dot_escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        if (c == '"' || c == '\\') out += '\\';
        out += c;
    }
    return out;
}

inline void dot_node(std::string& out, int id, const std::string& label) {
    out += "  n" + std::to_string(id) + " [label=\"" + dot_escape(label) + "\"];\n";
}

inline void dot_edge(std::string& out, int src, int dst, const std::string& label,
                     const std::string& attrs) {
    out += "  n" + std::to_string(src) + " -> n" + std::to_string(dst) + " [label=\"" +
           dot_escape(label) + "\"" + attrs + "];\n";
}

} // namespace detail

// Transition edges are drawn blue and bold.
inline std::string dot_export(const CayleyGraph& G) {
    std::string out = "digraph cayley {\n  rankdir=TB;\n";
    for (int v = 0; v < G.num_vertices; ++v) detail::dot_node(out, v, G.names[v]);
    for (int e = 0; e < G.num_edges(); ++e)
        detail::dot_edge(out, G.edge_src(e), G.edge_dst(e), G.labels[G.edge_gen(e)],
                         G.transition[e] ? ", color=blue, penwidth=2" : "");
    out += "}\n";
    return out;
}

inline std::string dot_export(const KRGraph& kr) {
    std::string out = "digraph kr {\n  rankdir=TB;\n";
    for (int v = 0; v < kr.size(); ++v) detail::dot_node(out, v, kr.names[v]);
    for (int e = 0; e < kr.num_edges(); ++e)
        detail::dot_edge(out, kr.edge_src(e), kr.edge_dst(e), kr.labels[kr.edge_gen(e)], "");
    out += "}\n";
    return out;
}

// Spanning-tree edges are solid, fold-back edges dashed red.
inline std::string dot_export(const McGraph& mc) {
    std::string out = "digraph mc {\n  rankdir=TB;\n";
    for (int v = 0; v < mc.size(); ++v) detail::dot_node(out, v, mc.names[v]);
    for (const auto& e : mc.edges)
        detail::dot_edge(out, e.src, e.dst, mc.labels[e.gen],
                         e.tree ? "" : ", style=dashed, color=red");
    out += "}\n";
    return out;
}

// Spine edges are bold; loop edges plain.
inline std::string dot_export(const LoopGraph& G) {
    std::string out = "digraph loopgraph {\n  rankdir=TB;\n";
    for (int v = 0; v < G.size(); ++v) detail::dot_node(out, v, G.vertices[v].name);
    std::vector<char> on_spine(G.edges.size(), 0);
    for (int e : G.spine_edges) on_spine[e] = 1;
    for (std::size_t e = 0; e < G.edges.size(); ++e)
        detail::dot_edge(out, G.edges[e].src, G.edges[e].dst, G.labels[G.edges[e].gen],
                         on_spine[e] ? ", penwidth=2" : "");
    out += "}\n";
    return out;
}

} // namespace loopwalk
