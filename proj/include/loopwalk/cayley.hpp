#pragma once

#include <string>
#include <vector>

#include "loopwalk/scc.hpp"
#include "loopwalk/semigroup.hpp"

namespace loopwalk {

// Right Cayley graph of S^1: one vertex per element of S plus the adjoined
// identity as root, and for every vertex exactly one out-edge per generator,
// s -a-> s.a. Edge ids are src * alphabet + gen. An edge is a transition edge
// when there is no directed path back from its head to its tail, which for an
// existing edge is the same as its endpoints lying in different strongly
// connected components.
struct CayleyGraph {
    int num_vertices = 0;
    int root = 0;
    int alphabet = 0;
    std::vector<int> next;        // src * alphabet + gen -> dst
    std::vector<int> scc_id;      // per vertex
    std::vector<char> transition; // per edge id
    std::vector<std::string> labels;
    std::vector<std::string> names;

    int edge_id(int src, int gen) const { return src * alphabet + gen; }
    int edge_src(int edge) const { return edge / alphabet; }
    int edge_gen(int edge) const { return edge % alphabet; }
    int edge_dst(int edge) const { return next[edge]; }
    int num_edges() const { return num_vertices * alphabet; }
    int step(int vertex, int gen) const { return next[edge_id(vertex, gen)]; }
};

inline CayleyGraph right_cayley(const FiniteSemigroup& S) {
    CayleyGraph G;
    const int n = S.size();
    G.num_vertices = n + 1;
    G.root = n;
    G.alphabet = S.alphabet();
    G.labels = S.labels();
    G.next.resize(static_cast<std::size_t>(G.num_vertices) * G.alphabet);
    for (int v = 0; v <= n; ++v)
        for (int g = 0; g < G.alphabet; ++g)
            G.next[G.edge_id(v, g)] =
                v == G.root ? S.generator_element(g) : S.mult(v, S.generator_element(g));

    std::vector<std::vector<int>> adj(G.num_vertices);
    for (int v = 0; v < G.num_vertices; ++v)
        for (int g = 0; g < G.alphabet; ++g)
            adj[v].push_back(G.step(v, g));
    G.scc_id = strongly_connected_components(adj).comp;

    G.transition.resize(G.num_edges());
    for (int e = 0; e < G.num_edges(); ++e)
        G.transition[e] = G.scc_id[G.edge_src(e)] != G.scc_id[G.edge_dst(e)];

    for (int v = 0; v < n; ++v) G.names.push_back(S.element_name(v));
    G.names.push_back(render_word(Word{}, G.labels));
    return G;
}

inline std::vector<int> transition_edge_ids(const CayleyGraph& G) {
    std::vector<int> ids;
    for (int e = 0; e < G.num_edges(); ++e)
        if (G.transition[e]) ids.push_back(e);
    return ids;
}

} // namespace loopwalk
