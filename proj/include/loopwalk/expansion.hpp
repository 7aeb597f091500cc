#pragma once

#include <algorithm>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "loopwalk/cayley.hpp"

namespace loopwalk {

inline constexpr std::size_t kDefaultKrCap = 100000;
inline constexpr std::size_t kDefaultMcCap = 100000;

// Karnofsky-Rhodes expansion: the quotient of the free-semigroup Cayley graph
// identifying two words exactly when they reach the same element of S and
// their paths cross the same set of transition edges. The result is again a
// deterministic, complete right Cayley graph; vertices are discovered breadth
// first with letters in generator order.
struct KRGraph {
    int alphabet = 0;
    int root = 0;
    std::vector<int> element;              // per vertex: underlying Cayley vertex
    std::vector<std::vector<int>> crossed; // per vertex: sorted Cayley transition-edge ids
    std::vector<int> next;                 // vertex * alphabet + gen -> vertex
    std::vector<Word> rep_word;            // breadth-first tree word
    std::vector<std::string> labels;
    std::vector<std::string> names;

    int size() const { return static_cast<int>(element.size()); }
    int num_edges() const { return size() * alphabet; }
    int edge_id(int vertex, int gen) const { return vertex * alphabet + gen; }
    int edge_src(int edge) const { return edge / alphabet; }
    int edge_gen(int edge) const { return edge % alphabet; }
    int edge_dst(int edge) const { return next[edge]; }
    int step(int vertex, int gen) const { return next[edge_id(vertex, gen)]; }
};

inline KRGraph kr_expand(const CayleyGraph& G, std::size_t vertex_cap = kDefaultKrCap) {
    KRGraph kr;
    kr.alphabet = G.alphabet;
    kr.labels = G.labels;

    std::map<std::pair<int, std::vector<int>>, int> id_of;
    auto intern = [&](int element, std::vector<int> crossed, Word word) {
        auto key = std::make_pair(element, crossed);
        auto it = id_of.find(key);
        if (it != id_of.end()) return std::pair(it->second, false);
        if (kr.element.size() >= vertex_cap)
            throw VertexCapExceeded("KR expansion exceeds the vertex cap of " +
                                    std::to_string(vertex_cap));
        int id = static_cast<int>(kr.element.size());
        id_of.emplace(std::move(key), id);
        kr.element.push_back(element);
        kr.crossed.push_back(std::move(crossed));
        kr.rep_word.push_back(std::move(word));
        return std::pair(id, true);
    };

    intern(G.root, {}, {});
    for (std::size_t v = 0; v < kr.element.size(); ++v) {
        for (int g = 0; g < kr.alphabet; ++g) {
            int cayley_edge = G.edge_id(kr.element[v], g);
            std::vector<int> crossed = kr.crossed[v];
            if (G.transition[cayley_edge]) {
                auto pos = std::lower_bound(crossed.begin(), crossed.end(), cayley_edge);
                if (pos == crossed.end() || *pos != cayley_edge) crossed.insert(pos, cayley_edge);
            }
            Word word = kr.rep_word[v];
            word.push_back(g);
            auto [dst, fresh] = intern(G.edge_dst(cayley_edge), std::move(crossed), std::move(word));
            (void)fresh;
            kr.next.resize(kr.element.size() * kr.alphabet, -1);
            kr.next[kr.edge_id(static_cast<int>(v), g)] = dst;
        }
    }
    for (const Word& w : kr.rep_word) kr.names.push_back(render_word(w, kr.labels));
    return kr;
}

// K(KR): the KR expansion projects onto S, and a KR vertex belongs to the
// minimal ideal exactly when its projected element lies in K(S).
inline std::vector<char> kr_ideal_flags(const KRGraph& kr, const CayleyGraph& G,
                                        const std::vector<int>& minimal_ideal) {
    std::vector<char> in_ideal(G.num_vertices, 0);
    for (int e : minimal_ideal) in_ideal[e] = 1;
    in_ideal[G.root] = 0;
    std::vector<char> flags(kr.size(), 0);
    for (int v = 0; v < kr.size(); ++v) flags[v] = in_ideal[kr.element[v]];
    return flags;
}

// Independent characterization of K(KR) as the union of terminal strongly
// connected components of the graph; used to cross-check kr_ideal_flags.
inline std::vector<char> kr_terminal_scc_flags(const KRGraph& kr) {
    std::vector<std::vector<int>> adj(kr.size());
    for (int v = 0; v < kr.size(); ++v)
        for (int g = 0; g < kr.alphabet; ++g) adj[v].push_back(kr.step(v, g));
    SccResult scc = strongly_connected_components(adj);
    std::vector<char> has_exit(scc.count, 0);
    for (int v = 0; v < kr.size(); ++v)
        for (int w : adj[v])
            if (scc.comp[w] != scc.comp[v]) has_exit[scc.comp[v]] = 1;
    std::vector<char> flags(kr.size(), 0);
    for (int v = 0; v < kr.size(); ++v) flags[v] = !has_exit[scc.comp[v]];
    return flags;
}

// McCammond expansion of a KR graph. Vertices are the simple paths from the
// root (a path records its edge labels, so it is identified by its word);
// an edge either extends the path by one letter or folds back to the initial
// segment ending at the revisited vertex. Extension edges form the spanning
// tree. When an absorbing set of KR vertices is given, paths ending there are
// pruned: they get no outgoing edges, so walks stop on first entry.
struct McGraph {
    struct Edge {
        int src;
        int gen;
        int dst;
        bool tree;
    };

    int alphabet = 0;
    int root = 0;
    std::vector<int> parent;     // tree parent vertex, -1 at root
    std::vector<int> parent_gen; // letter on the tree edge into the vertex
    std::vector<int> endpoint;   // KR vertex the path ends at
    std::vector<int> depth;      // path length
    std::vector<Word> words;     // tree address
    std::vector<Edge> edges;
    std::vector<int> tree_edge_in; // per vertex: edge id of its tree edge, -1 at root
    std::vector<char> absorbing;
    std::vector<std::string> labels;
    std::vector<std::string> names;

    int size() const { return static_cast<int>(endpoint.size()); }

    // KR vertex sequence along the path, root first.
    std::vector<int> path(int vertex) const {
        std::vector<int> out;
        for (int v = vertex; v != -1; v = parent[v]) out.push_back(endpoint[v]);
        std::reverse(out.begin(), out.end());
        return out;
    }
};

inline McGraph mc_expand(const KRGraph& kr, const std::vector<char>* absorbing_kr = nullptr,
                         std::size_t vertex_cap = kDefaultMcCap) {
    McGraph mc;
    mc.alphabet = kr.alphabet;
    mc.labels = kr.labels;

    auto add_vertex = [&](int parent, int gen, int endpoint) {
        if (mc.endpoint.size() >= vertex_cap)
            throw VertexCapExceeded("Mc expansion exceeds the vertex cap of " +
                                    std::to_string(vertex_cap));
        mc.parent.push_back(parent);
        mc.parent_gen.push_back(gen);
        mc.endpoint.push_back(endpoint);
        mc.depth.push_back(parent < 0 ? 0 : mc.depth[parent] + 1);
        Word word = parent < 0 ? Word{} : mc.words[parent];
        if (parent >= 0) word.push_back(gen);
        mc.words.push_back(std::move(word));
        mc.tree_edge_in.push_back(-1);
        mc.absorbing.push_back(absorbing_kr ? (*absorbing_kr)[endpoint] : 0);
        return static_cast<int>(mc.endpoint.size()) - 1;
    };

    add_vertex(-1, -1, kr.root);
    for (int v = 0; v < mc.size(); ++v) {
        if (mc.absorbing[v]) continue;
        for (int g = 0; g < mc.alphabet; ++g) {
            int dst_kr = kr.step(mc.endpoint[v], g);
            int revisit = -1;
            for (int u = v; u != -1; u = mc.parent[u]) {
                if (mc.endpoint[u] == dst_kr) { revisit = u; break; }
            }
            if (revisit < 0) {
                int w = add_vertex(v, g, dst_kr);
                mc.tree_edge_in[w] = static_cast<int>(mc.edges.size());
                mc.edges.push_back({v, g, w, true});
            } else {
                mc.edges.push_back({v, g, revisit, false});
            }
        }
    }
    for (const Word& w : mc.words) mc.names.push_back(render_word(w, mc.labels));
    return mc;
}

// The spanning tree: per vertex, the edge id of its unique extension edge.
inline std::vector<int> spanning_tree(const McGraph& mc) { return mc.tree_edge_in; }

// All words of length <= max_len whose full product lies in the minimal ideal
// while no proper prefix does, in length-then-lexicographic order of
// generator indices.
inline std::vector<Word> semaphore_enumerate(const FiniteSemigroup& S, int max_len) {
    if (max_len < 1) throw ValidationError("max_len must be at least 1");
    std::vector<char> in_ideal(S.size(), 0);
    for (int e : S.minimal_ideal()) in_ideal[e] = 1;

    std::vector<Word> out;
    std::vector<std::pair<Word, int>> frontier; // words whose product is still outside
    for (int len = 1; len <= max_len; ++len) {
        std::vector<std::pair<Word, int>> next_frontier;
        auto consume = [&](Word word, int element) {
            if (in_ideal[element])
                out.push_back(std::move(word));
            else
                next_frontier.emplace_back(std::move(word), element);
        };
        if (len == 1) {
            for (int g = 0; g < S.alphabet(); ++g)
                consume(Word{g}, S.generator_element(g));
        } else {
            for (const auto& [word, element] : frontier) {
                for (int g = 0; g < S.alphabet(); ++g) {
                    Word extended = word;
                    extended.push_back(g);
                    consume(std::move(extended), S.mult(element, S.generator_element(g)));
                }
            }
        }
        frontier = std::move(next_frontier);
    }
    return out;
}

} // namespace loopwalk
