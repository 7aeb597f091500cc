#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "loopwalk/expansion.hpp"
#include "loopwalk/rational_function.hpp"

namespace loopwalk {

// Rooted labeled multigraph view shared by the path algorithms. Edge ids are
// positions in `edges`.
struct Digraph {
    struct Edge {
        int src;
        int gen;
        int dst;
    };

    int num_vertices = 0;
    int root = 0;
    int alphabet = 0;
    std::vector<Edge> edges;
    std::vector<std::string> labels;
    std::vector<std::string> names;

    std::vector<std::vector<int>> out_edge_ids() const {
        std::vector<std::vector<int>> out(num_vertices);
        for (std::size_t e = 0; e < edges.size(); ++e) out[edges[e].src].push_back(static_cast<int>(e));
        return out;
    }

    std::vector<std::vector<int>> in_edge_ids() const {
        std::vector<std::vector<int>> in(num_vertices);
        for (std::size_t e = 0; e < edges.size(); ++e) in[edges[e].dst].push_back(static_cast<int>(e));
        return in;
    }
};

inline Digraph to_digraph(const McGraph& mc) {
    Digraph g;
    g.num_vertices = mc.size();
    g.root = mc.root;
    g.alphabet = mc.alphabet;
    g.labels = mc.labels;
    g.names = mc.names;
    for (const auto& e : mc.edges) g.edges.push_back({e.src, e.gen, e.dst});
    return g;
}

inline Digraph to_digraph(const CayleyGraph& cay) {
    Digraph g;
    g.num_vertices = cay.num_vertices;
    g.root = cay.root;
    g.alphabet = cay.alphabet;
    g.labels = cay.labels;
    g.names = cay.names;
    for (int e = 0; e < cay.num_edges(); ++e)
        g.edges.push_back({cay.edge_src(e), cay.edge_gen(e), cay.edge_dst(e)});
    return g;
}

inline Digraph to_digraph(const KRGraph& kr) {
    Digraph g;
    g.num_vertices = kr.size();
    g.root = kr.root;
    g.alphabet = kr.alphabet;
    g.labels = kr.labels;
    g.names = kr.names;
    for (int e = 0; e < kr.num_edges(); ++e)
        g.edges.push_back({kr.edge_src(e), kr.edge_gen(e), kr.edge_dst(e)});
    return g;
}

inline constexpr std::size_t kDefaultUspVisitCap = 10000000;

struct UspReport {
    bool usp = false;
    std::vector<int> simple_path_count;   // arrivals per vertex (capped at 2)
    std::vector<int> tree_parent_edge;    // first simple path found, -1 at root
};

namespace detail {

// Exhaustive DFS over simple paths from the root, counting arrivals per
// vertex. Stops early once some vertex is reached twice. The cap bounds the
// number of path extensions explored.
inline UspReport usp_scan(const Digraph& g, std::size_t visit_cap) {
    UspReport report;
    report.simple_path_count.assign(g.num_vertices, 0);
    report.tree_parent_edge.assign(g.num_vertices, -1);
    auto out = g.out_edge_ids();

    std::vector<char> on_path(g.num_vertices, 0);
    std::vector<std::pair<int, std::size_t>> stack;
    std::size_t visits = 0;
    bool duplicate = false;

    report.simple_path_count[g.root] = 1;
    on_path[g.root] = 1;
    stack.emplace_back(g.root, 0);
    while (!stack.empty() && !duplicate) {
        int v = stack.back().first;
        std::size_t i = stack.back().second;
        if (i < out[v].size()) {
            stack.back().second++;
            int e = out[v][i];
            int w = g.edges[e].dst;
            if (on_path[w]) continue;
            if (++visits > visit_cap)
                throw VertexCapExceeded("simple-path scan exceeds the visit cap of " +
                                        std::to_string(visit_cap));
            if (++report.simple_path_count[w] == 1) report.tree_parent_edge[w] = e;
            if (report.simple_path_count[w] > 1) { duplicate = true; break; }
            on_path[w] = 1;
            stack.emplace_back(w, 0);
        } else {
            on_path[v] = 0;
            stack.pop_back();
        }
    }
    report.usp = !duplicate;
    if (report.usp)
        for (int v = 0; v < g.num_vertices; ++v)
            if (report.simple_path_count[v] != 1) report.usp = false;
    return report;
}

} // namespace detail

// True when every vertex admits exactly one simple path from the root.
inline bool validate_usp(const Digraph& g, std::size_t visit_cap = kDefaultUspVisitCap) {
    return detail::usp_scan(g, visit_cap).usp;
}

// Spine-plus-loops automaton: a straight line from the root with loops
// attached recursively, each touching the rest of the graph at exactly one
// vertex. Deleting every loop's final return edge leaves the spanning tree.
struct LoopGraph {
    struct Vertex {
        std::string name;
        int base; // originating vertex of the unfolded graph, -1 for built-by-hand
    };

    struct Edge {
        int src;
        int gen;
        int dst;
    };

    // attach -> fresh vertices -> attach; `edges` has one more entry than
    // `vertices`, the last one being the return edge.
    struct Loop {
        int attach;
        std::vector<int> vertices;
        std::vector<int> edges;
    };

    int alphabet = 0;
    int root = 0;
    std::vector<Vertex> vertices;
    std::vector<Edge> edges;
    std::vector<int> spine;       // vertex ids, root first
    std::vector<int> spine_edges; // edge ids between consecutive spine vertices
    std::vector<Loop> loops;      // in construction order
    std::vector<std::string> labels;

    int size() const { return static_cast<int>(vertices.size()); }
    int end() const { return spine.back(); }

    std::vector<int> loops_at(int vertex) const {
        std::vector<int> out;
        for (std::size_t k = 0; k < loops.size(); ++k)
            if (loops[k].attach == vertex) out.push_back(static_cast<int>(k));
        return out;
    }

    Digraph to_digraph() const {
        Digraph g;
        g.num_vertices = size();
        g.root = root;
        g.alphabet = alphabet;
        g.labels = labels;
        for (const auto& v : vertices) g.names.push_back(v.name);
        for (const auto& e : edges) g.edges.push_back({e.src, e.gen, e.dst});
        return g;
    }

    // Hand construction, used for graphs given directly rather than produced
    // by pict. Fresh loop vertices are named 1', 2', ... in creation order.
    static LoopGraph from_spine(const std::vector<int>& spine_labels,
                                std::vector<std::string> alphabet_labels) {
        LoopGraph g;
        g.alphabet = static_cast<int>(alphabet_labels.size());
        g.labels = std::move(alphabet_labels);
        g.vertices.push_back({render_word({}, g.labels), -1});
        g.spine.push_back(0);
        for (std::size_t i = 0; i < spine_labels.size(); ++i) {
            g.vertices.push_back({std::to_string(i + 1), -1});
            int v = static_cast<int>(g.vertices.size()) - 1;
            g.spine_edges.push_back(static_cast<int>(g.edges.size()));
            g.edges.push_back({g.spine[i], spine_labels[i], v});
            g.spine.push_back(v);
        }
        return g;
    }

    // Adds a loop of the given labels at `attach` with labels.size()-1 fresh
    // vertices; returns the loop index.
    int add_loop(int attach, const std::vector<int>& loop_labels) {
        Loop loop;
        loop.attach = attach;
        int prev = attach;
        for (std::size_t i = 0; i + 1 < loop_labels.size(); ++i) {
            vertices.push_back({std::to_string(++hand_fresh_) + "′", -1});
            int v = static_cast<int>(vertices.size()) - 1;
            loop.vertices.push_back(v);
            loop.edges.push_back(static_cast<int>(edges.size()));
            edges.push_back({prev, loop_labels[i], v});
            prev = v;
        }
        loop.edges.push_back(static_cast<int>(edges.size()));
        edges.push_back({prev, loop_labels.back(), attach});
        loops.push_back(std::move(loop));
        return static_cast<int>(loops.size()) - 1;
    }

    int vertex_by_name(const std::string& name) const {
        for (int v = 0; v < size(); ++v)
            if (vertices[v].name == name) return v;
        return -1;
    }

private:
    int hand_fresh_ = 0;
};

struct PictOptions {
    std::size_t vertex_cap = 100000;
    int recursion_cap = 64;
    std::size_t usp_visit_cap = kDefaultUspVisitCap;
};

namespace detail {

struct Subgraph {
    std::vector<char> edge_alive;
    std::vector<char> vertex_alive;
    int root = 0;
};

// First (and in a graph with the unique-simple-path property, only) simple
// path from the subgraph root to `target`, as a list of edge ids.
inline std::vector<int> find_simple_path(const Digraph& g,
                                         const std::vector<std::vector<int>>& out,
                                         const Subgraph& sg, int target) {
    std::vector<char> on_path(g.num_vertices, 0);
    std::vector<std::pair<int, std::size_t>> stack;
    std::vector<int> path;
    if (sg.root == target) return path;
    on_path[sg.root] = 1;
    stack.emplace_back(sg.root, 0);
    while (!stack.empty()) {
        int v = stack.back().first;
        std::size_t i = stack.back().second;
        if (i < out[v].size()) {
            stack.back().second++;
            int e = out[v][i];
            if (!sg.edge_alive[e]) continue;
            int w = g.edges[e].dst;
            if (on_path[w] || !sg.vertex_alive[w]) continue;
            path.push_back(e);
            if (w == target) return path;
            on_path[w] = 1;
            stack.emplace_back(w, 0);
        } else {
            on_path[v] = 0;
            stack.pop_back();
            if (!path.empty()) path.pop_back();
        }
    }
    throw UspViolation("no simple path to the source of a fold-back edge");
}

} // namespace detail

// Unfolds a unique-simple-path graph along a simple path into a loop graph:
// the path becomes the spine, and every other edge arriving at a path vertex
// v contributes a loop at v obtained by recursively unfolding the subgraph
// where the prefix of the path keeps only its own edges, re-rooted at the
// predecessor of v. Accepted paths of the result biject with the paths of the
// input graph ending at the path's endpoint.
inline LoopGraph pict(const Digraph& g, const std::vector<int>& path_edges,
                      const PictOptions& options = {}) {
    // The path must be simple and start at the root.
    {
        std::vector<char> seen(g.num_vertices, 0);
        seen[g.root] = 1;
        int at = g.root;
        for (int e : path_edges) {
            if (e < 0 || e >= static_cast<int>(g.edges.size()) || g.edges[e].src != at)
                throw NotSimplePath("path edges do not chain from the root");
            at = g.edges[e].dst;
            if (seen[at]) throw NotSimplePath("path revisits vertex " + g.names[at]);
            seen[at] = 1;
        }
    }
    if (!validate_usp(g, options.usp_visit_cap))
        throw UspViolation("input graph lacks the unique simple path property");

    auto out = g.out_edge_ids();
    auto in = g.in_edge_ids();
    for (auto& list : in) {
        std::sort(list.begin(), list.end(), [&](int a, int b) {
            return std::tie(g.edges[a].src, g.edges[a].gen, a) <
                   std::tie(g.edges[b].src, g.edges[b].gen, b);
        });
    }

    LoopGraph P;
    P.alphabet = g.alphabet;
    P.labels = g.labels;
    std::vector<int> name_uses(g.num_vertices, 0);
    auto new_vertex = [&](int base) {
        if (P.vertices.size() >= options.vertex_cap)
            throw VertexCapExceeded("loop graph exceeds the vertex cap of " +
                                    std::to_string(options.vertex_cap));
        std::string name = g.names[base];
        for (int k = 0; k < name_uses[base]; ++k) name += "′";
        name_uses[base]++;
        P.vertices.push_back({std::move(name), base});
        return static_cast<int>(P.vertices.size()) - 1;
    };

    P.root = new_vertex(g.root);
    P.spine.push_back(P.root);
    for (int e : path_edges) {
        int v = new_vertex(g.edges[e].dst);
        P.spine_edges.push_back(static_cast<int>(P.edges.size()));
        P.edges.push_back({P.spine.back(), g.edges[e].gen, v});
        P.spine.push_back(v);
    }

    // walk(sg, pe, ids): attach the loops of the path `pe` (edge ids inside
    // the subgraph sg, starting at sg.root) whose vertices map to the
    // already-created loop-graph ids `ids`.
    std::function<void(const detail::Subgraph&, const std::vector<int>&,
                       const std::vector<int>&, int)>
        walk = [&](const detail::Subgraph& sg, const std::vector<int>& pe,
                   const std::vector<int>& ids, int depth) {
            if (depth > options.recursion_cap)
                throw RecursionCapExceeded("pict recursion deeper than " +
                                           std::to_string(options.recursion_cap));
            std::vector<int> prefix_vertices{sg.root};
            for (std::size_t j = 0; j < pe.size(); ++j) {
                int e = pe[j];
                int v1 = g.edges[e].dst;
                prefix_vertices.push_back(v1);

                std::vector<int> side;
                for (int ein : in[v1]) {
                    if (ein == e || !sg.edge_alive[ein]) continue;
                    if (!sg.vertex_alive[g.edges[ein].src]) continue;
                    side.push_back(ein);
                }
                for (int eprime : side) {
                    // Strip: along the prefix keep only the path's own edges;
                    // at v1 keep its outgoing edges. Then re-root at the
                    // predecessor of v1 and drop whatever got disconnected.
                    detail::Subgraph sub = sg;
                    std::vector<char> on_prefix(g.num_vertices, 0);
                    for (int u : prefix_vertices) on_prefix[u] = 1;
                    std::vector<char> prefix_edge(g.edges.size(), 0);
                    for (std::size_t i = 0; i <= j; ++i) prefix_edge[pe[i]] = 1;
                    for (std::size_t ed = 0; ed < g.edges.size(); ++ed) {
                        if (!sub.edge_alive[ed] || prefix_edge[ed]) continue;
                        bool at_prefix_not_v1 =
                            (on_prefix[g.edges[ed].src] && g.edges[ed].src != v1) ||
                            (on_prefix[g.edges[ed].dst] && g.edges[ed].dst != v1);
                        bool into_v1 = g.edges[ed].dst == v1;
                        if (at_prefix_not_v1 || into_v1) sub.edge_alive[ed] = 0;
                    }
                    int v0 = prefix_vertices[j];
                    for (std::size_t i = 0; i < j; ++i) {
                        sub.vertex_alive[prefix_vertices[i]] = 0;
                        sub.edge_alive[pe[i]] = 0;
                    }
                    sub.root = v0;
                    // Drop disconnected vertices.
                    {
                        std::vector<char> reach(g.num_vertices, 0);
                        std::vector<int> queue{v0};
                        reach[v0] = 1;
                        while (!queue.empty()) {
                            int v = queue.back();
                            queue.pop_back();
                            for (int oe : out[v]) {
                                if (!sub.edge_alive[oe]) continue;
                                int w = g.edges[oe].dst;
                                if (!sub.vertex_alive[w] || reach[w]) continue;
                                reach[w] = 1;
                                queue.push_back(w);
                            }
                        }
                        for (int v = 0; v < g.num_vertices; ++v)
                            if (!reach[v]) sub.vertex_alive[v] = 0;
                        for (std::size_t ed = 0; ed < g.edges.size(); ++ed)
                            if (sub.edge_alive[ed] &&
                                (!sub.vertex_alive[g.edges[ed].src] ||
                                 !sub.vertex_alive[g.edges[ed].dst]))
                                sub.edge_alive[ed] = 0;
                    }

                    std::vector<int> pprime =
                        detail::find_simple_path(g, out, sub, g.edges[eprime].src);

                    // Create the loop: fresh copies of the path beyond v1,
                    // closed by the fold-back edge.
                    int attach = ids[j + 1];
                    LoopGraph::Loop loop;
                    loop.attach = attach;
                    std::vector<int> sub_ids{ids[j], attach};
                    int prev = attach;
                    for (std::size_t k = 1; k < pprime.size(); ++k) {
                        int w = new_vertex(g.edges[pprime[k]].dst);
                        loop.vertices.push_back(w);
                        sub_ids.push_back(w);
                        loop.edges.push_back(static_cast<int>(P.edges.size()));
                        P.edges.push_back({prev, g.edges[pprime[k]].gen, w});
                        prev = w;
                    }
                    loop.edges.push_back(static_cast<int>(P.edges.size()));
                    P.edges.push_back({prev, g.edges[eprime].gen, attach});
                    P.loops.push_back(std::move(loop));

                    walk(sub, pprime, sub_ids, depth + 1);
                }
            }
        };

    detail::Subgraph full;
    full.edge_alive.assign(g.edges.size(), 1);
    full.vertex_alive.assign(g.num_vertices, 1);
    full.root = g.root;
    std::vector<int> spine_ids = P.spine;
    walk(full, path_edges, spine_ids, 0);
    return P;
}

// Convenience: pict along the spanning-tree path to an Mc vertex.
inline std::vector<int> mc_tree_path(const McGraph& mc, int vertex) {
    std::vector<int> edges;
    for (int v = vertex; v != mc.root; v = mc.parent[v]) edges.push_back(mc.tree_edge_in[v]);
    std::reverse(edges.begin(), edges.end());
    return edges;
}

struct PathSample {
    Word word;
    Rational weight;
};

struct PathEnumeration {
    std::vector<PathSample> samples;
    Rational partial_sum;
};

// All accepted paths (root to spine end) of bounded length, with their
// weights, in length-then-discovery order.
inline PathEnumeration enumerate_paths(const LoopGraph& G, int max_len,
                                       const std::vector<Rational>& weights) {
    PathEnumeration result;
    result.partial_sum = 0;
    struct Item {
        int vertex;
        Word word;
        Rational weight;
    };
    std::vector<Item> frontier{{G.root, {}, Rational(1)}};
    const int accept = G.end();
    if (G.root == accept) {
        result.samples.push_back({{}, Rational(1)});
        result.partial_sum += 1;
    }
    for (int len = 1; len <= max_len && !frontier.empty(); ++len) {
        std::vector<Item> next;
        for (const auto& item : frontier) {
            for (const auto& e : G.edges) {
                if (e.src != item.vertex) continue;
                Item ext{e.dst, item.word, item.weight * weights[e.gen]};
                ext.word.push_back(e.gen);
                if (e.dst == accept) {
                    result.samples.push_back({ext.word, ext.weight});
                    result.partial_sum += ext.weight;
                }
                next.push_back(std::move(ext));
            }
        }
        frontier = std::move(next);
    }
    return result;
}

// Per-length totals of accepted path weights, computed by dynamic programming
// so nothing is materialized; index l holds the weight of length-l arrivals.
inline std::vector<Rational> accepted_weight_by_length(const Digraph& g, int accept, int max_len,
                                                       const std::vector<Rational>& weights) {
    std::vector<Rational> totals(max_len + 1, Rational(0));
    std::vector<Rational> current(g.num_vertices, Rational(0));
    current[g.root] = 1;
    if (g.root == accept) totals[0] = 1;
    for (int len = 1; len <= max_len; ++len) {
        std::vector<Rational> next(g.num_vertices, Rational(0));
        for (const auto& e : g.edges)
            if (current[e.src] != 0) next[e.dst] += current[e.src] * weights[e.gen];
        totals[len] = next[accept];
        current = std::move(next);
    }
    return totals;
}

inline std::vector<std::uint64_t> accepted_count_by_length(const Digraph& g, int accept,
                                                           int max_len) {
    std::vector<std::uint64_t> totals(max_len + 1, 0);
    std::vector<std::uint64_t> current(g.num_vertices, 0);
    current[g.root] = 1;
    if (g.root == accept) totals[0] = 1;
    for (int len = 1; len <= max_len; ++len) {
        std::vector<std::uint64_t> next(g.num_vertices, 0);
        for (const auto& e : g.edges) next[e.dst] += current[e.src];
        totals[len] = next[accept];
        current = std::move(next);
    }
    return totals;
}

// Accessible subset construction. States are sorted vertex subsets, state 0
// is {root}; the automaton is completed with the empty subset when some
// letter has no successor.
struct Dfa {
    int alphabet = 0;
    std::vector<std::vector<int>> states;
    std::vector<int> trans; // state * alphabet + gen -> state
    std::vector<char> accepting;
    std::vector<std::string> labels;

    int step(int state, int gen) const { return trans[state * alphabet + gen]; }

    bool accepts(const Word& word) const {
        int state = 0;
        for (int g : word) state = step(state, g);
        return accepting[state];
    }
};

inline Dfa determinize(const Digraph& g, const std::vector<int>& accept) {
    Dfa dfa;
    dfa.alphabet = g.alphabet;
    dfa.labels = g.labels;
    std::vector<char> accept_flag(g.num_vertices, 0);
    for (int v : accept) accept_flag[v] = 1;

    std::map<std::vector<int>, int> id_of;
    auto intern = [&](std::vector<int> subset) {
        auto it = id_of.find(subset);
        if (it != id_of.end()) return it->second;
        int id = static_cast<int>(dfa.states.size());
        id_of.emplace(subset, id);
        dfa.states.push_back(std::move(subset));
        return id;
    };

    intern({g.root});
    for (std::size_t s = 0; s < dfa.states.size(); ++s) {
        for (int gen = 0; gen < g.alphabet; ++gen) {
            std::vector<int> next;
            for (const auto& e : g.edges) {
                if (e.gen != gen) continue;
                if (!std::binary_search(dfa.states[s].begin(), dfa.states[s].end(), e.src))
                    continue;
                next.push_back(e.dst);
            }
            std::sort(next.begin(), next.end());
            next.erase(std::unique(next.begin(), next.end()), next.end());
            int dst = intern(std::move(next));
            dfa.trans.resize(dfa.states.size() * g.alphabet, -1);
            dfa.trans[s * g.alphabet + gen] = dst;
        }
    }
    dfa.accepting.resize(dfa.states.size(), 0);
    for (std::size_t s = 0; s < dfa.states.size(); ++s)
        for (int v : dfa.states[s])
            if (accept_flag[v]) dfa.accepting[s] = 1;
    return dfa;
}

inline Dfa determinize(const LoopGraph& G, const std::vector<int>& accept) {
    return determinize(G.to_digraph(), accept);
}

} // namespace loopwalk
