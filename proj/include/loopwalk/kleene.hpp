#pragma once

#include <string>
#include <utility>
#include <vector>

#include "loopwalk/loop_graph.hpp"

namespace loopwalk {

// Kleene expression over the generator alphabet: letters, concatenation,
// union, star. Stars are only ever taken of non-nullable expressions (every
// loop contributes at least one letter), which the star factory enforces.
struct KleeneExpr {
    enum class Kind { Letter, Concat, Union, Star };

    Kind kind = Kind::Concat;
    int letter = -1;
    std::vector<KleeneExpr> children;

    friend bool operator==(const KleeneExpr&, const KleeneExpr&) = default;
};

inline bool is_nullable(const KleeneExpr& e) {
    switch (e.kind) {
        case KleeneExpr::Kind::Letter: return false;
        case KleeneExpr::Kind::Star: return true;
        case KleeneExpr::Kind::Concat:
            for (const auto& c : e.children)
                if (!is_nullable(c)) return false;
            return true;
        case KleeneExpr::Kind::Union:
            for (const auto& c : e.children)
                if (is_nullable(c)) return true;
            return false;
    }
    return false;
}

inline KleeneExpr expr_letter(int gen) {
    KleeneExpr e;
    e.kind = KleeneExpr::Kind::Letter;
    e.letter = gen;
    return e;
}

// Flattens nested concatenations; a single child collapses to itself.
inline KleeneExpr expr_concat(std::vector<KleeneExpr> children) {
    std::vector<KleeneExpr> flat;
    for (auto& c : children) {
        if (c.kind == KleeneExpr::Kind::Concat) {
            for (auto& cc : c.children) flat.push_back(std::move(cc));
        } else {
            flat.push_back(std::move(c));
        }
    }
    if (flat.size() == 1) return std::move(flat.front());
    KleeneExpr e;
    e.kind = KleeneExpr::Kind::Concat;
    e.children = std::move(flat);
    return e;
}

inline KleeneExpr expr_union(std::vector<KleeneExpr> children) {
    if (children.size() == 1) return std::move(children.front());
    KleeneExpr e;
    e.kind = KleeneExpr::Kind::Union;
    e.children = std::move(children);
    return e;
}

inline KleeneExpr expr_star(KleeneExpr child) {
    if (is_nullable(child))
        throw ValidationError("star over a nullable expression");
    KleeneExpr e;
    e.kind = KleeneExpr::Kind::Star;
    e.children.push_back(std::move(child));
    return e;
}

namespace detail {

inline KleeneExpr loop_expr(const LoopGraph& G, int loop_index);

// Letters along the cut of a loop interleaved with starred unions of the
// loops hanging off each of its vertices.
inline void append_vertex_loops(const LoopGraph& G, int vertex, std::vector<KleeneExpr>& parts) {
    std::vector<int> here = G.loops_at(vertex);
    if (here.empty()) return;
    std::vector<KleeneExpr> options;
    for (int k : here) options.push_back(loop_expr(G, k));
    parts.push_back(expr_star(expr_union(std::move(options))));
}

inline KleeneExpr loop_expr(const LoopGraph& G, int loop_index) {
    const LoopGraph::Loop& loop = G.loops[loop_index];
    std::vector<KleeneExpr> parts;
    parts.push_back(expr_letter(G.edges[loop.edges[0]].gen));
    for (std::size_t i = 0; i < loop.vertices.size(); ++i) {
        append_vertex_loops(G, loop.vertices[i], parts);
        parts.push_back(expr_letter(G.edges[loop.edges[i + 1]].gen));
    }
    return expr_concat(std::move(parts));
}

} // namespace detail

// Walks the spine appending each edge letter and, at each vertex carrying
// loops, the starred union of the cut-loop expressions, recursively.
inline KleeneExpr kleene_of_loopgraph(const LoopGraph& G) {
    std::vector<KleeneExpr> parts;
    for (std::size_t i = 0; i < G.spine_edges.size(); ++i) {
        parts.push_back(expr_letter(G.edges[G.spine_edges[i]].gen));
        detail::append_vertex_loops(G, G.spine[i + 1], parts);
    }
    if (parts.empty()) return expr_concat({});
    return expr_concat(std::move(parts));
}

// Rewrites every starred union through {a}* = a* and {a,b}* = (a* b)* a*,
// extending to larger unions by induction, so expressions coming from loop
// graphs become union-free. Unions outside a star are left in place.
inline KleeneExpr zimin_eliminate(const KleeneExpr& e) {
    switch (e.kind) {
        case KleeneExpr::Kind::Letter: return e;
        case KleeneExpr::Kind::Concat: {
            std::vector<KleeneExpr> children;
            for (const auto& c : e.children) children.push_back(zimin_eliminate(c));
            return expr_concat(std::move(children));
        }
        case KleeneExpr::Kind::Union: {
            std::vector<KleeneExpr> children;
            for (const auto& c : e.children) children.push_back(zimin_eliminate(c));
            return expr_union(std::move(children));
        }
        case KleeneExpr::Kind::Star: {
            const KleeneExpr& child = e.children.front();
            if (child.kind != KleeneExpr::Kind::Union)
                return expr_star(zimin_eliminate(child));
            KleeneExpr acc = expr_star(zimin_eliminate(child.children.front()));
            for (std::size_t i = 1; i < child.children.size(); ++i) {
                KleeneExpr last = zimin_eliminate(child.children[i]);
                KleeneExpr head = expr_star(expr_concat({acc, std::move(last)}));
                acc = expr_concat({std::move(head), std::move(acc)});
            }
            return acc;
        }
    }
    return e;
}

// Letter -> weight, concatenation -> product, union -> sum, star -> the
// geometric closure. For loop-graph expressions this evaluates the weighted
// path sum, since distinct accepted paths map to distinct derivations.
inline RatFunc eval_expr(const KleeneExpr& e, const std::vector<RatFunc>& weights) {
    switch (e.kind) {
        case KleeneExpr::Kind::Letter: return weights[e.letter];
        case KleeneExpr::Kind::Concat: {
            RatFunc product = RatFunc::constant(Rational(1));
            for (const auto& c : e.children) product *= eval_expr(c, weights);
            return product;
        }
        case KleeneExpr::Kind::Union: {
            RatFunc sum;
            for (const auto& c : e.children) sum += eval_expr(c, weights);
            return sum;
        }
        case KleeneExpr::Kind::Star: return star(eval_expr(e.children.front(), weights));
    }
    return RatFunc();
}

// Display rendering: juxtaposition, {..,..} for unions, postfix star.
inline std::string render_expr(const KleeneExpr& e, const std::vector<std::string>& labels) {
    bool plain = true;
    for (const auto& l : labels) plain = plain && detail::utf8_length(l) == 1;
    std::function<std::string(const KleeneExpr&)> go = [&](const KleeneExpr& x) -> std::string {
        switch (x.kind) {
            case KleeneExpr::Kind::Letter: return labels[x.letter];
            case KleeneExpr::Kind::Concat: {
                if (x.children.empty()) return "ε";
                std::string out;
                for (std::size_t i = 0; i < x.children.size(); ++i) {
                    if (!plain && i > 0) out += "·";
                    out += go(x.children[i]);
                }
                return out;
            }
            case KleeneExpr::Kind::Union: {
                std::string out = "{";
                for (std::size_t i = 0; i < x.children.size(); ++i) {
                    if (i > 0) out += ",";
                    out += go(x.children[i]);
                }
                return out + "}";
            }
            case KleeneExpr::Kind::Star: {
                const KleeneExpr& child = x.children.front();
                bool bare = (child.kind == KleeneExpr::Kind::Letter && plain) ||
                            child.kind == KleeneExpr::Kind::Union;
                std::string inner = go(child);
                return bare ? inner + "*" : "(" + inner + ")*";
            }
        }
        return "";
    };
    return go(e);
}

} // namespace loopwalk
