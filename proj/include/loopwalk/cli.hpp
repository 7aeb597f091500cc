#pragma once

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "loopwalk/dot.hpp"
#include "loopwalk/model_io.hpp"

namespace loopwalk {

namespace detail {

struct CliConfig {
    std::string model_path;
    std::string format;
    std::string target;
    int max_len = 6;
    std::size_t cap_mc = kDefaultMcCap;
    std::string flat = "auto";
};

struct Session {
    ModelSpec spec;
    FiniteSemigroup input;           // the semigroup as given
    std::vector<Rational> probs;
    bool left_zero = false;
    bool flat_engaged = false;
    FiniteSemigroup graph_semigroup; // what the expansions run on
    std::vector<RatFunc> weights;    // symbolic in t when the flat route is on
    PipelineOptions options;
};

inline std::string slurp(const std::string& path) {
    if (path == "-") {
        std::ostringstream buffer;
        buffer << std::cin.rdbuf();
        return buffer.str();
    }
    std::ifstream file(path);
    if (!file) throw ParseError("cannot read model file '" + path + "'");
    std::ostringstream buffer;
    buffer << file.rdbuf();
    return buffer.str();
}

inline Session open_session(const CliConfig& config) {
    Session s;
    s.spec = parse_model(slurp(config.model_path));
    auto [S, probs] = build_model(s.spec);
    s.input = std::move(S);
    s.probs = std::move(probs);
    s.left_zero = s.input.is_left_zero(s.input.minimal_ideal());

    if (config.flat == "force")
        s.flat_engaged = true;
    else if (config.flat == "off")
        s.flat_engaged = false;
    else if (config.flat == "auto")
        s.flat_engaged = !s.left_zero;
    else
        throw ValidationError("--flat must be auto, force or off");

    s.graph_semigroup = s.flat_engaged ? s.input.adjoin_zero() : s.input;
    if (s.flat_engaged) {
        RatFunc t = RatFunc::variable();
        RatFunc shrink = RatFunc::constant(Rational(1)) - t;
        for (const Rational& p : s.probs) s.weights.push_back(shrink * RatFunc::constant(p));
        s.weights.push_back(t);
    } else {
        for (const Rational& p : s.probs) s.weights.push_back(RatFunc::constant(p));
    }

    s.options.mc_cap = config.cap_mc;
    s.options.flat = config.flat == "force"  ? PipelineOptions::Flat::Force
                     : config.flat == "off"  ? PipelineOptions::Flat::Off
                                             : PipelineOptions::Flat::Auto;
    return s;
}

inline PipelineGraphs session_graphs(const Session& s) {
    return build_pipeline_graphs(s.graph_semigroup, s.options);
}

inline nlohmann::json graph_json(const Digraph& g, const std::vector<char>* tree_flags) {
    nlohmann::json j;
    j["root"] = g.root;
    j["vertices"] = nlohmann::json::array();
    for (int v = 0; v < g.num_vertices; ++v)
        j["vertices"].push_back({{"id", v}, {"name", g.names[v]}});
    j["edges"] = nlohmann::json::array();
    for (std::size_t e = 0; e < g.edges.size(); ++e) {
        nlohmann::json ej = {{"src", g.edges[e].src},
                             {"label", g.labels[g.edges[e].gen]},
                             {"dst", g.edges[e].dst}};
        if (tree_flags) ej["tree"] = static_cast<bool>((*tree_flags)[e]);
        j["edges"].push_back(std::move(ej));
    }
    return j;
}

inline void print_graph_text(std::ostream& out, const Digraph& g) {
    out << "vertices: " << g.num_vertices << "\n";
    out << "edges: " << g.edges.size() << "\n";
    for (const auto& e : g.edges)
        out << "  " << g.names[e.src] << " -" << g.labels[e.gen] << "-> " << g.names[e.dst]
            << "\n";
}

// Locates the spanning-tree vertex whose address is the given word.
inline int resolve_target(const Session& s, const McGraph& mc, const std::string& target) {
    Word word = s.graph_semigroup.word_from(target);
    for (int v = 0; v < mc.size(); ++v)
        if (mc.words[v] == word) return v;
    throw ValidationError("target '" + target + "' is not a spanning-tree address of the expansion");
}

inline int emit_graph(const Session& s, const CliConfig& config, std::ostream& out,
                      const std::string& kind) {
    PipelineGraphs graphs = session_graphs(s);
    if (kind == "cayley") {
        if (config.format == "dot") out << dot_export(graphs.cayley);
        else if (config.format == "json") {
            nlohmann::json j = graph_json(to_digraph(graphs.cayley), nullptr);
            nlohmann::json transitions = nlohmann::json::array();
            for (int e : transition_edge_ids(graphs.cayley)) transitions.push_back(e);
            j["transition_edges"] = std::move(transitions);
            out << j.dump(2) << "\n";
        } else print_graph_text(out, to_digraph(graphs.cayley));
    } else if (kind == "kr") {
        if (config.format == "dot") out << dot_export(graphs.kr);
        else if (config.format == "json") out << graph_json(to_digraph(graphs.kr), nullptr).dump(2) << "\n";
        else print_graph_text(out, to_digraph(graphs.kr));
    } else {
        std::vector<char> tree;
        for (const auto& e : graphs.mc.edges) tree.push_back(e.tree);
        if (config.format == "dot") out << dot_export(graphs.mc);
        else if (config.format == "json") out << graph_json(to_digraph(graphs.mc), &tree).dump(2) << "\n";
        else {
            Digraph g = to_digraph(graphs.mc);
            int tree_count = 0;
            for (char f : tree) tree_count += f;
            out << "vertices: " << g.num_vertices << "\n";
            out << "spanning-tree edges: " << tree_count << "\n";
            out << "fold-back edges: " << (g.edges.size() - tree_count) << "\n";
            for (const auto& e : g.edges)
                out << "  " << g.names[e.src] << " -" << g.labels[e.gen] << "-> " << g.names[e.dst]
                    << "\n";
        }
    }
    return 0;
}

inline int cmd_inspect(const Session& s, const CliConfig& config, std::ostream& out) {
    const FiniteSemigroup& S = s.input;
    std::vector<int> ideal = S.minimal_ideal();
    auto left_ideals = S.minimal_left_ideals(ideal);
    if (config.format == "json") {
        nlohmann::json j;
        j["size"] = S.size();
        j["generators"] = nlohmann::json::array();
        for (std::size_t g = 0; g < s.probs.size(); ++g)
            j["generators"].push_back(
                {{"name", S.labels()[g]}, {"prob", rational_str(s.probs[g])}});
        nlohmann::json members = nlohmann::json::array();
        for (int e : ideal) members.push_back(S.element_name(e));
        j["minimal_ideal"] = std::move(members);
        j["left_zero"] = s.left_zero;
        j["minimal_left_ideals"] = left_ideals.size();
        j["flat_route_needed"] = !s.left_zero;
        out << j.dump(2) << "\n";
        return 0;
    }
    out << "elements: " << S.size() << "\n";
    out << "generators:";
    for (std::size_t g = 0; g < s.probs.size(); ++g)
        out << " " << S.labels()[g] << " (" << rational_str(s.probs[g]) << ")";
    out << "\n";
    out << "minimal ideal:";
    for (int e : ideal) out << " " << S.element_name(e);
    out << "  [" << ideal.size() << " element" << (ideal.size() == 1 ? "" : "s") << "]\n";
    out << "left zero: " << (s.left_zero ? "yes" : "no") << "\n";
    out << "minimal left ideals: " << left_ideals.size() << "\n";
    out << "flat route needed: " << (s.left_zero ? "no" : "yes") << "\n";
    return 0;
}

inline int cmd_pict(const Session& s, const CliConfig& config, std::ostream& out) {
    PipelineGraphs graphs = session_graphs(s);
    int target = resolve_target(s, graphs.mc, config.target);
    LoopGraph P = pict(graphs.dig, mc_tree_path(graphs.mc, target), s.options.pict);
    if (config.format == "dot") {
        out << dot_export(P);
    } else if (config.format == "json") {
        nlohmann::json j = graph_json(P.to_digraph(), nullptr);
        j["spine"] = P.spine;
        j["loops"] = nlohmann::json::array();
        for (const auto& loop : P.loops) {
            nlohmann::json lj;
            lj["attach"] = loop.attach;
            lj["vertices"] = loop.vertices;
            nlohmann::json labels = nlohmann::json::array();
            for (int e : loop.edges) labels.push_back(P.labels[P.edges[e].gen]);
            lj["labels"] = std::move(labels);
            j["loops"].push_back(std::move(lj));
        }
        out << j.dump(2) << "\n";
    } else {
        out << "spine:";
        for (int v : P.spine) out << " " << P.vertices[v].name;
        out << "\n";
        out << "loops: " << P.loops.size() << "\n";
        for (std::size_t k = 0; k < P.loops.size(); ++k) {
            const auto& loop = P.loops[k];
            out << "  at " << P.vertices[loop.attach].name << ":";
            for (int e : loop.edges) out << " " << P.labels[P.edges[e].gen];
            out << "\n";
        }
    }
    return 0;
}

inline int cmd_kleene(const Session& s, const CliConfig& config, std::ostream& out) {
    PipelineGraphs graphs = session_graphs(s);
    int target = resolve_target(s, graphs.mc, config.target);
    LoopGraph P = pict(graphs.dig, mc_tree_path(graphs.mc, target), s.options.pict);
    KleeneExpr expr = kleene_of_loopgraph(P);
    RatFunc value = eval_expr(expr, s.weights);
    std::string rendered = render_expr(expr, P.labels);
    if (config.format == "json") {
        nlohmann::json j;
        j["target"] = graphs.mc.names[target];
        j["expression"] = rendered;
        if (s.flat_engaged) {
            j["value"] = value.str();
            j["limit"] = rational_str(limit_at_zero(value));
        } else {
            j["value"] = rational_str(limit_at_zero(value));
        }
        out << j.dump(2) << "\n";
    } else {
        out << "target: " << graphs.mc.names[target] << "\n";
        out << "expression: " << rendered << "\n";
        if (s.flat_engaged) {
            out << "value: " << value.str() << "\n";
            out << "limit at t -> 0: " << rational_str(limit_at_zero(value)) << "\n";
        } else {
            out << "value: " << rational_str(limit_at_zero(value)) << "\n";
        }
    }
    return 0;
}

inline int cmd_semaphore(const Session& s, const CliConfig& config, std::ostream& out) {
    std::vector<Word> words = semaphore_enumerate(s.graph_semigroup, config.max_len);
    if (config.format == "json") {
        nlohmann::json j = nlohmann::json::array();
        for (const Word& w : words) j.push_back(s.graph_semigroup.word_str(w));
        out << j.dump(2) << "\n";
    } else {
        for (const Word& w : words) out << s.graph_semigroup.word_str(w) << "\n";
    }
    return 0;
}

inline int cmd_stationary(const Session& s, const CliConfig& config, std::ostream& out) {
    StationaryResult r = stationary_semigroup(s.input, s.probs, s.options);
    if (config.format == "text") {
        for (std::size_t i = 0; i < r.distribution.size(); ++i)
            out << r.distribution.labels[i] << ": " << rational_str(r.distribution.values[i])
                << "\n";
    } else {
        nlohmann::json j;
        for (std::size_t i = 0; i < r.distribution.size(); ++i)
            j[r.distribution.labels[i]] = rational_str(r.distribution.values[i]);
        out << j.dump(2) << "\n";
    }
    return 0;
}

inline int cmd_verify(const Session& s, const CliConfig& config, std::ostream& out) {
    StationaryResult r = stationary_semigroup(s.input, s.probs, s.options);
    MarkovChain chain = build_chain(s.input, s.probs);
    Distribution oracle = stationary_oracle(chain);
    Distribution pipeline = restrict_distribution(r.distribution, chain);
    bool match = pipeline.values == oracle.values;

    if (config.format == "json") {
        nlohmann::json j;
        j["match"] = match;
        j["states"] = chain.size();
        j["method"] = r.flat ? "flat" : "direct";
        nlohmann::json pj, oj;
        for (std::size_t i = 0; i < oracle.size(); ++i) {
            pj[pipeline.labels[i]] = rational_str(pipeline.values[i]);
            oj[oracle.labels[i]] = rational_str(oracle.values[i]);
        }
        j["pipeline"] = std::move(pj);
        j["oracle"] = std::move(oj);
        out << j.dump(2) << "\n";
        return match ? 0 : 1;
    }

    out << "method: " << (r.flat ? "flat adjunction, limit t -> 0" : "direct left-zero route")
        << "\n";
    out << "absorbing targets: " << r.targets.size() << "\n";
    if (static_cast<std::size_t>(chain.size()) < r.distribution.size())
        out << "comparison restricted to the first minimal left ideal (" << chain.size()
            << " of " << r.distribution.size() << " recurrent states)\n";
    bool uniform = true;
    for (const Rational& v : pipeline.values) uniform = uniform && v == pipeline.values[0];
    if (match) {
        out << "pipeline == oracle, " << chain.size() << " states";
        if (uniform && !pipeline.values.empty())
            out << ", uniform " << rational_str(pipeline.values[0]);
        out << "\n";
    } else {
        out << "pipeline != oracle, " << chain.size() << " states\n";
    }
    for (std::size_t i = 0; i < oracle.size(); ++i) {
        out << "  " << oracle.labels[i] << ": pipeline " << rational_str(pipeline.values[i])
            << ", oracle " << rational_str(oracle.values[i]) << "\n";
    }
    return match ? 0 : 1;
}

} // namespace detail

// Entry point shared by the binary and the tests. `args` excludes the program
// name. Failures are reported as machine-readable error JSON with a nonzero
// exit status.
inline int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    detail::CliConfig config;

    CLI::App app{"exact stationary distributions of finite Markov chains "
                 "via Cayley-graph expansions and loop graphs"};
    app.require_subcommand(1);

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("model", config.model_path, "model JSON file, or - for stdin")
            ->required();
        cmd->add_option("--format", config.format, "output format (default depends on the command)")
            ->check(CLI::IsMember({"json", "dot", "text"}));
        cmd->add_option("--cap-mc", config.cap_mc, "vertex cap for the Mc expansion")
            ->check(CLI::PositiveNumber);
        cmd->add_option("--flat", config.flat, "zero adjunction: auto, force or off")
            ->check(CLI::IsMember({"auto", "force", "off"}));
        return cmd;
    };

    CLI::App* inspect = add_common(app.add_subcommand("inspect", "summarize the semigroup"));
    CLI::App* cayley = add_common(app.add_subcommand("cayley", "right Cayley graph"));
    CLI::App* kr = add_common(app.add_subcommand("kr", "Karnofsky-Rhodes expansion"));
    CLI::App* mc = add_common(app.add_subcommand("mc", "McCammond expansion"));
    CLI::App* pict_cmd = add_common(app.add_subcommand("pict", "loop graph of a target"));
    pict_cmd->add_option("--target", config.target, "spanning-tree address")->required();
    CLI::App* kleene_cmd =
        add_common(app.add_subcommand("kleene", "Kleene expression of a target"));
    kleene_cmd->add_option("--target", config.target, "spanning-tree address")->required();
    CLI::App* semaphore_cmd =
        add_common(app.add_subcommand("semaphore", "bounded semaphore-code enumeration"));
    semaphore_cmd->add_option("--max-len", config.max_len, "maximum word length")->required();
    CLI::App* stationary_cmd =
        add_common(app.add_subcommand("stationary", "stationary distribution"));
    CLI::App* verify_cmd = add_common(
        app.add_subcommand("verify", "compare the pipeline against the linear-algebra solver"));

    auto format_or = [&](const char* fallback) {
        if (config.format.empty()) config.format = fallback;
    };

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        return app.exit(e, out, err);
    }

    try {
        detail::Session session = detail::open_session(config);
        if (inspect->parsed()) { format_or("text"); return detail::cmd_inspect(session, config, out); }
        if (cayley->parsed()) { format_or("dot"); return detail::emit_graph(session, config, out, "cayley"); }
        if (kr->parsed()) { format_or("dot"); return detail::emit_graph(session, config, out, "kr"); }
        if (mc->parsed()) { format_or("dot"); return detail::emit_graph(session, config, out, "mc"); }
        if (pict_cmd->parsed()) { format_or("dot"); return detail::cmd_pict(session, config, out); }
        if (kleene_cmd->parsed()) { format_or("text"); return detail::cmd_kleene(session, config, out); }
        if (semaphore_cmd->parsed()) { format_or("text"); return detail::cmd_semaphore(session, config, out); }
        if (stationary_cmd->parsed()) { format_or("json"); return detail::cmd_stationary(session, config, out); }
        if (verify_cmd->parsed()) { format_or("text"); return detail::cmd_verify(session, config, out); }
        err << "no subcommand selected\n";
        return 2;
    } catch (const Error& e) {
        nlohmann::json j;
        j["error"] = {{"code", e.code()}, {"message", e.what()}};
        out << j.dump(2) << "\n";
        return 1;
    } catch (const std::exception& e) {
        nlohmann::json j;
        j["error"] = {{"code", "InternalError"}, {"message", e.what()}};
        out << j.dump(2) << "\n";
        return 1;
    }
}

} // namespace loopwalk
