#pragma once

#include <algorithm>
#include <string>
#include <utility>
#include <vector>

#include "loopwalk/kleene.hpp"

namespace loopwalk {

// Exact distribution over labeled states; `ids` keeps the underlying element
// or vertex indices when there are any.
struct Distribution {
    std::vector<std::string> labels;
    std::vector<int> ids;
    std::vector<Rational> values;

    std::size_t size() const { return values.size(); }

    Rational total() const {
        Rational sum(0);
        for (const Rational& v : values) sum += v;
        return sum;
    }

    const Rational& at(const std::string& label) const {
        for (std::size_t i = 0; i < labels.size(); ++i)
            if (labels[i] == label) return values[i];
        throw UnknownLabel("no state labeled '" + label + "'");
    }
};

// Finite Markov chain with an exact column-stochastic matrix:
// matrix[i][j] = P(state j -> state i).
struct MarkovChain {
    std::vector<int> states; // element ids
    std::vector<std::string> labels;
    std::vector<std::vector<Rational>> matrix;

    int size() const { return static_cast<int>(states.size()); }
};

inline void validate_probabilities(const FiniteSemigroup& S, const std::vector<Rational>& probs) {
    if (static_cast<int>(probs.size()) != S.alphabet())
        throw ValidationError("need one probability per generator");
    Rational sum(0);
    for (std::size_t g = 0; g < probs.size(); ++g) {
        if (probs[g] <= 0)
            throw NonPositiveProbability("probability of generator '" + S.labels()[g] +
                                         "' is not positive");
        sum += probs[g];
    }
    if (sum != 1)
        throw ProbsNotNormalized("generator probabilities sum to " + rational_str(sum));
}

// Random walk s -> a.s on the recurrent states. The state set is one minimal
// left ideal of K(S) (the chain restricted there is irreducible and does not
// depend on the choice); the first in canonical element order is used.
inline MarkovChain build_chain(const FiniteSemigroup& S, const std::vector<Rational>& probs) {
    validate_probabilities(S, probs);
    std::vector<int> ideal = S.minimal_ideal();
    std::vector<int> states = S.minimal_left_ideals(ideal).front();

    MarkovChain M;
    M.states = states;
    std::vector<int> pos(S.size(), -1);
    for (std::size_t i = 0; i < states.size(); ++i) {
        pos[states[i]] = static_cast<int>(i);
        M.labels.push_back(S.element_name(states[i]));
    }
    M.matrix.assign(states.size(), std::vector<Rational>(states.size(), Rational(0)));
    for (std::size_t j = 0; j < states.size(); ++j) {
        for (int g = 0; g < S.alphabet(); ++g) {
            int dst = S.mult(S.generator_element(g), states[j]);
            if (pos[dst] < 0)
                throw ValidationError("left action leaves the minimal left ideal");
            M.matrix[pos[dst]][j] += probs[g];
        }
    }
    return M;
}

// Left action of the letters on the minimal ideal of the KR expansion:
// a.v is reached by reading a followed by a representative word of v.
inline MarkovChain build_kr_chain(const KRGraph& kr, const std::vector<char>& ideal_flags,
                                  const std::vector<Rational>& probs) {
    MarkovChain M;
    std::vector<int> pos(kr.size(), -1);
    for (int v = 0; v < kr.size(); ++v) {
        if (!ideal_flags[v]) continue;
        pos[v] = M.size();
        M.states.push_back(v);
        M.labels.push_back(kr.names[v]);
    }
    auto left_step = [&](int g, int v) {
        int at = kr.step(kr.root, g);
        for (int letter : kr.rep_word[v]) at = kr.step(at, letter);
        return at;
    };
    M.matrix.assign(M.states.size(), std::vector<Rational>(M.states.size(), Rational(0)));
    for (std::size_t j = 0; j < M.states.size(); ++j) {
        for (std::size_t g = 0; g < probs.size(); ++g) {
            int dst = left_step(static_cast<int>(g), M.states[j]);
            if (pos[dst] < 0)
                throw Error("InternalError", "left action leaves the KR minimal ideal");
            M.matrix[pos[dst]][j] += probs[g];
        }
    }
    return M;
}

// Exact solution of T psi = psi with total mass one, by rational Gaussian
// elimination on the n+1 equations (T - I, normalization).
inline Distribution stationary_oracle(const MarkovChain& M) {
    const int n = M.size();
    std::vector<std::vector<Rational>> A(n + 1, std::vector<Rational>(n + 1, Rational(0)));
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) A[i][j] = M.matrix[i][j] - Rational(i == j ? 1 : 0);
    }
    for (int j = 0; j < n; ++j) A[n][j] = 1;
    A[n][n] = 1;

    std::vector<int> pivot_row(n, -1);
    int row = 0;
    for (int col = 0; col < n; ++col) {
        int pivot = -1;
        for (int r = row; r <= n; ++r)
            if (A[r][col] != 0) { pivot = r; break; }
        if (pivot < 0)
            throw SingularSystem("stationary system is rank deficient; chain not irreducible");
        std::swap(A[pivot], A[row]);
        Rational inv = Rational(1) / A[row][col];
        for (int c = 0; c <= n; ++c) A[row][c] *= inv;
        for (int r = 0; r <= n; ++r) {
            if (r == row || A[r][col] == 0) continue;
            Rational factor = A[r][col];
            for (int c = 0; c <= n; ++c) A[r][c] -= factor * A[row][c];
        }
        pivot_row[col] = row++;
    }
    for (int r = row; r <= n; ++r)
        for (int c = 0; c <= n; ++c)
            if (A[r][c] != 0) throw SingularSystem("stationary system is inconsistent");

    Distribution psi;
    psi.labels = M.labels;
    psi.ids = M.states;
    for (int col = 0; col < n; ++col) {
        Rational value = A[pivot_row[col]][n];
        if (value < 0) throw SingularSystem("stationary solution is not a distribution");
        psi.values.push_back(value);
    }
    return psi;
}

// Column-sum lumping condition: within each block, all states see the same
// total transition weight into every block.
inline bool check_lumpable(const MarkovChain& M, const std::vector<std::vector<int>>& blocks) {
    std::vector<char> seen(M.size(), 0);
    for (const auto& block : blocks)
        for (int s : block) {
            if (s < 0 || s >= M.size() || seen[s])
                throw ValidationError("blocks must partition the state set");
            seen[s] = 1;
        }
    for (char c : seen)
        if (!c) throw ValidationError("blocks must cover the state set");

    for (const auto& target : blocks) {
        std::vector<Rational> colsum(M.size(), Rational(0));
        for (std::size_t s = 0; s < colsum.size(); ++s)
            for (int t : target) colsum[s] += M.matrix[t][s];
        for (const auto& source : blocks)
            for (std::size_t i = 1; i < source.size(); ++i)
                if (colsum[source[i]] != colsum[source[0]]) return false;
    }
    return true;
}

// Block sums over the fibers of block_of; entries mapped to -1 are dropped
// and must carry no mass.
inline Distribution lump_distribution(const Distribution& d, const std::vector<int>& block_of,
                                      const std::vector<std::string>& block_labels,
                                      const std::vector<int>& block_ids = {}) {
    if (block_of.size() != d.size())
        throw ValidationError("block map must cover the distribution support");
    Distribution out;
    out.labels = block_labels;
    out.ids = block_ids.empty() ? std::vector<int>(block_labels.size(), -1) : block_ids;
    out.values.assign(block_labels.size(), Rational(0));
    for (std::size_t i = 0; i < d.size(); ++i) {
        if (block_of[i] < 0) {
            if (d.values[i] != 0)
                throw Error("InternalError", "dropped class carries mass " +
                                                 rational_str(d.values[i]));
            continue;
        }
        out.values[block_of[i]] += d.values[i];
    }
    return out;
}

struct PipelineOptions {
    enum class Flat { Auto, Force, Off };

    Flat flat = Flat::Auto;
    std::size_t kr_cap = kDefaultKrCap;
    std::size_t mc_cap = kDefaultMcCap;
    PictOptions pict;
};

// One absorbing spanning-tree target of the expansion pipeline.
struct TargetReport {
    int mc_vertex = -1;
    Word word;           // tree address, including the trailing zero letter in flat mode
    std::string name;
    int kr_vertex = -1;  // endpoint in the KR graph
    RatFunc value;       // weighted path sum; symbolic in t in flat mode
    Rational limit;      // value at t -> 0 (the value itself when constant)
    int state = -1;      // K(S) element of its class; -1 when the class is dropped
};

struct StationaryResult {
    bool flat = false;
    FiniteSemigroup expanded;  // the semigroup the expansions ran on (S, or S with zero)
    std::vector<TargetReport> targets;
    Distribution kr_distribution; // per K(KR) vertex (direct route only)
    Distribution distribution;    // over K(S) of the input semigroup
};

namespace detail {

struct PipelineGraphs {
    CayleyGraph cayley;
    KRGraph kr;
    std::vector<char> kr_ideal;
    McGraph mc;
    Digraph dig;
};

inline PipelineGraphs build_pipeline_graphs(const FiniteSemigroup& S,
                                            const PipelineOptions& options) {
    PipelineGraphs P;
    P.cayley = right_cayley(S);
    P.kr = kr_expand(P.cayley, options.kr_cap);
    P.kr_ideal = kr_ideal_flags(P.kr, P.cayley, S.minimal_ideal());
    P.mc = mc_expand(P.kr, &P.kr_ideal, options.mc_cap);
    P.dig = to_digraph(P.mc);
    return P;
}

// Weighted path sum into every absorbing spanning-tree target.
inline std::vector<TargetReport> evaluate_targets(const PipelineGraphs& G,
                                                  const std::vector<RatFunc>& weights,
                                                  const PictOptions& pict_options) {
    std::vector<TargetReport> out;
    for (int v = 0; v < G.mc.size(); ++v) {
        if (!G.mc.absorbing[v]) continue;
        TargetReport report;
        report.mc_vertex = v;
        report.word = G.mc.words[v];
        report.name = G.mc.names[v];
        report.kr_vertex = G.mc.endpoint[v];
        LoopGraph P = pict(G.dig, mc_tree_path(G.mc, v), pict_options);
        report.value = eval_expr(kleene_of_loopgraph(P), weights);
        report.limit = limit_at_zero(report.value);
        out.push_back(std::move(report));
    }
    return out;
}

} // namespace detail

// Stationary distribution by the expansion pipeline. When K(S) is left zero
// the per-target path sums are computed directly, summed per KR vertex and
// lumped onto K(S). Otherwise a zero generator of weight t is adjoined, every
// letter weight is scaled by (1-t), the left-zero pipeline runs symbolically,
// and each class takes its limit at t -> 0; classes are read off the tree
// address with the trailing zero letter stripped.
inline StationaryResult stationary_semigroup(const FiniteSemigroup& S,
                                             const std::vector<Rational>& probs,
                                             const PipelineOptions& options = {}) {
    validate_probabilities(S, probs);
    std::vector<int> ideal = S.minimal_ideal();
    bool left_zero = S.is_left_zero(ideal);

    bool flat = false;
    switch (options.flat) {
        case PipelineOptions::Flat::Auto: flat = !left_zero; break;
        case PipelineOptions::Flat::Force: flat = true; break;
        case PipelineOptions::Flat::Off:
            if (!left_zero)
                throw ValidationError(
                    "the minimal ideal is not left zero; the flat route is required");
            flat = false;
            break;
    }

    StationaryResult result;
    result.flat = flat;
    result.expanded = flat ? S.adjoin_zero() : S;
    const FiniteSemigroup& T = result.expanded;

    std::vector<RatFunc> weights;
    if (flat) {
        RatFunc t = RatFunc::variable();
        RatFunc shrink = RatFunc::constant(Rational(1)) - t;
        for (const Rational& p : probs) weights.push_back(shrink * RatFunc::constant(p));
        weights.push_back(t);
    } else {
        for (const Rational& p : probs) weights.push_back(RatFunc::constant(p));
    }

    detail::PipelineGraphs graphs = detail::build_pipeline_graphs(T, options);
    result.targets = detail::evaluate_targets(graphs, weights, options.pict);

    // Total mass over all targets is exactly one, symbolically.
    RatFunc conservation;
    for (const auto& target : result.targets) conservation += target.value;
    if (!conservation.is_one())
        throw Error("InternalError",
                    "absorbing targets sum to " + conservation.str() + " instead of 1");

    // Class of each target inside K(S).
    std::vector<int> state_pos(S.size(), -1);
    {
        Distribution dist;
        for (int e : ideal) {
            state_pos[e] = static_cast<int>(dist.values.size());
            dist.labels.push_back(S.element_name(e));
            dist.ids.push_back(e);
            dist.values.push_back(Rational(0));
        }
        result.distribution = std::move(dist);
    }
    const int zero_gen = T.alphabet() - 1; // only meaningful in flat mode
    for (auto& target : result.targets) {
        Word word = target.word;
        if (flat) {
            while (!word.empty() && word.back() == zero_gen) word.pop_back();
        }
        if (target.limit < 0)
            throw Error("InternalError",
                        "target " + target.name + " has negative mass " +
                            rational_str(target.limit));
        int element = word.empty() ? -1 : S.eval_word(word);
        target.state = element >= 0 && state_pos[element] >= 0 ? element : -1;
        if (target.state < 0) {
            if (target.limit != 0)
                throw Error("InternalError", "target " + target.name +
                                                 " outside K(S) carries mass " +
                                                 rational_str(target.limit));
            continue;
        }
        result.distribution.values[state_pos[element]] += target.limit;
    }
    if (result.distribution.total() != 1)
        throw Error("InternalError", "lumped distribution does not sum to 1");

    // Per-KR-vertex distribution on the direct route.
    if (!flat) {
        for (int v = 0; v < graphs.kr.size(); ++v) {
            if (!graphs.kr_ideal[v]) continue;
            result.kr_distribution.labels.push_back(graphs.kr.names[v]);
            result.kr_distribution.ids.push_back(v);
            Rational sum(0);
            for (const auto& target : result.targets)
                if (target.kr_vertex == v) sum += target.limit;
            result.kr_distribution.values.push_back(sum);
        }
    }
    return result;
}

// Restriction of a K(S)-wide distribution to the states of the comparison
// chain (one minimal left ideal), renormalized by the mass of that ideal.
// The restriction is exactly proportional to the chain's stationary vector.
inline Distribution restrict_distribution(const Distribution& d, const MarkovChain& M) {
    Distribution out;
    out.labels = M.labels;
    out.ids = M.states;
    Rational mass(0);
    for (int s : M.states) {
        for (std::size_t i = 0; i < d.size(); ++i)
            if (d.ids[i] == s) mass += d.values[i];
    }
    if (mass == 0) throw SingularSystem("comparison ideal carries no mass");
    for (int s : M.states) {
        Rational value(0);
        for (std::size_t i = 0; i < d.size(); ++i)
            if (d.ids[i] == s) value = d.values[i];
        out.values.push_back(value / mass);
    }
    return out;
}

} // namespace loopwalk
