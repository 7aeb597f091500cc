#pragma once

#include <algorithm>
#include <array>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "loopwalk/errors.hpp"
#include "loopwalk/scc.hpp"

namespace loopwalk {

// A word over the generating set, stored as generator indices.
using Word = std::vector<int>;

struct Generator {
    std::string label;
    int element;
};

inline constexpr std::size_t kDefaultClosureCap = 10000;

namespace detail {

inline std::size_t utf8_length(const std::string& s) {
    std::size_t count = 0;
    for (unsigned char c : s)
        if ((c & 0xC0) != 0x80) ++count;
    return count;
}

} // namespace detail

// Joined plainly when every label is one glyph, otherwise separated by dots.
inline std::string render_word(const Word& word, const std::vector<std::string>& labels) {
    if (word.empty()) return "\U0001D7D9"; // 𝟙 stands for the empty word / adjoined identity
    bool plain = std::all_of(labels.begin(), labels.end(), [](const std::string& l) {
        return detail::utf8_length(l) == 1;
    });
    std::string out;
    for (std::size_t i = 0; i < word.size(); ++i) {
        if (!plain && i > 0) out += ".";
        out += labels[word[i]];
    }
    return out;
}

// Greedy longest-label match; '.', spaces and U+00B7 separate tokens.
inline Word parse_word(const std::string& text, const std::vector<std::string>& labels) {
    Word word;
    std::size_t pos = 0;
    while (pos < text.size()) {
        if (text[pos] == ' ' || text[pos] == '.') { ++pos; continue; }
        if (text.compare(pos, 2, "\xc2\xb7") == 0) { pos += 2; continue; }
        int best = -1;
        std::size_t best_len = 0;
        for (std::size_t g = 0; g < labels.size(); ++g) {
            const std::string& l = labels[g];
            if (l.size() > best_len && text.compare(pos, l.size(), l) == 0) {
                best = static_cast<int>(g);
                best_len = l.size();
            }
        }
        if (best < 0)
            throw UnknownLabel("no generator label matches '" + text.substr(pos) + "'");
        word.push_back(best);
        pos += best_len;
    }
    return word;
}

// Finite semigroup given by its multiplication table (row = left factor) and
// an ordered generating set. Elements are indexed in breadth-first closure
// order from the generators, so every element carries a canonical word. The
// adjoined identity of S^1 is kept virtual and never appears in the table.
class FiniteSemigroup {
public:
    // Closure of transformations of a finite set under the left-action
    // composition (uv)(w) = u(v(w)).
    static FiniteSemigroup from_transformations(
        const std::vector<std::pair<std::string, std::vector<int>>>& generators,
        std::size_t element_cap = kDefaultClosureCap) {
        if (generators.empty()) throw EmptyGenerators("no generators given");
        const std::size_t points = generators.front().second.size();
        if (points == 0) throw ValidationError("transformations need a nonempty domain");
        for (const auto& [label, map] : generators) {
            if (map.size() != points)
                throw ValidationError("generator '" + label + "' acts on a different domain");
            for (int image : map)
                if (image < 0 || static_cast<std::size_t>(image) >= points)
                    throw ValidationError("generator '" + label + "' maps outside the domain");
        }

        auto compose = [&](const std::vector<int>& u, const std::vector<int>& v) {
            std::vector<int> out(points);
            for (std::size_t w = 0; w < points; ++w) out[w] = u[v[w]];
            return out;
        };

        std::map<std::vector<int>, int> id_of;
        std::vector<std::vector<int>> maps;
        std::vector<Word> words;
        FiniteSemigroup S;

        auto intern = [&](const std::vector<int>& map, const Word& word) {
            auto it = id_of.find(map);
            if (it != id_of.end()) return std::pair(it->second, false);
            if (maps.size() >= element_cap)
                throw ClosureCapExceeded("closure exceeds the element cap of " +
                                         std::to_string(element_cap));
            int id = static_cast<int>(maps.size());
            id_of.emplace(map, id);
            maps.push_back(map);
            words.push_back(word);
            return std::pair(id, true);
        };

        for (std::size_t g = 0; g < generators.size(); ++g) {
            auto [id, fresh] = intern(generators[g].second, Word{static_cast<int>(g)});
            (void)fresh;
            S.gens_.push_back({generators[g].first, id});
        }
        for (std::size_t v = 0; v < maps.size(); ++v) {
            for (std::size_t g = 0; g < S.gens_.size(); ++g) {
                std::vector<int> product = compose(maps[v], maps[S.gens_[g].element]);
                Word word = words[v];
                word.push_back(static_cast<int>(g));
                intern(product, word);
            }
        }

        const int n = static_cast<int>(maps.size());
        S.size_ = n;
        S.table_.resize(static_cast<std::size_t>(n) * n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                S.table_[static_cast<std::size_t>(i) * n + j] = id_of.at(compose(maps[i], maps[j]));
        S.words_ = std::move(words);
        S.finish_init();
        return S;
    }

    // Subsemigroup generated by the marked generators inside an explicit
    // table, re-indexed in breadth-first order.
    static FiniteSemigroup from_table(
        const std::vector<std::vector<int>>& table,
        const std::vector<std::pair<std::string, int>>& generators,
        std::size_t element_cap = kDefaultClosureCap) {
        const int n0 = static_cast<int>(table.size());
        if (n0 == 0) throw ValidationError("empty multiplication table");
        for (const auto& row : table) {
            if (static_cast<int>(row.size()) != n0)
                throw ValidationError("multiplication table is not square");
            for (int entry : row)
                if (entry < 0 || entry >= n0)
                    throw ValidationError("table entry out of range");
        }
        if (generators.empty()) throw EmptyGenerators("no generators given");
        for (const auto& [label, idx] : generators)
            if (idx < 0 || idx >= n0)
                throw ValidationError("generator '" + label + "' index out of range");

        std::vector<int> new_id(n0, -1);
        std::vector<int> order;
        std::vector<Word> words;
        FiniteSemigroup S;

        auto intern = [&](int old, const Word& word) {
            if (new_id[old] != -1) return std::pair(new_id[old], false);
            if (order.size() >= element_cap)
                throw ClosureCapExceeded("closure exceeds the element cap of " +
                                         std::to_string(element_cap));
            new_id[old] = static_cast<int>(order.size());
            order.push_back(old);
            words.push_back(word);
            return std::pair(new_id[old], true);
        };

        for (std::size_t g = 0; g < generators.size(); ++g) {
            auto [id, fresh] = intern(generators[g].second, Word{static_cast<int>(g)});
            (void)fresh;
            S.gens_.push_back({generators[g].first, id});
        }
        for (std::size_t v = 0; v < order.size(); ++v) {
            for (std::size_t g = 0; g < S.gens_.size(); ++g) {
                int product = table[order[v]][order[S.gens_[g].element]];
                Word word = words[v];
                word.push_back(static_cast<int>(g));
                intern(product, word);
            }
        }

        const int n = static_cast<int>(order.size());
        S.size_ = n;
        S.table_.resize(static_cast<std::size_t>(n) * n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                int product = table[order[i]][order[j]];
                if (new_id[product] == -1)
                    throw ValidationError("generated set is not closed under the table");
                S.table_[static_cast<std::size_t>(i) * n + j] = new_id[product];
            }
        S.words_ = std::move(words);
        if (n <= 256) {
            if (auto bad = S.associativity_violation()) {
                auto [i, j, k] = *bad;
                throw ValidationError("table is not associative at (" + std::to_string(i) +
                                      ", " + std::to_string(j) + ", " + std::to_string(k) + ")");
            }
        }
        S.finish_init();
        return S;
    }

    int size() const { return size_; }
    int alphabet() const { return static_cast<int>(gens_.size()); }

    int mult(int i, int j) const { return table_[static_cast<std::size_t>(i) * size_ + j]; }

    const std::vector<Generator>& generators() const { return gens_; }
    int generator_element(int g) const { return gens_[g].element; }
    const std::vector<std::string>& labels() const { return labels_; }

    int generator_index(const std::string& label) const {
        for (std::size_t g = 0; g < gens_.size(); ++g)
            if (gens_[g].label == label) return static_cast<int>(g);
        throw UnknownLabel("unknown generator label '" + label + "'");
    }

    // Left-to-right product of the generator images of a nonempty word.
    int eval_word(const Word& word) const {
        if (word.empty()) throw ValidationError("cannot evaluate the empty word");
        int acc = -1;
        for (int g : word) {
            if (g < 0 || g >= alphabet())
                throw UnknownLabel("generator index " + std::to_string(g) + " out of range");
            acc = acc < 0 ? gens_[g].element : mult(acc, gens_[g].element);
        }
        return acc;
    }

    const Word& element_word(int e) const { return words_[e]; }
    std::string element_name(int e) const { return render_word(words_[e], labels_); }
    std::string word_str(const Word& w) const { return render_word(w, labels_); }
    Word word_from(const std::string& text) const { return parse_word(text, labels_); }

    std::optional<int> zero() const { return zero_; }

    // S with a fresh absorbing element adjoined as an extra generator; the
    // new element absorbs everything, including any previous zero.
    FiniteSemigroup adjoin_zero() const {
        FiniteSemigroup T;
        const int n = size_ + 1;
        const int z = size_;
        T.size_ = n;
        T.table_.assign(static_cast<std::size_t>(n) * n, z);
        for (int i = 0; i < size_; ++i)
            for (int j = 0; j < size_; ++j)
                T.table_[static_cast<std::size_t>(i) * n + j] = mult(i, j);
        T.gens_ = gens_;
        std::string label = "□"; // □
        bool taken = true;
        while (taken) {
            taken = false;
            for (const auto& g : T.gens_)
                if (g.label == label) { taken = true; label += "′"; break; }
        }
        T.gens_.push_back({label, z});
        T.words_ = words_;
        T.words_.push_back(Word{static_cast<int>(T.gens_.size()) - 1});
        T.zero_ = z;
        T.finish_init();
        return T;
    }

    // Unique minimal two-sided ideal: the bottom strongly connected class of
    // the one-step two-sided reachability graph i -> gi, i -> ig.
    std::vector<int> minimal_ideal() const {
        std::vector<std::vector<int>> adj(size_);
        for (int i = 0; i < size_; ++i) {
            for (const auto& g : gens_) {
                adj[i].push_back(mult(g.element, i));
                adj[i].push_back(mult(i, g.element));
            }
        }
        SccResult scc = strongly_connected_components(adj);
        std::vector<char> has_exit(scc.count, 0);
        for (int i = 0; i < size_; ++i)
            for (int w : adj[i])
                if (scc.comp[w] != scc.comp[i]) has_exit[scc.comp[i]] = 1;
        int sink = -1;
        for (int c = 0; c < scc.count; ++c) {
            if (!has_exit[c]) {
                if (sink != -1) throw ValidationError("two minimal ideals found; table is broken");
                sink = c;
            }
        }
        std::vector<int> ideal;
        for (int i = 0; i < size_; ++i)
            if (scc.comp[i] == sink) ideal.push_back(i);
        return ideal;
    }

    bool is_left_zero(const std::vector<int>& ideal) const {
        for (int x : ideal)
            for (int y : ideal)
                if (mult(x, y) != x) return false;
        return true;
    }

    // The minimal left ideals partitioning the minimal ideal; each is a
    // strongly connected sink of the left one-step graph i -> gi. Ordered by
    // smallest member.
    std::vector<std::vector<int>> minimal_left_ideals(const std::vector<int>& ideal) const {
        std::vector<int> pos(size_, -1);
        for (std::size_t i = 0; i < ideal.size(); ++i) pos[ideal[i]] = static_cast<int>(i);
        std::vector<std::vector<int>> adj(ideal.size());
        for (std::size_t i = 0; i < ideal.size(); ++i) {
            for (const auto& g : gens_) {
                int w = mult(g.element, ideal[i]);
                if (pos[w] < 0) throw ValidationError("minimal ideal is not a left ideal");
                adj[i].push_back(pos[w]);
            }
        }
        SccResult scc = strongly_connected_components(adj);
        std::vector<std::vector<int>> out(scc.count);
        for (std::size_t i = 0; i < ideal.size(); ++i)
            out[scc.comp[i]].push_back(ideal[i]);
        for (auto& block : out) std::sort(block.begin(), block.end());
        std::sort(out.begin(), out.end(),
                  [](const auto& a, const auto& b) { return a.front() < b.front(); });
        return out;
    }

    // First violating triple, or nothing when the table is associative.
    std::optional<std::array<int, 3>> associativity_violation() const {
        for (int i = 0; i < size_; ++i)
            for (int j = 0; j < size_; ++j) {
                int ij = mult(i, j);
                for (int k = 0; k < size_; ++k)
                    if (mult(ij, k) != mult(i, mult(j, k)))
                        return std::array<int, 3>{i, j, k};
            }
        return std::nullopt;
    }

private:
    void finish_init() {
        labels_.clear();
        for (const auto& g : gens_) labels_.push_back(g.label);
        zero_ = zero_ ? zero_ : detect_zero();
    }

    std::optional<int> detect_zero() const {
        for (int z = 0; z < size_; ++z) {
            bool absorbing = true;
            for (int s = 0; s < size_ && absorbing; ++s)
                absorbing = mult(z, s) == z && mult(s, z) == z;
            if (absorbing) return z;
        }
        return std::nullopt;
    }

    int size_ = 0;
    std::vector<int> table_;
    std::vector<Generator> gens_;
    std::vector<std::string> labels_;
    std::vector<Word> words_;
    std::optional<int> zero_;
};

} // namespace loopwalk
