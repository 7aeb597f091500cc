#pragma once

#include <json.hpp>

#include <string>
#include <utility>
#include <vector>

#include "loopwalk/markov.hpp"

namespace loopwalk {

// Input model: either transformation generators acting on a finite state set,
// or an explicit multiplication table with marked generators.
struct ModelSpec {
    struct TransformGen {
        std::string name;
        std::vector<int> map;
        Rational prob;

        friend bool operator==(const TransformGen&, const TransformGen&) = default;
    };

    // Transformation form.
    int states = 0;
    std::vector<TransformGen> generators;

    // Table form.
    std::vector<std::vector<int>> table;
    std::vector<int> generator_indices;
    std::vector<std::string> generator_names;
    std::vector<Rational> probs;

    bool is_table() const { return !table.empty(); }

    friend bool operator==(const ModelSpec&, const ModelSpec&) = default;
};

namespace detail {

inline void validate_generator_name(const std::string& name) {
    if (name.empty()) throw ValidationError("generator names must be nonempty");
    if (name == "□" || name == "zero")
        throw ValidationError("generator name '" + name + "' is reserved for the flat zero");
    for (char c : name)
        if (c == ' ' || c == '\t' || c == '\n' || c == '.' || c == ',' || c == '{' ||
            c == '}' || c == '(' || c == ')' || c == '*')
            throw ValidationError("generator name '" + name + "' is not a single token");
}

inline void validate_names_distinct(const std::vector<std::string>& names) {
    for (std::size_t i = 0; i < names.size(); ++i) {
        validate_generator_name(names[i]);
        for (std::size_t j = i + 1; j < names.size(); ++j)
            if (names[i] == names[j])
                throw ValidationError("duplicate generator name '" + names[i] + "'");
    }
}

inline Rational prob_from_json(const nlohmann::json& j, const std::string& where) {
    if (!j.is_string())
        throw ParseError("field '" + where + "' must be a rational string like \"1/3\"");
    return parse_rational(j.get<std::string>());
}

inline void validate_prob_sum(const std::vector<Rational>& probs) {
    Rational sum(0);
    for (const Rational& p : probs) {
        if (p <= 0) throw ValidationError("probabilities must be positive");
        sum += p;
    }
    if (sum != 1)
        throw ValidationError("probabilities sum to " + rational_str(sum) + ", expected 1");
}

inline std::string default_name(std::size_t index) {
    if (index < 26) return std::string(1, static_cast<char>('a' + index));
    return "g" + std::to_string(index);
}

} // namespace detail

inline ModelSpec parse_model(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(std::string("model is not valid JSON: ") + e.what());
    }
    if (!j.is_object()) throw ParseError("model must be a JSON object");

    ModelSpec spec;
    if (j.contains("states") || j.contains("generators")) {
        if (j.contains("table"))
            throw ParseError("model mixes the transformation and table forms");
        if (!j.contains("states") || !j["states"].is_number_integer())
            throw ParseError("field 'states' must be an integer");
        spec.states = j["states"].get<int>();
        if (spec.states <= 0) throw ValidationError("'states' must be positive");
        if (!j.contains("generators") || !j["generators"].is_array() || j["generators"].empty())
            throw ParseError("field 'generators' must be a nonempty array");

        std::vector<std::string> names;
        std::vector<Rational> probs;
        for (std::size_t i = 0; i < j["generators"].size(); ++i) {
            const auto& gj = j["generators"][i];
            std::string where = "generators[" + std::to_string(i) + "]";
            if (!gj.is_object() || !gj.contains("name") || !gj.contains("map") ||
                !gj.contains("prob"))
                throw ParseError("field '" + where + "' needs name, map and prob");
            ModelSpec::TransformGen gen;
            if (!gj["name"].is_string())
                throw ParseError("field '" + where + ".name' must be a string");
            gen.name = gj["name"].get<std::string>();
            if (!gj["map"].is_array())
                throw ParseError("field '" + where + ".map' must be an array");
            for (const auto& entry : gj["map"]) {
                if (!entry.is_number_integer())
                    throw ParseError("field '" + where + ".map' must hold integers");
                gen.map.push_back(entry.get<int>());
            }
            if (static_cast<int>(gen.map.size()) != spec.states)
                throw ValidationError("'" + where + ".map' must list " +
                                      std::to_string(spec.states) + " images");
            for (int image : gen.map)
                if (image < 0 || image >= spec.states)
                    throw ValidationError("'" + where + ".map' maps outside [0, states)");
            gen.prob = detail::prob_from_json(gj["prob"], where + ".prob");
            names.push_back(gen.name);
            probs.push_back(gen.prob);
            spec.generators.push_back(std::move(gen));
        }
        detail::validate_names_distinct(names);
        detail::validate_prob_sum(probs);
        return spec;
    }

    if (!j.contains("table")) throw ParseError("model needs 'states'/'generators' or 'table'");
    if (!j["table"].is_array() || j["table"].empty())
        throw ParseError("field 'table' must be a nonempty square matrix");
    for (const auto& row : j["table"]) {
        if (!row.is_array()) throw ParseError("field 'table' must be a matrix");
        std::vector<int> r;
        for (const auto& entry : row) {
            if (!entry.is_number_integer()) throw ParseError("'table' must hold integers");
            r.push_back(entry.get<int>());
        }
        spec.table.push_back(std::move(r));
    }
    const int n = static_cast<int>(spec.table.size());
    for (const auto& row : spec.table) {
        if (static_cast<int>(row.size()) != n)
            throw ValidationError("'table' must be square");
        for (int entry : row)
            if (entry < 0 || entry >= n) throw ValidationError("'table' entry out of range");
    }
    if (!j.contains("generator_indices") || !j["generator_indices"].is_array() ||
        j["generator_indices"].empty())
        throw ParseError("field 'generator_indices' must be a nonempty array");
    for (const auto& entry : j["generator_indices"]) {
        if (!entry.is_number_integer())
            throw ParseError("'generator_indices' must hold integers");
        int idx = entry.get<int>();
        if (idx < 0 || idx >= n) throw ValidationError("'generator_indices' entry out of range");
        spec.generator_indices.push_back(idx);
    }
    if (!j.contains("probs") || !j["probs"].is_array() ||
        j["probs"].size() != spec.generator_indices.size())
        throw ParseError("field 'probs' must list one rational per generator");
    for (std::size_t i = 0; i < j["probs"].size(); ++i)
        spec.probs.push_back(detail::prob_from_json(j["probs"][i], "probs[" + std::to_string(i) + "]"));
    if (j.contains("generator_names")) {
        if (!j["generator_names"].is_array() ||
            j["generator_names"].size() != spec.generator_indices.size())
            throw ParseError("'generator_names' must list one name per generator");
        for (const auto& entry : j["generator_names"]) {
            if (!entry.is_string()) throw ParseError("'generator_names' must hold strings");
            spec.generator_names.push_back(entry.get<std::string>());
        }
    } else {
        for (std::size_t i = 0; i < spec.generator_indices.size(); ++i)
            spec.generator_names.push_back(detail::default_name(i));
    }
    detail::validate_names_distinct(spec.generator_names);
    detail::validate_prob_sum(spec.probs);
    return spec;
}

inline std::string render_model(const ModelSpec& spec) {
    nlohmann::json j;
    if (!spec.is_table()) {
        j["states"] = spec.states;
        j["generators"] = nlohmann::json::array();
        for (const auto& g : spec.generators) {
            nlohmann::json gj;
            gj["name"] = g.name;
            gj["map"] = g.map;
            gj["prob"] = rational_str(g.prob);
            j["generators"].push_back(std::move(gj));
        }
    } else {
        j["table"] = spec.table;
        j["generator_indices"] = spec.generator_indices;
        j["generator_names"] = spec.generator_names;
        nlohmann::json probs = nlohmann::json::array();
        for (const Rational& p : spec.probs) probs.push_back(rational_str(p));
        j["probs"] = std::move(probs);
    }
    return j.dump(2) + "\n";
}

// The semigroup and generator probabilities described by a model.
inline std::pair<FiniteSemigroup, std::vector<Rational>> build_model(
    const ModelSpec& spec, std::size_t closure_cap = kDefaultClosureCap) {
    if (!spec.is_table()) {
        std::vector<std::pair<std::string, std::vector<int>>> gens;
        std::vector<Rational> probs;
        for (const auto& g : spec.generators) {
            gens.emplace_back(g.name, g.map);
            probs.push_back(g.prob);
        }
        return {FiniteSemigroup::from_transformations(gens, closure_cap), std::move(probs)};
    }
    std::vector<std::pair<std::string, int>> gens;
    for (std::size_t i = 0; i < spec.generator_indices.size(); ++i)
        gens.emplace_back(spec.generator_names[i], spec.generator_indices[i]);
    return {FiniteSemigroup::from_table(spec.table, gens, closure_cap), spec.probs};
}

} // namespace loopwalk
