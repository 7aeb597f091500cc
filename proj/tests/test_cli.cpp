#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "loopwalk/cli.hpp"

using namespace loopwalk;

namespace {

struct TempModel {
    std::filesystem::path path;

    explicit TempModel(const std::string& text) {
        path = std::filesystem::temp_directory_path() /
               ("loopwalk_model_" + std::to_string(counter()++) + ".json");
        std::ofstream file(path);
        file << text;
    }
    ~TempModel() { std::filesystem::remove(path); }

    static int& counter() {
        static int n = 0;
        return n;
    }
};

struct CliRun {
    int status;
    std::string out;
    std::string err;
};

CliRun run(const std::vector<std::string>& args) {
    std::ostringstream out, err;
    int status = run_cli(args, out, err);
    return {status, out.str(), err.str()};
}

const char* kConstantMaps = R"({
  "states": 2,
  "generators": [
    {"name": "a", "map": [0, 0], "prob": "1/3"},
    {"name": "b", "map": [1, 1], "prob": "2/3"}
  ]
})";

const char* kKlein = R"({
  "table": [[0,1,2,3],[1,0,3,2],[2,3,0,1],[3,2,1,0]],
  "generator_indices": [1, 2],
  "probs": ["1/2", "1/2"]
})";

} // namespace

TEST_CASE("stationary on the constant maps") {
    TempModel model(kConstantMaps);
    CliRun r = run({"stationary", model.path.string()});
    REQUIRE(r.status == 0);
    auto j = nlohmann::json::parse(r.out);
    CHECK(j["a"] == "1/3");
    CHECK(j["b"] == "2/3");
}

TEST_CASE("stationary on the Klein group is uniform") {
    TempModel model(kKlein);
    CliRun r = run({"stationary", model.path.string()});
    REQUIRE(r.status == 0);
    auto j = nlohmann::json::parse(r.out);
    REQUIRE(j.size() == 4);
    for (const auto& [key, value] : j.items()) CHECK(value == "1/4");
}

TEST_CASE("verify reports agreement") {
    TempModel model(kKlein);
    CliRun r = run({"verify", model.path.string()});
    REQUIRE(r.status == 0);
    CHECK(r.out.find("pipeline == oracle, 4 states, uniform 1/4") != std::string::npos);
}

TEST_CASE("inspect summarizes the input semigroup") {
    TempModel model(kKlein);
    CliRun r = run({"inspect", model.path.string()});
    REQUIRE(r.status == 0);
    CHECK(r.out.find("elements: 4") != std::string::npos);
    CHECK(r.out.find("left zero: no") != std::string::npos);
    CHECK(r.out.find("flat route needed: yes") != std::string::npos);

    CliRun j = run({"inspect", model.path.string(), "--format", "json"});
    REQUIRE(j.status == 0);
    auto parsed = nlohmann::json::parse(j.out);
    CHECK(parsed["size"] == 4);
    CHECK(parsed["minimal_ideal"].size() == 4);
    CHECK(parsed["left_zero"] == false);
}

TEST_CASE("graph exports") {
    TempModel model(kKlein);

    SECTION("Cayley graph of the flat semigroup in DOT") {
        CliRun r = run({"cayley", model.path.string(), "--flat", "force"});
        REQUIRE(r.status == 0);
        CHECK(r.out.find("digraph cayley") == 0);
        // 6 vertices: 4 group elements, the zero, the root.
        CHECK(r.out.find("n5") != std::string::npos);
        // 7 transition edges drawn blue.
        std::size_t blue = 0, pos = 0;
        while ((pos = r.out.find("color=blue", pos)) != std::string::npos) {
            ++blue;
            pos += 1;
        }
        CHECK(blue == 7);
    }
    SECTION("KR expansion size in JSON") {
        CliRun r = run({"kr", model.path.string(), "--format", "json"});
        REQUIRE(r.status == 0);
        auto j = nlohmann::json::parse(r.out);
        CHECK(j["vertices"].size() == 18);
    }
    SECTION("Mc expansion counts in text form") {
        CliRun r = run({"mc", model.path.string(), "--format", "text"});
        REQUIRE(r.status == 0);
        CHECK(r.out.find("vertices: 30") != std::string::npos);
        CHECK(r.out.find("spanning-tree edges: 29") != std::string::npos);
        CHECK(r.out.find("fold-back edges: 16") != std::string::npos);
    }
    SECTION("DOT output is byte-identical across runs") {
        CliRun first = run({"mc", model.path.string()});
        CliRun second = run({"mc", model.path.string()});
        REQUIRE(first.status == 0);
        CHECK(first.out == second.out);
    }
}

TEST_CASE("kleene command on the Klein target ab-zero") {
    TempModel model(kKlein);
    CliRun r = run({"kleene", model.path.string(), "--target", "ab□"});
    REQUIRE(r.status == 0);
    CHECK(r.out.find("expression: a{") != std::string::npos);
    CHECK(r.out.find("(a(bb)*a)*□") != std::string::npos);
    CHECK(r.out.find("limit at t -> 0: 3/32") != std::string::npos);
}

TEST_CASE("pict command lists the loop structure") {
    TempModel model(kKlein);
    CliRun r = run({"pict", model.path.string(), "--target", "a□", "--format", "text"});
    REQUIRE(r.status == 0);
    CHECK(r.out.find("spine: \U0001D7D9 a a□") != std::string::npos);
    CHECK(r.out.find("loops: 14") != std::string::npos);
}

TEST_CASE("semaphore command") {
    TempModel model(kKlein);
    CliRun r = run({"semaphore", model.path.string(), "--max-len", "2", "--flat", "force"});
    REQUIRE(r.status == 0);
    CHECK(r.out == "□\na□\nb□\n");

    CliRun j = run({"semaphore", model.path.string(), "--max-len", "3", "--format", "json"});
    REQUIRE(j.status == 0);
    auto words = nlohmann::json::parse(j.out);
    REQUIRE(words.size() == 7);
    CHECK(words[0] == "□");
}

TEST_CASE("errors come out as machine-readable JSON") {
    SECTION("unknown target") {
        TempModel model(kKlein);
        CliRun r = run({"kleene", model.path.string(), "--target", "zz"});
        REQUIRE(r.status == 1);
        auto j = nlohmann::json::parse(r.out);
        CHECK(j["error"]["code"] == "UnknownLabel");
    }
    SECTION("target that is not a tree address") {
        TempModel model(kKlein);
        CliRun r = run({"pict", model.path.string(), "--target", "aaa"});
        REQUIRE(r.status == 1);
        auto j = nlohmann::json::parse(r.out);
        CHECK(j["error"]["code"] == "ValidationError");
    }
    SECTION("invalid model") {
        TempModel model(R"({"states": 2})");
        CliRun r = run({"inspect", model.path.string()});
        REQUIRE(r.status == 1);
        auto j = nlohmann::json::parse(r.out);
        CHECK(j["error"]["code"] == "ParseError");
    }
    SECTION("flat off on a group input") {
        TempModel model(kKlein);
        CliRun r = run({"stationary", model.path.string(), "--flat", "off"});
        REQUIRE(r.status == 1);
        auto j = nlohmann::json::parse(r.out);
        CHECK(j["error"]["code"] == "ValidationError");
    }
    SECTION("missing file") {
        CliRun r = run({"inspect", "/nonexistent/model.json"});
        REQUIRE(r.status == 1);
        auto j = nlohmann::json::parse(r.out);
        CHECK(j["error"]["code"] == "ParseError");
    }
}

TEST_CASE("dot export shapes") {
    auto count = [](const std::string& text, const std::string& needle) {
        std::size_t hits = 0, pos = 0;
        while ((pos = text.find(needle, pos)) != std::string::npos) {
            ++hits;
            pos += needle.size();
        }
        return hits;
    };

    SECTION("constant-maps Cayley graph: 3 nodes, 6 labeled edges") {
        FiniteSemigroup S = FiniteSemigroup::from_transformations(
            {{"a", {0, 0}}, {"b", {1, 1}}});
        std::string dot = dot_export(right_cayley(S));
        CHECK(count(dot, " [label=") - count(dot, " -> ") == 3);
        CHECK(count(dot, " -> ") == 6);
    }
    SECTION("Klein Mc graph: 30 nodes, 29 solid tree edges, dashed fold-backs") {
        FiniteSemigroup S = FiniteSemigroup::from_table(
            {{0, 1, 2, 3}, {1, 0, 3, 2}, {2, 3, 0, 1}, {3, 2, 1, 0}}, {{"a", 1}, {"b", 2}});
        FiniteSemigroup T = S.adjoin_zero();
        CayleyGraph G = right_cayley(T);
        KRGraph kr = kr_expand(G);
        auto ideal = kr_ideal_flags(kr, G, T.minimal_ideal());
        McGraph mc = mc_expand(kr, &ideal);
        std::string dot = dot_export(mc);
        CHECK(count(dot, " [label=") - count(dot, " -> ") == 30);
        CHECK(count(dot, " -> ") == 45);
        CHECK(count(dot, "style=dashed") == 16);
    }
    SECTION("one-edge loop graph: 2 nodes") {
        LoopGraph G = LoopGraph::from_spine({0}, {"a"});
        std::string dot = dot_export(G);
        CHECK(count(dot, " [label=") - count(dot, " -> ") == 2);
        CHECK(count(dot, " -> ") == 1);
    }
}

TEST_CASE("usage errors") {
    CliRun r = run({"frobnicate"});
    CHECK(r.status != 0);
    CliRun missing = run({"pict"});
    CHECK(missing.status != 0);
}
