#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <set>

#include "oracles.hpp"
#include "polygas/graphs.hpp"
#include "polygas/rng.hpp"

using namespace polygas::graphs;

TEST_CASE("labeled tree enumeration counts") {
    CHECK(enumerate_trees(1).size() == 1);
    CHECK(enumerate_trees(1)[0].edges.empty());
    CHECK(enumerate_trees(3).size() == 3);
    CHECK(enumerate_trees(4).size() == 16);
    for (int n = 2; n <= 7; ++n) {
        std::size_t count = 0;
        for_each_tree(n, [&](const LabeledTree&) { ++count; });
        CHECK(count == static_cast<std::size_t>(std::pow(n, n - 2) + 0.5));
    }
}

TEST_CASE("tree enumeration matches brute force and has no duplicates") {
    for (int n = 1; n <= 5; ++n) {
        std::set<std::string> seen;
        for (const LabeledTree& t : enumerate_trees(n)) {
            REQUIRE(t.n_vertices == n);
            REQUIRE(t.edges.size() == static_cast<std::size_t>(n - 1));
            seen.insert(oracles::edge_key(t.edges));
        }
        const auto brute = oracles::trees_brute(n);
        CHECK(seen == brute);
        CHECK(seen.size() == enumerate_trees(n).size());  // no duplicates
    }
}

TEST_CASE("rooted forest counts equal (n+1)^(n-1)") {
    for (int n = 1; n <= 6; ++n) {
        std::size_t count = 0;
        for_each_rooted_forest(n, [&](const RootedForest&) { ++count; });
        CHECK(count == static_cast<std::size_t>(std::pow(n + 1, n - 1) + 0.5));
    }
    const auto n2 = enumerate_rooted_forests(2);
    REQUIRE(n2.size() == 3);
}

TEST_CASE("rooted forests match brute force") {
    for (int n = 1; n <= 4; ++n) {
        std::set<std::string> seen;
        for (const RootedForest& f : enumerate_rooted_forests(n)) {
            std::string key = oracles::edge_key(f.edges) + "|";
            for (int r : f.roots) key += std::to_string(r) + ",";
            seen.insert(key);
        }
        const auto brute = oracles::rooted_forests_brute(n);
        CHECK(seen == brute);
        CHECK(seen.size() == enumerate_rooted_forests(n).size());
    }
}

TEST_CASE("anchored forest enumeration") {
    CHECK(enumerate_anchored_forests(3, 3).size() == 1);
    CHECK(enumerate_anchored_forests(3, 3)[0].edges.empty());
    const auto two_three = enumerate_anchored_forests(2, 3);
    REQUIRE(two_three.size() == 2);
    CHECK(enumerate_anchored_forests(1, 3).size() == 3);

    for (int a = 1; a <= 3; ++a)
        for (int v = a; v <= 5; ++v) {
            std::set<std::string> seen;
            for (const AnchoredForest& f : enumerate_anchored_forests(a, v))
                seen.insert(oracles::edge_key(f.edges));
            CHECK(seen == oracles::anchored_forests_brute(a, v));
            CHECK(seen.size() == enumerate_anchored_forests(a, v).size());
        }
}

TEST_CASE("single-anchor forests are exactly the labeled trees") {
    for (int n = 2; n <= 5; ++n) {
        std::set<std::string> anchored, trees;
        for (const AnchoredForest& f : enumerate_anchored_forests(1, n))
            anchored.insert(oracles::edge_key(f.edges));
        for (const LabeledTree& t : enumerate_trees(n)) trees.insert(oracles::edge_key(t.edges));
        CHECK(anchored == trees);
    }
}

TEST_CASE("prufer codes") {
    SECTION("two-vertex tree has an empty code") {
        CHECK(prufer_encode(LabeledTree{2, {{1, 2}}}).empty());
    }
    SECTION("decode then encode is the identity on all codes of length 2 over {1..4}") {
        for (int a = 1; a <= 4; ++a)
            for (int b = 1; b <= 4; ++b) {
                const std::vector<int> code{a, b};
                const LabeledTree t = prufer_decode(code);
                CHECK(prufer_encode(t) == code);
            }
    }
    SECTION("encode then decode is the identity on all trees up to n=6") {
        for (int n = 2; n <= 6; ++n)
            for (const LabeledTree& t : enumerate_trees(n)) {
                const LabeledTree back = prufer_decode(prufer_encode(t));
                CHECK(back.edges == t.edges);
            }
    }
    SECTION("random codes always decode to valid trees") {
        polygas::SplitRng rng(31337, 0);
        for (int trial = 0; trial < 200; ++trial) {
            const int n = 3 + static_cast<int>(rng.next_u64() % 6);
            std::vector<int> code(n - 2);
            for (int& c : code) c = 1 + static_cast<int>(rng.next_u64() % n);
            const LabeledTree t = prufer_decode(code);
            REQUIRE(t.edges.size() == static_cast<std::size_t>(n - 1));
            const auto c = oracles::analyze(n, t.edges);
            CHECK(c.count == 1);
            CHECK(c.acyclic);
        }
    }
    SECTION("malformed codes are rejected") {
        CHECK_THROWS_AS(prufer_decode({0, 1}), std::invalid_argument);
        CHECK_THROWS_AS(prufer_decode({5, 1}), std::invalid_argument);
    }
}

TEST_CASE("spanning tree counts by matrix-tree") {
    const std::vector<std::vector<int>> path3 = {{0, 1, 0}, {1, 0, 1}, {0, 1, 0}};
    CHECK(spanning_tree_count(path3) == 1);

    const std::vector<std::vector<int>> cycle4 = {
        {0, 1, 0, 1}, {1, 0, 1, 0}, {0, 1, 0, 1}, {1, 0, 1, 0}};
    CHECK(spanning_tree_count(cycle4) == 4);

    std::vector<std::vector<int>> k4(4, std::vector<int>(4, 1));
    for (int i = 0; i < 4; ++i) k4[i][i] = 0;
    CHECK(spanning_tree_count(k4) == 16);

    const std::vector<std::vector<int>> disconnected = {{0, 1, 0, 0}, {1, 0, 0, 0},
                                                        {0, 0, 0, 1}, {0, 0, 1, 0}};
    CHECK(spanning_tree_count(disconnected) == 0);

    CHECK_THROWS_AS(spanning_tree_count({{1}}), std::invalid_argument);
    CHECK_THROWS_AS(spanning_tree_count({{0, 1}, {0, 0}}), std::invalid_argument);
}

TEST_CASE("enumeration caps and argument errors") {
    CHECK_THROWS_AS(enumerate_trees(10), polygas::size_error);
    CHECK_THROWS_AS(enumerate_trees(0), std::invalid_argument);
    CHECK_THROWS_AS(enumerate_rooted_forests(10), polygas::size_error);
    CHECK_THROWS_AS(enumerate_anchored_forests(4, 3), std::invalid_argument);
    CHECK_THROWS_AS(enumerate_anchored_forests(1, 12), polygas::size_error);
    CHECK_NOTHROW(enumerate_trees(8, 8));  // configurable cap
    CHECK_THROWS_AS(enumerate_trees(8, 7), polygas::size_error);
}
