#include <doctest.h>

#include <algorithm>
#include <random>

#include "folim/structure.hpp"
#include "folim/tree.hpp"
#include "helpers.hpp"

using namespace folim;
using namespace folim::testing;

TEST_CASE("connected components: isolated vertices") {
    Structure g = emptyGraph(2);
    auto comps = g.connectedComponents();
    REQUIRE(comps.size() == 2);
    CHECK(comps[0] == std::vector<int>{0});
    CHECK(comps[1] == std::vector<int>{1});
}

TEST_CASE("connected components: path is connected") {
    Structure g = pathGraph(3);
    auto comps = g.connectedComponents();
    REQUIRE(comps.size() == 1);
    CHECK(comps[0].size() == 3);
}

TEST_CASE("connected components: forest sizes against union-find oracle") {
    // components of sizes 3, 2, 1
    Structure g = Structure::graph(6, {{0, 1}, {1, 2}, {3, 4}});
    auto comps = g.connectedComponents();
    std::vector<int> sizes;
    for (const auto& c : comps) sizes.push_back(static_cast<int>(c.size()));
    std::sort(sizes.begin(), sizes.end(), std::greater<int>());
    CHECK(sizes == std::vector<int>{3, 2, 1});
    CHECK(sizes == oracleComponentSizes(g));
}

TEST_CASE("components are invariant under relabeling") {
    std::mt19937_64 rng(7);
    for (int iter = 0; iter < 20; ++iter) {
        Structure g = randomForestGraph(10, rng);
        std::vector<int> perm(10);
        std::iota(perm.begin(), perm.end(), 0);
        std::shuffle(perm.begin(), perm.end(), rng);
        Structure h = relabel(g, perm);
        CHECK(oracleComponentSizes(g) == oracleComponentSizes(h));
        std::vector<int> a, b;
        for (const auto& c : g.connectedComponents()) a.push_back(static_cast<int>(c.size()));
        for (const auto& c : h.connectedComponents()) b.push_back(static_cast<int>(c.size()));
        std::sort(a.begin(), a.end());
        std::sort(b.begin(), b.end());
        CHECK(a == b);
    }
}

TEST_CASE("gaifman graph covers higher-arity relations") {
    Signature sig({{"T", 3}});
    Structure s(sig, 5);
    s.addTuple(0, {0, 1, 2});
    s.freeze();
    auto comps = s.connectedComponents();
    REQUIRE(comps.size() == 3);
    CHECK(comps[0] == std::vector<int>{0, 1, 2});
}

TEST_CASE("subtree at root is the whole tree") {
    std::mt19937_64 rng(11);
    RootedTree t = randomTree(9, 3, 2, rng);
    RootedTree s = t.subtree(t.root());
    CHECK(s.size() == t.size());
    CHECK(s.height() == t.height());
}

TEST_CASE("subtree at a leaf is a single vertex with the leaf's color") {
    // star S_5: center 0 root, leaves 1..5
    std::vector<int> parent{0, 0, 0, 0, 0, 0};
    std::vector<int> color{1, 0, 2, 0, 0, 1};
    RootedTree t(parent, color, 2);
    RootedTree leaf = t.subtree(2);
    CHECK(leaf.size() == 1);
    CHECK(leaf.color(0) == 2);
}

TEST_CASE("subtree composition: descendant of a descendant") {
    std::mt19937_64 rng(13);
    for (int iter = 0; iter < 10; ++iter) {
        RootedTree t = randomTree(12, 4, 2, rng);
        for (int u = 0; u < t.size(); ++u) {
            for (int v : t.subtreeVertices(u)) {
                // relabeled positions: v inside subtree(t,u)
                auto verts = t.subtreeVertices(u);
                int vLocal = static_cast<int>(
                    std::lower_bound(verts.begin(), verts.end(), v) - verts.begin());
                RootedTree inner = t.subtree(u).subtree(vLocal);
                RootedTree direct = t.subtree(v);
                CHECK(inner.size() == direct.size());
                CHECK(inner.colors() == direct.colors());
                CHECK(inner.parents() == direct.parents());
            }
        }
    }
}

TEST_CASE("tree invariants: single root, height bound enforced") {
    CHECK_THROWS_AS(RootedTree({0, 1}, {0, 0}, 2), PreconditionError); // two roots
    CHECK_THROWS_AS(RootedTree({0, 0, 1}, {0, 0, 0}, 2), PreconditionError); // height 3 > 2
    CHECK_NOTHROW(RootedTree({0, 0, 1}, {0, 0, 0}, 3));
}

TEST_CASE("structures reject malformed tuples") {
    Structure g(Signature::graph(), 3);
    CHECK_THROWS_AS(g.addEdge(0, 0, 0), PreconditionError);     // loop
    CHECK_THROWS_AS(g.addTuple(0, {0, 5}), PreconditionError);  // out of range
    CHECK_THROWS_AS(g.addTuple(0, {0}), PreconditionError);     // arity
    CHECK_THROWS_AS(Structure::graph(2, {{0, 0}}), PreconditionError);
}

TEST_CASE("graphs are stored symmetric-closed") {
    Structure g = Structure::graph(3, {{0, 1}});
    CHECK(g.adjacent(0, 1));
    CHECK(g.adjacent(1, 0));
    CHECK(g.table(0).size() == 2);
}

TEST_CASE("empty structures are legal") {
    Structure g = emptyGraph(0);
    CHECK(g.empty());
    CHECK(g.connectedComponents().empty());
}
