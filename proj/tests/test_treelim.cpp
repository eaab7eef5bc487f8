#include <doctest.h>

#include <random>

#include "folim/ef.hpp"
#include "folim/treestat.hpp"
#include "helpers.hpp"

using namespace folim;
using namespace folim::testing;

namespace {

RootedTree star(int leaves, int heightBound) {
    std::vector<int> parent(leaves + 1, 0), color(leaves + 1, 0);
    return RootedTree(parent, color, heightBound);
}

std::map<std::string, Rational> massByKey(const TreeStatistic& stat) {
    std::map<std::string, Rational> out;
    for (size_t i = 0; i < stat.tuples.size(); ++i) {
        std::string key;
        for (int id : stat.tuples[i]) key += stat.types[id].key();
        out[key] = stat.mass[i];
    }
    return out;
}

/// Hand-built statistic: root (mass 1/40, children X*4 Y*4, cap 4),
/// X (0.2, w'=4) with child Z (0.6, w'=3), leaf Y (0.175, w'=4).
/// FMTP-consistent; mutating Z's mass to 0.5 (and Y to 0.275) breaks exactly
/// the X->Z pair.
TreeStatistic handStatistic(bool mutated) {
    TreeStatistic stat;
    stat.h = 3;
    stat.r = 1;
    stat.cap = 4;
    CapType z = CapType::leaf(2);
    CapType y = CapType::leaf(3);
    CapType x(1, {{z, 3}}, stat.cap);
    CapType root(0, {{x, 4}, {y, 4}}, stat.cap);
    int rootId = stat.addType(root);
    int xId = stat.addType(x);
    int yId = stat.addType(y);
    int zId = stat.addType(z);
    stat.tuples = {{rootId}, {rootId, xId}, {rootId, yId}, {rootId, xId, zId}};
    if (mutated)
        stat.mass = {Rational(1, 40), Rational(1, 5), Rational(11, 40), Rational(1, 2)};
    else
        stat.mass = {Rational(1, 40), Rational(1, 5), Rational(7, 40), Rational(3, 5)};
    stat.wPrime[1] = 4;
    stat.wPrime[2] = 4;
    stat.wPrime[3] = 3;
    stat.sortCanonically();
    stat.validate();
    return stat;
}

} // namespace

TEST_CASE("statisticOfTree: K_1") {
    TreeStatistic stat = statisticOfTree(RootedTree::singleton(0, 2), 1);
    REQUIRE(stat.tuples.size() == 1);
    CHECK(stat.mass[0] == Rational(1));
    CHECK(stat.tuples[0].size() == 1);
}

TEST_CASE("statisticOfTree: star S_4 at rank 1") {
    TreeStatistic stat = statisticOfTree(star(4, 2), 1);
    // cap = 1 + 2 = 3; root tuple mass 1/5, leaf tuple mass 4/5, w' = min(3,4)
    REQUIRE(stat.tuples.size() == 2);
    CHECK(stat.cap == 3);
    CHECK(stat.mass[0] == Rational(1, 5));
    CHECK(stat.mass[1] == Rational(4, 5));
    CHECK(stat.wPrime.at(1) == 3);
}

TEST_CASE("statisticOfTree: masses always sum to 1") {
    std::mt19937_64 rng(51);
    for (int iter = 0; iter < 20; ++iter) {
        RootedTree t = randomTree(3 + static_cast<int>(rng() % 20), 3, 2, rng);
        TreeStatistic stat = statisticOfTree(t, 1 + static_cast<int>(rng() % 2));
        Rational total(0);
        for (const auto& m : stat.mass) total += m;
        CHECK(total == Rational(1));
    }
}

TEST_CASE("fmtpCheck: extracted statistics always pass") {
    std::mt19937_64 rng(52);
    for (int iter = 0; iter < 30; ++iter) {
        RootedTree t = randomTree(2 + static_cast<int>(rng() % 25), 3, 2, rng);
        for (int r = 1; r <= 2; ++r)
            CHECK(fmtpCheck(statisticOfTree(t, r)).empty());
    }
}

TEST_CASE("fmtpCheck: consistent hand statistic (0.6 = 3 * 0.2)") {
    CHECK(fmtpCheck(handStatistic(false)).empty());
}

TEST_CASE("fmtpCheck: mutated mass 0.5 yields exactly one violation") {
    auto violations = fmtpCheck(handStatistic(true));
    REQUIRE(violations.size() == 1);
    CHECK(violations[0].message.find("1/2") != std::string::npos);
}

TEST_CASE("buildTree: the K_1 statistic returns K_1 for every N") {
    TreeStatistic stat = statisticOfTree(RootedTree::singleton(1, 2), 1);
    for (long long N : {1LL, 10LL, 100LL}) {
        auto res = buildTree(stat, N);
        CHECK(res.tree.size() == 1);
        CHECK(res.tree.color(0) == 1);
    }
}

TEST_CASE("buildTree: star round trip at N=100") {
    RootedTree s9 = star(9, 2);
    TreeStatistic stat = statisticOfTree(s9, 1);
    auto res = buildTree(stat, 100);
    long long C = res.constantC;
    CHECK(res.tree.size() >= 100);
    CHECK(res.tree.size() <= 100 + C);
    // the output is a star: every non-root vertex hangs off the root
    int root = res.tree.root();
    for (int v = 0; v < res.tree.size(); ++v)
        if (v != root) CHECK(res.tree.parent(v) == root);
    // unary pairings within C/N of the input masses
    TreeStatistic out = statisticOfTree(res.tree, 1);
    auto inMass = massByKey(stat), outMass = massByKey(out);
    REQUIRE(inMass.size() == outMass.size());
    Rational bound(C, 100);
    for (const auto& [key, m] : inMass) {
        REQUIRE(outMass.count(key));
        CHECK((outMass[key] - m).abs() <= bound);
    }
}

TEST_CASE("buildTree: root mass zero is rejected") {
    TreeStatistic stat = handStatistic(false);
    // shift the root's mass onto Y to make the root tuple weightless
    stat.mass[0] = Rational(0);
    stat.mass[2] = stat.mass[2] + Rational(1, 40);
    CHECK_THROWS_AS(buildTree(stat, 50), PreconditionError);
}

TEST_CASE("buildTree: hand statistic realizes its tuple types exactly") {
    TreeStatistic stat = handStatistic(false);
    auto res = buildTree(stat, 200);
    CHECK(res.tree.size() >= 200);
    CHECK(res.tree.size() <= 200 + res.constantC);
    TreeStatistic out = statisticOfTree(res.tree, 1);
    // same support, w' values preserved
    auto inMass = massByKey(stat), outMass = massByKey(out);
    REQUIRE(inMass.size() == outMass.size());
    for (const auto& [key, m] : inMass) REQUIRE(outMass.count(key));
}

TEST_CASE("buildTree: size sandwich and mass bound on random growable trees") {
    std::mt19937_64 rng(53);
    int tested = 0;
    while (tested < 12) {
        int h = 3, r = 1 + static_cast<int>(rng() % 2);
        int K = r + h;
        RootedTree t = randomTree(8 + static_cast<int>(rng() % 25), h, 2, rng);
        TreeStatistic stat = statisticOfTree(t, r);
        bool growable = false;
        for (const auto& [idx, w] : stat.wPrime)
            if (w == K && !stat.mass[idx].isZero()) growable = true;
        if (!growable) continue;
        ++tested;
        long long N = 10LL * t.size();
        auto res = buildTree(stat, N);
        long long C = res.constantC;
        CHECK(res.tree.size() >= N);
        CHECK(res.tree.size() <= N + C);
        CHECK(res.tree.height() <= h);
        TreeStatistic out = statisticOfTree(res.tree, r);
        auto inMass = massByKey(stat), outMass = massByKey(out);
        Rational bound(C, N);
        for (const auto& [key, m] : inMass) {
            REQUIRE(outMass.count(key));
            CHECK((outMass[key] - m).abs() <= bound);
        }
        for (const auto& [key, m] : outMass) CHECK(inMass.count(key));
    }
}

TEST_CASE("buildTree: balance bound") {
    std::mt19937_64 rng(54);
    for (int iter = 0; iter < 8; ++iter) {
        int h = 3, r = 1;
        RootedTree t = randomTree(20, h, 2, rng);
        TreeStatistic stat = statisticOfTree(t, r);
        long long N = 10LL * t.size();
        BuildResult res;
        try {
            res = buildTree(stat, N);
        } catch (const PreconditionError&) {
            continue; // pinned statistic; sandwich degenerate
        }
        const RootedTree& y = res.tree;
        auto maxBranchRatio = [](const RootedTree& tree) {
            Rational best(0);
            for (int v : tree.children()[tree.root()]) {
                Rational ratio(static_cast<long long>(tree.subtreeVertices(v).size()),
                               tree.size());
                best = std::max(best, ratio);
            }
            return best;
        };
        Rational lhs = maxBranchRatio(y);
        Rational inputRatio = maxBranchRatio(t);
        Rational rhs = std::max(Rational(1, r + h), inputRatio) +
                       Rational(res.constantC, N);
        CHECK(lhs <= rhs);
    }
}

TEST_CASE("buildTree agrees with the source tree in the EF sense") {
    std::mt19937_64 rng(55);
    int tested = 0;
    for (int iter = 0; iter < 40 && tested < 8; ++iter) {
        int h = 2, r = 1 + static_cast<int>(rng() % 2);
        RootedTree t = randomTree(3 + static_cast<int>(rng() % 6), h, 2, rng);
        TreeStatistic stat = statisticOfTree(t, r);
        BuildResult res;
        try {
            res = buildTree(stat, t.size());
        } catch (const PreconditionError&) {
            continue;
        }
        if (res.tree.size() > 30) continue;
        ++tested;
        int K = r + h;
        // exact type realization: the root types agree at cap K ...
        CHECK(capType(res.tree, res.tree.root(), K) == capType(t, t.root(), K));
        // ... and the finite-rank type soundness gives r-round EF equivalence
        int colors = std::max(t.colorCount(), res.tree.colorCount());
        CHECK(efEquivalent(t.toStructure(colors), {}, res.tree.toStructure(colors), {}, r));
    }
    CHECK(tested >= 5);
}

TEST_CASE("heavySkeleton: K_1 statistic") {
    TreeStatistic stat = statisticOfTree(RootedTree::singleton(0, 2), 1);
    Skeleton skel = heavySkeleton(stat, Rational(1, 2));
    REQUIRE(skel.nodes.size() == 1);
    CHECK(skel.mass[0] == Rational(1));
}

TEST_CASE("heavySkeleton: only the heavy branch survives") {
    TreeStatistic stat = handStatistic(false);
    // cumulative masses: root 1, X-branch 0.2+0.6=0.8, Y-branch 0.175
    Skeleton skel = heavySkeleton(stat, Rational(1, 2));
    REQUIRE(skel.nodes.size() == 3); // root, X, and Z below X (0.6 > 0.5*0.8)
    CHECK(skel.mass[0] == Rational(1));
    bool sawX = false;
    for (size_t i = 0; i < skel.nodes.size(); ++i)
        if (skel.nodes[i].size() == 2) {
            sawX = true;
            CHECK(skel.mass[i] == Rational(4, 5));
        }
    CHECK(sawX);
}

TEST_CASE("heavySkeleton: alpha near zero keeps every positive tuple") {
    std::mt19937_64 rng(56);
    RootedTree t = randomTree(15, 3, 2, rng);
    TreeStatistic stat = statisticOfTree(t, 1);
    Skeleton skel = heavySkeleton(stat, Rational(1, 1000000));
    CHECK(skel.nodes.size() == stat.tuples.size());
}

TEST_CASE("heavySkeleton: invariants") {
    std::mt19937_64 rng(57);
    for (int iter = 0; iter < 10; ++iter) {
        RootedTree t = randomTree(12, 3, 2, rng);
        TreeStatistic stat = statisticOfTree(t, 1);
        Rational alpha(1 + static_cast<int>(rng() % 4), 10);
        Skeleton skel = heavySkeleton(stat, alpha);
        CHECK(skel.mass[0] == Rational(1));
        // mass(v) >= sum over sons; sons bounded by 1/alpha
        for (size_t v = 0; v < skel.nodes.size(); ++v) {
            Rational sonSum(0);
            int sons = 0;
            for (size_t u = 0; u < skel.nodes.size(); ++u)
                if (u != v && skel.parent[u] == static_cast<int>(v)) {
                    sonSum += skel.mass[u];
                    ++sons;
                }
            CHECK(sonSum <= skel.mass[v]);
            CHECK(Rational(sons) * alpha <= Rational(1));
        }
    }
}

TEST_CASE("buildApprox: single-branch statistic reduces to buildTree") {
    RootedTree s9 = star(9, 2);
    TreeStatistic stat = statisticOfTree(s9, 1);
    auto direct = buildTree(stat, 60);
    auto approx = buildApprox(stat, 1, 1, 0.1, 60);
    TreeStatistic a = statisticOfTree(direct.tree, 1);
    TreeStatistic b = statisticOfTree(approx.tree, 1);
    CHECK(massByKey(a) == massByKey(b));
}

TEST_CASE("buildApprox: round trip within the reported constant") {
    std::mt19937_64 rng(58);
    int tested = 0;
    while (tested < 6) {
        int h = 3, r = 1;
        RootedTree t = randomTree(10 + static_cast<int>(rng() % 15), h, 2, rng);
        TreeStatistic stat = statisticOfTree(t, r);
        bool growable = false;
        for (const auto& [idx, w] : stat.wPrime)
            if (w == stat.cap && !stat.mass[idx].isZero()) growable = true;
        if (!growable) continue;
        ++tested;
        long long N = 20LL * t.size();
        auto res = buildApprox(stat, 1, r, 0.1, N);
        CHECK(res.tree.height() <= h);
        TreeStatistic out = statisticOfTree(res.tree, r);
        auto inMass = massByKey(stat), outMass = massByKey(out);
        Rational bound(res.constantC, N);
        for (const auto& [key, m] : inMass) {
            auto it = outMass.find(key);
            Rational got = it == outMass.end() ? Rational(0) : it->second;
            CHECK((got - m).abs() <= bound);
        }
    }
}

TEST_CASE("buildApprox: huge epsilon accepts any FMTP-consistent output") {
    TreeStatistic stat = handStatistic(false);
    auto res = buildApprox(stat, 1, 1, 2.5, 120);
    CHECK(res.tree.size() >= 1);
    CHECK(res.tree.height() <= stat.h);
    CHECK(fmtpCheck(statisticOfTree(res.tree, 1)).empty());
}

TEST_CASE("buildApprox rejects FMTP-violating statistics") {
    CHECK_THROWS_AS(buildApprox(handStatistic(true), 1, 1, 0.1, 50), PreconditionError);
    CHECK_THROWS_AS(buildTree(handStatistic(true), 50), PreconditionError);
}
