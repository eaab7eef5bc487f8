#include <doctest.h>

#include <random>

#include "folim/parser.hpp"
#include "folim/seq.hpp"
#include "helpers.hpp"

using namespace folim;
using namespace folim::testing;

namespace {
const Signature kGraphSig = Signature::graph();
Formula parse(const std::string& text) { return parseFormula(text, kGraphSig); }
} // namespace

TEST_CASE("trajectory: constant sequence gives constant rows") {
    Structure g = completeGraph(3);
    auto t = trajectory({g, g, g}, {parse("adj(x1,x2)")}, {2});
    REQUIRE(t.values.size() == 3);
    for (const auto& row : t.values) CHECK(row[0] == Rational(2, 3));
}

TEST_CASE("trajectory: growing cliques") {
    std::vector<Structure> seq;
    for (int n = 2; n <= 8; ++n) seq.push_back(completeGraph(n));
    auto t = trajectory(seq, {parse("adj(x1,x2)")}, {2});
    for (int n = 2; n <= 8; ++n)
        CHECK(t.values[n - 2][0] == Rational(n - 1, n));
}

TEST_CASE("trajectory: the K_1 / 2K_1 alternation does not converge") {
    std::vector<Structure> seq{emptyGraph(2), emptyGraph(1), emptyGraph(2), emptyGraph(1)};
    auto t = trajectory(seq, {parse("x1 != x2")}, {2});
    CHECK(t.values[0][0] == Rational(1, 2));
    CHECK(t.values[1][0] == Rational(0));
    CHECK(t.values[2][0] == Rational(1, 2));
    CHECK(t.values[3][0] == Rational(0));
}

TEST_CASE("trajectory rejects mixed signatures") {
    Structure colored = Structure::graph(2, {{0, 1}}, {0, 1});
    CHECK_THROWS_AS(trajectory({completeGraph(2), colored}, {parse("x1 = x1")}, {1}),
                    PreconditionError);
}

TEST_CASE("spectrum: connected structure") {
    CHECK(spectrum(cycleGraph(6)) == std::vector<Rational>{Rational(1)});
}

TEST_CASE("spectrum: components 3,2,1") {
    Structure g = Structure::graph(6, {{0, 1}, {1, 2}, {3, 4}});
    CHECK(spectrum(g) ==
          std::vector<Rational>{Rational(1, 2), Rational(1, 3), Rational(1, 6)});
}

TEST_CASE("spectrum: four isolated vertices") {
    std::vector<Rational> expect(4, Rational(1, 4));
    CHECK(spectrum(emptyGraph(4)) == expect);
}

TEST_CASE("spectrum norm check: components 3,2,1 at k=1") {
    Structure g = Structure::graph(6, {{0, 1}, {1, 2}, {3, 4}});
    auto chk = spectrumNormCheck(g, 1);
    CHECK(chk.lhs == Rational(14, 36));
    CHECK(chk.rhs == Rational(14, 36));
}

TEST_CASE("spectrum norm check: connected structure") {
    for (int k = 1; k <= 3; ++k) {
        auto chk = spectrumNormCheck(pathGraph(5), k);
        CHECK(chk.lhs == Rational(1));
        CHECK(chk.rhs == Rational(1));
    }
}

TEST_CASE("spectrum norm check: 4 isolated vertices at k=2") {
    auto chk = spectrumNormCheck(emptyGraph(4), 2);
    CHECK(chk.lhs == Rational(1, 16));
    CHECK(chk.rhs == Rational(1, 16));
}

TEST_CASE("spectrum identity holds exactly on random forests") {
    std::mt19937_64 rng(41);
    for (int iter = 0; iter < 30; ++iter) {
        Structure g = randomForestGraph(3 + static_cast<int>(rng() % 13), rng);
        for (int k = 1; k <= 3; ++k) {
            auto chk = spectrumNormCheck(g, k);
            CHECK(chk.lhs == chk.rhs);
        }
    }
}

namespace {

/// Naive clip oracle: the definition evaluated by direct loops.
std::vector<int> oracleClip(const std::vector<std::vector<Rational>>& spectra,
                            const std::vector<Rational>& limit) {
    int support = 0;
    while (support < static_cast<int>(limit.size()) && !limit[support].isZero()) ++support;
    std::vector<int> out;
    for (size_t n = 0; n < spectra.size(); ++n) {
        int best = 0;
        for (int M = 0; M <= support; ++M) {
            bool ok = true;
            for (size_t n2 = n; n2 < spectra.size() && ok; ++n2) {
                Rational lhs(0);
                for (int i = 0; i < M; ++i) {
                    Rational v = i < static_cast<int>(spectra[n2].size()) ? spectra[n2][i]
                                                                          : Rational(0);
                    lhs += (v - limit[i]).abs();
                }
                Rational rhs(0);
                for (int i = M; i < support; ++i) rhs += limit[i];
                if (lhs > rhs) ok = false;
            }
            if (ok) best = M;
        }
        out.push_back(best);
    }
    return out;
}

} // namespace

TEST_CASE("clip: spectra equal to the limit saturate at the support size") {
    std::vector<Rational> limit{Rational(1, 2), Rational(1, 4), Rational(1, 8)};
    std::vector<std::vector<Rational>> spectra(5, limit);
    auto cuts = clip(spectra, limit);
    for (int c : cuts) CHECK(c == 3);
}

TEST_CASE("clip: single-component limit") {
    std::vector<Rational> limit{Rational(1)};
    std::vector<std::vector<Rational>> spectra(4, {Rational(1)});
    auto cuts = clip(spectra, limit);
    for (int c : cuts) CHECK(c == 1);
}

TEST_CASE("clip: perturbed spectra match the brute-force oracle") {
    std::vector<Rational> limit{Rational(1, 2), Rational(1, 4)};
    std::vector<std::vector<Rational>> spectra;
    for (int n = 1; n <= 8; ++n) {
        Rational eps(1, 4 * n);
        spectra.push_back({Rational(1, 2) + eps, Rational(1, 4) - eps});
    }
    auto cuts = clip(spectra, limit);
    CHECK(cuts == oracleClip(spectra, limit));
    for (size_t i = 1; i < cuts.size(); ++i) CHECK(cuts[i] >= cuts[i - 1]);
}

TEST_CASE("clip on random perturbations agrees with the oracle") {
    std::mt19937_64 rng(42);
    for (int iter = 0; iter < 20; ++iter) {
        std::vector<Rational> limit{Rational(1, 2), Rational(1, 4), Rational(1, 8)};
        std::vector<std::vector<Rational>> spectra;
        int len = 3 + static_cast<int>(rng() % 5);
        for (int n = 0; n < len; ++n) {
            std::vector<Rational> row;
            for (int i = 0; i < 3; ++i) {
                long long num = static_cast<long long>(rng() % 5);
                row.push_back(limit[i] + Rational(num, 100 * (n + 1)) -
                              Rational(2, 100 * (n + 1)));
            }
            spectra.push_back(row);
        }
        CHECK(clip(spectra, limit) == oracleClip(spectra, limit));
    }
}

TEST_CASE("comb: swapping colored singletons stay color-constant per column") {
    std::vector<Structure> seq;
    for (int n = 0; n < 6; ++n) {
        std::vector<int> colors = (n % 2 == 0) ? std::vector<int>{0, 1}
                                               : std::vector<int>{1, 0};
        seq.push_back(Structure::graph(2, {}, colors));
    }
    auto comb = combDecompose(seq, 1, {Rational(1, 2), Rational(1, 2)});
    REQUIRE(comb.columns.size() == 2);
    for (const auto& column : comb.columns) {
        REQUIRE(column.size() == 6);
        int c1 = column[0].signature().requireIndex("C1");
        bool firstHasColor0 = !column[0].table(c1).empty();
        for (const auto& comp : column)
            CHECK((!comp.table(c1).empty()) == firstHasColor0);
    }
}

TEST_CASE("comb: single growing component, empty residue") {
    std::vector<Structure> seq{pathGraph(3), pathGraph(5), pathGraph(7)};
    auto comb = combDecompose(seq, 1, {Rational(1)});
    REQUIRE(comb.columns.size() == 1);
    for (const auto& r : comb.residues) CHECK(r.size() == 0);
    for (size_t n = 0; n < seq.size(); ++n)
        CHECK(comb.columns[0][n].size() == seq[n].size());
}

TEST_CASE("comb: stars stay with stars, paths with paths") {
    std::vector<Structure> seq;
    for (int n = 6; n <= 10; ++n) {
        std::vector<std::pair<int, int>> edges;
        for (int i = 1; i < n; ++i) edges.emplace_back(0, i);
        for (int i = 0; i + 1 < n; ++i) edges.emplace_back(n + i, n + i + 1);
        seq.push_back(Structure::graph(2 * n, edges));
    }
    auto comb = combDecompose(seq, 2, {Rational(1, 2), Rational(1, 2)});
    REQUIRE(comb.columns.size() == 2);
    auto isStar = [](const Structure& s) {
        int maxDeg = 0;
        for (int v = 0; v < s.size(); ++v)
            maxDeg = std::max(maxDeg, static_cast<int>(s.adjacency()[v].size()));
        return maxDeg >= 3;
    };
    for (const auto& column : comb.columns) {
        bool first = isStar(column[0]);
        for (const auto& comp : column) CHECK(isStar(comp) == first);
    }
}

TEST_CASE("comb: degenerate empty limit spectrum sends everything to residue") {
    std::vector<Structure> seq{emptyGraph(3), emptyGraph(4)};
    auto comb = combDecompose(seq, 1, {});
    CHECK(comb.columns.empty());
    CHECK(comb.residues[0].size() == 3);
    CHECK(comb.residues[1].size() == 4);
}

TEST_CASE("ball statistics: C_9 at radius 1 is one type") {
    auto stats = ballStatistics(cycleGraph(9), 1);
    REQUIRE(stats.size() == 1);
    CHECK(stats[0].second == Rational(1));
    CHECK(stats[0].first.size == 3); // P_3 rooted at the center
}

TEST_CASE("ball statistics: P_5 at radius 1 splits endpoints and inner vertices") {
    auto stats = ballStatistics(pathGraph(5), 1);
    REQUIRE(stats.size() == 2);
    Rational total(0);
    bool saw25 = false, saw35 = false;
    for (const auto& [type, freq] : stats) {
        total += freq;
        if (freq == Rational(2, 5)) saw25 = true;
        if (freq == Rational(3, 5)) saw35 = true;
    }
    CHECK(total == Rational(1));
    CHECK(saw25);
    CHECK(saw35);
}

TEST_CASE("ball statistics: K_1 at any radius") {
    for (int r = 0; r <= 3; ++r) {
        auto stats = ballStatistics(completeGraph(1), r);
        REQUIRE(stats.size() == 1);
        CHECK(stats[0].second == Rational(1));
        CHECK(stats[0].first.size == 1);
    }
}

TEST_CASE("ball statistics: frequencies sum to 1 and are isomorphism invariant") {
    std::mt19937_64 rng(43);
    for (int iter = 0; iter < 10; ++iter) {
        Structure g = randomForestGraph(9, rng);
        auto stats = ballStatistics(g, 2);
        Rational total(0);
        for (const auto& [type, freq] : stats) total += freq;
        CHECK(total == Rational(1));

        std::vector<int> perm(g.size());
        std::iota(perm.begin(), perm.end(), 0);
        std::shuffle(perm.begin(), perm.end(), rng);
        auto stats2 = ballStatistics(relabel(g, perm), 2);
        REQUIRE(stats.size() == stats2.size());
        for (size_t i = 0; i < stats.size(); ++i) {
            CHECK(stats[i].first.key == stats2[i].first.key);
            CHECK(stats[i].second == stats2[i].second);
        }
    }
}
