#pragma once

#include <numeric>
#include <random>
#include <vector>

#include "folim/formula.hpp"
#include "folim/structure.hpp"
#include "folim/tree.hpp"

namespace folim::testing {

inline Structure completeGraph(int n) {
    std::vector<std::pair<int, int>> edges;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) edges.emplace_back(i, j);
    return Structure::graph(n, edges);
}

inline Structure pathGraph(int n) {
    std::vector<std::pair<int, int>> edges;
    for (int i = 0; i + 1 < n; ++i) edges.emplace_back(i, i + 1);
    return Structure::graph(n, edges);
}

inline Structure cycleGraph(int n) {
    std::vector<std::pair<int, int>> edges;
    for (int i = 0; i < n; ++i) edges.emplace_back(i, (i + 1) % n);
    return Structure::graph(n, edges);
}

inline Structure emptyGraph(int n) { return Structure::graph(n, {}); }

/// Star with `leaves` leaves; vertex 0 is the center.
inline Structure starGraph(int leaves) {
    std::vector<std::pair<int, int>> edges;
    for (int i = 1; i <= leaves; ++i) edges.emplace_back(0, i);
    return Structure::graph(leaves + 1, edges);
}

inline Structure randomGraph(int n, double p, std::mt19937_64& rng) {
    std::bernoulli_distribution coin(p);
    std::vector<std::pair<int, int>> edges;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (coin(rng)) edges.emplace_back(i, j);
    return Structure::graph(n, edges);
}

/// Uniform random forest on n vertices (each non-first vertex attaches to an
/// earlier vertex or stays isolated), as a plain graph.
inline Structure randomForestGraph(int n, std::mt19937_64& rng) {
    std::vector<std::pair<int, int>> edges;
    for (int v = 1; v < n; ++v) {
        std::uniform_int_distribution<int> pick(-1, v - 1);
        int u = pick(rng);
        if (u >= 0) edges.emplace_back(u, v);
    }
    return Structure::graph(n, edges);
}

/// Random colored rooted tree: every non-root vertex picks a parent among
/// earlier vertices whose height stays below the bound.
inline RootedTree randomTree(int n, int heightBound, int colors, std::mt19937_64& rng) {
    std::vector<int> parent(n, 0), color(n, 0), height(n, 1);
    parent[0] = 0;
    std::uniform_int_distribution<int> pickColor(0, colors - 1);
    color[0] = pickColor(rng);
    for (int v = 1; v < n; ++v) {
        std::vector<int> ok;
        for (int u = 0; u < v; ++u)
            if (height[u] < heightBound) ok.push_back(u);
        std::uniform_int_distribution<size_t> pick(0, ok.size() - 1);
        parent[v] = ok[pick(rng)];
        height[v] = height[parent[v]] + 1;
        color[v] = pickColor(rng);
    }
    return RootedTree(std::move(parent), std::move(color), heightBound);
}

/// Deterministic relabeling of a structure by a permutation (sanity checks
/// of isomorphism invariance).
inline Structure relabel(const Structure& s, const std::vector<int>& perm) {
    Structure out(s.signature(), s.size());
    for (int r = 0; r < s.signature().size(); ++r)
        for (auto tup : s.table(r)) {
            for (int& v : tup) v = perm[v];
            out.addTuple(r, tup);
        }
    out.freeze();
    return out;
}

// ---------------------------------------------------------------------------
// Independent oracles (kept deliberately naive).

/// Union-find component count and sizes.
struct UnionFind {
    std::vector<int> up;
    explicit UnionFind(int n) : up(n) { std::iota(up.begin(), up.end(), 0); }
    int find(int v) { return up[v] == v ? v : up[v] = find(up[v]); }
    void join(int a, int b) { up[find(a)] = find(b); }
};

inline std::vector<int> oracleComponentSizes(const Structure& s) {
    UnionFind uf(s.size());
    for (int r = 0; r < s.signature().size(); ++r) {
        if (s.signature().at(r).arity < 2) continue;
        for (const auto& tup : s.table(r))
            for (size_t i = 1; i < tup.size(); ++i) uf.join(tup[0], tup[i]);
    }
    std::vector<int> count(s.size(), 0);
    for (int v = 0; v < s.size(); ++v) ++count[uf.find(v)];
    std::vector<int> sizes;
    for (int v = 0; v < s.size(); ++v)
        if (count[v] > 0) sizes.push_back(count[v]);
    std::sort(sizes.begin(), sizes.end(), std::greater<int>());
    return sizes;
}

/// Plain recursive EF game search without memoization or pruning tricks;
/// independent of the library implementation.
inline bool oracleDuplicatorWins(const Structure& a, std::vector<int> as,
                                 const Structure& b, std::vector<int> bs, int rounds) {
    // partial isomorphism check over all relations and equalities
    for (size_t i = 0; i < as.size(); ++i)
        for (size_t j = 0; j < as.size(); ++j)
            if ((as[i] == as[j]) != (bs[i] == bs[j])) return false;
    for (int r = 0; r < a.signature().size(); ++r) {
        int arity = a.signature().at(r).arity;
        std::vector<int> idx(arity, 0);
        if (as.empty()) continue;
        while (true) {
            std::vector<int> ta(arity), tb(arity);
            for (int i = 0; i < arity; ++i) {
                ta[i] = as[idx[i]];
                tb[i] = bs[idx[i]];
            }
            if (a.holds(r, ta) != b.holds(r, tb)) return false;
            int i = arity - 1;
            while (i >= 0 && idx[i] == static_cast<int>(as.size()) - 1) idx[i--] = 0;
            if (i < 0) break;
            ++idx[i];
        }
    }
    if (rounds == 0) return true;
    for (int x = 0; x < a.size(); ++x) {
        bool ok = false;
        for (int y = 0; y < b.size() && !ok; ++y) {
            auto as2 = as, bs2 = bs;
            as2.push_back(x);
            bs2.push_back(y);
            if (oracleDuplicatorWins(a, as2, b, bs2, rounds - 1)) ok = true;
        }
        if (!ok) return false;
    }
    for (int y = 0; y < b.size(); ++y) {
        bool ok = false;
        for (int x = 0; x < a.size() && !ok; ++x) {
            auto as2 = as, bs2 = bs;
            as2.push_back(x);
            bs2.push_back(y);
            if (oracleDuplicatorWins(a, as2, b, bs2, rounds - 1)) ok = true;
        }
        if (!ok) return false;
    }
    return true;
}

} // namespace folim::testing
