#include "folim/eval.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

namespace folim {

namespace {

void requireEnv(const Formula& f, const std::vector<int>& assignment, int n) {
    for (int v : f.freeVars()) {
        if (v > static_cast<int>(assignment.size()))
            throw PreconditionError("satisfies: unassigned free variable x" + std::to_string(v));
        int val = assignment[v - 1];
        if (val < 0 || val >= n)
            throw PreconditionError("satisfies: assignment out of domain");
    }
}

} // namespace

bool Evaluator::satisfies(const Formula& f, const std::vector<int>& assignment) {
    requireEnv(f, assignment, s_->size());
    std::vector<int> env = assignment;
    int needed = 0;
    // Bound variables may have indices above the assignment length.
    std::vector<const FormulaNode*> stack{f.node().get()};
    while (!stack.empty()) {
        const FormulaNode* n = stack.back();
        stack.pop_back();
        if (n->kind == NodeKind::Exists || n->kind == NodeKind::Forall)
            needed = std::max(needed, n->qvar);
        for (int v : n->vars) needed = std::max(needed, v);
        if (n->left) stack.push_back(n->left.get());
        if (n->right) stack.push_back(n->right.get());
    }
    if (static_cast<int>(env.size()) < needed) env.resize(needed, 0);
    return eval(f.node().get(), env);
}

bool Evaluator::eval(const FormulaNode* n, std::vector<int>& env) {
    switch (n->kind) {
    case NodeKind::True: return true;
    case NodeKind::False: return false;
    case NodeKind::Eq: return env[n->vars[0] - 1] == env[n->vars[1] - 1];
    case NodeKind::Atom: {
        std::vector<int> tup(n->vars.size());
        for (size_t i = 0; i < n->vars.size(); ++i) tup[i] = env[n->vars[i] - 1];
        return s_->holds(s_->signature().requireIndex(n->relation), tup);
    }
    case NodeKind::Not: return !eval(n->left.get(), env);
    case NodeKind::And: return eval(n->left.get(), env) && eval(n->right.get(), env);
    case NodeKind::Or: return eval(n->left.get(), env) || eval(n->right.get(), env);
    case NodeKind::Implies: return !eval(n->left.get(), env) || eval(n->right.get(), env);
    case NodeKind::Iff: return eval(n->left.get(), env) == eval(n->right.get(), env);
    case NodeKind::Exists:
    case NodeKind::Forall: {
        const std::set<int>& fv = nodeFreeVars(n);
        std::string key;
        key.reserve(24 + fv.size() * 6);
        key += std::to_string(reinterpret_cast<std::uintptr_t>(n));
        for (int v : fv) {
            key += ',';
            key += std::to_string(env[v - 1]);
        }
        auto it = memo_.find(key);
        if (it != memo_.end()) return it->second;

        bool isExists = n->kind == NodeKind::Exists;
        int var = n->qvar;
        int saved = env[var - 1];
        bool result = !isExists;
        for (int val = 0; val < s_->size(); ++val) {
            env[var - 1] = val;
            bool sub = eval(n->left.get(), env);
            if (isExists && sub) { result = true; break; }
            if (!isExists && !sub) { result = false; break; }
        }
        env[var - 1] = saved;
        memo_.emplace(std::move(key), result);
        return result;
    }
    }
    throw PreconditionError("eval: bad node");
}

bool satisfies(const Structure& a, const Formula& f, const std::vector<int>& assignment) {
    Evaluator ev(a);
    return ev.satisfies(f, assignment);
}

std::vector<std::vector<int>> omega(const Structure& a, const Formula& f, int p) {
    if (a.empty()) throw PreconditionError("omega: empty structure");
    if (p < f.rank())
        throw PreconditionError("omega: p < rank(formula)");
    Evaluator ev(a);
    std::vector<std::vector<int>> out;
    std::vector<int> tuple(p, 0);
    long long total = 1;
    for (int i = 0; i < p; ++i) {
        total *= a.size();
        if (total > 100'000'000LL) throw PreconditionError("omega: n^p too large to enumerate");
    }
    for (long long idx = 0; idx < total; ++idx) {
        long long t = idx;
        for (int i = p - 1; i >= 0; --i) {
            tuple[i] = static_cast<int>(t % a.size());
            t /= a.size();
        }
        if (ev.satisfies(f, tuple)) out.push_back(tuple);
    }
    return out;
}

Rational stonePairing(const Structure& a, const Formula& f, int p) {
    if (a.empty()) throw PreconditionError("stonePairing: empty structure");
    int r = f.rank();
    if (p < r) throw PreconditionError("stonePairing: p < rank(formula)");
    // Satisfaction only reads the first rank(f) coordinates, so the count
    // over [n]^rank scales to [n]^p by a power of n that cancels.
    Evaluator ev(a);
    long long count = 0;
    long long total = 1;
    for (int i = 0; i < r; ++i) {
        total *= a.size();
        if (total > 100'000'000LL)
            throw PreconditionError("stonePairing: n^rank too large to enumerate");
    }
    std::vector<int> tuple(r, 0);
    for (long long idx = 0; idx < total; ++idx) {
        long long t = idx;
        for (int i = r - 1; i >= 0; --i) {
            tuple[i] = static_cast<int>(t % a.size());
            t /= a.size();
        }
        if (ev.satisfies(f, tuple)) ++count;
    }
    return Rational(count, 1) / Rational::power(a.size(), r);
}

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

/// Uniform draw from [0, n) determined by (seed, sample, coordinate):
/// successive splitmix64 hashes with an inner rejection counter.
int uniformCoord(std::uint64_t seed, long long sample, int coord, int n) {
    std::uint64_t bound = (~0ULL / static_cast<std::uint64_t>(n)) * static_cast<std::uint64_t>(n);
    for (std::uint64_t k = 0;; ++k) {
        std::uint64_t h = splitmix64(seed ^ splitmix64(
            static_cast<std::uint64_t>(sample) * 0x100000001b3ULL +
            static_cast<std::uint64_t>(coord) * 0x9e3779b97f4a7c15ULL + k));
        if (h < bound) return static_cast<int>(h % static_cast<std::uint64_t>(n));
    }
}

} // namespace

PairingEstimate stonePairingSampled(const Structure& a, const Formula& f, int p,
                                    long long samples, double delta, std::uint64_t seed) {
    if (a.empty()) throw PreconditionError("stonePairingSampled: empty structure");
    if (samples < 1) throw PreconditionError("stonePairingSampled: samples >= 1 required");
    if (p < f.rank()) throw PreconditionError("stonePairingSampled: p < rank(formula)");
    Evaluator ev(a);
    long long hits = 0;
    std::vector<int> tuple(p, 0);
    for (long long j = 0; j < samples; ++j) {
        for (int i = 0; i < p; ++i) tuple[i] = uniformCoord(seed, j, i, a.size());
        if (ev.satisfies(f, tuple)) ++hits;
    }
    PairingEstimate est;
    est.pointEstimate = static_cast<double>(hits) / static_cast<double>(samples);
    est.sampleCount = samples;
    est.confidenceRadius = std::sqrt(std::log(2.0 / delta) / (2.0 * static_cast<double>(samples)));
    est.seed = seed;
    return est;
}

long long homCount(const Structure& f, const Structure& g) {
    if (f.empty()) throw PreconditionError("homCount: empty pattern");
    int k = f.size(), n = g.size();
    if (n == 0) return 0;
    const auto& fadj = f.adjacency();
    std::vector<std::pair<int, int>> edges;
    for (int u = 0; u < k; ++u)
        for (int v : fadj[u])
            if (u < v) edges.emplace_back(u, v);
    long long count = 0;
    std::vector<int> map(k, 0);
    // Backtracking over partial maps; an edge is checked as soon as both
    // endpoints are placed.
    std::vector<std::vector<std::pair<int, int>>> edgesAt(k);
    for (auto [u, v] : edges) edgesAt[std::max(u, v)].emplace_back(u, v);
    std::function<void(int)> rec = [&](int pos) {
        if (pos == k) { ++count; return; }
        for (int img = 0; img < n; ++img) {
            map[pos] = img;
            bool ok = true;
            for (auto [u, v] : edgesAt[pos])
                if (!g.adjacent(map[u], map[v])) { ok = false; break; }
            if (ok) rec(pos + 1);
        }
    };
    rec(0);
    return count;
}

Rational homDensity(const Structure& f, const Structure& g) {
    if (g.empty()) throw PreconditionError("homDensity: empty target");
    return Rational(homCount(f, g), 1) / Rational::power(g.size(), f.size());
}

Rational inducedDensity(const Structure& f, const Structure& g) {
    if (g.empty()) throw PreconditionError("inducedDensity: empty target");
    if (f.empty()) throw PreconditionError("inducedDensity: empty pattern");
    int k = f.size(), n = g.size();
    long long count = 0;
    std::vector<int> map(k, 0);
    std::vector<bool> used(n, false);
    std::function<void(int)> rec = [&](int pos) {
        if (pos == k) { ++count; return; }
        for (int img = 0; img < n; ++img) {
            if (used[img]) continue;
            bool ok = true;
            for (int j = 0; j < pos && ok; ++j)
                if (f.adjacent(j, pos) != g.adjacent(map[j], img)) ok = false;
            if (!ok) continue;
            used[img] = true;
            map[pos] = img;
            rec(pos + 1);
            used[img] = false;
        }
    };
    rec(0);
    return Rational(count, 1) / Rational::power(n, k);
}

} // namespace folim
