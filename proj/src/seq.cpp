#include "folim/seq.hpp"

#include <algorithm>
#include <numeric>
#include <set>

namespace folim {

Trajectory trajectory(const std::vector<Structure>& seq,
                      const std::vector<Formula>& formulas,
                      const std::vector<int>& arities) {
    if (formulas.size() != arities.size())
        throw PreconditionError("trajectory: formulas/arities length mismatch");
    Trajectory t;
    t.formulas = formulas;
    t.arities = arities;
    for (const auto& a : seq) {
        if (a.empty()) throw PreconditionError("trajectory: empty structure in sequence");
        if (!seq.empty() && !(a.signature() == seq.front().signature()))
            throw PreconditionError("trajectory: signature mismatch in sequence");
        std::vector<Rational> row;
        for (size_t j = 0; j < formulas.size(); ++j)
            row.push_back(stonePairing(a, formulas[j], arities[j]));
        t.values.push_back(std::move(row));
    }
    return t;
}

std::vector<Rational> spectrum(const Structure& a) {
    if (a.empty()) throw PreconditionError("spectrum: empty structure");
    auto comps = a.connectedComponents();
    std::vector<Rational> masses;
    for (const auto& c : comps)
        masses.push_back(Rational(static_cast<long long>(c.size()), a.size()));
    std::sort(masses.begin(), masses.end(), std::greater<Rational>());
    return masses;
}

SpectrumCheck spectrumNormCheck(const Structure& a, int k) {
    if (a.empty()) throw PreconditionError("spectrumNormCheck: empty structure");
    if (k < 1) throw PreconditionError("spectrumNormCheck: k >= 1 required");
    SpectrumCheck out;
    out.lhs = Rational(0);
    for (const auto& m : spectrum(a)) out.lhs += m.pow(k + 1);

    // Materialize the component relation and evaluate the pairing for real.
    std::vector<Relation> rels = a.signature().relations();
    rels.push_back({"comp", 2});
    Signature sig(rels, a.signature().colorCount(), a.signature().hasRoot(),
                  a.signature().hasPrincipal());
    Structure augmented(sig, a.size());
    for (int r = 0; r < a.signature().size(); ++r)
        for (const auto& tup : a.table(r)) augmented.addTuple(r, tup);
    int compIdx = sig.requireIndex("comp");
    for (const auto& comp : a.connectedComponents())
        for (int u : comp)
            for (int v : comp) augmented.addTuple(compIdx, {u, v});
    augmented.freeze();

    std::vector<Formula> atoms;
    for (int i = 1; i <= k; ++i) atoms.push_back(Formula::atom("comp", {i, i + 1}));
    out.rhs = stonePairing(augmented, Formula::conjunction(atoms), k + 1);
    return out;
}

namespace {

Rational spectrumEntry(const std::vector<Rational>& sp, size_t i) {
    return i < sp.size() ? sp[i] : Rational(0);
}

} // namespace

std::vector<int> clip(const std::vector<std::vector<Rational>>& spectra,
                      const std::vector<Rational>& limitSpectrum) {
    if (spectra.empty()) throw PreconditionError("clip: empty sequence");
    int support = 0;
    while (support < static_cast<int>(limitSpectrum.size()) &&
           !limitSpectrum[support].isZero())
        ++support;
    int n = static_cast<int>(spectra.size());
    // tailDeviation[n'][M] = sum_{i<=M} |sp_{n',i} - sp_i| (1-based M).
    std::vector<std::vector<Rational>> dev(n, std::vector<Rational>(support + 1, Rational(0)));
    for (int row = 0; row < n; ++row)
        for (int M = 1; M <= support; ++M)
            dev[row][M] = dev[row][M - 1] +
                          (spectrumEntry(spectra[row], M - 1) - limitSpectrum[M - 1]).abs();
    std::vector<Rational> tail(support + 1, Rational(0));
    for (int M = support - 1; M >= 0; --M) tail[M] = tail[M + 1] + limitSpectrum[M];

    // suffixMax[row][M] = max over rows' >= row of dev[row'][M].
    std::vector<std::vector<Rational>> suffixMax = dev;
    for (int row = n - 2; row >= 0; --row)
        for (int M = 0; M <= support; ++M)
            suffixMax[row][M] = std::max(suffixMax[row][M], suffixMax[row + 1][M]);

    std::vector<int> cutoffs(n, 0);
    for (int row = 0; row < n; ++row) {
        int best = 0;
        for (int M = 0; M <= support; ++M)
            if (suffixMax[row][M] <= tail[M]) best = M;
        cutoffs[row] = best;
    }
    return cutoffs;
}

std::vector<Rational> unaryStatistics(const Structure& a, int r) {
    std::vector<Rational> stats;
    if (a.empty()) {
        // Empty components pad a comb group; give them an out-of-band marker.
        stats.push_back(Rational(-1));
        return stats;
    }
    const auto& adj = a.signature().indexOf("adj")
                          ? a.adjacency()
                          : a.gaifmanAdjacency();
    for (int d = 1; d <= r + 1; ++d) {
        long long count = 0;
        for (int v = 0; v < a.size(); ++v)
            if (static_cast<int>(adj[v].size()) >= d) ++count;
        stats.push_back(Rational(count, a.size()));
    }
    for (int rel = 0; rel < a.signature().size(); ++rel) {
        if (a.signature().at(rel).arity != 1) continue;
        stats.push_back(Rational(static_cast<long long>(a.table(rel).size()), a.size()));
    }
    return stats;
}

namespace {

Rational statisticDiscrepancy(const std::vector<Rational>& x, const std::vector<Rational>& y) {
    Rational d(0);
    size_t m = std::max(x.size(), y.size());
    for (size_t i = 0; i < m; ++i) {
        Rational xi = i < x.size() ? x[i] : Rational(0);
        Rational yi = i < y.size() ? y[i] : Rational(0);
        d += (xi - yi).abs();
    }
    return d;
}

std::string statisticKey(const std::vector<Rational>& x) {
    std::string k;
    for (const auto& v : x) {
        k += v.str();
        k += ';';
    }
    return k;
}

/// Components ordered by (size desc, member list lex asc); deterministic.
std::vector<Structure> sortedComponents(const Structure& a) {
    auto comps = a.connectedComponents();
    std::sort(comps.begin(), comps.end(), [](const auto& x, const auto& y) {
        if (x.size() != y.size()) return x.size() > y.size();
        return x < y;
    });
    std::vector<Structure> out;
    for (const auto& c : comps) out.push_back(a.inducedSubstructure(c));
    return out;
}

Structure unionOf(const Signature& sig, const std::vector<Structure>& parts) {
    int total = 0;
    for (const auto& p : parts) total += p.size();
    Structure out(sig, total);
    int offset = 0;
    for (const auto& p : parts) {
        for (int r = 0; r < sig.size(); ++r)
            for (auto tup : p.table(r)) {
                for (int& v : tup) v += offset;
                out.addTuple(r, tup);
            }
        offset += p.size();
    }
    out.freeze();
    return out;
}

} // namespace

CombDecomposition combDecompose(const std::vector<Structure>& seq, int r,
                                const std::vector<Rational>& limitSpectrum) {
    if (r < 1) throw PreconditionError("combDecompose: r >= 1 required");
    CombDecomposition out;
    if (seq.empty()) return out;
    const Signature& sig = seq.front().signature();

    int support = 0;
    while (support < static_cast<int>(limitSpectrum.size()) &&
           !limitSpectrum[support].isZero())
        ++support;

    std::vector<std::vector<Rational>> spectra;
    for (const auto& a : seq) spectra.push_back(spectrum(a));
    out.clipFunction = clip(spectra, limitSpectrum);
    out.columnMasses.assign(limitSpectrum.begin(), limitSpectrum.begin() + support);
    out.columns.assign(support, {});

    // Equal-mass groups of retained indices.
    std::vector<std::pair<int, int>> groups; // [begin, end)
    for (int i = 0; i < support;) {
        int j = i;
        while (j < support && limitSpectrum[j] == limitSpectrum[i]) ++j;
        groups.emplace_back(i, j);
        i = j;
    }

    std::vector<std::vector<Rational>> prevStats(support);
    for (size_t n = 0; n < seq.size(); ++n) {
        auto comps = sortedComponents(seq[n]);
        while (static_cast<int>(comps.size()) < support)
            comps.push_back(Structure(sig, 0));

        for (auto [b, e] : groups) {
            int k = e - b;
            std::vector<std::vector<Rational>> stats(k);
            for (int j = 0; j < k; ++j) stats[j] = unaryStatistics(comps[b + j], r);
            std::vector<int> pick(k, -1); // column slot -> candidate
            if (n == 0) {
                // First row: order candidates by statistic for determinism.
                std::vector<int> order(k);
                std::iota(order.begin(), order.end(), 0);
                std::sort(order.begin(), order.end(), [&](int x, int y) {
                    return statisticKey(stats[x]) < statisticKey(stats[y]);
                });
                for (int j = 0; j < k; ++j) pick[j] = order[j];
            } else {
                std::vector<bool> colDone(k, false), candDone(k, false);
                for (int step = 0; step < k; ++step) {
                    int bestCol = -1, bestCand = -1;
                    Rational bestD(0);
                    std::string bestKey;
                    for (int c = 0; c < k; ++c) {
                        if (colDone[c]) continue;
                        for (int j = 0; j < k; ++j) {
                            if (candDone[j]) continue;
                            Rational d = statisticDiscrepancy(prevStats[b + c], stats[j]);
                            std::string key = statisticKey(stats[j]);
                            bool better = bestCol < 0 || d < bestD ||
                                          (d == bestD && key < bestKey) ||
                                          (d == bestD && key == bestKey && c < bestCol);
                            if (better) {
                                bestCol = c;
                                bestCand = j;
                                bestD = d;
                                bestKey = key;
                            }
                        }
                    }
                    pick[bestCol] = bestCand;
                    colDone[bestCol] = true;
                    candDone[bestCand] = true;
                }
            }
            for (int c = 0; c < k; ++c) {
                out.columns[b + c].push_back(comps[b + pick[c]]);
                prevStats[b + c] = stats[pick[c]];
            }
        }

        std::vector<Structure> rest(comps.begin() + support, comps.end());
        out.residues.push_back(unionOf(sig, rest));
    }
    return out;
}

namespace {

/// Exact canonical key of a rooted structure: vertices are partitioned by
/// the invariant (distance from root, unary relations, degree); the key is
/// the minimum signature over all orderings that enumerate the classes in
/// sorted order and permute freely inside each class.
class BallCanonicalizer {
public:
    BallCanonicalizer(const Structure& s, int root) : s_(s) {
        int n = s.size();
        const auto& adj = s.gaifmanAdjacency();
        std::vector<int> dist(n, -1);
        dist[root] = 0;
        std::vector<int> queue{root};
        size_t qi = 0;
        while (qi < queue.size()) {
            int v = queue[qi++];
            for (int w : adj[v])
                if (dist[w] == -1) {
                    dist[w] = dist[v] + 1;
                    queue.push_back(w);
                }
        }
        std::map<std::string, std::vector<int>> classes;
        for (int v = 0; v < n; ++v) {
            std::string key = std::to_string(dist[v]) + "/" +
                              std::to_string(adj[v].size());
            for (int rel = 0; rel < s.signature().size(); ++rel)
                if (s.signature().at(rel).arity == 1)
                    key += s.holds(rel, {v}) ? '1' : '0';
            classes[key].push_back(v);
        }
        long long perms = 1;
        for (auto& [key, verts] : classes) {
            for (int i = 2; i <= static_cast<int>(verts.size()); ++i) {
                perms *= i;
                if (perms > 1'000'000)
                    throw PreconditionError(
                        "ballStatistics: ball too large to canonicalize exactly");
            }
            classMeta_ += key + "#" + std::to_string(verts.size()) + ";";
            classes_.push_back(verts);
        }
    }

    std::string canonicalKey() {
        best_.clear();
        std::vector<int> order;
        rec(0, order);
        return classMeta_ + "|" + best_;
    }

private:
    void rec(size_t classIdx, std::vector<int>& order) {
        if (classIdx == classes_.size()) {
            std::string sig = signatureOf(order);
            if (best_.empty() || sig < best_) best_ = sig;
            return;
        }
        std::vector<int> verts = classes_[classIdx];
        std::sort(verts.begin(), verts.end());
        do {
            size_t base = order.size();
            order.insert(order.end(), verts.begin(), verts.end());
            rec(classIdx + 1, order);
            order.resize(base);
        } while (std::next_permutation(verts.begin(), verts.end()));
    }

    std::string signatureOf(const std::vector<int>& order) const {
        int n = static_cast<int>(order.size());
        std::string sig;
        sig.reserve(n * n / 2 + 2 * n);
        for (int rel = 0; rel < s_.signature().size(); ++rel)
            if (s_.signature().at(rel).arity == 1)
                for (int i = 0; i < n; ++i)
                    sig += s_.holds(rel, {order[i]}) ? '1' : '0';
        const auto& adj = s_.gaifmanAdjacency();
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) {
                bool e = std::binary_search(adj[order[i]].begin(), adj[order[i]].end(),
                                            order[j]);
                sig += e ? '1' : '0';
            }
        return sig;
    }

    const Structure& s_;
    std::vector<std::vector<int>> classes_;
    std::string classMeta_;
    std::string best_;
};

} // namespace

std::vector<std::pair<BallType, Rational>> ballStatistics(const Structure& g, int r) {
    if (g.empty()) throw PreconditionError("ballStatistics: empty structure");
    if (r < 0) throw PreconditionError("ballStatistics: radius >= 0 required");
    const auto& adj = g.gaifmanAdjacency();
    std::map<std::string, std::pair<int, long long>> counts; // key -> (size, count)
    for (int v = 0; v < g.size(); ++v) {
        std::vector<int> dist(g.size(), -1);
        dist[v] = 0;
        std::vector<int> ball{v};
        size_t qi = 0;
        while (qi < ball.size()) {
            int u = ball[qi++];
            if (dist[u] == r) continue;
            for (int w : adj[u])
                if (dist[w] == -1) {
                    dist[w] = dist[u] + 1;
                    ball.push_back(w);
                }
        }
        std::sort(ball.begin(), ball.end());
        int rootIdx = static_cast<int>(
            std::lower_bound(ball.begin(), ball.end(), v) - ball.begin());
        Structure induced = g.inducedSubstructure(ball);
        BallCanonicalizer canon(induced, rootIdx);
        std::string key = std::to_string(ball.size()) + ":" + canon.canonicalKey();
        auto [it, fresh] = counts.try_emplace(key, static_cast<int>(ball.size()), 0LL);
        ++it->second.second;
    }
    std::vector<std::pair<BallType, Rational>> out;
    for (const auto& [key, entry] : counts)
        out.push_back({BallType{key, entry.first},
                       Rational(entry.second, g.size())});
    return out;
}

} // namespace folim
