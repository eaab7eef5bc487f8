#include "folim/treestat.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

namespace folim {

int TreeStatistic::typeId(const CapType& t) const {
    for (size_t i = 0; i < types.size(); ++i)
        if (types[i] == t) return static_cast<int>(i);
    return -1;
}

int TreeStatistic::addType(const CapType& t) {
    int id = typeId(t);
    if (id >= 0) return id;
    types.push_back(t);
    return static_cast<int>(types.size()) - 1;
}

int TreeStatistic::tupleIndex(const std::vector<int>& path) const {
    for (size_t i = 0; i < tuples.size(); ++i)
        if (tuples[i] == path) return static_cast<int>(i);
    return -1;
}

void TreeStatistic::sortCanonically() {
    std::vector<int> order(tuples.size());
    std::iota(order.begin(), order.end(), 0);
    auto lessTuple = [this](int a, int b) {
        if (tuples[a].size() != tuples[b].size())
            return tuples[a].size() < tuples[b].size();
        // Compare by type keys so the order does not depend on id assignment.
        for (size_t i = 0; i < tuples[a].size(); ++i) {
            const std::string& ka = types[tuples[a][i]].key();
            const std::string& kb = types[tuples[b][i]].key();
            if (ka != kb) return ka < kb;
        }
        return false;
    };
    std::sort(order.begin(), order.end(), lessTuple);
    std::vector<std::vector<int>> newTuples;
    std::vector<Rational> newMass;
    std::map<int, int> newW;
    std::vector<int> pos(tuples.size());
    for (size_t i = 0; i < order.size(); ++i) pos[order[i]] = static_cast<int>(i);
    for (int old : order) {
        newTuples.push_back(tuples[old]);
        newMass.push_back(mass[old]);
    }
    for (const auto& [idx, w] : wPrime) newW[pos[idx]] = w;
    tuples = std::move(newTuples);
    mass = std::move(newMass);
    wPrime = std::move(newW);
}

void TreeStatistic::validate() const {
    if (h < 1) throw PreconditionError("TreeStatistic: h >= 1 required");
    if (r < 1) throw PreconditionError("TreeStatistic: r >= 1 required");
    if (cap != r + h) throw PreconditionError("TreeStatistic: cap must equal r + h");
    if (tuples.size() != mass.size())
        throw PreconditionError("TreeStatistic: tuples/mass length mismatch");
    if (tuples.empty()) throw PreconditionError("TreeStatistic: no tuples");

    Rational total(0);
    int rootCount = 0;
    std::set<std::vector<int>> seen;
    for (size_t i = 0; i < tuples.size(); ++i) {
        const auto& path = tuples[i];
        if (path.empty() || static_cast<int>(path.size()) > h)
            throw PreconditionError("TreeStatistic: tuple length out of range");
        for (int id : path)
            if (id < 0 || id >= static_cast<int>(types.size()))
                throw PreconditionError("TreeStatistic: bad type id in tuple");
        if (!seen.insert(path).second)
            throw PreconditionError("TreeStatistic: duplicate tuple");
        if (mass[i] < Rational(0))
            throw PreconditionError("TreeStatistic: negative mass");
        total += mass[i];
        if (path.size() == 1) ++rootCount;
    }
    if (rootCount != 1)
        throw PreconditionError("TreeStatistic: purity violated (need exactly one root tuple)");
    if (total != Rational(1))
        throw PreconditionError("TreeStatistic: masses must sum to 1, got " + total.str());
    for (size_t i = 1; i < tuples.size(); ++i)
        if (tuples[i].size() < tuples[i - 1].size())
            throw PreconditionError("TreeStatistic: tuples not sorted by length");
    for (size_t i = 0; i < tuples.size(); ++i) {
        if (tuples[i].size() < 2) continue;
        std::vector<int> prefix(tuples[i].begin(), tuples[i].end() - 1);
        if (!seen.count(prefix))
            throw PreconditionError("TreeStatistic: extension without parent tuple");
        auto it = wPrime.find(static_cast<int>(i));
        if (it == wPrime.end())
            throw PreconditionError("TreeStatistic: missing w' for an extension");
        if (it->second < 0 || it->second > cap)
            throw PreconditionError("TreeStatistic: w' out of range 0..cap");
    }
}

std::vector<std::string> TreeStatistic::coherenceIssues() const {
    std::vector<std::string> issues;
    for (size_t i = 0; i < tuples.size(); ++i) {
        const CapType& last = types[tuples[i].back()];
        // Stored extensions of tuple i with w' >= 1.
        std::map<std::string, int> extCounts;
        for (size_t j = 0; j < tuples.size(); ++j) {
            if (tuples[j].size() != tuples[i].size() + 1) continue;
            if (!std::equal(tuples[i].begin(), tuples[i].end(), tuples[j].begin())) continue;
            int w = wPrime.count(static_cast<int>(j)) ? wPrime.at(static_cast<int>(j)) : 0;
            if (w >= 1) extCounts[types[tuples[j].back()].key()] = w;
        }
        std::map<std::string, int> typeCounts;
        for (const auto& [child, cnt] : last.children()) typeCounts[child.key()] = cnt;
        if (extCounts != typeCounts)
            issues.push_back("tuple " + std::to_string(i) +
                             ": children of its type disagree with stored extensions/w'");
    }
    return issues;
}

Rational TreeStatistic::subtreeMass(int tupleIdx) const {
    const auto& base = tuples[tupleIdx];
    Rational total(0);
    for (size_t j = 0; j < tuples.size(); ++j) {
        if (tuples[j].size() < base.size()) continue;
        if (std::equal(base.begin(), base.end(), tuples[j].begin())) total += mass[j];
    }
    return total;
}

TreeStatistic statisticOfTree(const RootedTree& t, int r) {
    if (r < 1) throw PreconditionError("statisticOfTree: r >= 1 required");
    if (t.height() > t.heightBound())
        throw PreconditionError("statisticOfTree: tree exceeds its height bound");
    TreeStatistic stat;
    stat.h = t.heightBound();
    stat.r = r;
    stat.cap = r + stat.h;

    auto vertexTypes = capTypesOfAll(t, stat.cap);
    std::map<std::vector<int>, long long> counts;
    std::vector<std::vector<int>> vertexPaths(t.size());
    for (int v = 0; v < t.size(); ++v) {
        std::vector<int> path;
        for (int u : t.rootPath(v)) path.push_back(stat.addType(vertexTypes[u]));
        ++counts[path];
        vertexPaths[v] = std::move(path);
    }
    for (const auto& [path, count] : counts) {
        stat.tuples.push_back(path);
        stat.mass.push_back(Rational(count, t.size()));
    }
    // w' from the capped child multiplicities stored in the parent type.
    for (size_t i = 0; i < stat.tuples.size(); ++i) {
        const auto& path = stat.tuples[i];
        if (path.size() < 2) continue;
        const CapType& parentType = stat.types[path[path.size() - 2]];
        const CapType& childType = stat.types[path.back()];
        int w = 0;
        for (const auto& [child, cnt] : parentType.children())
            if (child == childType) w = cnt;
        stat.wPrime[static_cast<int>(i)] = w;
    }
    stat.sortCanonically();
    stat.validate();
    return stat;
}

std::vector<FmtpViolation> fmtpCheck(const TreeStatistic& stat) {
    stat.validate();
    std::vector<FmtpViolation> out;
    for (size_t i = 0; i < stat.tuples.size(); ++i) {
        if (stat.tuples[i].size() < 2) continue;
        std::vector<int> prefix(stat.tuples[i].begin(), stat.tuples[i].end() - 1);
        int parent = stat.tupleIndex(prefix);
        int w = stat.wPrime.at(static_cast<int>(i));
        const Rational& mParent = stat.mass[parent];
        const Rational& mChild = stat.mass[i];
        Rational wTimes = Rational(w) * mParent;
        if (w == 0 && mChild > Rational(0)) {
            out.push_back({static_cast<int>(i),
                           "w'=0 but extension has positive mass " + mChild.str()});
        } else if (mParent > Rational(0) && mChild > Rational(0) && w < stat.cap &&
                   mChild != wTimes) {
            out.push_back({static_cast<int>(i),
                           "mass " + mChild.str() + " != w' * parent mass = " + wTimes.str()});
        } else if (mParent > Rational(0) && w == stat.cap && mChild < wTimes) {
            out.push_back({static_cast<int>(i),
                           "mass " + mChild.str() + " < cap * parent mass = " + wTimes.str()});
        }
    }
    return out;
}

namespace {

long long floorTimes(const Rational& m, long long scale) {
    mpz_class num = m.raw().get_num() * mpz_class(std::to_string(scale));
    mpz_class q = num / m.raw().get_den(); // both nonnegative here
    if (!q.fits_slong_p())
        throw PreconditionError("buildTree: scale overflow");
    return q.get_si();
}

struct Plan {
    std::vector<long long> counts; // per tuple
    long long total = 0;
};

/// The four-case cardinality rule of the inverse construction, evaluated at
/// one internal scale value. Tuples must be sorted by length.
Plan cardinalities(const TreeStatistic& stat, long long scale) {
    Plan plan;
    plan.counts.assign(stat.tuples.size(), 0);
    for (size_t i = 0; i < stat.tuples.size(); ++i) {
        if (stat.tuples[i].size() == 1) {
            plan.counts[i] = 1; // the root is a single vertex
            continue;
        }
        std::vector<int> prefix(stat.tuples[i].begin(), stat.tuples[i].end() - 1);
        int parent = stat.tupleIndex(prefix);
        long long P = plan.counts[parent];
        int w = stat.wPrime.at(static_cast<int>(i));
        bool mParentPos = stat.mass[parent] > Rational(0);
        bool mChildPos = stat.mass[i] > Rational(0);
        if (!mParentPos && !mChildPos) {
            plan.counts[i] = static_cast<long long>(w) * P;
        } else if (mParentPos && !mChildPos) {
            plan.counts[i] = 0; // FMTP forces w'=0 here
        } else if (w < stat.cap) {
            // positive/positive with small w' (zero/positive cannot have w'<cap
            // under FMTP, which was checked before building)
            plan.counts[i] = static_cast<long long>(w) * P;
        } else {
            plan.counts[i] = std::max(static_cast<long long>(stat.cap) * P,
                                      floorTimes(stat.mass[i], scale));
        }
        if (P == 0 && plan.counts[i] > 0)
            throw PreconditionError(
                "buildTree: positive mass below an unrealizable parent tuple");
    }
    for (long long c : plan.counts) plan.total += c;
    return plan;
}

bool isGrowable(const TreeStatistic& stat) {
    for (size_t i = 0; i < stat.tuples.size(); ++i) {
        if (stat.tuples[i].size() < 2 || stat.mass[i].isZero()) continue;
        if (stat.wPrime.at(static_cast<int>(i)) == stat.cap) return true;
    }
    return false;
}

RootedTree materialize(const TreeStatistic& stat, const Plan& plan) {
    if (plan.total > 50'000'000)
        throw PreconditionError("buildTree: realization too large to materialize");
    int n = static_cast<int>(plan.total);
    std::vector<long long> firstVertex(stat.tuples.size(), 0);
    long long acc = 0;
    for (size_t i = 0; i < stat.tuples.size(); ++i) {
        firstVertex[i] = acc;
        acc += plan.counts[i];
    }
    std::vector<int> parent(n, 0), color(n, 0);
    for (size_t i = 0; i < stat.tuples.size(); ++i) {
        int col = stat.types[stat.tuples[i].back()].color();
        if (stat.tuples[i].size() == 1) {
            int root = static_cast<int>(firstVertex[i]);
            parent[root] = root;
            color[root] = col;
            continue;
        }
        std::vector<int> prefix(stat.tuples[i].begin(), stat.tuples[i].end() - 1);
        int par = stat.tupleIndex(prefix);
        long long P = plan.counts[par];
        for (long long j = 0; j < plan.counts[i]; ++j) {
            int v = static_cast<int>(firstVertex[i] + j);
            // Round-robin split: every parent receives an equal share,
            // remainders spread over the first parents.
            parent[v] = static_cast<int>(firstVertex[par] + (j % P));
            color[v] = col;
        }
    }
    return RootedTree(std::move(parent), std::move(color), stat.h);
}

BuildResult buildTreeImpl(const TreeStatistic& stat, long long N, bool flexibleSize) {
    if (N < 1) throw PreconditionError("buildTree: N below threshold (N >= 1 required)");
    stat.validate();
    // tuples[0] is the unique length-1 tuple after canonical sorting; a
    // realizable statistic gives its root positive mass.
    if (!flexibleSize && stat.mass[0].isZero())
        throw PreconditionError("buildTree: root tuple has zero mass (purity violated)");
    auto issues = stat.coherenceIssues();
    if (!issues.empty())
        throw PreconditionError("buildTree: inconsistent statistic: " + issues.front());
    auto violations = fmtpCheck(stat);
    if (!violations.empty())
        throw PreconditionError("buildTree: FMTP violation: " + violations.front().message);

    BuildResult res;
    long long C = 1;
    for (int i = 0; i < stat.h; ++i) C *= stat.cap;
    C *= static_cast<long long>(stat.tuples.size());
    res.constantC = C;

    long long scale = N;
    Plan plan = cardinalities(stat, scale);
    if (plan.total < N && isGrowable(stat)) {
        long long lo = scale, hi = scale;
        while (true) {
            hi *= 2;
            if (hi > (1LL << 50)) throw PreconditionError("buildTree: scale overflow");
            if (cardinalities(stat, hi).total >= N) break;
        }
        // The minimal reaching scale keeps the total within N+C: one scale
        // step moves the total by at most 2C/cap.
        while (lo + 1 < hi) {
            long long mid = lo + (hi - lo) / 2;
            if (cardinalities(stat, mid).total >= N) hi = mid; else lo = mid;
        }
        scale = hi;
        plan = cardinalities(stat, scale);
    }
    if (plan.total < N || plan.total > N + C) {
        if (!isGrowable(stat)) {
            res.warnings.push_back("statistic pins the realization size to " +
                                   std::to_string(plan.total) +
                                   "; the size window is degenerate");
        } else if (!flexibleSize) {
            throw PreconditionError("buildTree: could not realize size in [N, N+C]");
        }
    }

    res.usedScale = scale;
    res.tree = materialize(stat, plan);
    return res;
}

} // namespace

BuildResult buildTree(const TreeStatistic& stat, long long N) {
    return buildTreeImpl(stat, N, false);
}

Skeleton heavySkeleton(const TreeStatistic& stat, const Rational& alpha) {
    if (!(alpha > Rational(0) && alpha < Rational(1)))
        throw PreconditionError("heavySkeleton: 0 < alpha < 1 required");
    stat.validate();
    Skeleton skel;
    skel.types = stat.types;

    std::vector<Rational> cumulative(stat.tuples.size());
    for (size_t i = 0; i < stat.tuples.size(); ++i)
        cumulative[i] = stat.subtreeMass(static_cast<int>(i));

    // Tuples are sorted by length, so parents precede children.
    std::vector<int> skelIndex(stat.tuples.size(), -1);
    for (size_t i = 0; i < stat.tuples.size(); ++i) {
        if (stat.tuples[i].size() == 1) {
            skelIndex[i] = static_cast<int>(skel.nodes.size());
            skel.nodes.push_back(stat.tuples[i]);
            skel.parent.push_back(skelIndex[i]);
            skel.mass.push_back(cumulative[i]);
            continue;
        }
        std::vector<int> prefix(stat.tuples[i].begin(), stat.tuples[i].end() - 1);
        int parent = stat.tupleIndex(prefix);
        if (skelIndex[parent] < 0) continue; // parent not heavy
        if (cumulative[i] > alpha * cumulative[parent]) {
            skelIndex[i] = static_cast<int>(skel.nodes.size());
            skel.nodes.push_back(stat.tuples[i]);
            skel.parent.push_back(skelIndex[parent]);
            skel.mass.push_back(cumulative[i]);
        }
    }
    return skel;
}

namespace {

/// Largest-remainder apportionment of `total` over the weights.
std::vector<long long> apportion(long long total, const std::vector<Rational>& weights) {
    size_t k = weights.size();
    std::vector<long long> shares(k, 0);
    Rational sum(0);
    for (const auto& w : weights) sum += w;
    if (sum.isZero() || total <= 0) return shares;
    std::vector<Rational> remainders(k);
    long long assigned = 0;
    for (size_t i = 0; i < k; ++i) {
        Rational exact = weights[i] / sum * Rational(total);
        shares[i] = floorTimes(exact, 1);
        remainders[i] = exact - Rational(shares[i]);
        assigned += shares[i];
    }
    std::vector<size_t> order(k);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&remainders](size_t a, size_t b) {
        return remainders[a] > remainders[b];
    });
    for (size_t j = 0; assigned < total; ++j) {
        ++shares[order[j % k]];
        ++assigned;
    }
    return shares;
}

/// Restricts the statistic to the branch below `sonTuple` (a length-2 path),
/// re-rooted at the son: paths drop their first entry and masses are
/// renormalized by the branch mass.
TreeStatistic branchStatistic(const TreeStatistic& stat, const std::vector<int>& sonTuple,
                              const Rational& branchMass) {
    TreeStatistic out;
    out.h = stat.h;
    out.r = stat.r;
    out.cap = stat.cap;
    out.types = stat.types;
    for (size_t j = 0; j < stat.tuples.size(); ++j) {
        if (stat.tuples[j].size() < 2) continue;
        if (!std::equal(sonTuple.begin(), sonTuple.end(), stat.tuples[j].begin())) continue;
        std::vector<int> suffix(stat.tuples[j].begin() + 1, stat.tuples[j].end());
        out.tuples.push_back(suffix);
        out.mass.push_back(stat.mass[j] / branchMass);
        if (suffix.size() >= 2)
            out.wPrime[static_cast<int>(out.tuples.size()) - 1] =
                stat.wPrime.at(static_cast<int>(j));
    }
    out.sortCanonically();
    return out;
}

/// Everything outside the heavy branches, with the root type shrunk so the
/// statistic stays coherent; heavy children are restored when the branches
/// are grafted back.
TreeStatistic residualStatistic(const TreeStatistic& stat,
                                const std::vector<std::vector<int>>& heavySons,
                                const Rational& residualMass) {
    TreeStatistic out;
    out.h = stat.h;
    out.r = stat.r;
    out.cap = stat.cap;

    auto isUnderHeavy = [&heavySons](const std::vector<int>& path) {
        for (const auto& son : heavySons)
            if (path.size() >= son.size() &&
                std::equal(son.begin(), son.end(), path.begin()))
                return true;
        return false;
    };

    int rootIdx = 0; // canonical order puts the unique length-1 tuple first
    const CapType& rootType = stat.types[stat.tuples[rootIdx][0]];
    std::set<std::string> heavyChildKeys;
    for (const auto& son : heavySons) heavyChildKeys.insert(stat.types[son[1]].key());
    std::vector<std::pair<CapType, int>> keptChildren;
    for (const auto& [child, cnt] : rootType.children())
        if (!heavyChildKeys.count(child.key())) keptChildren.emplace_back(child, cnt);
    CapType reducedRoot(rootType.color(), keptChildren, stat.cap);

    int newRootId = out.addType(reducedRoot);
    std::map<int, int> idMap; // old type id -> new id (non-root entries)
    auto mapId = [&](int oldId, bool isRootPos) {
        if (isRootPos) return newRootId;
        auto it = idMap.find(oldId);
        if (it != idMap.end()) return it->second;
        int nid = out.addType(stat.types[oldId]);
        idMap[oldId] = nid;
        return nid;
    };

    for (size_t j = 0; j < stat.tuples.size(); ++j) {
        if (isUnderHeavy(stat.tuples[j])) continue;
        std::vector<int> path;
        for (size_t i = 0; i < stat.tuples[j].size(); ++i)
            path.push_back(mapId(stat.tuples[j][i], i == 0));
        out.tuples.push_back(path);
        out.mass.push_back(residualMass.isZero() ? stat.mass[j]
                                                 : stat.mass[j] / residualMass);
        if (path.size() >= 2)
            out.wPrime[static_cast<int>(out.tuples.size()) - 1] =
                stat.wPrime.at(static_cast<int>(j));
    }
    out.sortCanonically();
    return out;
}

/// Grafts the branch roots under the base root.
RootedTree graft(const RootedTree& base, const std::vector<RootedTree>& branches, int h) {
    int total = base.size();
    for (const auto& b : branches) total += b.size();
    std::vector<int> parent(total), color(total);
    for (int v = 0; v < base.size(); ++v) {
        parent[v] = base.parent(v);
        color[v] = base.color(v);
    }
    int offset = base.size();
    for (const auto& b : branches) {
        for (int v = 0; v < b.size(); ++v) {
            parent[offset + v] = (v == b.root()) ? base.root() : offset + b.parent(v);
            color[offset + v] = b.color(v);
        }
        offset += b.size();
    }
    return RootedTree(std::move(parent), std::move(color), h);
}

BuildResult buildApproxImpl(const TreeStatistic& stat, int p, int r, double epsilon,
                            long long N, int depth) {
    if (epsilon <= 0) throw PreconditionError("buildApprox: epsilon > 0 required");
    stat.validate();
    auto violations = fmtpCheck(stat);
    if (!violations.empty())
        throw PreconditionError("buildApprox: FMTP violation: " + violations.front().message);

    // Heaviness threshold; the exact locality constant of the recursion is
    // irrelevant for the finite-rank contract, so a fixed power of 3 is used.
    double pow3 = 1.0;
    for (int i = 0; i < stat.h; ++i) pow3 *= 3.0;
    double alphaD = std::min(0.5, epsilon * epsilon / (2.0 * pow3));
    long long denom = 1'000'000;
    long long num = std::max<long long>(1, static_cast<long long>(alphaD * 1e6));
    Rational alpha(num, denom);

    // Heavy sons must have a determinate multiplicity: a branch whose w' hit
    // the cap stands for arbitrarily many light sons and belongs to the
    // residual, where the flat builder grows it. A son type with w' = w < cap
    // is heavy when its per-son share of the branch mass exceeds alpha.
    std::vector<std::vector<int>> heavySons;
    std::vector<Rational> branchMasses;
    std::vector<int> branchCopies;
    Rational heavyTotal(0);
    for (size_t i = 0; i < stat.tuples.size(); ++i) {
        if (stat.tuples[i].size() != 2) continue;
        int w = stat.wPrime.at(static_cast<int>(i));
        if (w < 1 || w >= stat.cap) continue;
        Rational branch = stat.subtreeMass(static_cast<int>(i));
        if (branch / Rational(w) > alpha) {
            heavySons.push_back(stat.tuples[i]);
            branchMasses.push_back(branch);
            branchCopies.push_back(w);
            heavyTotal += branch;
        }
    }
    if (heavySons.empty() || depth >= stat.h)
        return buildTreeImpl(stat, N, true);
    Rational residualMass = Rational(1) - heavyTotal;

    std::vector<Rational> weights = branchMasses;
    weights.push_back(residualMass);
    std::vector<long long> targets = apportion(N, weights);

    BuildResult res;
    long long constantSum = 0;
    std::vector<RootedTree> branchTrees;
    for (size_t b = 0; b < heavySons.size(); ++b) {
        TreeStatistic bstat = branchStatistic(stat, heavySons[b], branchMasses[b]);
        int copies = branchCopies[b];
        std::vector<Rational> unit(copies, Rational(1));
        std::vector<long long> perCopy = apportion(targets[b], unit);
        for (int c = 0; c < copies; ++c) {
            BuildResult sub =
                buildApproxImpl(bstat, p, r, epsilon, std::max<long long>(perCopy[c], 1),
                                depth + 1);
            constantSum += sub.constantC;
            for (auto& w : sub.warnings) res.warnings.push_back(std::move(w));
            branchTrees.push_back(std::move(sub.tree));
        }
    }

    TreeStatistic rstat = residualStatistic(stat, heavySons, residualMass);
    RootedTree baseTree = RootedTree::singleton(
        stat.types[stat.tuples[0][0]].color(), stat.h);
    if (rstat.tuples.size() >= 1 && !residualMass.isZero()) {
        BuildResult sub = buildTreeImpl(rstat, std::max<long long>(targets.back(), 1), true);
        constantSum += sub.constantC;
        for (auto& w : sub.warnings) res.warnings.push_back(std::move(w));
        baseTree = std::move(sub.tree);
    }

    res.tree = graft(baseTree, branchTrees, stat.h);
    res.constantC = constantSum + static_cast<long long>(branchTrees.size()) + 1;
    res.usedScale = N;
    return res;
}

} // namespace

BuildResult buildApprox(const TreeStatistic& stat, int p, int r, double epsilon,
                        long long N) {
    if (N < 1) throw PreconditionError("buildApprox: N >= 1 required");
    return buildApproxImpl(stat, p, r, epsilon, N, 0);
}

} // namespace folim
