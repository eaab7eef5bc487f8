#pragma once

#include <map>
#include <string>
#include <vector>

#include "folim/captype.hpp"
#include "folim/rational.hpp"
#include "folim/tree.hpp"

namespace folim {

/// Finite-rank limit statistic of colored rooted trees of height <= h:
/// a probability mass over Encode-tuples of CapTypes (cap K = r + h)
/// together with the branching multiplicities w' between consecutive tuples.
///
/// Tuples are stored as paths of type ids into `types`, prefix-closed, with
/// a unique length-1 tuple (the root type). Every tuple of length >= 2
/// carries a w' count in 0..cap.
class TreeStatistic {
public:
    int h = 1;
    int r = 1;
    int cap = 2; // r + h

    std::vector<CapType> types;
    std::vector<std::vector<int>> tuples; ///< paths of type ids, sorted by (length, lex)
    std::vector<Rational> mass;           ///< parallel to tuples
    std::map<int, int> wPrime;            ///< tuple index (length >= 2) -> w'

    int typeId(const CapType& t) const;
    int addType(const CapType& t);
    int tupleIndex(const std::vector<int>& path) const;

    /// Structural validation: mass simplex, purity (unique root tuple, and it
    /// carries positive mass unless the statistic is a user-supplied zero
    /// pattern), prefix closure, w' present for every extension, path entries
    /// consistent. Throws PreconditionError.
    void validate() const;

    /// Non-structural coherence between types and w': the children list of
    /// each tuple's last type must list exactly the stored extensions with
    /// w' >= 1 and matching capped counts. Returns human-readable issues;
    /// empty means the statistic can be realized with exact capped types.
    std::vector<std::string> coherenceIssues() const;

    /// Total mass of all stored tuples extending `path` (including itself).
    Rational subtreeMass(int tupleIdx) const;

    void sortCanonically();
};

/// Empirical statistic of a finite tree at rank r: mu(e) is the fraction of
/// vertices with Encode-tuple e (cap K = r + h), and w' counts come from the
/// capped child multiplicities recorded in the parent CapTypes.
TreeStatistic statisticOfTree(const RootedTree& t, int r);

struct FmtpViolation {
    int tupleIdx = 0; ///< the extension tuple t'
    std::string message;
};

/// Finitary mass transport check on consecutive tuple pairs: flags
/// (w'=0, mu(t')>0), (mu both positive, w'<cap, mu(t') != w'*mu(t)) and
/// (mu(t)>0, w'=cap, mu(t') < cap*mu(t)). Empty result means the statistic
/// is FMTP-consistent at this rank.
std::vector<FmtpViolation> fmtpCheck(const TreeStatistic& stat);

struct BuildResult {
    RootedTree tree;
    long long constantC = 0;   ///< (r+h)^h * number of stored tuples
    long long usedScale = 0;   ///< internal scale parameter that realized the size
    std::vector<std::string> warnings;
};

/// Realizes the statistic as a finite tree with N <= |Y| <= N + C: per-tuple
/// vertex-set cardinalities follow the four-case rule driven by w' and the
/// masses, children are split as equally as possible over parents, and the
/// internal scale is searched so the size lands in the window. Requires
/// fmtpCheck(stat) empty and coherent types. Throws PreconditionError when
/// the statistic pins a fixed size outside the window.
BuildResult buildTree(const TreeStatistic& stat, long long N);

struct Skeleton {
    /// Prefix-closed heavy tuple paths (type ids into `types`); index 0 is
    /// the root. parent[i] indexes the skeleton node one level up.
    std::vector<std::vector<int>> nodes;
    std::vector<int> parent;
    std::vector<Rational> mass; ///< cumulative subtree mass; root mass 1
    std::vector<CapType> types;
};

/// Tuples whose cumulative mass exceeds the alpha-relative threshold along
/// the path: a node is heavy iff it is the root or its parent is heavy and
/// mass > alpha * mass(parent). Each node keeps at most 1/alpha sons.
Skeleton heavySkeleton(const TreeStatistic& stat, const Rational& alpha);

/// Recursive approximation: the root statistic is split along its heavy
/// sons, each heavy branch is built recursively (w' copies per branch type),
/// the residual branch goes through buildTree, and the parts are grafted
/// back under one root. Result size in [N, N + C_h].
BuildResult buildApprox(const TreeStatistic& stat, int p, int r, double epsilon,
                        long long N);

} // namespace folim
