#pragma once

#include <string>
#include <vector>

#include "folim/formula.hpp"
#include "folim/structure.hpp"
#include "folim/tree.hpp"

namespace folim {

/// Basic interpretation scheme of target-signature structures in
/// source-signature structures: one defining formula per target relation,
/// formula over the source signature with k-blocked variables.
struct BasicScheme {
    std::string name;
    Signature source;
    Signature target;
    int exponent = 1;
    std::vector<Formula> defs; ///< aligned with target.relations()

    void validate() const;
};

/// Target structure on source-domain^k (k = exponent; tuples ordered
/// lexicographically). For exponent 1 the domain is unchanged.
Structure applyScheme(const BasicScheme& scheme, const Structure& a);

/// Formula translation for exponent-1 schemes: relation atoms are replaced
/// by their defining formulas (bound variables freshened), equality atoms
/// stay. Satisfies the pairing duality on every structure. Throws for
/// exponent > 1.
Formula translateFormula(const BasicScheme& scheme, const Formula& phi);

struct BuiltinSchemes {
    BasicScheme yToF;   ///< detach the root's sons into a forest; old root becomes the P-marked principal
    BasicScheme fToY;   ///< attach non-principal roots as sons of the principal root
    BasicScheme rToP;   ///< rename R to P
};

/// The tree/forest schemes for trees with `colorCount` colors.
BuiltinSchemes builtinSchemes(int colorCount);

/// The tree-depth closure scheme I_h: u ~ v iff some i in 1..h-1 has C_i(v)
/// and u is the ancestor of v at height i (or symmetrically). Source trees
/// carry bit-mask colors C_1..C_{h-1}.
BasicScheme treeDepthScheme(int h);

struct RootedForest {
    std::vector<int> parent; ///< parent[v] == v for roots
    int height() const;
    std::vector<int> roots() const;
    /// Every edge of g joins an ancestor-descendant pair of this forest.
    bool closureContains(const Structure& g) const;
};

struct TreeDepthResult {
    int depth = 0;
    RootedForest certificate;
};

enum class TdMode { Exact, Bound };

/// Tree-depth. Exact mode: td(connected G) = 1 + min_v td(G - v), memoized
/// on vertex bitmasks, |G| <= 20; the certificate is the elimination forest
/// of the optimal recursion. Bound mode: DFS-forest height (upper bound).
TreeDepthResult treeDepth(const Structure& g, TdMode mode);

/// Elimination forest lifted to a single 2^(h-1)-colored rooted tree whose
/// color bits record which ancestors each vertex is adjacent to, so that
/// applyScheme(treeDepthScheme(h), tree) reproduces g on the same labels.
RootedTree tdDecompose(const Structure& g, int h);

} // namespace folim
