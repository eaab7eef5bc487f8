#pragma once

#include <string>
#include <vector>

#include "folim/tree.hpp"

namespace folim {

/// Bounded-counting isomorphism type of a colored rooted tree: the root
/// color together with child types and multiplicities, multiplicities capped
/// at K. Two subtrees get equal CapTypes exactly when they agree up to
/// "K-or-more" counting at every level. Canonical: children are kept sorted
/// by a structural total order, so equality is structural and the type is
/// hashable through its key().
class CapType {
public:
    CapType() = default;
    static CapType leaf(int color);
    /// Children counts are capped at `cap` and the list is canonicalized.
    CapType(int color, std::vector<std::pair<CapType, int>> children, int cap);

    int color() const { return color_; }
    const std::vector<std::pair<CapType, int>>& children() const { return children_; }

    /// Injective serialization; lexicographic order on keys is the canonical
    /// total order.
    const std::string& key() const { return key_; }

    bool operator==(const CapType& o) const { return key_ == o.key_; }
    bool operator!=(const CapType& o) const { return key_ != o.key_; }
    bool operator<(const CapType& o) const { return key_ < o.key_; }

private:
    int color_ = 0;
    std::vector<std::pair<CapType, int>> children_;
    std::string key_;
};

/// CapType of subtree(t, v) with cap K.
CapType capType(const RootedTree& t, int v, int K);

/// CapTypes of every vertex's subtree, indexed by vertex.
std::vector<CapType> capTypesOfAll(const RootedTree& t, int K);

/// Types of the subtrees rooted at the ancestors of v, root first, v last.
/// Length equals the height of v.
using EncodePath = std::vector<CapType>;
EncodePath encodeVertex(const RootedTree& t, int v, int K);

std::string encodePathKey(const EncodePath& path);

} // namespace folim
