#pragma once

#include <vector>

#include "folim/structure.hpp"

namespace folim {

/// Colored rooted tree of height at most `heightBound` vertices per
/// root-to-leaf path (the root has height 1). Parent of the root is itself.
class RootedTree {
public:
    RootedTree() = default;
    RootedTree(std::vector<int> parent, std::vector<int> color, int heightBound);

    /// Single vertex of the given color.
    static RootedTree singleton(int color, int heightBound);

    int size() const { return static_cast<int>(parent_.size()); }
    int root() const { return root_; }
    int parent(int v) const { return parent_[v]; }
    int color(int v) const { return color_[v]; }
    int heightBound() const { return heightBound_; }
    int colorCount() const;

    const std::vector<int>& parents() const { return parent_; }
    const std::vector<int>& colors() const { return color_; }

    /// Number of vertices on the path from the root to v, inclusive.
    int height(int v) const;
    /// Maximum height over all vertices.
    int height() const;

    const std::vector<std::vector<int>>& children() const;

    /// Ancestors of v from the root down to v itself.
    std::vector<int> rootPath(int v) const;

    /// Subtree rooted at v, vertices relabeled (v becomes 0), colors kept.
    RootedTree subtree(int v) const;

    /// Vertices of the subtree rooted at v, in increasing label order.
    std::vector<int> subtreeVertices(int v) const;

    /// One-hot color encoding: relations C1..Cc, vertex v satisfies
    /// C_{color(v)+1} only. The overload fixes the signature's color count
    /// (needed when comparing trees with different palettes).
    Structure toStructure() const;
    Structure toStructure(int colorCount) const;

    /// Bit-mask color encoding used by tree-depth decompositions: relations
    /// C1..Cb, vertex v satisfies C_i iff bit i-1 of color(v) is set.
    Structure toStructureBits(int bitCount) const;

private:
    std::vector<int> parent_;
    std::vector<int> color_;
    int heightBound_ = 1;
    int root_ = 0;
    mutable std::vector<std::vector<int>> children_;
    mutable bool childrenBuilt_ = false;
};

/// Reads a rooted tree back out of a tree-signature Structure
/// (used to validate interpretation outputs). Throws if the structure is
/// not a rooted tree of height <= heightBound.
RootedTree treeFromStructure(const Structure& s, int heightBound);

} // namespace folim
