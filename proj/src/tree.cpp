#include "folim/tree.hpp"

#include <algorithm>

namespace folim {

RootedTree::RootedTree(std::vector<int> parent, std::vector<int> color, int heightBound)
    : parent_(std::move(parent)), color_(std::move(color)), heightBound_(heightBound) {
    int n = size();
    if (static_cast<int>(color_.size()) != n)
        throw PreconditionError("RootedTree: color array length != n");
    if (n == 0) throw PreconditionError("RootedTree: empty tree");
    if (heightBound_ < 1) throw PreconditionError("RootedTree: height bound < 1");
    root_ = -1;
    for (int v = 0; v < n; ++v) {
        if (parent_[v] < 0 || parent_[v] >= n)
            throw PreconditionError("RootedTree: parent out of range");
        if (parent_[v] == v) {
            if (root_ != -1) throw PreconditionError("RootedTree: multiple roots");
            root_ = v;
        }
        if (color_[v] < 0) throw PreconditionError("RootedTree: negative color");
    }
    if (root_ == -1) throw PreconditionError("RootedTree: no root");
    for (int v = 0; v < n; ++v)
        if (height(v) > heightBound_)
            throw PreconditionError("RootedTree: height bound exceeded");
}

RootedTree RootedTree::singleton(int color, int heightBound) {
    return RootedTree({0}, {color}, heightBound);
}

int RootedTree::colorCount() const {
    int c = 0;
    for (int v = 0; v < size(); ++v) c = std::max(c, color_[v] + 1);
    return c;
}

int RootedTree::height(int v) const {
    int h = 1;
    int steps = 0;
    while (parent_[v] != v) {
        v = parent_[v];
        ++h;
        if (++steps > size()) throw PreconditionError("RootedTree: parent cycle");
    }
    return h;
}

int RootedTree::height() const {
    int h = 0;
    for (int v = 0; v < size(); ++v) h = std::max(h, height(v));
    return h;
}

const std::vector<std::vector<int>>& RootedTree::children() const {
    if (!childrenBuilt_) {
        children_.assign(size(), {});
        for (int v = 0; v < size(); ++v)
            if (v != root_) children_[parent_[v]].push_back(v);
        childrenBuilt_ = true;
    }
    return children_;
}

std::vector<int> RootedTree::rootPath(int v) const {
    if (v < 0 || v >= size()) throw PreconditionError("RootedTree: vertex out of range");
    std::vector<int> path;
    while (true) {
        path.push_back(v);
        if (parent_[v] == v) break;
        v = parent_[v];
    }
    std::reverse(path.begin(), path.end());
    return path;
}

std::vector<int> RootedTree::subtreeVertices(int v) const {
    if (v < 0 || v >= size()) throw PreconditionError("RootedTree: vertex out of range");
    const auto& ch = children();
    std::vector<int> stack{v}, verts;
    while (!stack.empty()) {
        int u = stack.back();
        stack.pop_back();
        verts.push_back(u);
        for (int w : ch[u]) stack.push_back(w);
    }
    std::sort(verts.begin(), verts.end());
    return verts;
}

RootedTree RootedTree::subtree(int v) const {
    std::vector<int> verts = subtreeVertices(v);
    std::vector<int> relabel(size(), -1);
    for (size_t i = 0; i < verts.size(); ++i) relabel[verts[i]] = static_cast<int>(i);
    std::vector<int> par(verts.size()), col(verts.size());
    for (size_t i = 0; i < verts.size(); ++i) {
        int u = verts[i];
        par[i] = (u == v) ? static_cast<int>(i) : relabel[parent_[u]];
        col[i] = color_[u];
    }
    return RootedTree(std::move(par), std::move(col), heightBound_);
}

Structure RootedTree::toStructure() const { return toStructure(colorCount()); }

Structure RootedTree::toStructure(int colorCountArg) const {
    if (colorCountArg < colorCount())
        throw PreconditionError("toStructure: color count below palette");
    Structure s(Signature::tree(colorCountArg), size());
    int adjIdx = s.signature().requireIndex("adj");
    int rIdx = s.signature().requireIndex("R");
    for (int v = 0; v < size(); ++v) {
        if (v != root_) s.addEdge(adjIdx, v, parent_[v]);
        int cIdx = s.signature().requireIndex("C" + std::to_string(color_[v] + 1));
        s.addTuple(cIdx, {v});
    }
    s.addTuple(rIdx, {root_});
    s.freeze();
    return s;
}

Structure RootedTree::toStructureBits(int bitCount) const {
    Structure s(Signature::tree(bitCount), size());
    int adjIdx = s.signature().requireIndex("adj");
    int rIdx = s.signature().requireIndex("R");
    for (int v = 0; v < size(); ++v) {
        if (v != root_) s.addEdge(adjIdx, v, parent_[v]);
        for (int b = 0; b < bitCount; ++b)
            if (color_[v] & (1 << b))
                s.addTuple(s.signature().requireIndex("C" + std::to_string(b + 1)), {v});
    }
    s.addTuple(rIdx, {root_});
    s.freeze();
    return s;
}

RootedTree treeFromStructure(const Structure& s, int heightBound) {
    const Signature& sig = s.signature();
    int rIdx = sig.requireIndex("R");
    const auto& roots = s.table(rIdx);
    if (roots.size() != 1) throw PreconditionError("treeFromStructure: expected exactly one root");
    int root = roots[0][0];
    int n = s.size();
    const auto& adj = s.adjacency();
    std::vector<int> parent(n, -1), color(n, 0);
    parent[root] = root;
    std::vector<int> queue{root};
    size_t qi = 0;
    while (qi < queue.size()) {
        int v = queue[qi++];
        for (int w : adj[v])
            if (parent[w] == -1) {
                parent[w] = v;
                queue.push_back(w);
            }
    }
    if (queue.size() != static_cast<size_t>(n))
        throw PreconditionError("treeFromStructure: not connected");
    size_t edgeCount = 0;
    for (int v = 0; v < n; ++v) edgeCount += adj[v].size();
    if (edgeCount != 2 * static_cast<size_t>(n - 1))
        throw PreconditionError("treeFromStructure: not a tree");
    for (int v = 0; v < n; ++v)
        for (int c = 1; c <= sig.colorCount(); ++c)
            if (s.holds(sig.requireIndex("C" + std::to_string(c)), {v})) color[v] = c - 1;
    return RootedTree(std::move(parent), std::move(color), heightBound);
}

} // namespace folim
