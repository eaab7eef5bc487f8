#pragma once

#include <optional>
#include <string>
#include <vector>

#include "folim/error.hpp"

namespace folim {

struct Relation {
    std::string name;
    int arity = 0;
    bool operator==(const Relation&) const = default;
};

/// Relational signature: named relations with arities, plus bookkeeping for
/// the conventional unary relations C1..Cc (colors), R (root) and P
/// (principal-component mark).
class Signature {
public:
    Signature() = default;
    explicit Signature(std::vector<Relation> relations, int colorCount = 0,
                       bool hasRoot = false, bool hasPrincipal = false);

    /// {adj} plus optional colors.
    static Signature graph(int colorCount = 0);
    /// {adj, R, C1..Cc} for rooted trees.
    static Signature tree(int colorCount = 0);
    /// {adj, R, P, C1..Cc} for rooted forests with a principal component.
    static Signature forest(int colorCount = 0);

    const std::vector<Relation>& relations() const { return rels_; }
    int colorCount() const { return colorCount_; }
    bool hasRoot() const { return hasRoot_; }
    bool hasPrincipal() const { return hasPrincipal_; }

    std::optional<int> indexOf(const std::string& name) const;
    int requireIndex(const std::string& name) const;
    const Relation& at(int i) const { return rels_[i]; }
    int size() const { return static_cast<int>(rels_.size()); }

    bool operator==(const Signature&) const = default;

private:
    std::vector<Relation> rels_;
    int colorCount_ = 0;
    bool hasRoot_ = false;
    bool hasPrincipal_ = false;
};

/// Finite relational structure over domain {0..n-1}. Immutable once built.
/// Graphs follow the convention that "adj" is stored symmetric and
/// irreflexive.
class Structure {
public:
    Structure() = default;
    Structure(Signature sig, int size);

    /// Graph from an undirected edge list; edges are symmetrized, loops rejected.
    static Structure graph(int n, const std::vector<std::pair<int, int>>& edges,
                           const std::vector<int>& colors = {});

    const Signature& signature() const { return sig_; }
    int size() const { return n_; }
    bool empty() const { return n_ == 0; }

    /// Inserts a tuple literally. Only used during construction; `freeze`
    /// sorts tables for lookups.
    void addTuple(int relIndex, std::vector<int> tuple);
    /// Symmetric-closed loopless edge insertion (graph convention).
    void addEdge(int relIndex, int u, int v);
    void freeze();

    bool holds(int relIndex, const std::vector<int>& tuple) const;
    const std::vector<std::vector<int>>& table(int relIndex) const { return tables_[relIndex]; }

    /// Neighbors in the Gaifman graph (co-occurrence in any tuple of arity >= 2).
    const std::vector<std::vector<int>>& gaifmanAdjacency() const;

    /// Adjacency lists of the "adj" relation; requires "adj" in the signature.
    const std::vector<std::vector<int>>& adjacency() const;
    bool adjacent(int u, int v) const;

    /// Partition of the domain into Gaifman components, each sorted
    /// ascending, components ordered by smallest element.
    std::vector<std::vector<int>> connectedComponents() const;

    /// Substructure induced on `vertices` (relabeled 0..k-1 in the given order).
    Structure inducedSubstructure(const std::vector<int>& vertices) const;

    bool operator==(const Structure& o) const;

private:
    Signature sig_;
    int n_ = 0;
    std::vector<std::vector<std::vector<int>>> tables_;
    bool frozen_ = false;
    mutable std::vector<std::vector<int>> gaifman_;
    mutable bool gaifmanBuilt_ = false;
    mutable std::vector<std::vector<int>> adj_;
    mutable bool adjBuilt_ = false;
};

} // namespace folim
