#pragma once

#include <memory>
#include <set>
#include <string>
#include <vector>

#include "folim/structure.hpp"

namespace folim {

enum class NodeKind {
    True, False, Atom, Eq, Not, And, Or, Implies, Iff, Exists, Forall
};

struct FormulaNode;
using NodePtr = std::shared_ptr<const FormulaNode>;

struct FormulaNode {
    NodeKind kind;
    // Atom
    std::string relation;
    std::vector<int> vars;   // variable indices (x1 -> 1)
    // Eq: vars = {a, b}
    // Unary / binary connectives
    NodePtr left, right;
    // Quantifiers: quantified variable index, body = left
    int qvar = 0;

    mutable int qrankCache = -1;
    mutable std::set<int> freeCache;
    mutable bool freeCached = false;
};

/// Immutable first-order formula. Variables are positive indices (x1, x2, ...).
class Formula {
public:
    Formula() = default;
    explicit Formula(NodePtr root) : root_(std::move(root)) {}

    static Formula top();
    static Formula bottom();
    static Formula atom(std::string relation, std::vector<int> vars);
    static Formula eq(int a, int b);
    static Formula neq(int a, int b) { return !eq(a, b); }

    Formula operator!() const;
    Formula operator&&(const Formula& o) const;
    Formula operator||(const Formula& o) const;
    Formula implies(const Formula& o) const;
    Formula iff(const Formula& o) const;
    static Formula exists(int var, const Formula& body);
    static Formula forall(int var, const Formula& body);

    /// Conjunction of a list; empty list yields `true`.
    static Formula conjunction(const std::vector<Formula>& fs);
    static Formula disjunction(const std::vector<Formula>& fs);

    const NodePtr& node() const { return root_; }
    bool valid() const { return root_ != nullptr; }

    int qrank() const;
    const std::set<int>& freeVars() const;
    /// Largest free-variable index, 0 for sentences.
    int rank() const;
    bool isSentence() const { return freeVars().empty(); }

    /// Conjunction of relation atoms only (empty conjunction `true` allowed).
    bool isHom() const;
    bool isQuantifierFree() const { return qrank() == 0; }

    /// Structural equality of ASTs.
    bool equals(const Formula& o) const;

    std::string str() const;

    /// Relations used by the formula all exist in `sig` with matching arities.
    void checkAgainst(const Signature& sig) const;

    /// Simultaneous substitution var -> var (used by scheme translation);
    /// renames bound variables above `freshStart` to avoid capture.
    Formula substitute(const std::vector<std::pair<int, int>>& mapping, int freshStart) const;

private:
    NodePtr root_;
};

/// Free variables of a bare AST node (shares the cache used by
/// Formula::freeVars).
const std::set<int>& nodeFreeVars(const FormulaNode* n);

/// Canonical HOM formula of a graph F on vertices 0..k-1: one adj atom per
/// edge, variables x_{i+1}; the edgeless graph yields `true`.
Formula canonicalHomFormula(const Structure& f);

/// The k-extension-property sentence: 2k universally quantified pairwise
/// distinct vertices, one existential witness adjacent to the first k and
/// to none of the last k.
Formula extensionSentence(int k);

enum class FragmentTag { QF, HOM, FOp, Sentence, Unclassified };
FragmentTag classifyFragment(const Formula& f);

} // namespace folim
