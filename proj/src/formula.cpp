#include "folim/formula.hpp"

#include <algorithm>
#include <sstream>

namespace folim {

namespace {

NodePtr make(NodeKind kind) {
    auto n = std::make_shared<FormulaNode>();
    n->kind = kind;
    return n;
}

NodePtr makeUnary(NodeKind kind, NodePtr child) {
    auto n = std::make_shared<FormulaNode>();
    n->kind = kind;
    n->left = std::move(child);
    return n;
}

NodePtr makeBinary(NodeKind kind, NodePtr l, NodePtr r) {
    auto n = std::make_shared<FormulaNode>();
    n->kind = kind;
    n->left = std::move(l);
    n->right = std::move(r);
    return n;
}

void requireValid(const Formula& f) {
    if (!f.valid()) throw PreconditionError("Formula: empty formula");
}

} // namespace

Formula Formula::top() { return Formula(make(NodeKind::True)); }
Formula Formula::bottom() { return Formula(make(NodeKind::False)); }

Formula Formula::atom(std::string relation, std::vector<int> vars) {
    for (int v : vars)
        if (v < 1) throw PreconditionError("Formula: variable indices start at 1");
    auto n = std::make_shared<FormulaNode>();
    n->kind = NodeKind::Atom;
    n->relation = std::move(relation);
    n->vars = std::move(vars);
    return Formula(n);
}

Formula Formula::eq(int a, int b) {
    if (a < 1 || b < 1) throw PreconditionError("Formula: variable indices start at 1");
    auto n = std::make_shared<FormulaNode>();
    n->kind = NodeKind::Eq;
    n->vars = {a, b};
    return Formula(n);
}

Formula Formula::operator!() const {
    requireValid(*this);
    return Formula(makeUnary(NodeKind::Not, root_));
}

Formula Formula::operator&&(const Formula& o) const {
    requireValid(*this); requireValid(o);
    return Formula(makeBinary(NodeKind::And, root_, o.root_));
}

Formula Formula::operator||(const Formula& o) const {
    requireValid(*this); requireValid(o);
    return Formula(makeBinary(NodeKind::Or, root_, o.root_));
}

Formula Formula::implies(const Formula& o) const {
    requireValid(*this); requireValid(o);
    return Formula(makeBinary(NodeKind::Implies, root_, o.root_));
}

Formula Formula::iff(const Formula& o) const {
    requireValid(*this); requireValid(o);
    return Formula(makeBinary(NodeKind::Iff, root_, o.root_));
}

Formula Formula::exists(int var, const Formula& body) {
    requireValid(body);
    if (var < 1) throw PreconditionError("Formula: variable indices start at 1");
    auto n = makeUnary(NodeKind::Exists, body.root_);
    const_cast<FormulaNode*>(n.get())->qvar = var;
    return Formula(n);
}

Formula Formula::forall(int var, const Formula& body) {
    requireValid(body);
    if (var < 1) throw PreconditionError("Formula: variable indices start at 1");
    auto n = makeUnary(NodeKind::Forall, body.root_);
    const_cast<FormulaNode*>(n.get())->qvar = var;
    return Formula(n);
}

Formula Formula::conjunction(const std::vector<Formula>& fs) {
    if (fs.empty()) return top();
    Formula acc = fs[0];
    for (size_t i = 1; i < fs.size(); ++i) acc = acc && fs[i];
    return acc;
}

Formula Formula::disjunction(const std::vector<Formula>& fs) {
    if (fs.empty()) return bottom();
    Formula acc = fs[0];
    for (size_t i = 1; i < fs.size(); ++i) acc = acc || fs[i];
    return acc;
}

namespace {

int qrankOf(const FormulaNode* n) {
    if (n->qrankCache >= 0) return n->qrankCache;
    int r = 0;
    switch (n->kind) {
    case NodeKind::True: case NodeKind::False:
    case NodeKind::Atom: case NodeKind::Eq:
        r = 0;
        break;
    case NodeKind::Not:
        r = qrankOf(n->left.get());
        break;
    case NodeKind::And: case NodeKind::Or:
    case NodeKind::Implies: case NodeKind::Iff:
        r = std::max(qrankOf(n->left.get()), qrankOf(n->right.get()));
        break;
    case NodeKind::Exists: case NodeKind::Forall:
        r = 1 + qrankOf(n->left.get());
        break;
    }
    n->qrankCache = r;
    return r;
}

const std::set<int>& freeOf(const FormulaNode* n) {
    if (n->freeCached) return n->freeCache;
    std::set<int> fv;
    switch (n->kind) {
    case NodeKind::True: case NodeKind::False:
        break;
    case NodeKind::Atom: case NodeKind::Eq:
        fv.insert(n->vars.begin(), n->vars.end());
        break;
    case NodeKind::Not:
        fv = freeOf(n->left.get());
        break;
    case NodeKind::And: case NodeKind::Or:
    case NodeKind::Implies: case NodeKind::Iff: {
        fv = freeOf(n->left.get());
        const auto& r = freeOf(n->right.get());
        fv.insert(r.begin(), r.end());
        break;
    }
    case NodeKind::Exists: case NodeKind::Forall:
        fv = freeOf(n->left.get());
        fv.erase(n->qvar);
        break;
    }
    n->freeCache = std::move(fv);
    n->freeCached = true;
    return n->freeCache;
}

} // namespace

const std::set<int>& nodeFreeVars(const FormulaNode* n) {
    return freeOf(n);
}

int Formula::qrank() const {
    requireValid(*this);
    return qrankOf(root_.get());
}

const std::set<int>& Formula::freeVars() const {
    requireValid(*this);
    return freeOf(root_.get());
}

int Formula::rank() const {
    const auto& fv = freeVars();
    return fv.empty() ? 0 : *fv.rbegin();
}

bool Formula::isHom() const {
    requireValid(*this);
    std::vector<const FormulaNode*> stack{root_.get()};
    while (!stack.empty()) {
        const FormulaNode* n = stack.back();
        stack.pop_back();
        switch (n->kind) {
        case NodeKind::And:
            stack.push_back(n->left.get());
            stack.push_back(n->right.get());
            break;
        case NodeKind::Atom:
        case NodeKind::True:
            break;
        default:
            return false;
        }
    }
    return true;
}

namespace {

bool nodeEquals(const FormulaNode* a, const FormulaNode* b) {
    if (a == b) return true;
    if (a->kind != b->kind) return false;
    switch (a->kind) {
    case NodeKind::True: case NodeKind::False:
        return true;
    case NodeKind::Atom:
        return a->relation == b->relation && a->vars == b->vars;
    case NodeKind::Eq:
        return a->vars == b->vars;
    case NodeKind::Not:
        return nodeEquals(a->left.get(), b->left.get());
    case NodeKind::And: case NodeKind::Or:
    case NodeKind::Implies: case NodeKind::Iff:
        return nodeEquals(a->left.get(), b->left.get()) &&
               nodeEquals(a->right.get(), b->right.get());
    case NodeKind::Exists: case NodeKind::Forall:
        return a->qvar == b->qvar && nodeEquals(a->left.get(), b->left.get());
    }
    return false;
}

int precedence(NodeKind k) {
    switch (k) {
    case NodeKind::Iff: return 1;
    case NodeKind::Implies: return 2;
    case NodeKind::Or: return 3;
    case NodeKind::And: return 4;
    case NodeKind::Not: return 5;
    default: return 6;
    }
}

void printNode(std::ostream& os, const FormulaNode* n);

void printChild(std::ostream& os, const FormulaNode* parent, const FormulaNode* child,
                bool rightOperand) {
    bool quant = child->kind == NodeKind::Exists || child->kind == NodeKind::Forall;
    int pp = precedence(parent->kind), cp = precedence(child->kind);
    // Quantifier bodies extend maximally right, so a quantified child on the
    // left (or anywhere but the whole expression tail) needs parentheses.
    bool parens = quant || cp < pp || (cp == pp && rightOperand);
    if (parens) os << "(";
    printNode(os, child);
    if (parens) os << ")";
}

void printNode(std::ostream& os, const FormulaNode* n) {
    switch (n->kind) {
    case NodeKind::True: os << "true"; break;
    case NodeKind::False: os << "false"; break;
    case NodeKind::Atom:
        os << n->relation << "(";
        for (size_t i = 0; i < n->vars.size(); ++i)
            os << (i ? "," : "") << "x" << n->vars[i];
        os << ")";
        break;
    case NodeKind::Eq:
        os << "x" << n->vars[0] << " = x" << n->vars[1];
        break;
    case NodeKind::Not:
        os << "!";
        printChild(os, n, n->left.get(), false);
        break;
    case NodeKind::And:
        printChild(os, n, n->left.get(), false);
        os << " & ";
        printChild(os, n, n->right.get(), true);
        break;
    case NodeKind::Or:
        printChild(os, n, n->left.get(), false);
        os << " | ";
        printChild(os, n, n->right.get(), true);
        break;
    case NodeKind::Implies:
        printChild(os, n, n->left.get(), false);
        os << " -> ";
        printChild(os, n, n->right.get(), true);
        break;
    case NodeKind::Iff:
        printChild(os, n, n->left.get(), false);
        os << " <-> ";
        printChild(os, n, n->right.get(), true);
        break;
    case NodeKind::Exists:
        os << "exists x" << n->qvar << ". ";
        printNode(os, n->left.get());
        break;
    case NodeKind::Forall:
        os << "forall x" << n->qvar << ". ";
        printNode(os, n->left.get());
        break;
    }
}

} // namespace

bool Formula::equals(const Formula& o) const {
    requireValid(*this); requireValid(o);
    return nodeEquals(root_.get(), o.root_.get());
}

std::string Formula::str() const {
    requireValid(*this);
    std::ostringstream os;
    printNode(os, root_.get());
    return os.str();
}

void Formula::checkAgainst(const Signature& sig) const {
    requireValid(*this);
    std::vector<const FormulaNode*> stack{root_.get()};
    while (!stack.empty()) {
        const FormulaNode* n = stack.back();
        stack.pop_back();
        if (n->kind == NodeKind::Atom) {
            auto idx = sig.indexOf(n->relation);
            if (!idx)
                throw PreconditionError("Formula: unknown relation '" + n->relation + "'");
            if (sig.at(*idx).arity != static_cast<int>(n->vars.size()))
                throw PreconditionError("Formula: arity mismatch for '" + n->relation + "'");
        }
        if (n->left) stack.push_back(n->left.get());
        if (n->right) stack.push_back(n->right.get());
    }
}

namespace {

NodePtr substNode(const FormulaNode* n, std::vector<std::pair<int, int>> mapping,
                  int& nextFresh) {
    auto lookup = [&mapping](int v) {
        for (auto [from, to] : mapping)
            if (from == v) return to;
        return v;
    };
    switch (n->kind) {
    case NodeKind::True: case NodeKind::False:
        return make(n->kind);
    case NodeKind::Atom: {
        auto out = std::make_shared<FormulaNode>();
        out->kind = NodeKind::Atom;
        out->relation = n->relation;
        for (int v : n->vars) out->vars.push_back(lookup(v));
        return out;
    }
    case NodeKind::Eq: {
        auto out = std::make_shared<FormulaNode>();
        out->kind = NodeKind::Eq;
        out->vars = {lookup(n->vars[0]), lookup(n->vars[1])};
        return out;
    }
    case NodeKind::Not:
        return makeUnary(NodeKind::Not, substNode(n->left.get(), mapping, nextFresh));
    case NodeKind::And: case NodeKind::Or:
    case NodeKind::Implies: case NodeKind::Iff:
        return makeBinary(n->kind, substNode(n->left.get(), mapping, nextFresh),
                          substNode(n->right.get(), mapping, nextFresh));
    case NodeKind::Exists: case NodeKind::Forall: {
        // Rename the bound variable to a fresh index so that mapped variables
        // can never be captured.
        int fresh = nextFresh++;
        auto inner = mapping;
        std::erase_if(inner, [n](const auto& p) { return p.first == n->qvar; });
        inner.emplace_back(n->qvar, fresh);
        auto out = makeUnary(n->kind, substNode(n->left.get(), inner, nextFresh));
        const_cast<FormulaNode*>(out.get())->qvar = fresh;
        return out;
    }
    }
    throw PreconditionError("Formula: bad node");
}

int maxVarIndex(const FormulaNode* n) {
    int m = 0;
    if (n->kind == NodeKind::Atom || n->kind == NodeKind::Eq)
        for (int v : n->vars) m = std::max(m, v);
    if (n->kind == NodeKind::Exists || n->kind == NodeKind::Forall)
        m = std::max(m, n->qvar);
    if (n->left) m = std::max(m, maxVarIndex(n->left.get()));
    if (n->right) m = std::max(m, maxVarIndex(n->right.get()));
    return m;
}

} // namespace

Formula Formula::substitute(const std::vector<std::pair<int, int>>& mapping,
                            int freshStart) const {
    requireValid(*this);
    int nextFresh = std::max(freshStart, maxVarIndex(root_.get()) + 1);
    for (auto [from, to] : mapping) nextFresh = std::max(nextFresh, std::max(from, to) + 1);
    return Formula(substNode(root_.get(), mapping, nextFresh));
}

Formula canonicalHomFormula(const Structure& f) {
    const auto& adj = f.adjacency();
    std::vector<Formula> atoms;
    for (int u = 0; u < f.size(); ++u)
        for (int v : adj[u])
            if (u < v) atoms.push_back(Formula::atom("adj", {u + 1, v + 1}));
    return Formula::conjunction(atoms);
}

Formula extensionSentence(int k) {
    if (k < 1) throw PreconditionError("extensionSentence: k >= 1 required");
    int z = 2 * k + 1;
    std::vector<Formula> distinct;
    for (int i = 1; i <= 2 * k; ++i)
        for (int j = i + 1; j <= 2 * k; ++j)
            distinct.push_back(!Formula::eq(i, j));
    std::vector<Formula> witness;
    for (int i = 1; i <= 2 * k; ++i) witness.push_back(!Formula::eq(i, z));
    for (int i = 1; i <= k; ++i) witness.push_back(Formula::atom("adj", {i, z}));
    for (int i = k + 1; i <= 2 * k; ++i) witness.push_back(!Formula::atom("adj", {i, z}));
    Formula body = Formula::conjunction(distinct)
                       .implies(Formula::exists(z, Formula::conjunction(witness)));
    for (int i = 2 * k; i >= 1; --i) body = Formula::forall(i, body);
    return body;
}

FragmentTag classifyFragment(const Formula& f) {
    if (f.isHom()) return FragmentTag::HOM;
    if (f.isQuantifierFree()) return FragmentTag::QF;
    if (f.isSentence()) return FragmentTag::Sentence;
    return FragmentTag::FOp;
}

} // namespace folim
