#include "folim/interp.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <unordered_map>

#include "folim/eval.hpp"

namespace folim {

void BasicScheme::validate() const {
    if (exponent < 1) throw PreconditionError("BasicScheme: exponent >= 1 required");
    if (static_cast<int>(defs.size()) != target.size())
        throw PreconditionError("BasicScheme: one defining formula per target relation");
    for (int i = 0; i < target.size(); ++i) {
        defs[i].checkAgainst(source);
        int maxVar = exponent * target.at(i).arity;
        if (defs[i].rank() > maxVar)
            throw PreconditionError("BasicScheme: formula for '" + target.at(i).name +
                                    "' uses free variables beyond k*arity");
    }
}

Structure applyScheme(const BasicScheme& scheme, const Structure& a) {
    scheme.validate();
    if (!(a.signature() == scheme.source))
        throw PreconditionError("applyScheme: structure signature does not match scheme source");
    int k = scheme.exponent;
    long long domain = 1;
    for (int i = 0; i < k; ++i) {
        domain *= a.size();
        if (domain > 2'000'000) throw PreconditionError("applyScheme: n^k too large");
    }
    Structure out(scheme.target, static_cast<int>(domain));
    Evaluator ev(a);
    // Element j of the target encodes the k-tuple given by the base-n digits
    // of j, most significant first.
    auto decode = [&](long long j, std::vector<int>& into) {
        for (int i = k - 1; i >= 0; --i) {
            into[i] = static_cast<int>(j % a.size());
            j /= a.size();
        }
    };
    for (int rel = 0; rel < scheme.target.size(); ++rel) {
        int arity = scheme.target.at(rel).arity;
        std::vector<long long> tuple(arity, 0);
        std::vector<int> assignment(static_cast<size_t>(arity) * k, 0);
        std::vector<int> block(k, 0);
        while (true) {
            for (int pos = 0; pos < arity; ++pos) {
                decode(tuple[pos], block);
                for (int i = 0; i < k; ++i) assignment[pos * k + i] = block[i];
            }
            if (ev.satisfies(scheme.defs[rel], assignment)) {
                // The target table is exactly the set defined by the formula;
                // the pairing duality depends on this being literal.
                std::vector<int> t(arity);
                for (int pos = 0; pos < arity; ++pos) t[pos] = static_cast<int>(tuple[pos]);
                out.addTuple(rel, t);
            }
            int pos = arity - 1;
            while (pos >= 0 && tuple[pos] == domain - 1) tuple[pos--] = 0;
            if (pos < 0) break;
            ++tuple[pos];
        }
    }
    out.freeze();
    return out;
}

namespace {

NodePtr translateNode(const BasicScheme& scheme, const FormulaNode* n, int freshStart);

Formula translateWrap(const BasicScheme& scheme, const Formula& f, int freshStart) {
    return Formula(translateNode(scheme, f.node().get(), freshStart));
}

NodePtr translateNode(const BasicScheme& scheme, const FormulaNode* n, int freshStart) {
    switch (n->kind) {
    case NodeKind::True: return Formula::top().node();
    case NodeKind::False: return Formula::bottom().node();
    case NodeKind::Eq: return Formula::eq(n->vars[0], n->vars[1]).node();
    case NodeKind::Atom: {
        int rel = scheme.target.requireIndex(n->relation);
        std::vector<std::pair<int, int>> mapping;
        for (size_t i = 0; i < n->vars.size(); ++i)
            mapping.emplace_back(static_cast<int>(i) + 1, n->vars[i]);
        return scheme.defs[rel].substitute(mapping, freshStart).node();
    }
    case NodeKind::Not:
        return (!translateWrap(scheme, Formula(n->left), freshStart)).node();
    case NodeKind::And:
        return (translateWrap(scheme, Formula(n->left), freshStart) &&
                translateWrap(scheme, Formula(n->right), freshStart)).node();
    case NodeKind::Or:
        return (translateWrap(scheme, Formula(n->left), freshStart) ||
                translateWrap(scheme, Formula(n->right), freshStart)).node();
    case NodeKind::Implies:
        return translateWrap(scheme, Formula(n->left), freshStart)
            .implies(translateWrap(scheme, Formula(n->right), freshStart)).node();
    case NodeKind::Iff:
        return translateWrap(scheme, Formula(n->left), freshStart)
            .iff(translateWrap(scheme, Formula(n->right), freshStart)).node();
    case NodeKind::Exists:
        return Formula::exists(n->qvar,
                               translateWrap(scheme, Formula(n->left), freshStart)).node();
    case NodeKind::Forall:
        return Formula::forall(n->qvar,
                               translateWrap(scheme, Formula(n->left), freshStart)).node();
    }
    throw PreconditionError("translateFormula: bad node");
}

int maxVarOf(const Formula& f) {
    std::function<int(const FormulaNode*)> rec = [&](const FormulaNode* n) {
        int m = 0;
        for (int v : n->vars) m = std::max(m, v);
        if (n->kind == NodeKind::Exists || n->kind == NodeKind::Forall)
            m = std::max(m, n->qvar);
        if (n->left) m = std::max(m, rec(n->left.get()));
        if (n->right) m = std::max(m, rec(n->right.get()));
        return m;
    };
    return rec(f.node().get());
}

} // namespace

Formula translateFormula(const BasicScheme& scheme, const Formula& phi) {
    scheme.validate();
    if (scheme.exponent != 1)
        throw PreconditionError(
            "translateFormula: only exponent-1 schemes are supported");
    phi.checkAgainst(scheme.target);
    int fresh = maxVarOf(phi) + 1;
    for (const auto& def : scheme.defs) fresh = std::max(fresh, maxVarOf(def) + 1);
    return translateWrap(scheme, phi, fresh);
}

namespace {

Formula colorIdentity(int i) {
    return Formula::atom("C" + std::to_string(i), {1});
}

} // namespace

BuiltinSchemes builtinSchemes(int colorCount) {
    BuiltinSchemes out;
    Signature treeSig = Signature::tree(colorCount);
    Signature forestSig = Signature::forest(colorCount);

    auto adj = [] { return Formula::atom("adj", {1, 2}); };
    auto R = [](int v) { return Formula::atom("R", {v}); };
    auto P = [](int v) { return Formula::atom("P", {v}); };

    // Y -> F: drop edges at the root, sons become roots, old root becomes the
    // isolated P-marked principal root.
    out.yToF.name = "I_YtoF";
    out.yToF.source = treeSig;
    out.yToF.target = forestSig;
    out.yToF.exponent = 1;
    for (int rel = 0; rel < forestSig.size(); ++rel) {
        const std::string& name = forestSig.at(rel).name;
        if (name == "adj")
            out.yToF.defs.push_back(adj() && !R(1) && !R(2));
        else if (name == "R")
            out.yToF.defs.push_back(Formula::exists(2, R(2) && Formula::atom("adj", {2, 1})));
        else if (name == "P")
            out.yToF.defs.push_back(R(1));
        else
            out.yToF.defs.push_back(colorIdentity(std::stoi(name.substr(1))));
    }

    // F -> Y: non-principal roots become sons of the principal root.
    out.fToY.name = "I_FtoY";
    out.fToY.source = forestSig;
    out.fToY.target = treeSig;
    out.fToY.exponent = 1;
    for (int rel = 0; rel < treeSig.size(); ++rel) {
        const std::string& name = treeSig.at(rel).name;
        if (name == "adj")
            out.fToY.defs.push_back(adj() || (R(1) && P(2)) || (R(2) && P(1)));
        else if (name == "R")
            out.fToY.defs.push_back(P(1));
        else
            out.fToY.defs.push_back(colorIdentity(std::stoi(name.substr(1))));
    }

    // R -> P: rename.
    out.rToP.name = "I_RtoP";
    out.rToP.source = treeSig;
    out.rToP.target = forestSig;
    out.rToP.exponent = 1;
    for (int rel = 0; rel < forestSig.size(); ++rel) {
        const std::string& name = forestSig.at(rel).name;
        if (name == "adj")
            out.rToP.defs.push_back(adj());
        else if (name == "R")
            out.rToP.defs.push_back(Formula::bottom());
        else if (name == "P")
            out.rToP.defs.push_back(R(1));
        else
            out.rToP.defs.push_back(colorIdentity(std::stoi(name.substr(1))));
    }

    out.yToF.validate();
    out.fToY.validate();
    out.rToP.validate();
    return out;
}

namespace {

/// "x_at is the vertex of height i on the root path of x_deep, which has
/// height j": there is a chain y_1 ... y_j of pairwise distinct vertices
/// starting at the root with y_i = x_at and y_j = x_deep. In a tree a
/// distinct-vertex walk is the unique simple path, so this pins the heights
/// exactly.
Formula ancestorAtHeight(int i, int j, int varAt, int varDeep) {
    int base = 2; // chain variables start at x3
    std::vector<Formula> parts;
    parts.push_back(Formula::atom("R", {base + 1}));
    for (int l = 1; l < j; ++l)
        parts.push_back(Formula::atom("adj", {base + l, base + l + 1}));
    for (int l = 1; l <= j; ++l)
        for (int m = l + 1; m <= j; ++m)
            parts.push_back(!Formula::eq(base + l, base + m));
    parts.push_back(Formula::eq(base + i, varAt));
    parts.push_back(Formula::eq(base + j, varDeep));
    Formula body = Formula::conjunction(parts);
    for (int l = j; l >= 1; --l) body = Formula::exists(base + l, body);
    return body;
}

} // namespace

BasicScheme treeDepthScheme(int h) {
    if (h < 1) throw PreconditionError("treeDepthScheme: h >= 1 required");
    BasicScheme scheme;
    scheme.name = "I_t(" + std::to_string(h) + ")";
    scheme.source = Signature::tree(h - 1); // C_1..C_{h-1} are color bits
    scheme.target = Signature::graph(0);
    scheme.exponent = 1;
    std::vector<Formula> cases;
    for (int i = 1; i <= h - 1; ++i)
        for (int j = i + 1; j <= h; ++j) {
            cases.push_back(Formula::atom("C" + std::to_string(i), {2}) &&
                            ancestorAtHeight(i, j, 1, 2));
            cases.push_back(Formula::atom("C" + std::to_string(i), {1}) &&
                            ancestorAtHeight(i, j, 2, 1));
        }
    scheme.defs.push_back(Formula::disjunction(cases));
    scheme.validate();
    return scheme;
}

int RootedForest::height() const {
    int best = 0;
    for (size_t v = 0; v < parent.size(); ++v) {
        int h = 1, u = static_cast<int>(v), steps = 0;
        while (parent[u] != u) {
            u = parent[u];
            ++h;
            if (++steps > static_cast<int>(parent.size()))
                throw PreconditionError("RootedForest: parent cycle");
        }
        best = std::max(best, h);
    }
    return best;
}

std::vector<int> RootedForest::roots() const {
    std::vector<int> out;
    for (size_t v = 0; v < parent.size(); ++v)
        if (parent[v] == static_cast<int>(v)) out.push_back(static_cast<int>(v));
    return out;
}

bool RootedForest::closureContains(const Structure& g) const {
    const auto& adj = g.gaifmanAdjacency();
    for (int v = 0; v < g.size(); ++v) {
        for (int w : adj[v]) {
            bool related = false;
            for (int u = v; ; u = parent[u]) {
                if (u == w) { related = true; break; }
                if (parent[u] == u) break;
            }
            if (!related)
                for (int u = w; ; u = parent[u]) {
                    if (u == v) { related = true; break; }
                    if (parent[u] == u) break;
                }
            if (!related) return false;
        }
    }
    return true;
}

namespace {

struct TdSolver {
    const std::vector<std::vector<int>>& adj;
    std::unordered_map<std::uint32_t, int> memo;

    int solve(std::uint32_t mask) {
        if (mask == 0) return 0;
        auto it = memo.find(mask);
        if (it != memo.end()) return it->second;
        // Split into components first.
        std::uint32_t rest = mask;
        int result = 0;
        while (rest) {
            int s = __builtin_ctz(rest);
            std::uint32_t comp = 0, stack = 1u << s;
            while (stack) {
                int v = __builtin_ctz(stack);
                stack &= stack - 1;
                if (comp & (1u << v)) continue;
                comp |= 1u << v;
                for (int w : adj[v])
                    if ((mask >> w & 1u) && !(comp >> w & 1u)) stack |= 1u << w;
            }
            rest &= ~comp;
            result = std::max(result, solveConnected(comp));
        }
        memo.emplace(mask, result);
        return result;
    }

    int solveConnected(std::uint32_t mask) {
        if ((mask & (mask - 1)) == 0) return 1; // single vertex
        auto it = memo.find(mask);
        if (it != memo.end()) return it->second;
        int best = 32;
        for (std::uint32_t m = mask; m; m &= m - 1) {
            int v = __builtin_ctz(m);
            best = std::min(best, 1 + solve(mask & ~(1u << v)));
        }
        memo.emplace(mask, best);
        return best;
    }

    /// Replays an optimal elimination order to produce the certificate.
    void buildForest(std::uint32_t mask, int parentVertex, std::vector<int>& parent) {
        if (mask == 0) return;
        std::uint32_t rest = mask;
        while (rest) {
            int s = __builtin_ctz(rest);
            std::uint32_t comp = 0, stack = 1u << s;
            while (stack) {
                int v = __builtin_ctz(stack);
                stack &= stack - 1;
                if (comp & (1u << v)) continue;
                comp |= 1u << v;
                for (int w : adj[v])
                    if ((mask >> w & 1u) && !(comp >> w & 1u)) stack |= 1u << w;
            }
            rest &= ~comp;
            int target = solveConnected(comp);
            for (std::uint32_t m = comp; m; m &= m - 1) {
                int v = __builtin_ctz(m);
                if (1 + solve(comp & ~(1u << v)) == target) {
                    parent[v] = parentVertex < 0 ? v : parentVertex;
                    buildForest(comp & ~(1u << v), v, parent);
                    break;
                }
            }
        }
    }
};

} // namespace

TreeDepthResult treeDepth(const Structure& g, TdMode mode) {
    TreeDepthResult res;
    res.certificate.parent.assign(g.size(), 0);
    for (int v = 0; v < g.size(); ++v) res.certificate.parent[v] = v;
    if (g.empty()) return res;

    if (mode == TdMode::Bound) {
        // DFS forest: every graph edge joins an ancestor-descendant pair of
        // the forest, so its closure contains g and the height bounds td.
        const auto& adj = g.gaifmanAdjacency();
        std::vector<bool> seen(g.size(), false);
        std::vector<std::pair<int, int>> stack;
        for (int s = 0; s < g.size(); ++s) {
            if (seen[s]) continue;
            stack.emplace_back(s, s);
            while (!stack.empty()) {
                auto [v, p] = stack.back();
                stack.pop_back();
                if (seen[v]) continue;
                seen[v] = true;
                res.certificate.parent[v] = p;
                for (int w : adj[v])
                    if (!seen[w]) stack.emplace_back(w, v);
            }
        }
        res.depth = res.certificate.height();
        return res;
    }

    if (g.size() > 20)
        throw PreconditionError("treeDepth: exact mode limited to 20 vertices");
    TdSolver solver{g.gaifmanAdjacency(), {}};
    std::uint32_t all = g.size() == 32 ? ~0u : ((1u << g.size()) - 1);
    res.depth = solver.solve(all);
    solver.buildForest(all, -1, res.certificate.parent);
    return res;
}

RootedTree tdDecompose(const Structure& g, int h) {
    if (h < 1) throw PreconditionError("tdDecompose: h >= 1 required");
    TreeDepthResult td = treeDepth(g, TdMode::Exact);
    if (td.depth > h)
        throw PreconditionError("tdDecompose: tree-depth " + std::to_string(td.depth) +
                                " exceeds bound " + std::to_string(h));
    std::vector<int> parent = td.certificate.parent;
    std::vector<int> roots = td.certificate.roots();
    // Principal root: the smallest root keeps its place; other elimination
    // trees hang below it (the forest-to-tree scheme), which costs one height
    // level for the non-principal components.
    int principal = roots.front();
    for (int r : roots)
        if (r != principal) parent[r] = principal;

    RootedTree shape(parent, std::vector<int>(g.size(), 0), h);
    if (shape.height() > h)
        throw PreconditionError("tdDecompose: lifted forest exceeds height bound");
    // Color bits: bit i-1 of color(v) set iff v is adjacent in g to its
    // ancestor at height i.
    std::vector<int> colors(g.size(), 0);
    for (int v = 0; v < g.size(); ++v) {
        auto path = shape.rootPath(v);
        for (size_t i = 0; i + 1 < path.size(); ++i) {
            int u = path[i];
            if (g.adjacent(u, v)) colors[v] |= 1 << i;
        }
    }
    return RootedTree(std::move(parent), std::move(colors), h);
}

} // namespace folim
