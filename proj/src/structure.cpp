#include "folim/structure.hpp"

#include <algorithm>
#include <set>

namespace folim {

Signature::Signature(std::vector<Relation> relations, int colorCount,
                     bool hasRoot, bool hasPrincipal)
    : rels_(std::move(relations)), colorCount_(colorCount),
      hasRoot_(hasRoot), hasPrincipal_(hasPrincipal) {
    std::set<std::string> names;
    for (const auto& r : rels_) {
        if (!names.insert(r.name).second)
            throw PreconditionError("Signature: duplicate relation name '" + r.name + "'");
        if (r.name == "adj" && r.arity != 2)
            throw PreconditionError("Signature: 'adj' must have arity 2");
        if ((r.name == "R" || r.name == "P") && r.arity != 1)
            throw PreconditionError("Signature: '" + r.name + "' must have arity 1");
        if (r.arity <= 0)
            throw PreconditionError("Signature: relation '" + r.name + "' needs positive arity");
    }
}

static std::vector<Relation> withColors(std::vector<Relation> rels, int colorCount) {
    for (int i = 1; i <= colorCount; ++i)
        rels.push_back({"C" + std::to_string(i), 1});
    return rels;
}

Signature Signature::graph(int colorCount) {
    return Signature(withColors({{"adj", 2}}, colorCount), colorCount, false, false);
}

Signature Signature::tree(int colorCount) {
    return Signature(withColors({{"adj", 2}, {"R", 1}}, colorCount), colorCount, true, false);
}

Signature Signature::forest(int colorCount) {
    return Signature(withColors({{"adj", 2}, {"R", 1}, {"P", 1}}, colorCount),
                     colorCount, true, true);
}

std::optional<int> Signature::indexOf(const std::string& name) const {
    for (int i = 0; i < size(); ++i)
        if (rels_[i].name == name) return i;
    return std::nullopt;
}

int Signature::requireIndex(const std::string& name) const {
    auto i = indexOf(name);
    if (!i) throw PreconditionError("Signature: unknown relation '" + name + "'");
    return *i;
}

Structure::Structure(Signature sig, int size) : sig_(std::move(sig)), n_(size) {
    if (size < 0) throw PreconditionError("Structure: negative size");
    tables_.resize(sig_.size());
}

Structure Structure::graph(int n, const std::vector<std::pair<int, int>>& edges,
                           const std::vector<int>& colors) {
    int colorCount = 0;
    for (int c : colors) colorCount = std::max(colorCount, c + 1);
    Structure s(Signature::graph(colorCount), n);
    int adjIdx = s.sig_.requireIndex("adj");
    for (auto [u, v] : edges) s.addEdge(adjIdx, u, v);
    if (!colors.empty()) {
        if (static_cast<int>(colors.size()) != n)
            throw PreconditionError("Structure::graph: color list length != n");
        for (int v = 0; v < n; ++v)
            s.addTuple(s.sig_.requireIndex("C" + std::to_string(colors[v] + 1)), {v});
    }
    s.freeze();
    return s;
}

void Structure::addEdge(int relIndex, int u, int v) {
    if (u == v) throw PreconditionError("Structure: loop edge");
    addTuple(relIndex, {u, v});
    addTuple(relIndex, {v, u});
}

void Structure::addTuple(int relIndex, std::vector<int> tuple) {
    if (relIndex < 0 || relIndex >= sig_.size())
        throw PreconditionError("Structure: relation index out of range");
    const Relation& rel = sig_.at(relIndex);
    if (static_cast<int>(tuple.size()) != rel.arity)
        throw PreconditionError("Structure: tuple arity mismatch for '" + rel.name + "'");
    for (int v : tuple)
        if (v < 0 || v >= n_)
            throw PreconditionError("Structure: tuple entry out of domain for '" + rel.name + "'");
    tables_[relIndex].push_back(std::move(tuple));
    frozen_ = false;
}

void Structure::freeze() {
    for (auto& t : tables_) {
        std::sort(t.begin(), t.end());
        t.erase(std::unique(t.begin(), t.end()), t.end());
    }
    frozen_ = true;
    gaifmanBuilt_ = false;
    adjBuilt_ = false;
}

bool Structure::holds(int relIndex, const std::vector<int>& tuple) const {
    const auto& t = tables_[relIndex];
    return std::binary_search(t.begin(), t.end(), tuple);
}

const std::vector<std::vector<int>>& Structure::gaifmanAdjacency() const {
    if (!gaifmanBuilt_) {
        std::vector<std::set<int>> nb(n_);
        for (int r = 0; r < sig_.size(); ++r) {
            if (sig_.at(r).arity < 2) continue;
            for (const auto& tup : tables_[r])
                for (size_t i = 0; i < tup.size(); ++i)
                    for (size_t j = i + 1; j < tup.size(); ++j)
                        if (tup[i] != tup[j]) {
                            nb[tup[i]].insert(tup[j]);
                            nb[tup[j]].insert(tup[i]);
                        }
        }
        gaifman_.assign(n_, {});
        for (int v = 0; v < n_; ++v) gaifman_[v].assign(nb[v].begin(), nb[v].end());
        gaifmanBuilt_ = true;
    }
    return gaifman_;
}

const std::vector<std::vector<int>>& Structure::adjacency() const {
    if (!adjBuilt_) {
        int idx = sig_.requireIndex("adj");
        adj_.assign(n_, {});
        for (const auto& tup : tables_[idx]) adj_[tup[0]].push_back(tup[1]);
        for (auto& v : adj_) std::sort(v.begin(), v.end());
        adjBuilt_ = true;
    }
    return adj_;
}

bool Structure::adjacent(int u, int v) const {
    const auto& a = adjacency();
    return std::binary_search(a[u].begin(), a[u].end(), v);
}

std::vector<std::vector<int>> Structure::connectedComponents() const {
    const auto& g = gaifmanAdjacency();
    std::vector<int> comp(n_, -1);
    std::vector<std::vector<int>> out;
    for (int s = 0; s < n_; ++s) {
        if (comp[s] != -1) continue;
        std::vector<int> stack{s}, members;
        comp[s] = static_cast<int>(out.size());
        while (!stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            members.push_back(v);
            for (int w : g[v])
                if (comp[w] == -1) {
                    comp[w] = comp[s];
                    stack.push_back(w);
                }
        }
        std::sort(members.begin(), members.end());
        out.push_back(std::move(members));
    }
    return out;
}

Structure Structure::inducedSubstructure(const std::vector<int>& vertices) const {
    std::vector<int> relabel(n_, -1);
    for (size_t i = 0; i < vertices.size(); ++i) {
        int v = vertices[i];
        if (v < 0 || v >= n_) throw PreconditionError("inducedSubstructure: vertex out of range");
        relabel[v] = static_cast<int>(i);
    }
    Structure out(sig_, static_cast<int>(vertices.size()));
    for (int r = 0; r < sig_.size(); ++r) {
        for (const auto& tup : tables_[r]) {
            std::vector<int> mapped;
            mapped.reserve(tup.size());
            bool keep = true;
            for (int v : tup) {
                if (relabel[v] < 0) { keep = false; break; }
                mapped.push_back(relabel[v]);
            }
            if (keep) out.tables_[r].push_back(std::move(mapped));
        }
    }
    out.freeze();
    return out;
}

bool Structure::operator==(const Structure& o) const {
    return sig_ == o.sig_ && n_ == o.n_ && tables_ == o.tables_;
}

} // namespace folim
