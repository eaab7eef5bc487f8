#include "folim/io.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "folim/parser.hpp"

namespace folim {

using nlohmann::json;

namespace {

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

json parseJson(const std::string& path) {
    try {
        return json::parse(slurp(path));
    } catch (const json::parse_error& e) {
        throw ParseError("'" + path + "': " + e.what());
    }
}

Signature signatureFromJson(const json& j) {
    std::vector<Relation> rels;
    for (const auto& r : j.at("relations"))
        rels.push_back({r.at("name").get<std::string>(), r.at("arity").get<int>()});
    int colors = j.value("colors", 0);
    bool hasRoot = false, hasPrincipal = false;
    for (const auto& r : rels) {
        if (r.name == "R") hasRoot = true;
        if (r.name == "P") hasPrincipal = true;
    }
    return Signature(rels, colors, hasRoot, hasPrincipal);
}

json signatureToJson(const Signature& sig) {
    json rels = json::array();
    for (const auto& r : sig.relations()) rels.push_back({{"name", r.name}, {"arity", r.arity}});
    return json{{"relations", rels}, {"colors", sig.colorCount()}};
}

} // namespace

Structure readEdgeList(const std::string& path, const std::string& colorPath) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open '" + path + "'");
    long long n = 0, m = 0;
    if (!(in >> n >> m)) throw ParseError("'" + path + "': expected header 'n m'");
    if (n < 0 || m < 0) throw ParseError("'" + path + "': negative header");
    std::vector<std::pair<int, int>> edges;
    for (long long i = 0; i < m; ++i) {
        long long u = 0, v = 0;
        if (!(in >> u >> v)) throw ParseError("'" + path + "': expected edge line");
        if (u < 0 || u >= n || v < 0 || v >= n)
            throw ParseError("'" + path + "': edge endpoint out of range");
        edges.emplace_back(static_cast<int>(u), static_cast<int>(v));
    }
    std::vector<int> colors;
    if (!colorPath.empty()) {
        std::ifstream cin(colorPath);
        if (!cin) throw ParseError("cannot open '" + colorPath + "'");
        long long c = 0;
        while (cin >> c) colors.push_back(static_cast<int>(c));
        if (static_cast<long long>(colors.size()) != n)
            throw ParseError("'" + colorPath + "': expected " + std::to_string(n) + " colors");
    }
    try {
        return Structure::graph(static_cast<int>(n), edges, colors);
    } catch (const PreconditionError& e) {
        throw ParseError("'" + path + "': " + e.what());
    }
}

Structure readStructureJson(const std::string& path) {
    json j = parseJson(path);
    try {
        Signature sig = signatureFromJson(j.at("signature"));
        Structure s(sig, j.at("size").get<int>());
        for (const auto& [name, rows] : j.at("tables").items()) {
            int rel = sig.requireIndex(name);
            for (const auto& row : rows) {
                std::vector<int> tup;
                for (const auto& v : row) tup.push_back(v.get<int>());
                s.addTuple(rel, tup);
            }
        }
        s.freeze();
        return s;
    } catch (const json::exception& e) {
        throw ParseError("'" + path + "': " + e.what());
    }
}

std::string structureToJson(const Structure& s) {
    json tables = json::object();
    for (int r = 0; r < s.signature().size(); ++r) {
        json rows = json::array();
        for (const auto& tup : s.table(r)) rows.push_back(tup);
        tables[s.signature().at(r).name] = rows;
    }
    json j{{"signature", signatureToJson(s.signature())},
           {"size", s.size()},
           {"tables", tables}};
    return j.dump(2);
}

RootedTree readTreeJson(const std::string& path) {
    json j = parseJson(path);
    try {
        int n = j.at("n").get<int>();
        std::vector<int> parent = j.at("parent").get<std::vector<int>>();
        std::vector<int> color = j.at("color").get<std::vector<int>>();
        int h = j.at("h").get<int>();
        if (static_cast<int>(parent.size()) != n || static_cast<int>(color.size()) != n)
            throw ParseError("'" + path + "': array lengths disagree with n");
        return RootedTree(std::move(parent), std::move(color), h);
    } catch (const json::exception& e) {
        throw ParseError("'" + path + "': " + e.what());
    } catch (const PreconditionError& e) {
        throw ParseError("'" + path + "': " + e.what());
    }
}

std::string treeToJson(const RootedTree& t) {
    json j{{"n", t.size()},
           {"parent", t.parents()},
           {"color", t.colors()},
           {"h", t.heightBound()}};
    return j.dump(2);
}

TreeStatistic readStatisticJson(const std::string& path) {
    json j = parseJson(path);
    try {
        TreeStatistic stat;
        stat.h = j.at("h").get<int>();
        stat.r = j.at("r").get<int>();
        stat.cap = j.value("cap", stat.r + stat.h);
        // Types may reference earlier entries only.
        for (const auto& tj : j.at("types")) {
            int color = tj.at("color").get<int>();
            std::vector<std::pair<CapType, int>> children;
            if (tj.contains("children"))
                for (const auto& cj : tj.at("children")) {
                    int id = cj.at("type").get<int>();
                    if (id < 0 || id >= static_cast<int>(stat.types.size()))
                        throw ParseError("type children must reference earlier ids");
                    children.emplace_back(stat.types[id], cj.at("count").get<int>());
                }
            stat.types.push_back(children.empty()
                                     ? CapType::leaf(color)
                                     : CapType(color, std::move(children), stat.cap));
        }
        for (const auto& tj : j.at("tuples")) {
            stat.tuples.push_back(tj.at("path").get<std::vector<int>>());
            stat.mass.push_back(Rational::parse(tj.at("mass").get<std::string>()));
        }
        std::map<std::vector<int>, int> index;
        for (size_t i = 0; i < stat.tuples.size(); ++i)
            index[stat.tuples[i]] = static_cast<int>(i);
        for (const auto& wj : j.at("w")) {
            int to = wj.at("to").get<int>();
            int from = wj.at("from").get<int>();
            if (to < 0 || to >= static_cast<int>(stat.tuples.size()) || from < 0 ||
                from >= static_cast<int>(stat.tuples.size()))
                throw ParseError("w entry references a missing tuple");
            std::vector<int> expectedPrefix(stat.tuples[to].begin(),
                                            stat.tuples[to].end() - 1);
            if (stat.tuples[from] != expectedPrefix)
                throw ParseError("w entry 'from' is not the prefix of 'to'");
            stat.wPrime[to] = wj.at("count").get<int>();
        }
        stat.sortCanonically();
        stat.validate();
        return stat;
    } catch (const json::exception& e) {
        throw ParseError("'" + path + "': " + e.what());
    } catch (const PreconditionError& e) {
        throw ParseError("'" + path + "': " + e.what());
    }
}

std::string statisticToJson(const TreeStatistic& stat) {
    // Types serialized in dependency order: children before parents.
    std::vector<int> order(stat.types.size());
    std::vector<int> newId(stat.types.size(), -1);
    {
        std::vector<std::pair<size_t, int>> byDepth; // (key length as proxy, id)
        for (size_t i = 0; i < stat.types.size(); ++i)
            byDepth.emplace_back(stat.types[i].key().size(), static_cast<int>(i));
        std::sort(byDepth.begin(), byDepth.end());
        for (size_t i = 0; i < byDepth.size(); ++i) {
            order[i] = byDepth[i].second;
            newId[byDepth[i].second] = static_cast<int>(i);
        }
    }
    json types = json::array();
    for (size_t i = 0; i < order.size(); ++i) {
        const CapType& t = stat.types[order[i]];
        json children = json::array();
        for (const auto& [child, cnt] : t.children()) {
            int childOld = -1;
            for (size_t k = 0; k < stat.types.size(); ++k)
                if (stat.types[k] == child) { childOld = static_cast<int>(k); break; }
            if (childOld < 0)
                throw PreconditionError("statisticToJson: child type not interned");
            children.push_back({{"type", newId[childOld]}, {"count", cnt}});
        }
        types.push_back({{"color", t.color()}, {"children", children}});
    }
    json tuples = json::array();
    for (size_t i = 0; i < stat.tuples.size(); ++i) {
        std::vector<int> path;
        for (int id : stat.tuples[i]) path.push_back(newId[id]);
        tuples.push_back({{"path", path}, {"mass", stat.mass[i].str()}});
    }
    json w = json::array();
    for (const auto& [to, count] : stat.wPrime) {
        std::vector<int> prefix(stat.tuples[to].begin(), stat.tuples[to].end() - 1);
        int from = stat.tupleIndex(prefix);
        w.push_back({{"from", from}, {"to", to}, {"count", count}});
    }
    json j{{"h", stat.h}, {"r", stat.r}, {"cap", stat.cap},
           {"types", types}, {"tuples", tuples}, {"w", w}};
    return j.dump(2);
}

BasicScheme readSchemeJson(const std::string& path) {
    json j = parseJson(path);
    try {
        BasicScheme scheme;
        scheme.name = j.value("name", "scheme");
        scheme.source = signatureFromJson(j.at("source"));
        scheme.target = signatureFromJson(j.at("target"));
        scheme.exponent = j.value("exponent", 1);
        const auto& defs = j.at("defs");
        for (const auto& rel : scheme.target.relations()) {
            if (!defs.contains(rel.name))
                throw ParseError("missing defining formula for '" + rel.name + "'");
            scheme.defs.push_back(
                parseFormula(defs.at(rel.name).get<std::string>(), scheme.source));
        }
        scheme.validate();
        return scheme;
    } catch (const json::exception& e) {
        throw ParseError("'" + path + "': " + e.what());
    } catch (const PreconditionError& e) {
        throw ParseError("'" + path + "': " + e.what());
    }
}

} // namespace folim
