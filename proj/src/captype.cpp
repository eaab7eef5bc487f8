#include "folim/captype.hpp"

#include <algorithm>
#include <map>

namespace folim {

namespace {

std::string buildKey(int color, const std::vector<std::pair<CapType, int>>& children) {
    std::string k = "(" + std::to_string(color);
    for (const auto& [ct, cnt] : children) {
        k += '|';
        k += std::to_string(cnt);
        k += '*';
        k += ct.key();
    }
    k += ')';
    return k;
}

} // namespace

CapType CapType::leaf(int color) {
    CapType t;
    t.color_ = color;
    t.key_ = buildKey(color, {});
    return t;
}

CapType::CapType(int color, std::vector<std::pair<CapType, int>> children, int cap)
    : color_(color) {
    if (cap < 1) throw PreconditionError("CapType: cap >= 1 required");
    // Merge equal child types, then cap.
    std::map<std::string, std::pair<CapType, int>> merged;
    for (auto& [ct, cnt] : children) {
        if (cnt < 1) throw PreconditionError("CapType: child count >= 1 required");
        auto it = merged.find(ct.key());
        if (it == merged.end())
            merged.emplace(ct.key(), std::make_pair(ct, cnt));
        else
            it->second.second += cnt;
    }
    for (auto& [key, entry] : merged) {
        entry.second = std::min(entry.second, cap);
        children_.push_back(entry);
    }
    key_ = buildKey(color_, children_);
}

std::vector<CapType> capTypesOfAll(const RootedTree& t, int K) {
    if (K < 1) throw PreconditionError("capType: cap K >= 1 required");
    int n = t.size();
    const auto& ch = t.children();
    // Process children before parents (order by decreasing height).
    std::vector<int> order(n);
    for (int v = 0; v < n; ++v) order[v] = v;
    std::vector<int> heights(n);
    for (int v = 0; v < n; ++v) heights[v] = t.height(v);
    std::sort(order.begin(), order.end(),
              [&heights](int a, int b) { return heights[a] > heights[b]; });
    std::vector<CapType> types(n);
    for (int v : order) {
        if (ch[v].empty()) {
            types[v] = CapType::leaf(t.color(v));
        } else {
            std::vector<std::pair<CapType, int>> kids;
            kids.reserve(ch[v].size());
            for (int c : ch[v]) kids.emplace_back(types[c], 1);
            types[v] = CapType(t.color(v), std::move(kids), K);
        }
    }
    return types;
}

CapType capType(const RootedTree& t, int v, int K) {
    if (v < 0 || v >= t.size()) throw PreconditionError("capType: vertex out of range");
    return capTypesOfAll(t, K)[v];
}

EncodePath encodeVertex(const RootedTree& t, int v, int K) {
    if (v < 0 || v >= t.size()) throw PreconditionError("encodeVertex: vertex out of range");
    auto types = capTypesOfAll(t, K);
    EncodePath path;
    for (int u : t.rootPath(v)) path.push_back(types[u]);
    return path;
}

std::string encodePathKey(const EncodePath& path) {
    std::string k = "[";
    for (const auto& t : path) k += t.key();
    k += ']';
    return k;
}

} // namespace folim
