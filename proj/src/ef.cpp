#include "folim/ef.hpp"

#include <algorithm>
#include <string>
#include <unordered_map>

namespace folim {

namespace {

using Pairs = std::vector<std::pair<int, int>>;

class Game {
public:
    Game(const Structure& a, const Structure& b) : a_(a), b_(b) {
        if (!(a.signature() == b.signature()))
            throw PreconditionError("efEquivalent: signatures differ");
    }

    /// The new pair (x, y) is consistent with an already-valid position:
    /// equalities line up and every relation tuple over selected elements
    /// that involves the new pair agrees between the structures.
    bool consistent(const Pairs& pos, int x, int y) const {
        for (auto [u, v] : pos) {
            if ((u == x) != (v == y)) return false;
        }
        Pairs ext = pos;
        ext.emplace_back(x, y);
        const Signature& sig = a_.signature();
        for (int r = 0; r < sig.size(); ++r) {
            int arity = sig.at(r).arity;
            // Every tuple over the selected elements using (x,y) at least once.
            std::vector<int> idx(arity, 0);
            while (true) {
                bool usesNew = false;
                for (int i = 0; i < arity; ++i)
                    if (idx[i] == static_cast<int>(ext.size()) - 1) usesNew = true;
                if (usesNew) {
                    std::vector<int> ta(arity), tb(arity);
                    for (int i = 0; i < arity; ++i) {
                        ta[i] = ext[idx[i]].first;
                        tb[i] = ext[idx[i]].second;
                    }
                    if (a_.holds(r, ta) != b_.holds(r, tb)) return false;
                }
                int i = arity - 1;
                while (i >= 0 && idx[i] == static_cast<int>(ext.size()) - 1) idx[i--] = 0;
                if (i < 0) break;
                ++idx[i];
            }
        }
        return true;
    }

    bool validInitial(const Pairs& pos) const {
        Pairs partial;
        for (auto [x, y] : pos) {
            if (!consistentAgainst(partial, x, y)) return false;
            partial.emplace_back(x, y);
        }
        return true;
    }

    bool duplicatorWins(Pairs pos, int rounds) {
        normalize(pos);
        if (rounds == 0) return true;
        std::string key = keyOf(pos, rounds);
        auto it = memo_.find(key);
        if (it != memo_.end()) return it->second;
        bool win = true;
        // Spoiler plays in a: Duplicator needs an answer in b.
        for (int x = 0; x < a_.size() && win; ++x) {
            bool answered = false;
            for (int y = 0; y < b_.size() && !answered; ++y) {
                if (!consistent(pos, x, y)) continue;
                Pairs next = pos;
                next.emplace_back(x, y);
                if (duplicatorWins(std::move(next), rounds - 1)) answered = true;
            }
            if (!answered) win = false;
        }
        // Spoiler plays in b.
        for (int y = 0; y < b_.size() && win; ++y) {
            bool answered = false;
            for (int x = 0; x < a_.size() && !answered; ++x) {
                if (!consistent(pos, x, y)) continue;
                Pairs next = pos;
                next.emplace_back(x, y);
                if (duplicatorWins(std::move(next), rounds - 1)) answered = true;
            }
            if (!answered) win = false;
        }
        memo_.emplace(std::move(key), win);
        return win;
    }

private:
    bool consistentAgainst(const Pairs& pos, int x, int y) const {
        return consistent(pos, x, y);
    }

    static void normalize(Pairs& pos) {
        std::sort(pos.begin(), pos.end());
        pos.erase(std::unique(pos.begin(), pos.end()), pos.end());
    }

    static std::string keyOf(const Pairs& pos, int rounds) {
        std::string key = std::to_string(rounds);
        for (auto [x, y] : pos) {
            key += ';';
            key += std::to_string(x);
            key += ',';
            key += std::to_string(y);
        }
        return key;
    }

    const Structure& a_;
    const Structure& b_;
    std::unordered_map<std::string, bool> memo_;
};

} // namespace

bool efEquivalent(const Structure& a, const std::vector<int>& aTuple,
                  const Structure& b, const std::vector<int>& bTuple, int rounds) {
    if (aTuple.size() != bTuple.size())
        throw PreconditionError("efEquivalent: tuple length mismatch");
    if (rounds < 0) throw PreconditionError("efEquivalent: negative round count");
    Game game(a, b);
    Pairs pos;
    for (size_t i = 0; i < aTuple.size(); ++i) {
        int x = aTuple[i], y = bTuple[i];
        if (x < 0 || x >= a.size() || y < 0 || y >= b.size())
            throw PreconditionError("efEquivalent: tuple entry out of range");
        pos.emplace_back(x, y);
    }
    if (!game.validInitial(pos)) return false;
    return game.duplicatorWins(std::move(pos), rounds);
}

DistResult efDistance(const Structure& a, const std::vector<int>& aTuple,
                      const Structure& b, const std::vector<int>& bTuple, int rMax) {
    if (rMax < 1) throw PreconditionError("efDistance: rMax >= 1 required");
    DistResult res;
    for (int r = 0; r <= rMax; ++r) {
        if (!efEquivalent(a, aTuple, b, bTuple, r)) {
            res.determined = true;
            res.failedAt = r;
            res.value = Rational(1, 1) / Rational::power(2, r);
            return res;
        }
    }
    res.determined = false;
    res.value = Rational(0);
    return res;
}

} // namespace folim
