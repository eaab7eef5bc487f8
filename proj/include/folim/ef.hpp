#pragma once

#include <optional>
#include <vector>

#include "folim/rational.hpp"
#include "folim/structure.hpp"

namespace folim {

/// Does Duplicator win the r-round Ehrenfeucht-Fraisse game on (a, aTuple)
/// vs (b, bTuple)? Exhaustive game-tree search; positions are memoized on the
/// set of selected pairs, and positions violating partial isomorphism prune
/// immediately. Equivalent to agreement on all formulas of quantifier rank
/// <= r extending the tuples.
bool efEquivalent(const Structure& a, const std::vector<int>& aTuple,
                  const Structure& b, const std::vector<int>& bTuple, int rounds);

struct DistResult {
    /// False when the structures looked equivalent through rMax rounds, in
    /// which case the distance is only known to be <= 2^-(rMax+1).
    bool determined = false;
    /// Least round count at which Duplicator loses (when determined).
    int failedAt = 0;
    /// 2^-failedAt, or 0 when undetermined.
    Rational value;
};

/// dist_0-style ultrametric between structures-with-tuples: 2^-r for the
/// least r <= rMax at which the EF game fails.
DistResult efDistance(const Structure& a, const std::vector<int>& aTuple,
                      const Structure& b, const std::vector<int>& bTuple, int rMax);

inline DistResult dist0(const Structure& a, const Structure& b, int rMax) {
    return efDistance(a, {}, b, {}, rMax);
}

} // namespace folim
