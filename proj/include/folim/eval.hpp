#pragma once

#include <cstdint>
#include <optional>
#include <unordered_map>
#include <vector>

#include "folim/formula.hpp"
#include "folim/rational.hpp"
#include "folim/structure.hpp"

namespace folim {

/// Evaluates formulas on one structure. Quantified subformulas are memoized
/// on (subformula, assignment restricted to its free variables), so repeated
/// subtrees do not blow up. Memo tables live per Evaluator instance.
class Evaluator {
public:
    explicit Evaluator(const Structure& s) : s_(&s) {}

    /// assignment[i] is the value of x_{i+1}; must cover freeVars(f).
    bool satisfies(const Formula& f, const std::vector<int>& assignment);

private:
    bool eval(const FormulaNode* n, std::vector<int>& env);

    const Structure* s_;
    std::unordered_map<std::string, bool> memo_;
};

bool satisfies(const Structure& a, const Formula& f, const std::vector<int>& assignment);

/// All satisfying p-tuples of f on a, ordered lexicographically.
/// Requires p >= rank(f) and a nonempty.
std::vector<std::vector<int>> omega(const Structure& a, const Formula& f, int p);

/// Exact Stone pairing |Omega_f(a)| / n^p. Sentences give exactly 0 or 1.
Rational stonePairing(const Structure& a, const Formula& f, int p);

struct PairingEstimate {
    double pointEstimate = 0.0;
    long long sampleCount = 0;
    double confidenceRadius = 0.0; // Hoeffding: sqrt(ln(2/delta) / (2 samples))
    std::uint64_t seed = 0;
};

/// Monte-Carlo pairing estimate over i.i.d. uniform p-tuples. The tuple
/// stream is counter-based: coordinate i of sample j is drawn from
/// splitmix64 hashes of (seed, j, i) with rejection, so a (seed, samples)
/// pair always produces the same estimate.
PairingEstimate stonePairingSampled(const Structure& a, const Formula& f, int p,
                                    long long samples, double delta, std::uint64_t seed);

/// Number of adjacency-preserving maps V(f) -> V(g).
long long homCount(const Structure& f, const Structure& g);

/// t(F,G) = hom(F,G) / |G|^|F|.
Rational homDensity(const Structure& f, const Structure& g);

/// Ordered induced-subgraph density: the number of injective ordered tuples
/// of G inducing F, divided by |G|^|F|. (The unordered count is this times
/// |Aut(F)| divided by |F|!.)
Rational inducedDensity(const Structure& f, const Structure& g);

} // namespace folim
