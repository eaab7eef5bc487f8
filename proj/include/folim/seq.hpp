#pragma once

#include <map>
#include <string>
#include <vector>

#include "folim/eval.hpp"
#include "folim/formula.hpp"
#include "folim/rational.hpp"
#include "folim/structure.hpp"

namespace folim {

struct Trajectory {
    std::vector<Formula> formulas;
    std::vector<int> arities;
    /// values[n][j] = Stone pairing of formulas[j] on the n-th structure.
    std::vector<std::vector<Rational>> values;
};

/// Exact pairing of each formula against each structure of the sequence.
/// All structures must be nonempty and share a signature.
Trajectory trajectory(const std::vector<Structure>& seq,
                      const std::vector<Formula>& formulas,
                      const std::vector<int>& arities);

/// Component masses |A_i|/|A| sorted non-increasing.
std::vector<Rational> spectrum(const Structure& a);

struct SpectrumCheck {
    Rational lhs; ///< sum of masses^(k+1)
    Rational rhs; ///< pairing of the (k+1)-variable same-component conjunction
};

/// Both sides of the spectrum identity: sum_i nu(C_i)^{k+1} and the Stone
/// pairing of comp(x1,x2) & ... & comp(xk,xk+1), where the component
/// relation is materialized semantically from the Gaifman components.
SpectrumCheck spectrumNormCheck(const Structure& a, int k);

/// Maximal clip cutoffs evaluated on the available data: C0[n] is the
/// largest M such that for all later rows the first M spectrum entries
/// deviate from the limit by at most the limit tail mass beyond M.
/// Spectra are padded with zeros against the limit support.
std::vector<int> clip(const std::vector<std::vector<Rational>>& spectra,
                      const std::vector<Rational>& limitSpectrum);

struct CombDecomposition {
    /// columns[i][n] = matched component for retained index i in structure n.
    std::vector<std::vector<Structure>> columns;
    std::vector<Rational> columnMasses; ///< limit mass per column
    std::vector<Structure> residues;    ///< per-n union of unmatched components
    std::vector<int> clipFunction;      ///< clip() of the sequence spectra
};

/// Matches the large components across the sequence: components are grouped
/// by equal limit spectrum mass; within a group the per-n assignment greedily
/// minimizes the discrepancy of rank-r unary pairing statistics against the
/// previous structure, lexicographic statistic order breaking ties.
CombDecomposition combDecompose(const std::vector<Structure>& seq, int r,
                                const std::vector<Rational>& limitSpectrum);

struct BallType {
    std::string key; ///< canonical form of the rooted ball
    int size = 0;    ///< number of vertices in the ball
};

/// Distribution of rooted r-ball isomorphism types: canonical form of
/// (B_g(v,r), v) -> frequency. Frequencies sum to 1. Canonicalization is
/// exact (per-ball brute force over a refined vertex partition) and rejects
/// balls too large to canonicalize.
std::vector<std::pair<BallType, Rational>> ballStatistics(const Structure& g, int r);

/// Rank-r unary statistic vector used for comb matching: degree-threshold
/// pairings up to r+1 plus one pairing per unary relation.
std::vector<Rational> unaryStatistics(const Structure& a, int r);

} // namespace folim
