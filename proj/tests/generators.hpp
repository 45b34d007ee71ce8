#pragma once

// Seeded random inputs for property tests.

#include <cmath>
#include <random>

#include "condbell/prob_space.hpp"

namespace condbell::testing {

using Rng = std::mt19937_64;

/// Random point of the probability simplex on 4 entries; with probability
/// `zeroChance` each entry is forced to zero (at least one stays positive).
inline Eigen::Matrix2d randomSimplex2x2(Rng& rng, double zeroChance = 0.0) {
    std::exponential_distribution<double> expo(1.0);
    std::bernoulli_distribution zero(zeroChance);
    Eigen::Matrix2d m;
    do {
        for (int k = 0; k < 4; ++k) m(k / 2, k % 2) = zero(rng) ? 0.0 : expo(rng);
    } while (m.sum() <= 0.0);
    return m / m.sum();
}

inline SettingDistribution randomWeights(Rng& rng) { return SettingDistribution(randomSimplex2x2(rng, 0.15)); }

inline SettingDistribution randomProductWeights(Rng& rng, bool strictlyPositive = true) {
    std::uniform_real_distribution<double> u(strictlyPositive ? 0.05 : 0.0, strictlyPositive ? 0.95 : 1.0);
    return SettingDistribution::product(u(rng), u(rng));
}

inline ConditionalTable randomTable(Rng& rng) {
    std::array<OutcomeBlock, 4> blocks;
    for (auto& b : blocks) b = randomSimplex2x2(rng, 0.1);
    return ConditionalTable(blocks);
}

/// Block from one-side means (ma, mb) and correlation q:
/// q(e, f) = (1 + e ma + f mb + e f q) / 4.
inline OutcomeBlock blockFromMoments(double ma, double mb, double q) {
    OutcomeBlock b;
    for (int e : kOutcomes)
        for (int f : kOutcomes) b(outcomeIndex(e), outcomeIndex(f)) = (1.0 + e * ma + f * mb + e * f * q) / 4.0;
    return b;
}

/// Random non-signaling table: marginals shared across blocks, correlations drawn
/// from the full range that keeps each block nonnegative. `zeroMarginalChance`
/// forces unbiased marginals, which makes CHSH violations common.
inline ConditionalTable randomConsistentTable(Rng& rng, double zeroMarginalChance = 0.5) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::bernoulli_distribution unbiased(zeroMarginalChance);
    const bool z = unbiased(rng);
    const std::array<double, 2> ma{z ? 0.0 : u(rng), z ? 0.0 : u(rng)};
    const std::array<double, 2> mb{z ? 0.0 : u(rng), z ? 0.0 : u(rng)};
    std::array<OutcomeBlock, 4> blocks;
    for (int i : kSettings) {
        for (int j : kSettings) {
            const double x = ma[i - 1];
            const double y = mb[j - 1];
            const double lo = -1.0 + std::abs(x + y);
            const double hi = 1.0 - std::abs(x - y);
            // Push toward the extremes so both feasible and infeasible tables are common.
            const double t = std::pow(unit(rng), 0.35);
            const double q = unit(rng) < 0.5 ? lo + (hi - lo) * (1.0 - t) * 0.5 : hi - (hi - lo) * (1.0 - t) * 0.5;
            OutcomeBlock b = blockFromMoments(x, y, q);
            b = b.cwiseMax(0.0);
            blocks[pairIndex(i, j)] = b;
        }
    }
    return ConditionalTable(blocks);
}

}  // namespace condbell::testing
