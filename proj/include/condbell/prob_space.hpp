#pragma once

#include <array>

#include <Eigen/Core>

#include "condbell/errors.hpp"
#include "condbell/types.hpp"

namespace condbell {

using Weights = Eigen::Matrix2d;
/// Conditional outcome law for one setting pair; entry (r, c) is q(eps, eps') with
/// r = outcomeIndex(eps), c = outcomeIndex(eps').
using OutcomeBlock = Eigen::Matrix2d;
using AtomVector = Eigen::Matrix<double, 16, 1>;

/// Joint law p(a=i, b=j) of the two setting generators; entry (i-1, j-1).
class SettingDistribution {
public:
    /// Throws InvalidDistribution on a negative entry or when the weights do not
    /// sum to one within `tol`.
    explicit SettingDistribution(const Weights& weights, double tol = kDefaultTolerance);

    static SettingDistribution uniform();
    /// Independent generators with p(a=1)=pA1 and p(b=1)=pB1.
    static SettingDistribution product(double pA1, double pB1, double tol = kDefaultTolerance);
    static SettingDistribution concentrated(int i, int j);

    const Weights& weights() const noexcept { return weights_; }
    double operator()(int i, int j) const { return weights_(i - 1, j - 1); }

    /// p(a=i)
    double marginalA(int i) const { return weights_.row(i - 1).sum(); }
    /// p(b=j)
    double marginalB(int j) const { return weights_.col(j - 1).sum(); }

private:
    Weights weights_;
};

/// The four conditional laws q(eps, eps' | i, j).
class ConditionalTable {
public:
    /// Throws InvalidDistribution if a block has a negative entry or does not sum
    /// to one within `tol`.
    ConditionalTable(const std::array<OutcomeBlock, 4>& blocks, double tol = kDefaultTolerance);

    /// Same block for every setting pair.
    static ConditionalTable constant(const OutcomeBlock& block, double tol = kDefaultTolerance);

    const OutcomeBlock& block(int i, int j) const { return blocks_[pairIndex(i, j)]; }
    const std::array<OutcomeBlock, 4>& blocks() const noexcept { return blocks_; }

    double operator()(int i, int j, int eps, int epsPrime) const {
        return block(i, j)(outcomeIndex(eps), outcomeIndex(epsPrime));
    }

    /// Marginal of A_i within block (i, j): sum over eps' of q(eps, eps' | i, j).
    double marginalA(int i, int j, int eps) const { return block(i, j).row(outcomeIndex(eps)).sum(); }
    /// Marginal of B_j within block (i, j).
    double marginalB(int i, int j, int epsPrime) const { return block(i, j).col(outcomeIndex(epsPrime)).sum(); }

    /// Q_ij = sum eps*eps' q(eps, eps' | i, j).
    double correlation(int i, int j) const;

    /// Largest difference between the one-side marginals of two blocks that
    /// share a setting (zero iff the table is non-signaling).
    double marginalDiscrepancy() const;

private:
    std::array<OutcomeBlock, 4> blocks_;
};

/// The finite space: 16 atoms (i, j, eps, eps') with p = p(a=i,b=j) q(eps,eps'|i,j).
class SampleSpace {
public:
    SampleSpace(SettingDistribution settings, ConditionalTable table);

    const SettingDistribution& settings() const noexcept { return settings_; }
    const ConditionalTable& table() const noexcept { return table_; }
    const AtomVector& probabilities() const noexcept { return probabilities_; }

    double probability(const Atom& omega) const { return probabilities_(static_cast<Eigen::Index>(omega.index())); }

private:
    SettingDistribution settings_;
    ConditionalTable table_;
    AtomVector probabilities_;
};

SampleSpace buildSpace(const SettingDistribution& settings, const ConditionalTable& table);

/// Value of A_k / B_k on an atom; 0 when the corresponding setting was not selected.
constexpr int evalObservable(ObservableId obs, const Atom& omega) noexcept {
    if (obs.side() == Side::A) return omega.i == obs.index() ? omega.eps : 0;
    return omega.j == obs.index() ? omega.epsPrime : 0;
}

/// Value of the generator a (side A) or b (side B) on an atom.
constexpr int evalGenerator(Side side, const Atom& omega) noexcept { return side == Side::A ? omega.i : omega.j; }

}  // namespace condbell
