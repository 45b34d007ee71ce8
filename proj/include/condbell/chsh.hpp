#pragma once

#include <array>
#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "condbell/prob_space.hpp"

namespace condbell {

inline const double kTsirelsonBound = 2.0 * std::sqrt(2.0);

/// Absolute correlations C_ij = E[A_i B_j] and conditional correlations
/// Q_ij = E[A_i B_j | a=i, b=j]; Q_ij is undefined on zero-weight setting pairs.
struct CorrelationSet {
    std::array<double, 4> C{};
    std::array<std::optional<double>, 4> Q{};
    Weights weights = Weights::Zero();

    double c(int i, int j) const { return C[pairIndex(i, j)]; }
    const std::optional<double>& q(int i, int j) const { return Q[pairIndex(i, j)]; }
};

CorrelationSet correlations(const SampleSpace& space, double tol = kDefaultTolerance);

/// Sign pattern s_ij applied as sum s_ij Q_ij; kChshSigns is the standard (+,+,+,-).
using SignPattern = std::array<int, 4>;
inline constexpr SignPattern kChshSigns{+1, +1, +1, -1};

/// One of the eight one-sided CHSH inequalities sum s_ij Q_ij <= 2, each with an
/// odd number of minus signs.
struct ChshInequality {
    SignPattern signs{};
    double value = 0.0;

    std::string describe() const;
};

/// The eight sign patterns with an odd number of minus signs.
const std::array<SignPattern, 8>& chshSignPatterns();

struct ChshCriterion {
    std::array<ChshInequality, 8> inequalities{};
    /// Inequality with the largest value.
    ChshInequality worst;
    bool violated = false;
};

/// Evaluates all eight CHSH inequalities on a conditional table. Violation is
/// value > 2 + tol, or value > 2 exactly when `exact` (rational arithmetic on the
/// table's double entries).
ChshCriterion chshCriterion(const ConditionalTable& table, double tol = kDefaultTolerance, bool exact = false);

/// Probability law on (x1, x2, y1, y2) in {-1,+1}^4 for (A1, A2, B1, B2).
class JointDistribution {
public:
    using Storage = Eigen::Matrix<double, 16, 1>;

    explicit JointDistribution(const Storage& p) : p_(p) {}

    static std::size_t index(int x1, int x2, int y1, int y2) noexcept {
        return static_cast<std::size_t>(outcomeIndex(x1) * 8 + outcomeIndex(x2) * 4 + outcomeIndex(y1) * 2 +
                                        outcomeIndex(y2));
    }

    double operator()(int x1, int x2, int y1, int y2) const {
        return p_(static_cast<Eigen::Index>(index(x1, x2, y1, y2)));
    }

    const Storage& values() const noexcept { return p_; }

    /// Pair law of (A_i, B_j) in block layout.
    OutcomeBlock marginal(int i, int j) const;

private:
    Storage p_;
};

struct FineOptions {
    double tolerance = kDefaultTolerance;
    /// Decide with exact rational arithmetic on the double inputs.
    bool exact = false;
};

struct FineVerdict {
    bool feasible = false;
    /// Present when feasible; its pair marginals reproduce the table.
    std::optional<JointDistribution> witness;
    /// Present when infeasible: the most violated CHSH inequality.
    std::optional<ChshInequality> violated;
    /// Phase-1 optimum (0 iff a joint law exists).
    double infeasibility = 0.0;
    /// Number of equality constraints kept after removing redundant ones.
    int rank = 0;
    bool exact = false;
};

/// Decides whether a joint law of (A1, A2, B1, B2) with the table's four pair
/// laws exists, by phase-1 LP over the 16 joint probabilities.
/// Throws MarginalInconsistency when the blocks disagree on a one-side marginal
/// by more than the tolerance.
FineVerdict fineFeasibility(const ConditionalTable& table, const FineOptions& options = {});

/// |value| <= bound check.
struct BoundCheck {
    std::string name;
    double value = 0.0;
    double bound = 0.0;
    bool holds = false;
};

struct ChshOptions {
    double tolerance = kDefaultTolerance;
    bool exactLp = false;
    bool runFine = true;
};

struct ChshReport {
    CorrelationSet correlations;
    /// C11 + C12 + C21 - C22
    double sAbs = 0.0;
    /// Q11 + Q12 + Q21 - Q22, undefined if any Q_ij is.
    std::optional<double> sCond;
    /// sum of s_ij p(a=i,b=j) Q_ij over defined terms (same number as sAbs).
    double sWeighted = 0.0;
    std::vector<BoundCheck> bounds;
    std::optional<FineVerdict> fine;
    /// Why Fine feasibility was not decided, when it was not.
    std::string fineNote;

    const BoundCheck& bound(const std::string& name) const;
};

ChshReport chshReport(const SampleSpace& space, const ChshOptions& options = {});

struct CurvePoint {
    Weights weights = Weights::Zero();
    double sAbs = 0.0;
    double sCond = 0.0;
    /// For equal weights w: the conditional-form bounds implied by |S_abs| <= 2 and
    /// |S_abs| <= 1, i.e. 2/w and 1/w.
    std::optional<double> impliedBoundFromTwo;
    std::optional<double> impliedBoundFromOne;
};

std::vector<CurvePoint> weightedChshCurve(const ConditionalTable& table, const std::vector<SettingDistribution>& grid,
                                          double tol = kDefaultTolerance);

}  // namespace condbell
