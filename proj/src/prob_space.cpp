#include "condbell/prob_space.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace condbell {

namespace {

void requireProbabilityVector(const Eigen::Matrix2d& m, double tol, const std::string& what) {
    for (Eigen::Index r = 0; r < 2; ++r) {
        for (Eigen::Index c = 0; c < 2; ++c) {
            if (!(m(r, c) >= 0.0) || !std::isfinite(m(r, c))) {
                std::ostringstream os;
                os << what << ": entry (" << r << "," << c << ") = " << m(r, c) << " is not a nonnegative number";
                throw InvalidDistribution(os.str());
            }
        }
    }
    const double total = m.sum();
    if (std::abs(total - 1.0) > tol) {
        std::ostringstream os;
        os << what << ": entries sum to " << total << ", expected 1";
        throw InvalidDistribution(os.str());
    }
}

}  // namespace

SettingDistribution::SettingDistribution(const Weights& weights, double tol) : weights_(weights) {
    requireProbabilityVector(weights_, tol, "setting weights");
}

SettingDistribution SettingDistribution::uniform() { return SettingDistribution(Weights::Constant(0.25)); }

SettingDistribution SettingDistribution::product(double pA1, double pB1, double tol) {
    Eigen::Vector2d pa(pA1, 1.0 - pA1);
    Eigen::Vector2d pb(pB1, 1.0 - pB1);
    return SettingDistribution(pa * pb.transpose(), tol);
}

SettingDistribution SettingDistribution::concentrated(int i, int j) {
    requireSetting(i);
    requireSetting(j);
    Weights w = Weights::Zero();
    w(i - 1, j - 1) = 1.0;
    return SettingDistribution(w);
}

ConditionalTable::ConditionalTable(const std::array<OutcomeBlock, 4>& blocks, double tol) : blocks_(blocks) {
    for (int i : kSettings) {
        for (int j : kSettings) {
            requireProbabilityVector(block(i, j), tol,
                                     "conditional block (" + std::to_string(i) + "," + std::to_string(j) + ")");
        }
    }
}

ConditionalTable ConditionalTable::constant(const OutcomeBlock& block, double tol) {
    return ConditionalTable({block, block, block, block}, tol);
}

double ConditionalTable::correlation(int i, int j) const {
    const OutcomeBlock& q = block(i, j);
    return q(0, 0) - q(0, 1) - q(1, 0) + q(1, 1);
}

double ConditionalTable::marginalDiscrepancy() const {
    double worst = 0.0;
    for (int k : kSettings) {
        for (int e : kOutcomes) {
            worst = std::max(worst, std::abs(marginalA(k, 1, e) - marginalA(k, 2, e)));
            worst = std::max(worst, std::abs(marginalB(1, k, e) - marginalB(2, k, e)));
        }
    }
    return worst;
}

SampleSpace::SampleSpace(SettingDistribution settings, ConditionalTable table)
    : settings_(std::move(settings)), table_(std::move(table)) {
    for (const Atom& omega : kAtoms) {
        const double w = settings_(omega.i, omega.j);
        // Zero-weight setting pairs carry no mass regardless of the table.
        probabilities_(static_cast<Eigen::Index>(omega.index())) =
            w > 0.0 ? w * table_(omega.i, omega.j, omega.eps, omega.epsPrime) : 0.0;
    }
}

SampleSpace buildSpace(const SettingDistribution& settings, const ConditionalTable& table) {
    return SampleSpace(settings, table);
}

}  // namespace condbell
