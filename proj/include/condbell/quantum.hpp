#pragma once

#include <array>
#include <numbers>
#include <vector>

#include "condbell/prob_space.hpp"

namespace condbell {

/// Analyzer orientations in radians: thetaA[i-1] for A_i, thetaB[j-1] for B_j.
struct AngleSettings {
    std::array<double, 2> thetaA{};
    std::array<double, 2> thetaB{};

    static AngleSettings degrees(double a1, double a2, double b1, double b2);
    /// (0, 45; 22.5, -22.5) degrees, where Q11 + Q12 + Q21 - Q22 = 2 sqrt(2).
    static AngleSettings canonicalChsh();
};

/// Correlation law of the maximally entangled pair.
/// Photon: Q = cos 2(theta - theta') (polarization analyzers, the default).
/// Spin:   Q = -cos(theta - theta') (spin-1/2 singlet, Stern-Gerlach angles).
enum class Convention { Photon, Spin };

/// Predicted correlation for analyzer angles (thetaA, thetaB).
double singletCorrelation(double thetaA, double thetaB, Convention convention = Convention::Photon);

/// q(e, e' | i, j) = (1 + e e' Q_ij) / 4, with every one-side marginal exactly 1/2.
ConditionalTable singletTable(const AngleSettings& angles, Convention convention = Convention::Photon);

struct TsirelsonScanResult {
    double maxAbsS = 0.0;
    AngleSettings argmax;
    std::size_t points = 0;
};

/// Max |Q11 + Q12 + Q21 - Q22| over every combination of the given dial angles.
TsirelsonScanResult tsirelsonScan(const std::vector<double>& anglesA1, const std::vector<double>& anglesA2,
                                  const std::vector<double>& anglesB1, const std::vector<double>& anglesB2,
                                  Convention convention = Convention::Photon);

/// Angles k pi / (resolution - 1), k = 0..resolution-1, on each of the four dials.
/// Throws std::invalid_argument when resolution < 2.
TsirelsonScanResult tsirelsonScan(std::size_t resolution, Convention convention = Convention::Photon);

/// The grid used by tsirelsonScan(resolution).
std::vector<double> dialGrid(std::size_t resolution);

}  // namespace condbell
