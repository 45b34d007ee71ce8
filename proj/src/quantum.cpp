#include "condbell/quantum.hpp"

#include <cmath>
#include <stdexcept>

namespace condbell {

namespace {

constexpr double kDeg = std::numbers::pi / 180.0;

}  // namespace

AngleSettings AngleSettings::degrees(double a1, double a2, double b1, double b2) {
    return AngleSettings{{a1 * kDeg, a2 * kDeg}, {b1 * kDeg, b2 * kDeg}};
}

AngleSettings AngleSettings::canonicalChsh() { return degrees(0.0, 45.0, 22.5, -22.5); }

double singletCorrelation(double thetaA, double thetaB, Convention convention) {
    const double delta = thetaA - thetaB;
    return convention == Convention::Photon ? std::cos(2.0 * delta) : -std::cos(delta);
}

ConditionalTable singletTable(const AngleSettings& angles, Convention convention) {
    std::array<OutcomeBlock, 4> blocks;
    for (int i : kSettings) {
        for (int j : kSettings) {
            const double q = singletCorrelation(angles.thetaA[i - 1], angles.thetaB[j - 1], convention);
            // Take the larger of (1+Q)/4 and (1-Q)/4 directly and the other as 1/2 minus
            // it; that subtraction is exact, so each row and column sums to exactly 1/2.
            double same;
            double diff;
            if (q >= 0.0) {
                same = (1.0 + q) / 4.0;
                diff = 0.5 - same;
            } else {
                diff = (1.0 - q) / 4.0;
                same = 0.5 - diff;
            }
            OutcomeBlock block;
            block << same, diff, diff, same;
            blocks[pairIndex(i, j)] = block;
        }
    }
    return ConditionalTable(blocks);
}

TsirelsonScanResult tsirelsonScan(const std::vector<double>& anglesA1, const std::vector<double>& anglesA2,
                                  const std::vector<double>& anglesB1, const std::vector<double>& anglesB2,
                                  Convention convention) {
    TsirelsonScanResult out;
    for (double a1 : anglesA1) {
        for (double a2 : anglesA2) {
            for (double b1 : anglesB1) {
                for (double b2 : anglesB2) {
                    const AngleSettings angles{{a1, a2}, {b1, b2}};
                    const ConditionalTable t = singletTable(angles, convention);
                    const double s =
                        std::abs(t.correlation(1, 1) + t.correlation(1, 2) + t.correlation(2, 1) - t.correlation(2, 2));
                    if (out.points == 0 || s > out.maxAbsS) {
                        out.maxAbsS = s;
                        out.argmax = angles;
                    }
                    ++out.points;
                }
            }
        }
    }
    return out;
}

std::vector<double> dialGrid(std::size_t resolution) {
    if (resolution < 2) throw std::invalid_argument("grid resolution must be at least 2");
    std::vector<double> grid(resolution);
    for (std::size_t k = 0; k < resolution; ++k) {
        grid[k] = std::numbers::pi * static_cast<double>(k) / static_cast<double>(resolution - 1);
    }
    return grid;
}

TsirelsonScanResult tsirelsonScan(std::size_t resolution, Convention convention) {
    const auto grid = dialGrid(resolution);
    return tsirelsonScan(grid, grid, grid, grid, convention);
}

}  // namespace condbell
