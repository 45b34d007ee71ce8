#include <cmath>
#include <numbers>

#include "condbell/chsh.hpp"
#include "condbell/quantum.hpp"
#include "doctest.h"
#include "generators.hpp"
#include "oracles.hpp"

using namespace condbell;
using doctest::Approx;

TEST_CASE("singlet correlation conventions") {
    const double pi = std::numbers::pi;
    CHECK(singletCorrelation(0.0, 0.0) == 1.0);
    CHECK(singletCorrelation(0.0, pi / 4.0) == Approx(0.0));
    CHECK(singletCorrelation(0.0, pi / 2.0) == Approx(-1.0));
    CHECK(singletCorrelation(0.0, 0.0, Convention::Spin) == -1.0);
    CHECK(singletCorrelation(0.0, pi, Convention::Spin) == Approx(1.0));
}

TEST_CASE("singlet table entries match the closed form") {
    const auto ang = AngleSettings::canonicalChsh();
    const auto t = singletTable(ang);
    for (int i : kSettings)
        for (int j : kSettings)
            for (int e : kOutcomes)
                for (int f : kOutcomes)
                    CHECK(t(i, j, e, f) ==
                          Approx(testing::photonPairProb(ang.thetaA[i - 1], ang.thetaB[j - 1], e, f)).epsilon(1e-15));
}

TEST_CASE("singlet marginals are exactly one half") {
    testing::Rng rng(41);
    std::uniform_real_distribution<double> u(-7.0, 7.0);
    for (int trial = 0; trial < 500; ++trial) {
        const AngleSettings ang{{u(rng), u(rng)}, {u(rng), u(rng)}};
        for (Convention c : {Convention::Photon, Convention::Spin}) {
            const auto t = singletTable(ang, c);
            CHECK(t.marginalDiscrepancy() == 0.0);
            for (int i : kSettings)
                for (int j : kSettings) {
                    CHECK(t.marginalA(i, j, +1) == 0.5);
                    CHECK(t.marginalB(i, j, -1) == 0.5);
                }
        }
    }
}

TEST_CASE("property: singlet tables depend only on angle differences") {
    testing::Rng rng(42);
    std::uniform_real_distribution<double> u(-3.0, 3.0);
    for (int trial = 0; trial < 300; ++trial) {
        const AngleSettings ang{{u(rng), u(rng)}, {u(rng), u(rng)}};
        const double shift = u(rng);
        const AngleSettings moved{{ang.thetaA[0] + shift, ang.thetaA[1] + shift},
                                  {ang.thetaB[0] + shift, ang.thetaB[1] + shift}};
        const auto t0 = singletTable(ang);
        const auto t1 = singletTable(moved);
        for (std::size_t k = 0; k < 4; ++k) CHECK((t0.blocks()[k] - t1.blocks()[k]).cwiseAbs().maxCoeff() <= 1e-12);
    }
}

TEST_CASE("dial grid") {
    const auto g = dialGrid(5);
    REQUIRE(g.size() == 5);
    CHECK(g.front() == 0.0);
    CHECK(g.back() == Approx(std::numbers::pi));
    CHECK(g[2] == Approx(std::numbers::pi / 2.0));
    CHECK_THROWS_AS(dialGrid(1), std::invalid_argument);
}

TEST_CASE("Tsirelson scan") {
    const auto r = tsirelsonScan(17);
    CHECK(r.points == 17u * 17u * 17u * 17u);
    CHECK(std::abs(r.maxAbsS - kTsirelsonBound) <= 1e-9);
    CHECK(r.maxAbsS <= kTsirelsonBound + 1e-12);
    const auto t = singletTable(r.argmax);
    const double s = t.correlation(1, 1) + t.correlation(1, 2) + t.correlation(2, 1) - t.correlation(2, 2);
    CHECK(std::abs(s) == Approx(r.maxAbsS).epsilon(1e-12));

    const double q = std::numbers::pi / 4.0;
    const auto coarse = tsirelsonScan({0.0, q}, {0.0, q}, {0.0, q}, {0.0, q});
    CHECK(coarse.points == 16u);
    CHECK(coarse.maxAbsS == Approx(2.0));

    const auto spin = tsirelsonScan(9, Convention::Spin);
    CHECK(spin.maxAbsS <= kTsirelsonBound + 1e-12);
}

TEST_CASE("aligned and 45 degree analyzers") {
    const auto t = singletTable(AngleSettings::degrees(10.0, 10.0, 10.0, 55.0));
    CHECK(t(1, 1, +1, +1) == 0.5);
    CHECK(t(1, 1, -1, -1) == 0.5);
    CHECK(t(1, 1, +1, -1) == 0.0);
    CHECK(t.correlation(1, 1) == 1.0);
    for (int e : kOutcomes)
        for (int f : kOutcomes) CHECK(t(1, 2, e, f) == Approx(0.25).epsilon(1e-15));
    CHECK(std::abs(t.correlation(1, 2)) <= 1e-15);
}

TEST_CASE("explicit dial lists containing the canonical point") {
    const double d = std::numbers::pi / 180.0;
    const auto r = tsirelsonScan({0.0, 10 * d}, {45 * d, 30 * d}, {22.5 * d, 0.0}, {-22.5 * d, 5 * d});
    CHECK(std::abs(r.maxAbsS - kTsirelsonBound) <= 1e-12);
    CHECK(r.maxAbsS >= 0.0);
}
