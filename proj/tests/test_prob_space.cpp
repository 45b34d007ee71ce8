#include <cmath>
#include <numbers>

#include "condbell/prob_space.hpp"
#include "condbell/quantum.hpp"
#include "doctest.h"
#include "generators.hpp"
#include "oracles.hpp"

using namespace condbell;
using doctest::Approx;

TEST_CASE("setting distribution validates weights") {
    Weights w;
    w << 0.5, 0.5, 0.0, 0.0;
    CHECK_NOTHROW(SettingDistribution{w});

    w << 0.6, 0.5, 0.0, 0.0;
    CHECK_THROWS_AS(SettingDistribution{w}, InvalidDistribution);

    w << 1.2, -0.2, 0.0, 0.0;
    CHECK_THROWS_AS(SettingDistribution{w}, InvalidDistribution);

    w << NAN, 0.5, 0.25, 0.25;
    CHECK_THROWS_AS(SettingDistribution{w}, InvalidDistribution);
}

TEST_CASE("setting distribution helpers") {
    const auto u = SettingDistribution::uniform();
    CHECK(u(1, 2) == 0.25);
    CHECK(u.marginalA(1) == 0.5);

    const auto p = SettingDistribution::product(0.3, 0.6);
    CHECK(p(1, 1) == Approx(0.18));
    CHECK(p(2, 2) == Approx(0.28));
    CHECK(p.marginalA(1) == Approx(0.3));
    CHECK(p.marginalB(2) == Approx(0.4));

    const auto c = SettingDistribution::concentrated(2, 1);
    CHECK(c(2, 1) == 1.0);
    CHECK(c.weights().sum() == 1.0);
    CHECK_THROWS(SettingDistribution::concentrated(3, 1));
}

TEST_CASE("conditional table validates blocks") {
    OutcomeBlock ok;
    ok << 0.25, 0.25, 0.25, 0.25;
    OutcomeBlock bad;
    bad << 0.5, 0.5, 0.5, -0.5;
    CHECK_NOTHROW(ConditionalTable::constant(ok));
    CHECK_THROWS_AS(ConditionalTable({ok, ok, ok, bad}), InvalidDistribution);
    bad << 0.3, 0.3, 0.3, 0.3;
    CHECK_THROWS_AS(ConditionalTable({ok, bad, ok, ok}), InvalidDistribution);
}

TEST_CASE("table layout and marginals") {
    OutcomeBlock blk;
    blk << 0.4, 0.1, 0.2, 0.3;  // rows eps=+1,-1; cols eps'=+1,-1
    const auto t = ConditionalTable::constant(blk);
    CHECK(t(1, 1, +1, +1) == 0.4);
    CHECK(t(1, 1, +1, -1) == 0.1);
    CHECK(t(1, 1, -1, +1) == 0.2);
    CHECK(t(1, 1, -1, -1) == 0.3);
    CHECK(t.marginalA(1, 1, +1) == Approx(0.5));
    CHECK(t.marginalB(1, 1, +1) == Approx(0.6));
    CHECK(t.correlation(2, 2) == Approx(0.4));
    CHECK(t.marginalDiscrepancy() == 0.0);
}

TEST_CASE("marginal discrepancy detects signaling") {
    OutcomeBlock pp = OutcomeBlock::Zero();
    pp(0, 0) = 1.0;
    OutcomeBlock mm = OutcomeBlock::Zero();
    mm(1, 1) = 1.0;
    const ConditionalTable t({pp, mm, pp, pp});
    CHECK(t.marginalDiscrepancy() == 1.0);
}

TEST_CASE("buildSpace on the singlet table") {
    const auto t = singletTable(AngleSettings::canonicalChsh());
    const SampleSpace s = buildSpace(SettingDistribution::uniform(), t);
    const double expected = (1.0 + std::cos(std::numbers::pi / 4.0)) / 16.0;
    CHECK(s.probability(Atom{1, 1, +1, +1}) == Approx(expected).epsilon(1e-15));
    CHECK(s.probability(Atom{1, 1, +1, +1}) == Approx(0.10669417382415922).epsilon(1e-14));
    CHECK(s.probabilities().sum() == Approx(1.0).epsilon(1e-15));
}

TEST_CASE("zero-weight pairs carry no mass") {
    OutcomeBlock blk;
    blk << 0.25, 0.25, 0.25, 0.25;
    const SampleSpace s = buildSpace(SettingDistribution::concentrated(1, 1), ConditionalTable::constant(blk));
    for (const Atom& w : kAtoms) {
        if (w.i == 1 && w.j == 1) {
            CHECK(s.probability(w) == 0.25);
        } else {
            CHECK(s.probability(w) == 0.0);
        }
    }
}

TEST_CASE("observables and generators on atoms") {
    const Atom w{1, 2, +1, -1};
    CHECK(evalObservable(A1, w) == +1);
    CHECK(evalObservable(A2, w) == 0);
    CHECK(evalObservable(B1, w) == 0);
    CHECK(evalObservable(B2, w) == -1);
    CHECK(evalGenerator(Side::A, w) == 1);
    CHECK(evalGenerator(Side::B, w) == 2);
    static_assert(evalObservable(B2, Atom{2, 2, -1, +1}) == +1);
}

TEST_CASE("atom indexing is a bijection") {
    std::array<bool, kAtomCount> seen{};
    for (const Atom& w : kAtoms) {
        REQUIRE(w.index() < kAtomCount);
        CHECK_FALSE(seen[w.index()]);
        seen[w.index()] = true;
    }
}

TEST_CASE("property: atom probabilities match the product formula") {
    testing::Rng rng(101);
    for (int trial = 0; trial < 500; ++trial) {
        const auto w = testing::randomWeights(rng);
        const auto t = testing::randomTable(rng);
        const SampleSpace s = buildSpace(w, t);
        double total = 0.0;
        for (const Atom& om : kAtoms) {
            CHECK(s.probability(om) == w(om.i, om.j) * t(om.i, om.j, om.eps, om.epsPrime));
            CHECK(s.probability(om) >= 0.0);
            total += s.probability(om);
        }
        CHECK(total == Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("generator values on atoms") {
    CHECK(evalGenerator(Side::A, Atom{2, 1, +1, -1}) == 2);
    CHECK(evalGenerator(Side::B, Atom{2, 1, +1, -1}) == 1);
    CHECK(evalGenerator(Side::B, Atom{1, 2, -1, -1}) == 2);
}

TEST_CASE("perfectly correlated table puts 1/8 on equal-outcome atoms") {
    OutcomeBlock blk;
    blk << 0.5, 0.0, 0.0, 0.5;
    const SampleSpace s = buildSpace(SettingDistribution::uniform(), ConditionalTable::constant(blk));
    for (const Atom& w : kAtoms) CHECK(s.probability(w) == (w.eps == w.epsPrime ? 0.125 : 0.0));
}
