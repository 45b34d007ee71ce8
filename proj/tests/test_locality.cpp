#include "condbell/locality.hpp"
#include "condbell/quantum.hpp"
#include "doctest.h"
#include "generators.hpp"

using namespace condbell;
using doctest::Approx;

namespace {

const ConditionalTable& singlet() {
    static const ConditionalTable t = singletTable(AngleSettings::canonicalChsh());
    return t;
}

SettingDistribution correlatedSettings() {
    Weights w;
    w << 0.5, 0.0, 0.0, 0.5;
    return SettingDistribution(w);
}

const IdentityLine* findLine(const IdentityReport& r, const std::string& name) {
    for (const auto& l : r.lines)
        if (l.name == name) return &l;
    return nullptr;
}

/// Swaps the +1 and -1 outcomes on both sides of every block.
ConditionalTable flipOutcomes(const ConditionalTable& t) {
    std::array<OutcomeBlock, 4> blocks;
    for (std::size_t k = 0; k < 4; ++k) blocks[k] = t.blocks()[k].reverse();
    return ConditionalTable(blocks);
}

}  // namespace

TEST_CASE("LIG on reference settings") {
    const auto u = checkLIG(buildSpace(SettingDistribution::uniform(), singlet()));
    CHECK(u.holds);
    CHECK(u.maxDeviation == 0.0);

    const auto c = checkLIG(buildSpace(correlatedSettings(), singlet()));
    CHECK_FALSE(c.holds);
    CHECK(c.maxDeviation == 0.25);

    CHECK(checkLIG(buildSpace(SettingDistribution::product(0.3, 0.6), singlet())).holds);
}

TEST_CASE("LIOG on reference settings") {
    CHECK(checkLIOG(buildSpace(SettingDistribution::product(0.3, 0.6), singlet())).holds);
    CHECK_FALSE(checkLIOG(buildSpace(correlatedSettings(), singlet())).holds);
    CHECK(checkLIOG(buildSpace(SettingDistribution::concentrated(1, 1), singlet())).holds);
}

TEST_CASE("detection factorizations under correlated settings") {
    const auto rep = checkDetectionFactorizations(buildSpace(correlatedSettings(), singlet()));
    CHECK(rep.conditionalOnLocalityFailure);
    CHECK_FALSE(rep.identities.allApplicablePass());
    const IdentityLine* l = findLine(rep.identities, "p(A1=0,B1=0) = p(A1=0) p(B1=0)");
    REQUIRE(l != nullptr);
    CHECK(l->lhs == Approx(0.5));
    CHECK(l->rhs == Approx(0.25));
    CHECK(l->status == LineStatus::Fail);
}

TEST_CASE("detection factorizations hold for product settings") {
    const auto rep = checkDetectionFactorizations(buildSpace(SettingDistribution::product(0.3, 0.6), singlet()));
    CHECK_FALSE(rep.conditionalOnLocalityFailure);
    CHECK(rep.identities.allApplicablePass());
    CHECK(rep.identities.maxDeviation() <= 1e-12);
}

TEST_CASE("joint nondetection factorizes for every table, mixed lines need consistent marginals") {
    OutcomeBlock pp = OutcomeBlock::Zero();
    pp(0, 0) = 1.0;
    OutcomeBlock mm = OutcomeBlock::Zero();
    mm(1, 1) = 1.0;
    const ConditionalTable signaling({pp, mm, pp, pp});
    const auto rep = checkDetectionFactorizations(buildSpace(SettingDistribution::uniform(), signaling));
    const IdentityLine* both = findLine(rep.identities, "p(A1=0,B2=0) = p(a!=1,b!=2)");
    REQUIRE(both != nullptr);
    CHECK(both->status == LineStatus::Pass);
    const IdentityLine* mixed = findLine(rep.identities, "p(A1=+1,B1=0) = p(A1=+1) p(B1=0)");
    REQUIRE(mixed != nullptr);
    CHECK(mixed->status == LineStatus::Fail);
    CHECK(mixed->lhs == 0.0);
    CHECK(mixed->rhs == doctest::Approx(0.125));
}

TEST_CASE("marginal consistency on the canonical space") {
    const auto rep = checkMarginalConsistency(buildSpace(SettingDistribution::uniform(), singlet()));
    CHECK(rep.liogHolds);
    CHECK(rep.absolute.allApplicablePass());
    CHECK(rep.conditionalReductions.allApplicablePass());
    CHECK(rep.conditionalReductions.maxDeviation() <= 1e-12);
}

TEST_CASE("conditional reductions fail without LIOG") {
    const auto rep = checkMarginalConsistency(buildSpace(correlatedSettings(), singlet()));
    CHECK_FALSE(rep.liogHolds);
    CHECK(rep.absolute.allApplicablePass());
    // Conditionings on zero-weight pairs are skipped rather than failed.
    CHECK(rep.conditionalReductions.count(LineStatus::NotApplicable) > 0);
}

TEST_CASE("conditional marginal consistency") {
    const auto ok = checkConditionalMarginalConsistency(buildSpace(SettingDistribution::uniform(), singlet()));
    CHECK(ok.passes);
    CHECK(ok.deviation == 0.0);

    OutcomeBlock pp = OutcomeBlock::Zero();
    pp(0, 0) = 1.0;
    OutcomeBlock mm = OutcomeBlock::Zero();
    mm(1, 1) = 1.0;
    const ConditionalTable signaling({pp, mm, pp, pp});
    const auto bad = checkConditionalMarginalConsistency(buildSpace(SettingDistribution::uniform(), signaling));
    CHECK_FALSE(bad.passes);
    CHECK(bad.deviation == 1.0);

    CHECK_THROWS_AS(checkConditionalMarginalConsistency(buildSpace(correlatedSettings(), singlet())),
                    ConditioningOnNull);
}

TEST_CASE("property: LIOG implies LIG") {
    testing::Rng rng(21);
    for (int trial = 0; trial < 500; ++trial) {
        const SampleSpace s = buildSpace(testing::randomWeights(rng), testing::randomTable(rng));
        if (checkLIOG(s).holds) CHECK(checkLIG(s).holds);
    }
}

TEST_CASE("property: LIG and LIOG agree on non-signaling tables") {
    testing::Rng rng(25);
    for (int trial = 0; trial < 500; ++trial) {
        const auto t = testing::randomConsistentTable(rng);
        const SampleSpace product = buildSpace(testing::randomProductWeights(rng, false), t);
        CHECK(checkLIG(product).holds);
        CHECK(checkLIOG(product).holds);
        const SampleSpace arbitrary = buildSpace(testing::randomWeights(rng), t);
        CHECK(checkLIG(arbitrary).holds == checkLIOG(arbitrary).holds);
    }
}

TEST_CASE("property: signaling tables break LIOG and conditional marginal consistency") {
    testing::Rng rng(26);
    for (int trial = 0; trial < 300; ++trial) {
        const auto t = testing::randomTable(rng);
        if (t.marginalDiscrepancy() <= 1e-6) continue;
        const SampleSpace s = buildSpace(testing::randomProductWeights(rng), t);
        CHECK(checkLIG(s).holds);
        CHECK_FALSE(checkLIOG(s).holds);
        const auto cmc = checkConditionalMarginalConsistency(s);
        CHECK_FALSE(cmc.passes);
        CHECK(cmc.deviation == t.marginalDiscrepancy());
    }
}

TEST_CASE("property: product settings satisfy the locality checks") {
    testing::Rng rng(22);
    for (int trial = 0; trial < 300; ++trial) {
        const SampleSpace s = buildSpace(testing::randomProductWeights(rng), testing::randomConsistentTable(rng));
        const auto f = checkDetectionFactorizations(s);
        CHECK(f.identities.allApplicablePass());
        CHECK(f.identities.maxDeviation() <= 1e-12);
        const auto m = checkMarginalConsistency(s);
        CHECK(m.absolute.allApplicablePass());
        CHECK(m.conditionalReductions.allApplicablePass());
        CHECK(m.conditionalReductions.maxDeviation() <= 1e-12);
    }
}

TEST_CASE("property: non-signaling tables pass conditional marginal consistency") {
    testing::Rng rng(23);
    for (int trial = 0; trial < 300; ++trial) {
        const auto r = checkConditionalMarginalConsistency(
            buildSpace(testing::randomProductWeights(rng), testing::randomConsistentTable(rng)));
        CHECK(r.passes);
        CHECK(r.deviation <= 1e-12);
    }
}

TEST_CASE("property: checks are invariant under flipping outcomes on both sides") {
    testing::Rng rng(24);
    for (int trial = 0; trial < 300; ++trial) {
        const auto w = testing::randomWeights(rng);
        const auto t = testing::randomTable(rng);
        const SampleSpace s = buildSpace(w, t);
        const SampleSpace f = buildSpace(w, flipOutcomes(t));
        CHECK(checkLIG(s).holds == checkLIG(f).holds);
        CHECK(checkLIOG(s).holds == checkLIOG(f).holds);
        CHECK(checkLIOG(s).maxDeviation == Approx(checkLIOG(f).maxDeviation).epsilon(1e-12));
        CHECK(checkDetectionFactorizations(s).identities.allApplicablePass() ==
              checkDetectionFactorizations(f).identities.allApplicablePass());
        CHECK(t.marginalDiscrepancy() == Approx(flipOutcomes(t).marginalDiscrepancy()).epsilon(1e-12));
        for (int i : kSettings)
            for (int j : kSettings)
                CHECK(t.correlation(i, j) == Approx(flipOutcomes(t).correlation(i, j)).epsilon(1e-12));
    }
}

TEST_CASE("single-observable reduction under product settings") {
    const auto rep = checkMarginalConsistency(buildSpace(SettingDistribution::product(0.3, 0.6), singlet()));
    const IdentityLine* l = findLine(rep.conditionalReductions, "p(A1=+1 | b=1) = p(A1=+1)");
    REQUIRE(l != nullptr);
    CHECK(l->status == LineStatus::Pass);
}

TEST_CASE("identical blocks are trivially non-signaling") {
    OutcomeBlock blk;
    blk << 0.1, 0.2, 0.3, 0.4;
    const auto r = checkConditionalMarginalConsistency(
        buildSpace(SettingDistribution::product(0.2, 0.9), ConditionalTable::constant(blk)));
    CHECK(r.passes);
    CHECK(r.deviation == 0.0);
}
