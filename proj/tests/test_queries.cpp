#include <cmath>
#include <string>

#include "condbell/quantum.hpp"
#include "condbell/queries.hpp"
#include "doctest.h"
#include "generators.hpp"
#include "oracles.hpp"

using namespace condbell;
using doctest::Approx;

namespace {

ConditionalTable uniformTable() {
    OutcomeBlock blk;
    blk << 0.25, 0.25, 0.25, 0.25;
    return ConditionalTable::constant(blk);
}

SampleSpace singletSpace() {
    return buildSpace(SettingDistribution::uniform(), singletTable(AngleSettings::canonicalChsh()));
}

const IdentityLine* findLine(const IdentityReport& r, const std::string& name) {
    for (const auto& l : r.lines)
        if (l.name == name) return &l;
    return nullptr;
}

}  // namespace

TEST_CASE("event descriptions") {
    CHECK(Event{}.describe() == "Omega");
    const Event e = A1 == 1 && a == 1 && b != 2;
    CHECK(e.describe() == "A1=+1, a=1, b!=2");
    CHECK((B2 == 0).describe() == "B2=0");
    CHECK_THROWS(A1 == 2);
}

TEST_CASE("prob on basic events") {
    const SampleSpace s = buildSpace(SettingDistribution::uniform(), uniformTable());
    CHECK(prob(s, A1 == 0) == Approx(0.5));
    CHECK(prob(s, Event{}) == Approx(1.0));
    CHECK(prob(s, a == 1 && a == 2) == 0.0);
    CHECK(prob(s, A1 == 1 && A2 == 1) == 0.0);
}

TEST_CASE("singlet marginal and conditional queries") {
    const SampleSpace s = singletSpace();
    // p(a=1) * q(A1=+1 | a=1) = 1/2 * 1/2
    CHECK(prob(s, A1 == 1) == 0.25);
    CHECK(prob(s, A1 == 1) == Approx(testing::bruteProb(s.settings(), s.table(), [](int i, int, int e, int) {
                                  return i == 1 && e == 1;
                              })).epsilon(1e-15));
    CHECK(condProb(s, A1 == 1, a == 1) == Approx(prob(s, A1 == 1) / prob(s, a == 1)).epsilon(1e-15));
    CHECK(condProb(s, A1 == 0, a != 1) == 1.0);
    CHECK(condProb(s, A1 == 1 && B1 == -1, a == 1 && b == 1) == Approx(s.table()(1, 1, +1, -1)).epsilon(1e-14));
}

TEST_CASE("conditioning on a null event throws") {
    const SampleSpace s = buildSpace(SettingDistribution::concentrated(1, 1), uniformTable());
    CHECK_THROWS_AS(condProb(s, A2 == 1, a == 2), ConditioningOnNull);
    CHECK_NOTHROW(condProb(s, A1 == 1, a == 1));
}

TEST_CASE("probAny counts overlapping atoms once") {
    const SampleSpace s = buildSpace(SettingDistribution::uniform(), uniformTable());
    CHECK(probAny(s, {a == 1, a == 1 && b == 2}) == Approx(0.5));
    CHECK(probAny(s, {a == 1, a == 2}) == Approx(1.0));
    CHECK(probAny(s, {}) == 0.0);
}

TEST_CASE("nondetection identities on the canonical singlet space") {
    const IdentityReport r = nondetectionIdentities(singletSpace());
    CHECK(r.allApplicablePass());
    CHECK(r.count(LineStatus::NotApplicable) == 0);
    CHECK(r.count(LineStatus::Fail) == 0);
    CHECK(r.maxDeviation() <= 1e-12);
    CHECK(r.lines.size() > 40);
}

TEST_CASE("identities on concentrated settings mark null conditionings") {
    const SampleSpace s =
        buildSpace(SettingDistribution::concentrated(1, 1), singletTable(AngleSettings::canonicalChsh()));
    const IdentityReport r = nondetectionIdentities(s);
    CHECK(r.allApplicablePass());
    CHECK(prob(s, A1 == 0) == 0.0);
    const IdentityLine* l = findLine(r, "p(a!=1,b!=1 | A1=0,B1=0) = 1");
    REQUIRE(l != nullptr);
    CHECK(l->status == LineStatus::NotApplicable);
    CHECK(l->note.find("= 0") != std::string::npos);
    // Every n/a line names a conditioning event that really is null.
    for (const auto& line : r.lines) {
        if (line.status == LineStatus::NotApplicable) CHECK_FALSE(line.note.empty());
    }
}

TEST_CASE("counterfactual mass is zero") { CHECK(counterfactualMass(singletSpace()) == 0.0); }

TEST_CASE("property: prob agrees with brute force and is additive") {
    testing::Rng rng(7);
    for (int trial = 0; trial < 300; ++trial) {
        const auto w = testing::randomWeights(rng);
        const auto t = testing::randomTable(rng);
        const SampleSpace s = buildSpace(w, t);
        for (int k : kSettings) {
            const ObservableId Ak(Side::A, k);
            const ObservableId Bk(Side::B, k);
            // Total probability over the three values of each observable.
            CHECK(prob(s, Ak == 1) + prob(s, Ak == 0) + prob(s, Ak == -1) == Approx(1.0).epsilon(1e-12));
            CHECK(prob(s, Bk == 1) + prob(s, Bk == 0) + prob(s, Bk == -1) == Approx(1.0).epsilon(1e-12));
            // Finite additivity over a disjoint split.
            CHECK(prob(s, Ak == 1) == Approx(prob(s, Ak == 1 && b == 1) + prob(s, Ak == 1 && b == 2)).epsilon(1e-12));
            CHECK(prob(s, Ak == 1 && b == 2) == Approx(testing::bruteProb(w, t, [&](int i, int j, int e, int) {
                                                    return i == k && j == 2 && e == 1;
                                                })).epsilon(1e-12));
            CHECK(prob(s, a != k) ==
                  Approx(testing::bruteProb(w, t, [&](int i, int, int, int) { return i != k; })).epsilon(1e-12));
        }
        CHECK(counterfactualMass(s) == 0.0);
        const IdentityReport r = nondetectionIdentities(s);
        CHECK(r.allApplicablePass());
        CHECK(r.maxDeviation() <= 1e-12);
    }
}

TEST_CASE("property: lines are n/a only when a setting pair is impossible") {
    testing::Rng rng(8);
    for (int trial = 0; trial < 300; ++trial) {
        const SampleSpace s = buildSpace(testing::randomWeights(rng), testing::randomTable(rng));
        const IdentityReport r = nondetectionIdentities(s);
        const bool allPositive = (s.settings().weights().array() > 0.0).all();
        if (allPositive) CHECK(r.count(LineStatus::NotApplicable) == 0);
        for (const auto& l : r.lines) {
            if (l.status == LineStatus::NotApplicable) CHECK(l.deviation() == 0.0);
        }
    }
}
