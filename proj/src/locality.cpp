#include "condbell/locality.hpp"

#include <algorithm>
#include <cmath>

namespace condbell {

namespace {

std::string valueName(int x) { return x > 0 ? "+1" : x < 0 ? "-1" : "0"; }

Generator generatorOf(Side s) { return s == Side::A ? a : b; }
Generator otherGenerator(Side s) { return s == Side::A ? b : a; }
char generatorName(Side s) { return s == Side::A ? 'a' : 'b'; }
Side otherSide(Side s) { return s == Side::A ? Side::B : Side::A; }

}  // namespace

IndependenceCheck checkLIG(const SampleSpace& space, double tol) {
    IndependenceCheck out;
    for (int i : kSettings) {
        for (int j : kSettings) {
            const double joint = prob(space, a == i && b == j);
            const double product = prob(space, a == i) * prob(space, b == j);
            out.maxDeviation = std::max(out.maxDeviation, std::abs(joint - product));
        }
    }
    out.holds = out.maxDeviation <= tol;
    return out;
}

IndependenceCheck checkLIOG(const SampleSpace& space, double tol) {
    IndependenceCheck out;
    for (Side side : {Side::A, Side::B}) {
        const Generator own = generatorOf(side);
        const Generator far = otherGenerator(side);
        for (int i : kSettings) {
            const ObservableId obs{side, i};
            for (int x : kValues) {
                for (int k : kSettings) {
                    for (int m : kSettings) {
                        const double joint = prob(space, obs == x && own == k && far == m);
                        const double product = prob(space, obs == x && own == k) * prob(space, far == m);
                        out.maxDeviation = std::max(out.maxDeviation, std::abs(joint - product));
                    }
                }
            }
        }
    }
    out.holds = out.maxDeviation <= tol;
    return out;
}

FactorizationReport checkDetectionFactorizations(const SampleSpace& space, double tol) {
    FactorizationReport out;
    out.conditionalOnLocalityFailure = !checkLIG(space, tol).holds;
    auto add = [&](std::string name, double lhs, double rhs) {
        out.identities.lines.push_back(IdentityLine{std::move(name),
                                                    lhs,
                                                    rhs,
                                                    std::abs(lhs - rhs) <= tol ? LineStatus::Pass : LineStatus::Fail,
                                                    {},
                                                    std::nullopt});
    };
    auto p = [&](const Event& e) { return prob(space, e); };

    for (int i : kSettings) {
        for (int j : kSettings) {
            const ObservableId Ai{Side::A, i};
            const ObservableId Bj{Side::B, j};
            const std::string is = std::to_string(i);
            const std::string js = std::to_string(j);
            const double bothNull = p(Ai == 0 && Bj == 0);
            add("p(A" + is + "=0,B" + js + "=0) = p(A" + is + "=0) p(B" + js + "=0)", bothNull,
                p(Ai == 0) * p(Bj == 0));
            add("p(A" + is + "=0,B" + js + "=0) = p(a!=" + is + ",b!=" + js + ")", bothNull, p(a != i && b != j));
            for (int e : kOutcomes) {
                const std::string es = valueName(e);
                add("p(A" + is + "=" + es + ",B" + js + "=0) = p(A" + is + "=" + es + ") p(B" + js + "=0)",
                    p(Ai == e && Bj == 0), p(Ai == e) * p(Bj == 0));
                add("p(A" + is + "=0,B" + js + "=" + es + ") = p(A" + is + "=0) p(B" + js + "=" + es + ")",
                    p(Ai == 0 && Bj == e), p(Ai == 0) * p(Bj == e));
            }
        }
    }
    return out;
}

MarginalConsistencyReport checkMarginalConsistency(const SampleSpace& space, double tol) {
    MarginalConsistencyReport out;
    out.liogHolds = checkLIOG(space, tol).holds;
    auto p = [&](const Event& e) { return prob(space, e); };
    auto push = [tol](IdentityReport& r, std::string name, double lhs, double rhs) {
        r.lines.push_back(IdentityLine{std::move(name),
                                       lhs,
                                       rhs,
                                       std::abs(lhs - rhs) <= tol ? LineStatus::Pass : LineStatus::Fail,
                                       {},
                                       std::nullopt});
    };
    auto notApplicable = [](IdentityReport& r, std::string name, double lhs, std::string note) {
        r.lines.push_back(
            IdentityLine{std::move(name), lhs, 0.0, LineStatus::NotApplicable, std::move(note), std::nullopt});
    };

    for (Side side : {Side::A, Side::B}) {
        const char s = sideName(side);
        const char own = generatorName(side);
        const char far = generatorName(otherSide(side));
        for (int i : kSettings) {
            const ObservableId obs{side, i};
            const std::string obsName = s + std::to_string(i);
            for (int x : kValues) {
                const std::string lhsName = "p(" + obsName + "=" + valueName(x) + ")";
                const double single = p(obs == x);
                for (int j : kSettings) {
                    const ObservableId partner{otherSide(side), j};
                    double sum = 0.0;
                    for (int y : kValues) sum += p(obs == x && partner == y);
                    push(out.absolute,
                         lhsName + " = sum_y p(" + obsName + "=" + valueName(x) + "," + partner.name() + "=y)", single,
                         sum);
                }
                for (int m : kSettings) {
                    const Event farSel = otherGenerator(side) == m;
                    const std::string farName = std::string(1, far) + "=" + std::to_string(m);
                    const double pFar = p(farSel);
                    const std::string name1 = "p(" + obsName + "=" + valueName(x) + " | " + farName + ") = " + lhsName;
                    if (pFar <= tol) {
                        notApplicable(out.conditionalReductions, name1, single, "p(" + farName + ") = 0");
                    } else {
                        push(out.conditionalReductions, name1, p(obs == x && farSel) / pFar, single);
                    }
                    for (int k : kSettings) {
                        const Event ownSel = generatorOf(side) == k;
                        const std::string ownName = std::string(1, own) + "=" + std::to_string(k);
                        const std::string name2 = "p(" + obsName + "=" + valueName(x) + " | " + ownName + "," +
                                                  farName + ") = p(" + obsName + "=" + valueName(x) + " | " + ownName +
                                                  ")";
                        const double pBoth = p(ownSel && farSel);
                        const double pOwn = p(ownSel);
                        if (pBoth <= tol) {
                            notApplicable(out.conditionalReductions, name2, 0.0,
                                          "p(" + ownName + "," + farName + ") = 0");
                        } else {
                            push(out.conditionalReductions, name2, p(obs == x && ownSel && farSel) / pBoth,
                                 p(obs == x && ownSel) / pOwn);
                        }
                    }
                }
            }
        }
    }
    return out;
}

ConditionalMarginalReport checkConditionalMarginalConsistency(const SampleSpace& space, double tol) {
    ConditionalMarginalReport out;
    for (int i : kSettings) {
        for (int j : kSettings) {
            if (space.settings()(i, j) <= tol) {
                throw ConditioningOnNull("setting pair (" + std::to_string(i) + "," + std::to_string(j) +
                                         ") has zero weight");
            }
        }
    }
    auto push = [&](std::string name, double lhs, double rhs) {
        out.lines.lines.push_back(IdentityLine{std::move(name),
                                               lhs,
                                               rhs,
                                               std::abs(lhs - rhs) <= tol ? LineStatus::Pass : LineStatus::Fail,
                                               {},
                                               std::nullopt});
    };

    for (int i : kSettings) {
        const ObservableId Ai{Side::A, i};
        const ObservableId Bi{Side::B, i};
        for (int e : kOutcomes) {
            const double qA = condProb(space, Ai == e, a == i, tol);
            const double qB = condProb(space, Bi == e, b == i, tol);
            for (int j : kSettings) {
                const ObservableId Bj{Side::B, j};
                const ObservableId Aj{Side::A, j};
                double sumA = 0.0;
                double sumB = 0.0;
                for (int f : kOutcomes) {
                    sumA += condProb(space, Ai == e && Bj == f, a == i && b == j, tol);
                    sumB += condProb(space, Aj == f && Bi == e, a == j && b == i, tol);
                }
                const std::string es = valueName(e);
                const std::string is = std::to_string(i);
                const std::string js = std::to_string(j);
                push("q(A" + is + "=" + es + ") = sum_e' q(A" + is + "=" + es + ",B" + js + "=e' | " + is + "," + js +
                         ")",
                     qA, sumA);
                push(
                    "q(B" + is + "=" + es + ") = sum_e q(A" + js + "=e,B" + is + "=" + es + " | " + js + "," + is + ")",
                    qB, sumB);
            }
        }
    }
    out.deviation = space.table().marginalDiscrepancy();
    out.passes = out.lines.allApplicablePass();
    return out;
}

}  // namespace condbell
