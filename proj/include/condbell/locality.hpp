#pragma once

#include <vector>

#include "condbell/queries.hpp"

namespace condbell {

struct IndependenceCheck {
    bool holds = false;
    double maxDeviation = 0.0;
};

/// Independence of the setting generators: p(a=i,b=j) = p(a=i) p(b=j).
IndependenceCheck checkLIG(const SampleSpace& space, double tol = kDefaultTolerance);

/// (A_i, a) independent of b and (B_j, b) independent of a, over all values
/// x in {-1, 0, +1}.
IndependenceCheck checkLIOG(const SampleSpace& space, double tol = kDefaultTolerance);

struct FactorizationReport {
    IdentityReport identities;
    /// True when the generators are not independent; failures are then expected.
    bool conditionalOnLocalityFailure = false;
};

/// Nondetection factorizations: p(A_i=0,B_j=0) = p(A_i=0)p(B_j=0) = p(a!=i,b!=j),
/// and the mixed detection/nondetection products.
FactorizationReport checkDetectionFactorizations(const SampleSpace& space, double tol = kDefaultTolerance);

struct MarginalConsistencyReport {
    /// p(A_i=x) = sum_y p(A_i=x, B_j=y), and the B-side analogue.
    IdentityReport absolute;
    /// p(A_i=x | b=m) = p(A_i=x) and p(A_i=x | a=k,b=m) = p(A_i=x | a=k), plus B-side.
    /// Guaranteed to pass only when LIOG holds.
    IdentityReport conditionalReductions;
    bool liogHolds = false;
};

MarginalConsistencyReport checkMarginalConsistency(const SampleSpace& space, double tol = kDefaultTolerance);

struct ConditionalMarginalReport {
    /// q(A_i=e) = sum_e' p(A_i=e, B_j=e' | a=i,b=j) for all i, j, e (and the B-side analogue).
    IdentityReport lines;
    /// Largest block-to-block difference between one-side conditional marginals.
    double deviation = 0.0;
    bool passes = false;
};

/// Conditional (no-signaling) marginal consistency. Requires every setting pair
/// to have positive weight, else throws ConditioningOnNull.
ConditionalMarginalReport checkConditionalMarginalConsistency(const SampleSpace& space, double tol = kDefaultTolerance);

}  // namespace condbell
