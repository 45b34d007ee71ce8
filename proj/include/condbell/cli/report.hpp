#pragma once

#include <iosfwd>
#include <optional>
#include <string>

#include "json.hpp"

#include "condbell/chsh.hpp"
#include "condbell/locality.hpp"
#include "condbell/montecarlo.hpp"
#include "condbell/queries.hpp"

namespace condbell::cli {

using Json = nlohmann::ordered_json;

struct AnalysisOptions {
    double tolerance = kDefaultTolerance;
    bool exactLp = false;
    bool runFine = true;
};

/// Every check the tool runs on one space.
struct Analysis {
    SampleSpace space;
    IdentityReport identities;
    double counterfactualMass = 0.0;
    IndependenceCheck lig;
    IndependenceCheck liog;
    FactorizationReport factorizations;
    MarginalConsistencyReport marginals;
    std::optional<ConditionalMarginalReport> conditionalMarginals;
    std::string conditionalMarginalsNote;
    ChshReport chsh;
    double tolerance = kDefaultTolerance;

    /// Identities that hold on every constructed space: nondetection identities,
    /// zero counterfactual mass, absolute marginal consistency and |S_abs| <= 1.
    bool structuralOk() const;
};

Analysis analyze(const SampleSpace& space, const AnalysisOptions& options = {});

/// Formats with 12 significant digits.
std::string formatNumber(double x);
/// Rounds to 12 significant digits so the structured output diffs cleanly.
double roundForReport(double x);

Json analysisJson(const Analysis& analysis);
Json empiricalJson(const EmpiricalEstimate& est);

void renderAnalysisText(std::ostream& out, const Analysis& analysis);
void renderEmpiricalText(std::ostream& out, const EmpiricalEstimate& est);

/// Pretty JSON with a trailing newline.
std::string dumpJson(const Json& j);

}  // namespace condbell::cli
