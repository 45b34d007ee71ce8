#include "condbell/cli/report.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <iomanip>
#include <ostream>
#include <sstream>

namespace condbell::cli {

std::string formatNumber(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return buf;
}

namespace {

std::string pairKey(int i, int j) { return std::to_string(i) + std::to_string(j); }

Json num(double x) { return Json(roundForReport(x)); }

Json optNum(const std::optional<double>& x) { return x ? num(*x) : Json(nullptr); }

Json weightsJson(const Weights& w) {
    return Json::array({Json::array({num(w(0, 0)), num(w(0, 1))}), Json::array({num(w(1, 0)), num(w(1, 1))})});
}

Json identityJson(const IdentityReport& r) {
    Json j;
    j["pass"] = r.count(LineStatus::Pass);
    j["fail"] = r.count(LineStatus::Fail);
    j["not_applicable"] = r.count(LineStatus::NotApplicable);
    j["max_deviation"] = num(r.maxDeviation());
    Json failures = Json::array();
    Json skipped = Json::array();
    for (const IdentityLine& l : r.lines) {
        if (l.status == LineStatus::Fail) {
            failures.push_back(Json{
                {"identity", l.name}, {"lhs", num(l.lhs)}, {"rhs", num(l.rhs)}, {"deviation", num(l.deviation())}});
        } else if (l.status == LineStatus::NotApplicable) {
            skipped.push_back(Json{{"identity", l.name}, {"reason", l.note}});
        }
    }
    j["failures"] = failures;
    j["not_applicable_lines"] = skipped;
    return j;
}

Json fineJson(const ChshReport& r) {
    Json j;
    if (!r.fine) {
        j["status"] = "not_applicable";
        j["reason"] = r.fineNote;
        return j;
    }
    const FineVerdict& v = *r.fine;
    j["status"] = v.feasible ? "feasible" : "infeasible";
    j["arithmetic"] = v.exact ? "exact" : "floating";
    j["constraint_rank"] = v.rank;
    j["infeasibility"] = num(v.infeasibility);
    if (v.witness) {
        Json w = Json::array();
        for (Eigen::Index k = 0; k < 16; ++k) w.push_back(num(v.witness->values()(k)));
        j["witness_order"] = "x1,x2,y1,y2 with +1 before -1, x1 slowest";
        j["witness"] = w;
    }
    if (v.violated) {
        j["violated_inequality"] = v.violated->describe();
        j["violated_value"] = num(v.violated->value);
    }
    return j;
}

void line(std::ostream& out, const std::string& label, const std::string& value) {
    out << "  " << std::left << std::setw(34) << label << value << '\n';
}

std::string verdict(bool ok) { return ok ? "pass" : "FAIL"; }

void identitySummary(std::ostream& out, const std::string& label, const IdentityReport& r) {
    std::ostringstream os;
    os << r.count(LineStatus::Pass) << " pass, " << r.count(LineStatus::Fail) << " fail, "
       << r.count(LineStatus::NotApplicable) << " n/a (max deviation " << formatNumber(r.maxDeviation()) << ")";
    line(out, label, os.str());
    for (const IdentityLine& l : r.lines) {
        if (l.status == LineStatus::Fail) {
            out << "      fail: " << l.name << "  [" << formatNumber(l.lhs) << " vs " << formatNumber(l.rhs) << "]\n";
        }
    }
}

}  // namespace

bool Analysis::structuralOk() const {
    return identities.allApplicablePass() && counterfactualMass == 0.0 && marginals.absolute.allApplicablePass() &&
           std::abs(chsh.sAbs) <= 1.0 + tolerance;
}

Analysis analyze(const SampleSpace& space, const AnalysisOptions& options) {
    const double tol = options.tolerance;
    Analysis a{space,
               nondetectionIdentities(space, tol),
               counterfactualMass(space),
               checkLIG(space, tol),
               checkLIOG(space, tol),
               checkDetectionFactorizations(space, tol),
               checkMarginalConsistency(space, tol),
               std::nullopt,
               {},
               chshReport(space, ChshOptions{tol, options.exactLp, options.runFine}),
               tol};
    try {
        a.conditionalMarginals = checkConditionalMarginalConsistency(space, tol);
    } catch (const ConditioningOnNull& e) {
        a.conditionalMarginalsNote = std::string("not applicable: ") + e.what();
    }
    return a;
}

double roundForReport(double x) {
    if (!std::isfinite(x) || x == 0.0) return x == 0.0 ? 0.0 : x;
    return std::strtod(formatNumber(x).c_str(), nullptr);
}

Json analysisJson(const Analysis& an) {
    const SampleSpace& s = an.space;
    Json j;
    j["tolerance"] = an.tolerance;

    Json settings;
    settings["weights"] = weightsJson(s.settings().weights());
    settings["p_a"] = Json::array({num(s.settings().marginalA(1)), num(s.settings().marginalA(2))});
    settings["p_b"] = Json::array({num(s.settings().marginalB(1)), num(s.settings().marginalB(2))});
    j["settings"] = settings;

    Json table;
    for (int i : kSettings)
        for (int jj : kSettings) {
            const OutcomeBlock& q = s.table().block(i, jj);
            table[pairKey(i, jj)] = Json::array({num(q(0, 0)), num(q(0, 1)), num(q(1, 0)), num(q(1, 1))});
        }
    j["table"] = table;

    j["identities"] = identityJson(an.identities);
    j["counterfactual_mass"] = num(an.counterfactualMass);

    Json loc;
    loc["LO"] = "holds structurally";
    loc["LIG"] = Json{{"holds", an.lig.holds}, {"max_deviation", num(an.lig.maxDeviation)}};
    loc["LIOG"] = Json{{"holds", an.liog.holds}, {"max_deviation", num(an.liog.maxDeviation)}};
    Json fact = identityJson(an.factorizations.identities);
    fact["conditional_on_locality_failure"] = an.factorizations.conditionalOnLocalityFailure;
    loc["detection_factorizations"] = fact;
    loc["marginal_consistency"] = Json{{"absolute", identityJson(an.marginals.absolute)},
                                       {"conditional_reductions", identityJson(an.marginals.conditionalReductions)}};
    if (an.conditionalMarginals) {
        Json cm = identityJson(an.conditionalMarginals->lines);
        cm["passes"] = an.conditionalMarginals->passes;
        cm["deviation"] = num(an.conditionalMarginals->deviation);
        loc["conditional_marginal_consistency"] = cm;
    } else {
        loc["conditional_marginal_consistency"] =
            Json{{"status", "not_applicable"}, {"reason", an.conditionalMarginalsNote}};
    }
    j["locality"] = loc;

    const ChshReport& r = an.chsh;
    Json chsh;
    Json c;
    Json q;
    for (int i : kSettings)
        for (int jj : kSettings) {
            c[pairKey(i, jj)] = num(r.correlations.c(i, jj));
            q[pairKey(i, jj)] = optNum(r.correlations.q(i, jj));
        }
    chsh["C"] = c;
    chsh["Q"] = q;
    chsh["S_abs"] = num(r.sAbs);
    chsh["S_cond"] = optNum(r.sCond);
    chsh["S_weighted"] = num(r.sWeighted);
    Json bounds = Json::array();
    for (const BoundCheck& b : r.bounds) {
        bounds.push_back(
            Json{{"inequality", b.name}, {"value", num(b.value)}, {"bound", num(b.bound)}, {"holds", b.holds}});
    }
    chsh["bounds"] = bounds;
    chsh["fine"] = fineJson(r);
    j["chsh"] = chsh;

    j["structural_invariants"] = an.structuralOk() ? "ok" : "violated";
    return j;
}

Json empiricalJson(const EmpiricalEstimate& est) {
    Json j;
    j["n"] = est.counts.total;
    Json cells;
    for (int i : kSettings)
        for (int jj : kSettings) cells[pairKey(i, jj)] = est.counts.cell(i, jj);
    j["cell_counts"] = cells;
    j["weights"] = weightsJson(est.settings.weights());

    Json table;
    Json q;
    Json undefined = Json::array();
    const char* outcomeNames[2] = {"+1", "-1"};
    for (int i : kSettings)
        for (int jj : kSettings) {
            const std::size_t k = static_cast<std::size_t>(pairIndex(i, jj));
            if (est.defined[k]) {
                const OutcomeBlock& b = est.table.block(i, jj);
                table[pairKey(i, jj)] = Json::array({num(b(0, 0)), num(b(0, 1)), num(b(1, 0)), num(b(1, 1))});
            } else {
                table[pairKey(i, jj)] = nullptr;
                for (int r = 0; r < 2; ++r)
                    for (int cidx = 0; cidx < 2; ++cidx)
                        undefined.push_back(std::string("q(") + outcomeNames[r] + "," + outcomeNames[cidx] + "|" +
                                            std::to_string(i) + "," + std::to_string(jj) + ")");
            }
            q[pairKey(i, jj)] = optNum(est.correlations.q(i, jj));
            if (!est.correlations.q(i, jj)) undefined.push_back("Q" + pairKey(i, jj));
        }
    j["table"] = table;
    j["Q"] = q;
    bool all = true;
    double sCond = 0.0;
    for (int i : kSettings)
        for (int jj : kSettings) {
            if (const auto& v = est.correlations.q(i, jj)) {
                sCond += kChshSigns[pairIndex(i, jj)] * *v;
            } else {
                all = false;
            }
        }
    j["S_cond"] = all ? num(sCond) : Json(nullptr);
    j["undefined_cells"] = est.undefinedCount();
    j["undefined"] = undefined;
    return j;
}

void renderAnalysisText(std::ostream& out, const Analysis& an) {
    const SampleSpace& s = an.space;
    const Weights& w = s.settings().weights();
    out << "Settings p(a=i,b=j): [[" << formatNumber(w(0, 0)) << ", " << formatNumber(w(0, 1)) << "], ["
        << formatNumber(w(1, 0)) << ", " << formatNumber(w(1, 1)) << "]]\n";

    out << "Probability space\n";
    identitySummary(out, "nondetection identities", an.identities);
    line(out, "counterfactual mass", formatNumber(an.counterfactualMass));

    out << "Locality\n";
    line(out, "LO", "holds structurally");
    line(out, "LIG", verdict(an.lig.holds) + " (max deviation " + formatNumber(an.lig.maxDeviation) + ")");
    line(out, "LIOG", verdict(an.liog.holds) + " (max deviation " + formatNumber(an.liog.maxDeviation) + ")");
    identitySummary(out, "detection factorizations", an.factorizations.identities);
    if (an.factorizations.conditionalOnLocalityFailure) out << "      (generators are dependent; failures expected)\n";
    identitySummary(out, "absolute marginal consistency", an.marginals.absolute);
    identitySummary(out, "conditional reductions", an.marginals.conditionalReductions);
    if (an.conditionalMarginals) {
        line(out, "conditional marginal consistency",
             verdict(an.conditionalMarginals->passes) + " (signaling deviation " +
                 formatNumber(an.conditionalMarginals->deviation) + ")");
    } else {
        line(out, "conditional marginal consistency", an.conditionalMarginalsNote);
    }

    const ChshReport& r = an.chsh;
    out << "Correlations\n";
    for (int i : kSettings)
        for (int j : kSettings) {
            const auto& q = r.correlations.q(i, j);
            line(out, "C" + pairKey(i, j) + " / Q" + pairKey(i, j),
                 formatNumber(r.correlations.c(i, j)) + " / " + (q ? formatNumber(*q) : std::string("undefined")));
        }
    out << "CHSH\n";
    line(out, "S_abs", formatNumber(r.sAbs));
    line(out, "S_cond", r.sCond ? formatNumber(*r.sCond) : std::string("undefined"));
    for (const BoundCheck& b : r.bounds)
        line(out, b.name, (b.holds ? "holds" : "violated") + (" (" + formatNumber(b.value) + ")"));
    if (r.fine) {
        std::string v = r.fine->feasible ? "feasible (joint distribution exists)" : "infeasible";
        if (r.fine->violated)
            v += "; violated " + r.fine->violated->describe() + " at " + formatNumber(r.fine->violated->value);
        line(out, "Fine joint distribution", v);
    } else {
        line(out, "Fine joint distribution", r.fineNote);
    }
    out << "Structural invariants: " << (an.structuralOk() ? "ok" : "VIOLATED") << '\n';
}

void renderEmpiricalText(std::ostream& out, const EmpiricalEstimate& est) {
    out << "Empirical estimate from " << est.counts.total << " trials\n";
    for (int i : kSettings)
        for (int j : kSettings) {
            const auto& q = est.correlations.q(i, j);
            line(out, "cell (" + std::to_string(i) + "," + std::to_string(j) + ")",
                 std::to_string(est.counts.cell(i, j)) + " trials, Q" + pairKey(i, j) + " = " +
                     (q ? formatNumber(*q) : std::string("undefined")));
        }
    if (est.undefinedCount() > 0) line(out, "undefined cells", std::to_string(est.undefinedCount()));
}

std::string dumpJson(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace condbell::cli
