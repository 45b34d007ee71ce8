#include "condbell/cli/commands.hpp"

#include <cmath>
#include <fstream>
#include <functional>
#include <numbers>
#include <ostream>
#include <sstream>

#include "condbell/cli/config.hpp"
#include "condbell/cli/csv.hpp"
#include "condbell/cli/report.hpp"
#include "condbell/quantum.hpp"

namespace condbell::cli {

namespace {

/// Maps library and I/O exceptions onto exit codes.
template <class F>
int guarded(std::ostream& err, F&& body) {
    try {
        return body();
    } catch (const ConfigParseError& e) {
        err << "parse error: " << e.what() << '\n';
        return kExitParse;
    } catch (const CsvSchemaError& e) {
        err << "schema error: " << e.what() << '\n';
        return kExitParse;
    } catch (const ConfigValidationError& e) {
        err << "validation error: " << e.what() << '\n';
        return kExitValidation;
    } catch (const CsvEmptyError& e) {
        err << "validation error: " << e.what() << '\n';
        return kExitValidation;
    } catch (const InvalidDistribution& e) {
        err << "validation error: " << e.what() << '\n';
        return kExitValidation;
    } catch (const IoError& e) {
        err << "io error: " << e.what() << '\n';
        return kExitIo;
    }
}

void writeReportFile(const std::string& path, const Json& j) {
    if (path.empty()) return;
    std::ofstream f(path, std::ios::binary);
    if (!f) throw IoError("cannot open report file '" + path + "' for writing");
    f << dumpJson(j);
    if (!f) throw IoError("error writing report file '" + path + "'");
}

int emitAnalysis(const Analysis& an, Json j, const CommonOptions& common, std::ostream& out,
                 const std::function<void(std::ostream&)>& preamble) {
    writeReportFile(common.reportPath, j);
    if (common.json) {
        out << dumpJson(j);
    } else {
        preamble(out);
        renderAnalysisText(out, an);
    }
    return an.structuralOk() ? kExitOk : kExitInvariant;
}

}  // namespace

int runAnalyze(const AnalyzeOptions& opts, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        const Config cfg = loadConfig(opts.configPath, opts.common.tolerance);
        const Analysis an = analyze(cfg.space(), AnalysisOptions{cfg.tolerance, opts.common.exactLp, true});
        Json j;
        j["command"] = "analyze";
        j["config"] = cfg.source;
        const Json body = analysisJson(an);
        for (auto& [k, v] : body.items()) j[k] = v;
        return emitAnalysis(an, std::move(j), opts.common, out,
                            [&](std::ostream& o) { o << "Analysis of " << cfg.source << '\n'; });
    });
}

int runSimulate(const SimulateOptions& opts, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        if (opts.n < 1) throw ConfigValidationError("--n must be at least 1");
        if (opts.shards < 1) throw ConfigValidationError("--shards must be at least 1");
        if (opts.outPath.empty()) throw ConfigValidationError("--out is required");
        const Config cfg = loadConfig(opts.configPath, opts.common.tolerance);
        const SampleSpace space = cfg.space();
        const auto records = sampleTrials(space, opts.n, opts.seed, opts.shards);

        {
            std::ofstream f(opts.outPath, std::ios::binary);
            if (!f) throw IoError("cannot open '" + opts.outPath + "' for writing");
            writeCsv(f, records);
            f.flush();
            if (!f) throw IoError("error writing '" + opts.outPath + "'");
        }

        const EmpiricalEstimate est = estimate(records);
        const CorrelationSet exact = correlations(space, cfg.tolerance);
        double maxAtom = 0.0;
        for (const Atom& omega : kAtoms) {
            const double freq = static_cast<double>(est.counts.atom(omega)) / static_cast<double>(est.counts.total);
            maxAtom = std::max(maxAtom, std::abs(freq - space.probability(omega)));
        }
        double maxQ = 0.0;
        bool allQ = true;
        double sExact = 0.0;
        double sEmp = 0.0;
        for (int i : kSettings)
            for (int j : kSettings) {
                const auto& qe = exact.q(i, j);
                const auto& qs = est.correlations.q(i, j);
                if (qe && qs) {
                    maxQ = std::max(maxQ, std::abs(*qe - *qs));
                    sExact += kChshSigns[pairIndex(i, j)] * *qe;
                    sEmp += kChshSigns[pairIndex(i, j)] * *qs;
                } else {
                    allQ = false;
                }
            }

        Json j;
        j["command"] = "simulate";
        j["config"] = cfg.source;
        j["rng"] = rngName();
        j["seed"] = opts.seed;
        j["n"] = opts.n;
        j["shards"] = opts.shards;
        j["output"] = opts.outPath;
        j["empirical"] = empiricalJson(est);
        Json dev;
        dev["max_atom_probability"] = roundForReport(maxAtom);
        dev["max_Q"] = allQ ? Json(roundForReport(maxQ)) : Json(nullptr);
        dev["S_cond_exact"] = allQ ? Json(roundForReport(sExact)) : Json(nullptr);
        dev["S_cond_abs_error"] = allQ ? Json(roundForReport(std::abs(sEmp - sExact))) : Json(nullptr);
        j["deviation_from_exact"] = dev;
        writeReportFile(opts.common.reportPath, j);

        if (opts.common.json) {
            out << dumpJson(j);
        } else {
            out << "Simulated " << opts.n << " trials (" << rngName() << ", seed " << opts.seed << ", " << opts.shards
                << " shard(s)) -> " << opts.outPath << '\n';
            renderEmpiricalText(out, est);
            out << "Deviation from exact\n";
            out << "  max |freq - p(omega)|            " << formatNumber(maxAtom) << '\n';
            if (allQ) {
                out << "  S_cond exact / empirical         " << formatNumber(sExact) << " / " << formatNumber(sEmp)
                    << '\n';
                out << "  |S_cond error|                   " << formatNumber(std::abs(sEmp - sExact)) << '\n';
            }
        }
        return static_cast<int>(kExitOk);
    });
}

int runIngest(const IngestOptions& opts, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        std::ifstream f(opts.csvPath, std::ios::binary);
        if (!f) throw IoError("cannot open '" + opts.csvPath + "'");
        const auto records = readCsv(f, opts.csvPath);
        const EmpiricalEstimate est = estimate(records);
        const double tol = opts.common.tolerance.value_or(kDefaultTolerance);
        if (!(tol >= 0.0) || !std::isfinite(tol))
            throw ConfigValidationError("--tolerance must be a nonnegative number");
        const Analysis an = analyze(est.space(), AnalysisOptions{tol, opts.common.exactLp, est.allCellsDefined()});
        Analysis shown = an;
        if (!est.allCellsDefined()) {
            shown.chsh.fineNote = "not applicable: " + std::to_string(est.undefinedCount()) + " undefined cells";
        }

        Json j;
        j["command"] = "ingest";
        j["csv"] = opts.csvPath;
        j["empirical"] = empiricalJson(est);
        const Json body = analysisJson(shown);
        for (auto& [k, v] : body.items()) j[k] = v;
        return emitAnalysis(shown, std::move(j), opts.common, out, [&](std::ostream& o) {
            o << "Ingested " << opts.csvPath << '\n';
            renderEmpiricalText(o, est);
        });
    });
}

int runTsirelson(const TsirelsonOptions& opts, std::ostream& out, std::ostream& err) {
    if (opts.grid < 2) {
        err << "validation error: --grid must be at least 2\n";
        return kExitValidation;
    }
    const Convention conv = opts.spin ? Convention::Spin : Convention::Photon;
    const TsirelsonScanResult r = tsirelsonScan(opts.grid, conv);
    const auto deg = [](double rad) { return roundForReport(rad * 180.0 / std::numbers::pi); };
    if (opts.json) {
        Json j;
        j["command"] = "tsirelson";
        j["convention"] = opts.spin ? "spin" : "photon";
        j["grid"] = opts.grid;
        j["points"] = r.points;
        j["max_abs_S_cond"] = roundForReport(r.maxAbsS);
        j["tsirelson_bound"] = roundForReport(kTsirelsonBound);
        j["within_bound"] = r.maxAbsS <= kTsirelsonBound + 1e-9;
        j["argmax_deg"] = Json{{"a", {deg(r.argmax.thetaA[0]), deg(r.argmax.thetaA[1])}},
                               {"b", {deg(r.argmax.thetaB[0]), deg(r.argmax.thetaB[1])}}};
        out << dumpJson(j);
    } else {
        out << "Scanned " << r.points << " angle combinations (" << opts.grid << " per dial)\n";
        out << "  max |S_cond|     " << formatNumber(r.maxAbsS) << '\n';
        out << "  2*sqrt(2)        " << formatNumber(kTsirelsonBound) << '\n';
        const auto d = [&](double rad) { return formatNumber(deg(rad)); };
        out << "  at angles (deg)  a=(" << d(r.argmax.thetaA[0]) << ", " << d(r.argmax.thetaA[1]) << ") b=("
            << d(r.argmax.thetaB[0]) << ", " << d(r.argmax.thetaB[1]) << ")\n";
    }
    return kExitOk;
}

int runCurve(const CurveOptions& opts, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        if (opts.grid < 2) throw ConfigValidationError("--grid must be at least 2");
        const Config cfg = loadConfig(opts.configPath, opts.tolerance);
        std::vector<SettingDistribution> grid;
        std::vector<std::pair<double, double>> marginals;
        for (std::size_t u = 0; u < opts.grid; ++u) {
            for (std::size_t v = 0; v < opts.grid; ++v) {
                const double pa = static_cast<double>(u) / static_cast<double>(opts.grid - 1);
                const double pb = static_cast<double>(v) / static_cast<double>(opts.grid - 1);
                grid.push_back(SettingDistribution::product(pa, pb, cfg.tolerance));
                marginals.emplace_back(pa, pb);
            }
        }
        const auto points = weightedChshCurve(cfg.table, grid, cfg.tolerance);
        out << "p_a1,p_b1,w11,w12,w21,w22,S_abs,S_cond,implied_bound_from_2,implied_bound_from_1\n";
        for (std::size_t k = 0; k < points.size(); ++k) {
            const CurvePoint& p = points[k];
            auto cell = [](const std::optional<double>& x) { return x ? formatNumber(*x) : std::string(); };
            out << formatNumber(marginals[k].first) << ',' << formatNumber(marginals[k].second) << ','
                << formatNumber(p.weights(0, 0)) << ',' << formatNumber(p.weights(0, 1)) << ','
                << formatNumber(p.weights(1, 0)) << ',' << formatNumber(p.weights(1, 1)) << ',' << formatNumber(p.sAbs)
                << ',' << formatNumber(p.sCond) << ',' << cell(p.impliedBoundFromTwo) << ','
                << cell(p.impliedBoundFromOne) << '\n';
        }
        return static_cast<int>(kExitOk);
    });
}

int runConvergence(const ConvergenceOptions& opts, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        if (opts.nList.empty()) throw ConfigValidationError("--n needs at least one count");
        if (opts.shards < 1) throw ConfigValidationError("--shards must be at least 1");
        const Config cfg = loadConfig(opts.configPath, opts.tolerance);
        const auto rows = convergenceReport(cfg.space(), opts.nList, opts.seed, opts.shards);
        out << "n,max_atom_deviation,deviation_times_sqrt_n\n";
        for (const ConvergenceRow& r : rows) {
            out << r.n << ',' << formatNumber(r.maxDeviation) << ',' << formatNumber(r.scaled) << '\n';
        }
        return static_cast<int>(kExitOk);
    });
}

}  // namespace condbell::cli
