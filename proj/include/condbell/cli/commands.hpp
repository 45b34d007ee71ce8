#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace condbell::cli {

enum ExitCode : int {
    kExitOk = 0,
    kExitInvariant = 1,
    kExitParse = 2,
    kExitValidation = 3,
    kExitIo = 4,
};

struct CommonOptions {
    std::optional<double> tolerance;
    bool exactLp = false;
    /// Print the structured report on stdout instead of text.
    bool json = false;
    /// Also write the structured report here.
    std::string reportPath;
};

struct AnalyzeOptions {
    std::string configPath;
    CommonOptions common;
};

struct SimulateOptions {
    std::string configPath;
    std::uint64_t n = 0;
    std::uint64_t seed = 0;
    std::string outPath;
    unsigned shards = 1;
    CommonOptions common;
};

struct IngestOptions {
    std::string csvPath;
    CommonOptions common;
};

struct TsirelsonOptions {
    std::size_t grid = 17;
    bool spin = false;
    bool json = false;
};

struct CurveOptions {
    std::string configPath;
    std::size_t grid = 5;
    std::optional<double> tolerance;
};

struct ConvergenceOptions {
    std::string configPath;
    std::vector<std::uint64_t> nList;
    std::uint64_t seed = 0;
    unsigned shards = 1;
    std::optional<double> tolerance;
};

int runAnalyze(const AnalyzeOptions& opts, std::ostream& out, std::ostream& err);
int runSimulate(const SimulateOptions& opts, std::ostream& out, std::ostream& err);
int runIngest(const IngestOptions& opts, std::ostream& out, std::ostream& err);
int runTsirelson(const TsirelsonOptions& opts, std::ostream& out, std::ostream& err);
int runCurve(const CurveOptions& opts, std::ostream& out, std::ostream& err);
int runConvergence(const ConvergenceOptions& opts, std::ostream& out, std::ostream& err);

}  // namespace condbell::cli
