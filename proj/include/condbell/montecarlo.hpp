#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "condbell/chsh.hpp"
#include "condbell/prob_space.hpp"

namespace condbell {

/// One simulated trial. Exactly one of (A1, A2) is nonzero, the one selected by
/// aSetting; likewise for the B side.
struct EventRecord {
    std::uint64_t trial = 0;
    int aSetting = 1;
    int bSetting = 1;
    int A1 = 0;
    int A2 = 0;
    int B1 = 0;
    int B2 = 0;

    bool operator==(const EventRecord&) const = default;

    /// True when the record respects the no-background / full-efficiency structure.
    bool isStructurallyValid() const noexcept;

    static EventRecord fromAtom(std::uint64_t trial, const Atom& omega) noexcept;
    /// The atom the record corresponds to; requires isStructurallyValid().
    Atom atom() const noexcept;
};

struct FrequencyEstimate {
    double value = 0.0;
    double stdError = 0.0;
    std::uint64_t n = 0;

    static FrequencyEstimate fromCount(std::uint64_t hits, std::uint64_t n) {
        FrequencyEstimate f;
        f.n = n;
        f.value = n == 0 ? 0.0 : static_cast<double>(hits) / static_cast<double>(n);
        f.stdError = n == 0 ? 0.0 : std::sqrt(f.value * (1.0 - f.value) / static_cast<double>(n));
        return f;
    }
};

/// Name of the generator behind sampleTrials, for output metadata.
const char* rngName();

/// Draws n i.i.d. trials with atom probabilities p(omega) by inverse CDF, one
/// uniform per trial. Trial t uses draw t of the counter-based stream `seed`, so
/// the result is identical for every shard count; shards > 1 fills disjoint
/// trial ranges on worker threads.
std::vector<EventRecord> sampleTrials(const SampleSpace& space, std::uint64_t n, std::uint64_t seed,
                                      unsigned shards = 1);

/// Records [begin, end) of the stream; sampleTrials is the concatenation of such ranges.
std::vector<EventRecord> sampleTrialRange(const SampleSpace& space, std::uint64_t begin, std::uint64_t end,
                                          std::uint64_t seed);

/// Per-cell and per-atom counts; merging is a commutative, associative sum.
struct TrialCounts {
    std::uint64_t total = 0;
    std::array<std::uint64_t, kAtomCount> atoms{};

    void add(const EventRecord& r);
    TrialCounts& operator+=(const TrialCounts& other);
    std::uint64_t cell(int i, int j) const;
    std::uint64_t atom(const Atom& omega) const { return atoms[omega.index()]; }
};

TrialCounts countTrials(std::span<const EventRecord> records);

struct EmpiricalEstimate {
    TrialCounts counts;
    SettingDistribution settings;
    /// Blocks of cells with zero count are placeholders (uniform) and flagged in `defined`.
    ConditionalTable table;
    std::array<bool, 4> defined{};
    CorrelationSet correlations;

    bool allCellsDefined() const;
    /// Undefined conditional entries plus undefined Q_ij.
    std::size_t undefinedCount() const;
    SampleSpace space() const { return buildSpace(settings, table); }
};

/// Throws EmptyStream when there are no records.
EmpiricalEstimate estimate(std::span<const EventRecord> records);
EmpiricalEstimate estimate(const TrialCounts& counts);

struct ConvergenceRow {
    std::uint64_t n = 0;
    double maxDeviation = 0.0;
    /// maxDeviation * sqrt(n); roughly constant under O(n^-1/2) decay.
    double scaled = 0.0;
};

/// For each n: max over the 16 atoms of |empirical frequency - p(omega)|.
std::vector<ConvergenceRow> convergenceReport(const SampleSpace& space, const std::vector<std::uint64_t>& nList,
                                              std::uint64_t seed, unsigned shards = 1);

}  // namespace condbell
