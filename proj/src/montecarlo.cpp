#include "condbell/montecarlo.hpp"

#include <algorithm>
#include <thread>

#include "condbell/philox.hpp"
#include "condbell/queries.hpp"

namespace condbell {

bool EventRecord::isStructurallyValid() const noexcept {
    if (!isSetting(aSetting) || !isSetting(bSetting)) return false;
    const int selectedA = aSetting == 1 ? A1 : A2;
    const int otherA = aSetting == 1 ? A2 : A1;
    const int selectedB = bSetting == 1 ? B1 : B2;
    const int otherB = bSetting == 1 ? B2 : B1;
    return isOutcome(selectedA) && otherA == 0 && isOutcome(selectedB) && otherB == 0;
}

EventRecord EventRecord::fromAtom(std::uint64_t trial, const Atom& omega) noexcept {
    EventRecord r;
    r.trial = trial;
    r.aSetting = omega.i;
    r.bSetting = omega.j;
    r.A1 = evalObservable(condbell::A1, omega);
    r.A2 = evalObservable(condbell::A2, omega);
    r.B1 = evalObservable(condbell::B1, omega);
    r.B2 = evalObservable(condbell::B2, omega);
    return r;
}

Atom EventRecord::atom() const noexcept {
    return Atom{aSetting, bSetting, aSetting == 1 ? A1 : A2, bSetting == 1 ? B1 : B2};
}

const char* rngName() { return Philox4x32::kName; }

namespace {

struct AtomSampler {
    std::array<double, kAtomCount> cdf{};
    std::size_t last = 0;  // last atom with positive mass

    explicit AtomSampler(const SampleSpace& space) {
        double run = 0.0;
        for (const Atom& omega : kAtoms) {
            const double p = space.probability(omega);
            run += p;
            cdf[omega.index()] = run;
            if (p > 0.0) last = omega.index();
        }
    }

    const Atom& draw(double u) const {
        // First atom whose cumulative mass exceeds u; zero-mass atoms are never chosen
        // because their cdf equals the previous entry.
        const auto it = std::upper_bound(cdf.begin(), cdf.begin() + static_cast<std::ptrdiff_t>(last), u);
        return kAtoms[static_cast<std::size_t>(it - cdf.begin())];
    }
};

}  // namespace

std::vector<EventRecord> sampleTrialRange(const SampleSpace& space, std::uint64_t begin, std::uint64_t end,
                                          std::uint64_t seed) {
    const AtomSampler sampler(space);
    std::vector<EventRecord> out;
    out.reserve(end > begin ? end - begin : 0);
    for (std::uint64_t t = begin; t < end; ++t) {
        out.push_back(EventRecord::fromAtom(t, sampler.draw(Philox4x32::uniform(seed, t))));
    }
    return out;
}

std::vector<EventRecord> sampleTrials(const SampleSpace& space, std::uint64_t n, std::uint64_t seed, unsigned shards) {
    shards = std::max(1u, shards);
    if (shards == 1 || n < shards) return sampleTrialRange(space, 0, n, seed);

    std::vector<EventRecord> out(n);
    const AtomSampler sampler(space);
    std::vector<std::thread> workers;
    workers.reserve(shards);
    for (unsigned s = 0; s < shards; ++s) {
        const std::uint64_t begin = n * s / shards;
        const std::uint64_t end = n * (s + 1) / shards;
        workers.emplace_back([&, begin, end] {
            for (std::uint64_t t = begin; t < end; ++t) {
                out[t] = EventRecord::fromAtom(t, sampler.draw(Philox4x32::uniform(seed, t)));
            }
        });
    }
    for (auto& w : workers) w.join();
    return out;
}

void TrialCounts::add(const EventRecord& r) {
    ++total;
    ++atoms[r.atom().index()];
}

TrialCounts& TrialCounts::operator+=(const TrialCounts& other) {
    total += other.total;
    for (std::size_t k = 0; k < kAtomCount; ++k) atoms[k] += other.atoms[k];
    return *this;
}

std::uint64_t TrialCounts::cell(int i, int j) const {
    std::uint64_t n = 0;
    for (int e : kOutcomes)
        for (int f : kOutcomes) n += atoms[Atom{i, j, e, f}.index()];
    return n;
}

TrialCounts countTrials(std::span<const EventRecord> records) {
    TrialCounts c;
    for (const EventRecord& r : records) c.add(r);
    return c;
}

bool EmpiricalEstimate::allCellsDefined() const {
    return std::all_of(defined.begin(), defined.end(), [](bool d) { return d; });
}

std::size_t EmpiricalEstimate::undefinedCount() const {
    std::size_t n = 0;
    for (int k = 0; k < 4; ++k) {
        if (!defined[static_cast<std::size_t>(k)]) n += 4;
        if (!correlations.Q[static_cast<std::size_t>(k)]) ++n;
    }
    return n;
}

namespace {

SettingDistribution empiricalSettings(const TrialCounts& counts) {
    Weights w;
    for (int i : kSettings)
        for (int j : kSettings)
            w(i - 1, j - 1) = static_cast<double>(counts.cell(i, j)) / static_cast<double>(counts.total);
    return SettingDistribution(w);
}

}  // namespace

EmpiricalEstimate estimate(const TrialCounts& counts) {
    if (counts.total == 0) throw EmptyStream("cannot estimate from an empty record stream");
    std::array<OutcomeBlock, 4> blocks;
    std::array<bool, 4> defined{};
    for (int i : kSettings) {
        for (int j : kSettings) {
            const std::uint64_t cell = counts.cell(i, j);
            OutcomeBlock q = OutcomeBlock::Constant(0.25);
            if (cell > 0) {
                for (int e : kOutcomes)
                    for (int f : kOutcomes)
                        q(outcomeIndex(e), outcomeIndex(f)) =
                            static_cast<double>(counts.atom(Atom{i, j, e, f})) / static_cast<double>(cell);
            }
            blocks[pairIndex(i, j)] = q;
            defined[pairIndex(i, j)] = cell > 0;
        }
    }
    EmpiricalEstimate est{counts, empiricalSettings(counts), ConditionalTable(blocks), defined, {}};
    est.correlations = correlations(est.space(), 0.0);
    return est;
}

EmpiricalEstimate estimate(std::span<const EventRecord> records) { return estimate(countTrials(records)); }

std::vector<ConvergenceRow> convergenceReport(const SampleSpace& space, const std::vector<std::uint64_t>& nList,
                                              std::uint64_t seed, unsigned shards) {
    std::vector<ConvergenceRow> rows;
    rows.reserve(nList.size());
    for (std::uint64_t n : nList) {
        ConvergenceRow row;
        row.n = n;
        if (n > 0) {
            const auto records = sampleTrials(space, n, seed, shards);
            const TrialCounts counts = countTrials(records);
            for (const Atom& omega : kAtoms) {
                const double exact =
                    prob(space, a == omega.i && b == omega.j && ObservableId(Side::A, omega.i) == omega.eps &&
                                    ObservableId(Side::B, omega.j) == omega.epsPrime);
                const double freq = static_cast<double>(counts.atom(omega)) / static_cast<double>(n);
                row.maxDeviation = std::max(row.maxDeviation, std::abs(freq - exact));
            }
            row.scaled = row.maxDeviation * std::sqrt(static_cast<double>(n));
        }
        rows.push_back(row);
    }
    return rows;
}

}  // namespace condbell
