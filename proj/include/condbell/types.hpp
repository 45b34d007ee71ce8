#pragma once

#include <array>
#include <compare>
#include <cstddef>
#include <stdexcept>
#include <string>

namespace condbell {

/// Absolute tolerance used by equality checks unless a caller overrides it.
inline constexpr double kDefaultTolerance = 1e-9;

enum class Side { A, B };

inline constexpr std::array<int, 2> kSettings{1, 2};
inline constexpr std::array<int, 2> kOutcomes{+1, -1};
/// Observable values including the nondetection value 0.
inline constexpr std::array<int, 3> kValues{+1, 0, -1};

inline constexpr bool isSetting(int k) noexcept { return k == 1 || k == 2; }
inline constexpr bool isOutcome(int e) noexcept { return e == 1 || e == -1; }

inline void requireSetting(int k) {
    if (!isSetting(k)) throw std::invalid_argument("setting index must be 1 or 2, got " + std::to_string(k));
}

inline void requireOutcome(int e) {
    if (!isOutcome(e)) throw std::invalid_argument("outcome must be +1 or -1, got " + std::to_string(e));
}

/// Row/column index of an outcome inside a 2x2 block: +1 -> 0, -1 -> 1.
inline constexpr int outcomeIndex(int eps) noexcept { return eps == 1 ? 0 : 1; }
inline constexpr int outcomeValue(int index) noexcept { return index == 0 ? 1 : -1; }

/// Index of the setting pair (i, j) in 0..3, row-major in i.
inline constexpr int pairIndex(int i, int j) noexcept { return (i - 1) * 2 + (j - 1); }

inline char sideName(Side s) noexcept { return s == Side::A ? 'A' : 'B'; }

/// One of A1, A2, B1, B2.
class ObservableId {
public:
    constexpr ObservableId(Side side, int index) : side_(side), index_(index) {
        if (!isSetting(index)) throw std::invalid_argument("observable index must be 1 or 2");
    }

    constexpr Side side() const noexcept { return side_; }
    constexpr int index() const noexcept { return index_; }

    std::string name() const { return std::string(1, sideName(side_)) + std::to_string(index_); }

    constexpr bool operator==(const ObservableId&) const = default;

private:
    Side side_;
    int index_;
};

inline constexpr ObservableId A1{Side::A, 1};
inline constexpr ObservableId A2{Side::A, 2};
inline constexpr ObservableId B1{Side::B, 1};
inline constexpr ObservableId B2{Side::B, 2};

inline constexpr std::array<ObservableId, 4> kObservables{A1, A2, B1, B2};

/// An elementary outcome: selected settings (i, j) and the clicks (eps, epsPrime).
struct Atom {
    int i;
    int j;
    int eps;
    int epsPrime;

    /// Position in the canonical 16-atom ordering.
    constexpr std::size_t index() const noexcept {
        return static_cast<std::size_t>(pairIndex(i, j) * 4 + outcomeIndex(eps) * 2 + outcomeIndex(epsPrime));
    }

    constexpr auto operator<=>(const Atom&) const = default;
};

inline constexpr std::size_t kAtomCount = 16;

inline constexpr std::array<Atom, kAtomCount> makeAtoms() {
    std::array<Atom, kAtomCount> out{};
    std::size_t n = 0;
    for (int i : kSettings)
        for (int j : kSettings)
            for (int e : kOutcomes)
                for (int f : kOutcomes) out[n++] = Atom{i, j, e, f};
    return out;
}

/// All atoms of the sample space in canonical order (atom.index() == position).
inline constexpr std::array<Atom, kAtomCount> kAtoms = makeAtoms();

}  // namespace condbell
