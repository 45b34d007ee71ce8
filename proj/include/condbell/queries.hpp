#pragma once

#include <optional>
#include <string>
#include <vector>

#include "condbell/prob_space.hpp"

namespace condbell {

/// One atomic condition: (observable = v), (generator = k) or (generator != k).
class Clause {
public:
    enum class Kind { ObservableEquals, GeneratorEquals, GeneratorNotEquals };

    static Clause observableEquals(ObservableId obs, int value);
    static Clause generatorEquals(Side side, int k);
    static Clause generatorNotEquals(Side side, int k);

    bool holds(const Atom& omega) const noexcept;
    std::string describe() const;

    Kind kind() const noexcept { return kind_; }

private:
    Clause(Kind kind, Side side, int index, int value) : kind_(kind), side_(side), index_(index), value_(value) {}

    Kind kind_;
    Side side_;
    int index_;  // observable index or generator value
    int value_;  // observable value (ObservableEquals only)
};

/// A conjunction of clauses; the empty conjunction is the whole space.
/// Contradictory clause sets are legal and denote the empty event.
class Event {
public:
    Event() = default;
    Event(Clause c) : clauses_{c} {}  // NOLINT(google-explicit-constructor)

    Event& operator&=(const Event& other);
    bool holds(const Atom& omega) const noexcept;
    std::string describe() const;

    const std::vector<Clause>& clauses() const noexcept { return clauses_; }

private:
    std::vector<Clause> clauses_;
};

inline Event operator&&(Event lhs, const Event& rhs) {
    lhs &= rhs;
    return lhs;
}

/// Generator random variable a (Side::A) or b (Side::B), for building events.
struct Generator {
    Side side;
};

inline constexpr Generator a{Side::A};
inline constexpr Generator b{Side::B};

inline Clause operator==(ObservableId obs, int value) { return Clause::observableEquals(obs, value); }
inline Clause operator==(Generator g, int k) { return Clause::generatorEquals(g.side, k); }
inline Clause operator!=(Generator g, int k) { return Clause::generatorNotEquals(g.side, k); }

/// Sum of p(omega) over the atoms on which `e` holds.
double prob(const SampleSpace& space, const Event& e);

/// Probability of a union of events, summed atom-wise (each atom counted once).
double probAny(const SampleSpace& space, const std::vector<Event>& events);

/// p(e | given). Throws ConditioningOnNull when p(given) <= tol.
double condProb(const SampleSpace& space, const Event& e, const Event& given, double tol = kDefaultTolerance);

enum class LineStatus { Pass, Fail, NotApplicable };

std::string statusLabel(LineStatus s);

/// One checked identity lhs = rhs.
struct IdentityLine {
    std::string name;
    double lhs = 0.0;
    double rhs = 0.0;
    LineStatus status = LineStatus::NotApplicable;
    /// Set when status is NotApplicable: the null conditioning event.
    std::string note;
    /// Conditioning event, for lines stated through a conditional probability.
    std::optional<Event> given;

    double deviation() const { return status == LineStatus::NotApplicable ? 0.0 : std::abs(lhs - rhs); }
};

struct IdentityReport {
    std::vector<IdentityLine> lines;

    bool allApplicablePass() const;
    std::size_t count(LineStatus s) const;
    double maxDeviation() const;
};

/// Checks the nondetection / conditioning identities that follow from the
/// no-background and full-efficiency conditions: single-observable
/// nondetection, detection through conditioning, pair probabilities through
/// the selected setting pair, and the joint/mixed nondetection forms.
IdentityReport nondetectionIdentities(const SampleSpace& space, double tol = kDefaultTolerance);

/// Largest probability of any counterfactual event: both observables of one
/// side taking nonzero values. Exactly 0 on every space.
double counterfactualMass(const SampleSpace& space);

}  // namespace condbell
