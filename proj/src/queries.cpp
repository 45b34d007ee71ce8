#include "condbell/queries.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace condbell {

Clause Clause::observableEquals(ObservableId obs, int value) {
    if (value < -1 || value > 1) throw std::invalid_argument("observable value must be -1, 0 or +1");
    return Clause(Kind::ObservableEquals, obs.side(), obs.index(), value);
}

Clause Clause::generatorEquals(Side side, int k) {
    requireSetting(k);
    return Clause(Kind::GeneratorEquals, side, k, 0);
}

Clause Clause::generatorNotEquals(Side side, int k) {
    requireSetting(k);
    return Clause(Kind::GeneratorNotEquals, side, k, 0);
}

bool Clause::holds(const Atom& omega) const noexcept {
    switch (kind_) {
        case Kind::ObservableEquals:
            return evalObservable(ObservableId(side_, index_), omega) == value_;
        case Kind::GeneratorEquals:
            return evalGenerator(side_, omega) == index_;
        case Kind::GeneratorNotEquals:
            return evalGenerator(side_, omega) != index_;
    }
    return false;
}

std::string Clause::describe() const {
    std::ostringstream os;
    switch (kind_) {
        case Kind::ObservableEquals:
            os << sideName(side_) << index_ << '=' << (value_ > 0 ? "+1" : value_ < 0 ? "-1" : "0");
            break;
        case Kind::GeneratorEquals:
            os << (side_ == Side::A ? 'a' : 'b') << '=' << index_;
            break;
        case Kind::GeneratorNotEquals:
            os << (side_ == Side::A ? 'a' : 'b') << "!=" << index_;
            break;
    }
    return os.str();
}

Event& Event::operator&=(const Event& other) {
    clauses_.insert(clauses_.end(), other.clauses_.begin(), other.clauses_.end());
    return *this;
}

bool Event::holds(const Atom& omega) const noexcept {
    return std::all_of(clauses_.begin(), clauses_.end(), [&](const Clause& c) { return c.holds(omega); });
}

std::string Event::describe() const {
    if (clauses_.empty()) return "Omega";
    std::string out;
    for (const Clause& c : clauses_) {
        if (!out.empty()) out += ", ";
        out += c.describe();
    }
    return out;
}

double prob(const SampleSpace& space, const Event& e) {
    double total = 0.0;
    for (const Atom& omega : kAtoms) {
        if (e.holds(omega)) total += space.probability(omega);
    }
    return total;
}

double probAny(const SampleSpace& space, const std::vector<Event>& events) {
    double total = 0.0;
    for (const Atom& omega : kAtoms) {
        if (std::any_of(events.begin(), events.end(), [&](const Event& e) { return e.holds(omega); })) {
            total += space.probability(omega);
        }
    }
    return total;
}

double condProb(const SampleSpace& space, const Event& e, const Event& given, double tol) {
    const double denom = prob(space, given);
    if (denom <= tol) {
        throw ConditioningOnNull("conditioning event {" + given.describe() + "} has probability " +
                                 std::to_string(denom));
    }
    return prob(space, e && given) / denom;
}

std::string statusLabel(LineStatus s) {
    switch (s) {
        case LineStatus::Pass:
            return "pass";
        case LineStatus::Fail:
            return "fail";
        case LineStatus::NotApplicable:
            return "n/a";
    }
    return "?";
}

bool IdentityReport::allApplicablePass() const {
    return std::none_of(lines.begin(), lines.end(), [](const IdentityLine& l) { return l.status == LineStatus::Fail; });
}

std::size_t IdentityReport::count(LineStatus s) const {
    return static_cast<std::size_t>(
        std::count_if(lines.begin(), lines.end(), [s](const IdentityLine& l) { return l.status == s; }));
}

double IdentityReport::maxDeviation() const {
    double worst = 0.0;
    for (const IdentityLine& l : lines) worst = std::max(worst, l.deviation());
    return worst;
}

namespace {

std::string sign(int e) { return e > 0 ? "+1" : "-1"; }

class LineBuilder {
public:
    LineBuilder(const SampleSpace& space, double tol, IdentityReport& report)
        : space_(space), tol_(tol), report_(report) {}

    void plain(std::string name, double lhs, double rhs, std::optional<Event> given = std::nullopt) {
        IdentityLine line{std::move(name), lhs, rhs, LineStatus::Pass, {}, std::move(given)};
        line.status = std::abs(lhs - rhs) <= tol_ ? LineStatus::Pass : LineStatus::Fail;
        report_.lines.push_back(std::move(line));
    }

    /// lhs = f(p(e | given)); not applicable when p(given) is null.
    template <class F>
    void conditional(std::string name, double lhs, const Event& e, const Event& given, F&& rhsOf) {
        const double denom = prob(space_, given);
        if (denom <= tol_) {
            report_.lines.push_back(IdentityLine{std::move(name), lhs, 0.0, LineStatus::NotApplicable,
                                                 "p(" + given.describe() + ") = 0", given});
            return;
        }
        plain(std::move(name), lhs, rhsOf(prob(space_, e && given) / denom, denom), given);
    }

private:
    const SampleSpace& space_;
    double tol_;
    IdentityReport& report_;
};

}  // namespace

IdentityReport nondetectionIdentities(const SampleSpace& space, double tol) {
    IdentityReport report;
    LineBuilder add(space, tol, report);
    auto p = [&](const Event& e) { return prob(space, e); };
    auto identity = [](double c, double) { return c; };
    auto scaled = [](double c, double w) { return c * w; };

    for (int k : kSettings) {
        const std::string ks = std::to_string(k);
        const ObservableId Ak{Side::A, k};
        const ObservableId Bk{Side::B, k};

        // No background / full efficiency, as conditional statements.
        add.conditional("p(A" + ks + "=0 | a!=" + ks + ") = 1", 1.0, Ak == 0, a != k, identity);
        add.conditional("p(B" + ks + "=0 | b!=" + ks + ") = 1", 1.0, Bk == 0, b != k, identity);
        add.conditional("p(A" + ks + "=0 | a=" + ks + ") = 0", 0.0, Ak == 0, a == k, identity);
        add.conditional("p(B" + ks + "=0 | b=" + ks + ") = 0", 0.0, Bk == 0, b == k, identity);

        // Nondetection probability equals non-selection probability.
        add.plain("p(A" + ks + "=0) = p(a!=" + ks + ")", p(Ak == 0), p(a != k));
        add.plain("p(B" + ks + "=0) = p(b!=" + ks + ")", p(Bk == 0), p(b != k));

        for (int e : kOutcomes) {
            const std::string es = sign(e);
            add.conditional("p(A" + ks + "=" + es + ") = p(a=" + ks + ") p(A" + ks + "=" + es + " | a=" + ks + ")",
                            p(Ak == e), Ak == e, a == k, scaled);
            add.conditional("p(B" + ks + "=" + es + ") = p(b=" + ks + ") p(B" + ks + "=" + es + " | b=" + ks + ")",
                            p(Bk == e), Bk == e, b == k, scaled);
            const double pak = p(a == k);
            const double pbk = p(b == k);
            add.conditional("p(A" + ks + "=" + es + " | a=" + ks + ") = p(A" + ks + "=" + es + ") / p(a=" + ks + ")",
                            pak > tol ? p(Ak == e) / pak : 0.0, Ak == e, a == k, identity);
            add.conditional("p(B" + ks + "=" + es + " | b=" + ks + ") = p(B" + ks + "=" + es + ") / p(b=" + ks + ")",
                            pbk > tol ? p(Bk == e) / pbk : 0.0, Bk == e, b == k, identity);
        }
        // The two outcomes exhaust the selected case and are impossible otherwise.
        add.conditional("p(A" + ks + "=-1 | a=" + ks + ") + p(A" + ks + "=+1 | a=" + ks + ") = 1", 1.0, Event{}, a == k,
                        [&](double, double w) { return (p(Ak == -1 && a == k) + p(Ak == 1 && a == k)) / w; });
        add.conditional("p(A" + ks + "=-1 | a!=" + ks + ") + p(A" + ks + "=+1 | a!=" + ks + ") = 0", 0.0, Event{},
                        a != k, [&](double, double w) { return (p(Ak == -1 && a != k) + p(Ak == 1 && a != k)) / w; });
    }

    for (int i : kSettings) {
        for (int j : kSettings) {
            const std::string is = std::to_string(i);
            const std::string js = std::to_string(j);
            const ObservableId Ai{Side::A, i};
            const ObservableId Bj{Side::B, j};
            const std::string pair = "A" + is + ",B" + js;

            for (int e : kOutcomes) {
                for (int f : kOutcomes) {
                    const std::string vals = "A" + is + "=" + sign(e) + ",B" + js + "=" + sign(f);
                    const Event ev = Ai == e && Bj == f;
                    add.conditional(
                        "p(" + vals + ") = p(" + vals + " | a=" + is + ",b=" + js + ") p(a=" + is + ",b=" + js + ")",
                        p(ev), ev, a == i && b == j, scaled);
                    add.conditional("p(" + vals + " | a=" + is + ",b=" + js + ") = q(" + sign(e) + "," + sign(f) + "|" +
                                        is + "," + js + ")",
                                    space.table()(i, j, e, f), ev, a == i && b == j, identity);
                }
            }

            const Event bothNull = Ai == 0 && Bj == 0;
            add.conditional(
                "p(" + pair + " both 0) = p(both 0 | a!=" + is + ",b!=" + js + ") p(a!=" + is + ",b!=" + js + ")",
                p(bothNull), bothNull, a != i && b != j, scaled);
            add.conditional("p(a!=" + is + ",b!=" + js + " | A" + is + "=0,B" + js + "=0) = 1", 1.0, a != i && b != j,
                            bothNull, identity);

            for (int e : kOutcomes) {
                const Event aDet = Ai == e && Bj == 0;
                add.conditional("p(A" + is + "=" + sign(e) + ",B" + js + "=0) = p(. | a=" + is + ",b!=" + js +
                                    ") p(a=" + is + ",b!=" + js + ")",
                                p(aDet), aDet, a == i && b != j, scaled);
                const Event bDet = Ai == 0 && Bj == e;
                add.conditional("p(A" + is + "=0,B" + js + "=" + sign(e) + ") = p(. | a!=" + is + ",b=" + js +
                                    ") p(a!=" + is + ",b=" + js + ")",
                                p(bDet), bDet, a != i && b == j, scaled);
            }
        }
    }
    return report;
}

double counterfactualMass(const SampleSpace& space) {
    double worst = 0.0;
    for (int e1 : kOutcomes) {
        for (int e2 : kOutcomes) {
            worst = std::max(worst, prob(space, A1 == e1 && A2 == e2));
            worst = std::max(worst, prob(space, B1 == e1 && B2 == e2));
        }
    }
    for (int x1 : kValues) {
        for (int x2 : kValues) {
            for (int y1 : kValues) {
                for (int y2 : kValues) {
                    if (x1 * x2 == 0 && y1 * y2 == 0) continue;
                    worst = std::max(worst, prob(space, A1 == x1 && A2 == x2 && B1 == y1 && B2 == y2));
                }
            }
        }
    }
    return worst;
}

}  // namespace condbell
