#include "condbell/chsh.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <boost/multiprecision/cpp_int.hpp>
#include <boost/multiprecision/eigen.hpp>

#include "condbell/queries.hpp"
#include "condbell/simplex.hpp"

namespace condbell {

namespace {

using Rational = boost::multiprecision::cpp_rational;

/// Pair index order used for sign patterns: (1,1), (1,2), (2,1), (2,2).
constexpr std::array<std::array<int, 2>, 4> kPairs{{{1, 1}, {1, 2}, {2, 1}, {2, 2}}};

template <class Scalar>
Scalar entry(const ConditionalTable& t, int i, int j, int e, int f) {
    return Scalar(t(i, j, e, f));
}

/// Equality system for the Fine LP: one row per (i, j, e, f), one column per
/// joint outcome (x1, x2, y1, y2).
template <class Scalar>
void fineSystem(const ConditionalTable& table, lp::Matrix<Scalar>& A, lp::Vector<Scalar>& rhs) {
    A = lp::Matrix<Scalar>::Zero(16, 16);
    rhs = lp::Vector<Scalar>::Zero(16);
    for (auto [i, j] : kPairs) {
        for (int e : kOutcomes) {
            for (int f : kOutcomes) {
                const Eigen::Index row = pairIndex(i, j) * 4 + outcomeIndex(e) * 2 + outcomeIndex(f);
                rhs(row) = entry<Scalar>(table, i, j, e, f);
                for (int x1 : kOutcomes)
                    for (int x2 : kOutcomes)
                        for (int y1 : kOutcomes)
                            for (int y2 : kOutcomes) {
                                const int xi = i == 1 ? x1 : x2;
                                const int yj = j == 1 ? y1 : y2;
                                if (xi == e && yj == f) {
                                    A(row, static_cast<Eigen::Index>(JointDistribution::index(x1, x2, y1, y2))) =
                                        Scalar(1);
                                }
                            }
            }
        }
    }
}

template <class Scalar>
FineVerdict solveFine(const ConditionalTable& table, const Scalar& tol) {
    lp::Matrix<Scalar> A;
    lp::Vector<Scalar> rhs;
    fineSystem<Scalar>(table, A, rhs);
    const auto result = lp::phaseOneFeasibility<Scalar>(A, rhs, tol);

    FineVerdict v;
    v.feasible = result.feasible;
    v.infeasibility = static_cast<double>(result.residual);
    v.rank = static_cast<int>(result.keptRows.size());
    if (v.feasible) {
        JointDistribution::Storage p;
        for (Eigen::Index k = 0; k < 16; ++k) {
            const double x = static_cast<double>(result.x(k));
            // Round-off can leave basic values a hair below zero.
            p(k) = x < 0.0 ? 0.0 : x;
        }
        v.witness = JointDistribution(p);
    }
    return v;
}

template <class Scalar>
std::array<Scalar, 4> tableCorrelations(const ConditionalTable& t) {
    std::array<Scalar, 4> q;
    for (auto [i, j] : kPairs) {
        q[pairIndex(i, j)] = entry<Scalar>(t, i, j, 1, 1) - entry<Scalar>(t, i, j, 1, -1) -
                             entry<Scalar>(t, i, j, -1, 1) + entry<Scalar>(t, i, j, -1, -1);
    }
    return q;
}

std::string signChar(int s) { return s > 0 ? "+" : "-"; }

}  // namespace

CorrelationSet correlations(const SampleSpace& space, double tol) {
    CorrelationSet out;
    out.weights = space.settings().weights();
    for (auto [i, j] : kPairs) {
        const ObservableId Ai{Side::A, i};
        const ObservableId Bj{Side::B, j};
        double c = 0.0;
        for (int e : kOutcomes)
            for (int f : kOutcomes) c += e * f * prob(space, Ai == e && Bj == f);
        out.C[pairIndex(i, j)] = c;
        const double w = space.settings()(i, j);
        if (w > tol) out.Q[pairIndex(i, j)] = c / w;
    }
    return out;
}

std::string ChshInequality::describe() const {
    std::ostringstream os;
    const char* names[4] = {"Q11", "Q12", "Q21", "Q22"};
    for (int k = 0; k < 4; ++k) {
        if (k > 0 || signs[k] < 0) os << (k > 0 ? " " : "") << signChar(signs[k]) << (k > 0 ? " " : "");
        os << names[k];
    }
    os << " <= 2";
    return os.str();
}

const std::array<SignPattern, 8>& chshSignPatterns() {
    static const std::array<SignPattern, 8> patterns = [] {
        std::array<SignPattern, 8> out{};
        std::size_t n = 0;
        for (int mask = 0; mask < 16; ++mask) {
            SignPattern s{};
            int minus = 0;
            for (int k = 0; k < 4; ++k) {
                s[k] = (mask >> k) & 1 ? -1 : 1;
                minus += s[k] < 0;
            }
            if (minus % 2 == 1) out[n++] = s;
        }
        return out;
    }();
    return patterns;
}

ChshCriterion chshCriterion(const ConditionalTable& table, double tol, bool exact) {
    ChshCriterion out;
    const auto& patterns = chshSignPatterns();
    if (exact) {
        const auto q = tableCorrelations<Rational>(table);
        Rational worst;
        for (std::size_t k = 0; k < patterns.size(); ++k) {
            Rational v = 0;
            for (int m = 0; m < 4; ++m) v += patterns[k][m] * q[m];
            out.inequalities[k] = ChshInequality{patterns[k], static_cast<double>(v)};
            if (k == 0 || v > worst) {
                worst = v;
                out.worst = out.inequalities[k];
            }
        }
        out.violated = worst > 2;
        return out;
    }
    const auto q = tableCorrelations<double>(table);
    for (std::size_t k = 0; k < patterns.size(); ++k) {
        double v = 0.0;
        for (int m = 0; m < 4; ++m) v += patterns[k][m] * q[m];
        out.inequalities[k] = ChshInequality{patterns[k], v};
        if (k == 0 || v > out.worst.value) out.worst = out.inequalities[k];
    }
    out.violated = out.worst.value > 2.0 + tol;
    return out;
}

OutcomeBlock JointDistribution::marginal(int i, int j) const {
    OutcomeBlock m = OutcomeBlock::Zero();
    for (int x1 : kOutcomes)
        for (int x2 : kOutcomes)
            for (int y1 : kOutcomes)
                for (int y2 : kOutcomes) {
                    const int xi = i == 1 ? x1 : x2;
                    const int yj = j == 1 ? y1 : y2;
                    m(outcomeIndex(xi), outcomeIndex(yj)) += (*this)(x1, x2, y1, y2);
                }
    return m;
}

FineVerdict fineFeasibility(const ConditionalTable& table, const FineOptions& options) {
    const double discrepancy = table.marginalDiscrepancy();
    if (discrepancy > options.tolerance) {
        std::ostringstream os;
        os << "blocks disagree on a one-side marginal by " << discrepancy
           << "; joint-law existence presupposes consistent marginals";
        throw MarginalInconsistency(os.str(), discrepancy);
    }

    FineVerdict v =
        options.exact ? solveFine<Rational>(table, Rational(0)) : solveFine<double>(table, options.tolerance);
    v.exact = options.exact;
    if (!v.feasible) v.violated = chshCriterion(table, options.tolerance, options.exact).worst;
    return v;
}

const BoundCheck& ChshReport::bound(const std::string& name) const {
    for (const BoundCheck& b : bounds) {
        if (b.name == name) return b;
    }
    throw std::out_of_range("no bound named " + name);
}

ChshReport chshReport(const SampleSpace& space, const ChshOptions& options) {
    ChshReport r;
    r.correlations = correlations(space, options.tolerance);
    const auto& cs = r.correlations;
    r.sAbs = cs.c(1, 1) + cs.c(1, 2) + cs.c(2, 1) - cs.c(2, 2);

    bool allDefined = true;
    double sCond = 0.0;
    for (auto [i, j] : kPairs) {
        const int s = kChshSigns[pairIndex(i, j)];
        if (const auto& q = cs.q(i, j)) {
            sCond += s * *q;
            r.sWeighted += s * space.settings()(i, j) * *q;
        } else {
            allDefined = false;
        }
    }
    if (allDefined) r.sCond = sCond;

    const double tol = options.tolerance;
    auto check = [&](std::string name, double value, double bound) {
        r.bounds.push_back(BoundCheck{std::move(name), value, bound, std::abs(value) <= bound + tol});
    };
    check("|S_abs| <= 2", r.sAbs, 2.0);
    check("|S_abs| <= 1", r.sAbs, 1.0);
    check("|sum w_ij s_ij Q_ij| <= 2", r.sWeighted, 2.0);
    if (r.sCond) {
        check("|S_cond| <= 2", *r.sCond, 2.0);
        check("|S_cond| <= 2*sqrt(2)", *r.sCond, kTsirelsonBound);
    }

    if (!options.runFine) {
        r.fineNote = "not run";
    } else {
        try {
            r.fine = fineFeasibility(space.table(), FineOptions{tol, options.exactLp});
        } catch (const MarginalInconsistency& e) {
            r.fineNote = std::string("not applicable: ") + e.what();
        }
    }
    return r;
}

std::vector<CurvePoint> weightedChshCurve(const ConditionalTable& table, const std::vector<SettingDistribution>& grid,
                                          double tol) {
    double sCond = 0.0;
    for (auto [i, j] : kPairs) sCond += kChshSigns[pairIndex(i, j)] * table.correlation(i, j);

    std::vector<CurvePoint> out;
    out.reserve(grid.size());
    for (const SettingDistribution& s : grid) {
        CurvePoint pt;
        pt.weights = s.weights();
        pt.sCond = sCond;
        for (auto [i, j] : kPairs) pt.sAbs += kChshSigns[pairIndex(i, j)] * s(i, j) * table.correlation(i, j);
        const double w = s(1, 1);
        const bool equal = (s.weights().array() - w).abs().maxCoeff() <= tol;
        if (equal && w > tol) {
            pt.impliedBoundFromTwo = 2.0 / w;
            pt.impliedBoundFromOne = 1.0 / w;
        }
        out.push_back(pt);
    }
    return out;
}

}  // namespace condbell
