#pragma once

#include <cstddef>
#include <limits>
#include <vector>

#include <Eigen/Core>

namespace condbell::lp {

template <class Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <class Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

/// Indices of a maximal set of linearly independent rows of `A`, chosen greedily
/// in row order. Entries with magnitude <= tol count as zero (use tol = 0 for
/// exact scalars).
template <class Scalar>
std::vector<Eigen::Index> independentRows(const Matrix<Scalar>& A, const Scalar& tol) {
    std::vector<Eigen::Index> kept;
    // Echelon rows of the kept set, with their pivot columns.
    std::vector<Vector<Scalar>> echelon;
    std::vector<Eigen::Index> pivots;
    for (Eigen::Index r = 0; r < A.rows(); ++r) {
        Vector<Scalar> row = A.row(r).transpose();
        for (std::size_t k = 0; k < echelon.size(); ++k) {
            const Scalar f = row(pivots[k]);
            if (f != Scalar(0)) row -= f * echelon[k];
        }
        Eigen::Index pivot = -1;
        Scalar best = tol;
        for (Eigen::Index c = 0; c < row.size(); ++c) {
            const Scalar mag = row(c) < Scalar(0) ? Scalar(-row(c)) : row(c);
            if (mag > best) {
                best = mag;
                pivot = c;
            }
        }
        if (pivot < 0) continue;
        row /= Scalar(row(pivot));
        // Keep the echelon fully reduced so later eliminations see pivot columns as zero.
        for (std::size_t k = 0; k < echelon.size(); ++k) {
            const Scalar f = echelon[k](pivot);
            if (f != Scalar(0)) echelon[k] -= f * row;
        }
        echelon.push_back(std::move(row));
        pivots.push_back(pivot);
        kept.push_back(r);
    }
    return kept;
}

template <class Scalar>
struct FeasibilityResult {
    bool feasible = false;
    /// A basic solution of the reduced system (meaningful when feasible).
    Vector<Scalar> x;
    /// Optimal phase-1 objective: total artificial slack.
    Scalar residual{};
    std::vector<Eigen::Index> keptRows;
    int pivots = 0;
};

/// Decides whether {x >= 0 : A x = b} is nonempty with a phase-1 simplex.
///
/// Redundant equality rows are dropped first (rank analysis on A), then one
/// artificial per kept row is minimized with Bland's rule, so the method
/// terminates for both floating and exact scalars. With tol = 0 and an exact
/// scalar type the verdict is exact.
template <class Scalar>
FeasibilityResult<Scalar> phaseOneFeasibility(const Matrix<Scalar>& A, const Vector<Scalar>& b, const Scalar& tol) {
    FeasibilityResult<Scalar> out;
    out.keptRows = independentRows<Scalar>(A, tol);
    const Eigen::Index m = static_cast<Eigen::Index>(out.keptRows.size());
    const Eigen::Index n = A.cols();

    // Tableau [A_kept | I | b] with the phase-1 reduced-cost row appended.
    Matrix<Scalar> T = Matrix<Scalar>::Zero(m + 1, n + m + 1);
    for (Eigen::Index r = 0; r < m; ++r) {
        const Eigen::Index src = out.keptRows[static_cast<std::size_t>(r)];
        const bool flip = b(src) < Scalar(0);
        if (flip) {
            T.row(r).head(n) = -A.row(src);
        } else {
            T.row(r).head(n) = A.row(src);
        }
        T(r, n + r) = Scalar(1);
        T(r, n + m) = flip ? Scalar(-b(src)) : b(src);
    }
    for (Eigen::Index r = 0; r < m; ++r) {
        T.row(m).head(n) -= T.row(r).head(n);
        T(m, n + m) -= T(r, n + m);
    }

    std::vector<Eigen::Index> basis(static_cast<std::size_t>(m));
    for (Eigen::Index r = 0; r < m; ++r) basis[static_cast<std::size_t>(r)] = n + r;

    const Scalar negTol = Scalar(-tol);
    for (;;) {
        Eigen::Index entering = -1;
        for (Eigen::Index c = 0; c < n + m; ++c) {
            if (T(m, c) < negTol) {
                entering = c;
                break;
            }
        }
        if (entering < 0) break;

        Eigen::Index leaving = -1;
        Scalar bestRatio{};
        for (Eigen::Index r = 0; r < m; ++r) {
            if (!(T(r, entering) > tol)) continue;
            const Scalar ratio = Scalar(T(r, n + m) / T(r, entering));
            if (leaving < 0 || ratio < bestRatio ||
                (ratio == bestRatio && basis[static_cast<std::size_t>(r)] < basis[static_cast<std::size_t>(leaving)])) {
                leaving = r;
                bestRatio = ratio;
            }
        }
        // Phase 1 is bounded below by zero, so an entering column always has a pivot row.
        if (leaving < 0) break;

        const Scalar pivot = T(leaving, entering);
        T.row(leaving) /= pivot;
        for (Eigen::Index r = 0; r <= m; ++r) {
            if (r == leaving) continue;
            const Scalar f = T(r, entering);
            if (f != Scalar(0)) T.row(r) -= f * T.row(leaving);
        }
        basis[static_cast<std::size_t>(leaving)] = entering;
        ++out.pivots;
    }

    out.residual = Scalar(-T(m, n + m));
    out.feasible = !(out.residual > tol);
    out.x = Vector<Scalar>::Zero(n);
    for (Eigen::Index r = 0; r < m; ++r) {
        const Eigen::Index var = basis[static_cast<std::size_t>(r)];
        if (var < n) out.x(var) = T(r, n + m);
    }
    return out;
}

}  // namespace condbell::lp
