// Thin dense linear-algebra helpers on top of LAPACKE/CBLAS and Eigen:
// Cholesky solves with a diagonal-jitter ladder, symmetric rank-k Gram
// products, and a Lawson-Hanson nonnegative least squares solver.
#pragma once

#include <cblas.h>
#include <lapacke.h>

#include <Eigen/Dense>
#include <cmath>
#include <vector>

#include "sphardy/core.hpp"

namespace sphardy {

/// Solves M x = rhs for symmetric positive (semi)definite M by Cholesky.
/// If the factorization fails (or the matrix is numerically singular), a
/// small multiple of the average diagonal is added and the solve retried;
/// throws after the last rung of the ladder.
inline Eigen::VectorXd solve_spd(const Eigen::MatrixXd& M, const Eigen::VectorXd& rhs) {
    if (M.rows() != M.cols() || M.rows() != rhs.size()) throw error("solve_spd: shape mismatch");
    const lapack_int n = static_cast<lapack_int>(M.rows());
    if (n == 0) return Eigen::VectorXd();
    const double scale = M.trace() / n;
    const double ladder[] = {0.0, 1e-14, 1e-12, 1e-10};
    for (const double jitter : ladder) {
        Eigen::MatrixXd A = M;
        if (jitter > 0.0) A.diagonal().array() += jitter * scale;
        const lapack_int info =
            LAPACKE_dpotrf(LAPACK_COL_MAJOR, 'L', n, A.data(), n);
        if (info != 0) continue;
        Eigen::VectorXd x = rhs;
        const lapack_int info2 =
            LAPACKE_dpotrs(LAPACK_COL_MAJOR, 'L', n, 1, A.data(), n, x.data(), n);
        if (info2 == 0) return x;
    }
    throw error("solve_spd: matrix is not positive definite (jitter ladder exhausted)");
}

/// C = B * B^T via dsyrk (lower triangle computed, then mirrored).
inline Eigen::MatrixXd gram_from_rows(const Eigen::MatrixXd& B) {
    const int m = static_cast<int>(B.rows());
    const int k = static_cast<int>(B.cols());
    Eigen::MatrixXd C = Eigen::MatrixXd::Zero(m, m);
    if (m == 0) return C;
    cblas_dsyrk(CblasColMajor, CblasLower, CblasNoTrans, m, k, 1.0, B.data(), m, 0.0,
                C.data(), m);
    C.triangularView<Eigen::StrictlyUpper>() = C.transpose();
    return C;
}

/// Lawson-Hanson nonnegative least squares: minimizes |A w - b| over w >= 0.
/// Deterministic: ties in the gradient selection resolve to the smallest
/// index.  Cold start from w = 0.
inline Eigen::VectorXd nnls(const Eigen::MatrixXd& A, const Eigen::VectorXd& b,
                            double grad_tol = 1e-12, int max_outer = 0) {
    const Eigen::Index ncol = A.cols();
    if (A.rows() != b.size()) throw error("nnls: shape mismatch");
    if (max_outer <= 0) max_outer = static_cast<int>(3 * ncol + 30);
    Eigen::VectorXd w = Eigen::VectorXd::Zero(ncol);
    std::vector<char> passive(ncol, 0);
    std::vector<Eigen::Index> pset;
    Eigen::VectorXd resid = b;
    const double gscale = std::max(1.0, b.norm());

    auto solve_passive = [&](Eigen::VectorXd& z) {
        Eigen::MatrixXd Ap(A.rows(), static_cast<Eigen::Index>(pset.size()));
        for (std::size_t j = 0; j < pset.size(); ++j) Ap.col(j) = A.col(pset[j]);
        z = Ap.colPivHouseholderQr().solve(b);
    };

    for (int outer = 0; outer < max_outer; ++outer) {
        const Eigen::VectorXd grad = A.transpose() * resid;
        Eigen::Index best = -1;
        double best_g = grad_tol * gscale;
        for (Eigen::Index i = 0; i < ncol; ++i)
            if (!passive[i] && grad[i] > best_g) {
                best_g = grad[i];
                best = i;
            }
        if (best < 0) break;  // KKT satisfied
        passive[best] = 1;
        pset.push_back(best);

        for (int inner = 0; inner < max_outer; ++inner) {
            Eigen::VectorXd z;
            solve_passive(z);
            bool all_positive = true;
            for (Eigen::Index j = 0; j < z.size(); ++j)
                if (z[j] <= 0.0) { all_positive = false; break; }
            if (all_positive) {
                for (std::size_t j = 0; j < pset.size(); ++j) w[pset[j]] = z[j];
                break;
            }
            // step toward z until the first passive weight hits zero
            double alpha = 1.0;
            for (std::size_t j = 0; j < pset.size(); ++j)
                if (z[j] <= 0.0) {
                    const double wj = w[pset[j]];
                    alpha = std::min(alpha, wj / (wj - z[j]));
                }
            for (std::size_t j = 0; j < pset.size(); ++j)
                w[pset[j]] += alpha * (z[j] - w[pset[j]]);
            // demote zeroed variables
            std::vector<Eigen::Index> keep;
            for (const Eigen::Index idx : pset) {
                if (w[idx] <= 1e-14) {
                    passive[idx] = 0;
                    w[idx] = 0.0;
                } else {
                    keep.push_back(idx);
                }
            }
            pset.swap(keep);
            if (pset.empty()) break;
        }
        resid = b - A * w;
    }
    return w;
}

}  // namespace sphardy
