// Legendre polynomials P_n, fully normalized associated Legendre functions
// N_{n,k} (the latitude part of orthonormal real spherical harmonics), their
// colatitude derivatives, and Gauss-Legendre quadrature nodes.
//
// Normalization: N_{n,k} is defined so that the real spherical harmonics
//   Y_{n,0} = N_{n,0},  Y_{n,k} = sqrt(2) N_{n,|k|} (cos|k|phi / sin|k|phi)
// are orthonormal in L^2 of the unit sphere; equivalently
// integral_{-1}^{1} N_{n,k}(t)^2 dt = 1/(2 pi).  No Condon-Shortley phase.
#pragma once

#include <cmath>
#include <vector>

#include "sphardy/core.hpp"

namespace sphardy {

/// P_0(t) .. P_N(t) by the three-term recurrence into a caller-owned buffer
/// (resized as needed); P_n(1) = 1 exactly.
inline void legendre_all_into(double t, int N, std::vector<double>& P) {
    if (std::abs(t) > 1.0 + 1e-12) throw error("legendre_all: |t| > 1");
    t = std::clamp(t, -1.0, 1.0);
    P.resize(static_cast<std::size_t>(N) + 1);
    P[0] = 1.0;
    if (N >= 1) P[1] = t;
    for (int n = 1; n < N; ++n)
        P[n + 1] = ((2.0 * n + 1.0) * t * P[n] - n * P[n - 1]) / (n + 1.0);
}

/// P_0(t) .. P_N(t) by the three-term recurrence; P_n(1) = 1 exactly.
inline std::vector<double> legendre_all(double t, int N) {
    std::vector<double> P;
    legendre_all_into(t, N, P);
    return P;
}

/// Derivatives P'_0(t) .. P'_N(t); uses (1-t^2) P'_n = n (P_{n-1} - t P_n)
/// away from the endpoints and the exact endpoint values otherwise.
inline std::vector<double> legendre_derivative_all(double t, int N) {
    const std::vector<double> P = legendre_all(t, N);
    std::vector<double> D(static_cast<std::size_t>(N) + 1, 0.0);
    const double omt2 = 1.0 - t * t;
    if (omt2 < 1e-14) {
        const double sign = t > 0 ? 1.0 : -1.0;
        for (int n = 1; n <= N; ++n) {
            const double v = 0.5 * n * (n + 1.0);
            D[n] = (t > 0) ? v : ((n % 2 == 0) ? -v : v);
            (void)sign;
        }
        return D;
    }
    for (int n = 1; n <= N; ++n) D[n] = n * (P[n - 1] - t * P[n]) / omt2;
    return D;
}

/// Index into the triangular (n, k >= 0) tables below.
inline std::size_t tri_index(int n, int k) {
    return static_cast<std::size_t>(n) * (n + 1) / 2 + k;
}

inline std::size_t tri_count(int N) { return tri_index(N, N) + 1; }

namespace detail {

inline double assoc_alpha(int n, int k) {
    return std::sqrt((2.0 * n - 1.0) * (2.0 * n + 1.0) /
                     (static_cast<double>(n - k) * (n + k)));
}

inline double assoc_beta(int n, int k) {
    return std::sqrt((2.0 * n + 1.0) * (n - k - 1.0) * (n + k - 1.0) /
                     ((2.0 * n - 3.0) * (n - k) * (n + k)));
}

}  // namespace detail

/// Fills L (size tri_count(N)) with N_{n,k}(t) for 0 <= k <= n <= N.
/// Column-stable forward recurrences; entries underflow to zero near the
/// poles for large k, which is the correct limit.
inline void assoc_legendre_table(double t, int N, std::vector<double>& L) {
    if (std::abs(t) > 1.0 + 1e-12) throw error("assoc_legendre_table: |t| > 1");
    t = std::clamp(t, -1.0, 1.0);
    const double s = std::sqrt(std::max(0.0, 1.0 - t * t));  // sin(theta)
    L.assign(tri_count(N), 0.0);
    L[tri_index(0, 0)] = std::sqrt(1.0 / four_pi);
    for (int k = 1; k <= N; ++k)
        L[tri_index(k, k)] =
            std::sqrt((2.0 * k + 1.0) / (2.0 * k)) * s * L[tri_index(k - 1, k - 1)];
    for (int k = 0; k < N; ++k)
        L[tri_index(k + 1, k)] = std::sqrt(2.0 * k + 3.0) * t * L[tri_index(k, k)];
    for (int k = 0; k <= N; ++k)
        for (int n = k + 2; n <= N; ++n)
            L[tri_index(n, k)] = detail::assoc_alpha(n, k) * t * L[tri_index(n - 1, k)] -
                                 detail::assoc_beta(n, k) * L[tri_index(n - 2, k)];
}

/// Fills L with N_{n,k}(cos theta) and dL with d/dtheta N_{n,k}(cos theta)
/// using  dN/dtheta = (n t N_{n,k} - d_{n,k} N_{n-1,k}) / sin(theta),
/// d_{n,k} = sqrt((n^2 - k^2)(2n+1)/(2n-1)).  Requires sin(theta) > 0
/// (use the pole limits of grad_ylm at the poles themselves).
inline void assoc_legendre_table_with_dtheta(double t, int N, std::vector<double>& L,
                                             std::vector<double>& dL) {
    assoc_legendre_table(t, N, L);
    const double s = std::sqrt(std::max(0.0, 1.0 - t * t));
    if (s < 1e-12) throw error("assoc_legendre_table_with_dtheta: pole latitude");
    dL.assign(tri_count(N), 0.0);
    for (int n = 1; n <= N; ++n)
        for (int k = 0; k <= n; ++k) {
            const double lower = (n - 1 >= k) ? L[tri_index(n - 1, k)] : 0.0;
            const double d = std::sqrt((static_cast<double>(n) * n - static_cast<double>(k) * k) *
                                       (2.0 * n + 1.0) / (2.0 * n - 1.0));
            dL[tri_index(n, k)] = (n * t * L[tri_index(n, k)] - d * lower) / s;
        }
}

/// Polynomial part of the order-1 column at the poles: the limit
/// M_{n,1}(t) = N_{n,1}(t)/sin(theta) evaluated at t = +-1.  This is the
/// only ingredient of surface gradients of Y_{n,+-1} at the coordinate
/// poles (all other orders have vanishing gradients there).
inline double assoc_order1_over_sin_at_pole(int n, bool north) {
    if (n < 1) return 0.0;
    const double t = north ? 1.0 : -1.0;
    double prev = 0.0;  // M_{0,1} is not defined; recurrence starts at n=1
    double cur = std::sqrt(3.0 / 2.0) * std::sqrt(1.0 / four_pi);  // M_{1,1}
    for (int m = 2; m <= n; ++m) {
        double next;
        if (m == 2)
            next = std::sqrt(5.0) * t * cur;
        else
            next = detail::assoc_alpha(m, 1) * t * cur - detail::assoc_beta(m, 1) * prev;
        prev = cur;
        cur = next;
    }
    return cur;
}

/// Gauss-Legendre nodes (ascending) and weights on [-1, 1]; Newton
/// iteration from the Chebyshev-angle initial guess.
inline void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights) {
    if (n < 1) throw error("gauss_legendre: n must be >= 1");
    nodes.assign(n, 0.0);
    weights.assign(n, 0.0);
    for (int i = 0; i < (n + 1) / 2; ++i) {
        double x = -std::cos(pi * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0, p1 = x;
            for (int m = 1; m < n; ++m) {
                const double p2 = ((2.0 * m + 1.0) * x * p1 - m * p0) / (m + 1.0);
                p0 = p1;
                p1 = p2;
            }
            dp = n * (p0 - x * p1) / (1.0 - x * x);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        nodes[i] = x;
        nodes[n - 1 - i] = -x;
        weights[i] = 2.0 / ((1.0 - x * x) * dp * dp);
        weights[n - 1 - i] = weights[i];
    }
    if (n % 2 == 1) {  // center node exactly zero
        nodes[n / 2] = 0.0;
        double p0 = 1.0, p1 = 0.0;
        for (int m = 1; m < n; ++m) {
            const double p2 = (-m * p0) / (m + 1.0);
            p0 = p1;
            p1 = p2;
        }
        const double dp = n * p0;
        weights[n / 2] = 2.0 / (dp * dp);
    }
}

}  // namespace sphardy
