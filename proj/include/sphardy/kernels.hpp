// Zonal kernels: the compactly supported Wendland kernel (with its
// hypergeometric Legendre coefficients) and the fundamental solution of the
// surface Laplacian together with its C^1 regularization.
//
// All zonal coefficient sequences use the addition-theorem convention: a
// kernel F(x.y) synthesizes as sum_n (2n+1)/(4 pi) coeff_n P_n(x.y), and the
// transform is coeff_n = 2 pi int_{-1}^{1} F(t) P_n(t) dt.
#pragma once

#include <cmath>
#include <vector>

#include "sphardy/bigfloat.hpp"
#include "sphardy/core.hpp"
#include "sphardy/legendre.hpp"

namespace sphardy {

// ---------------------------------------------------------------------------
// Wendland kernel psi(r) = (1-r)_+^4 (4r+1), scaled to Psi_delta = delta^-2
// psi(|x-y|/delta)
// ---------------------------------------------------------------------------

inline double wendland_profile(double r) {
    if (r >= 1.0) return 0.0;
    const double u = 1.0 - r;
    const double u2 = u * u;
    return u2 * u2 * (4.0 * r + 1.0);
}

inline double wendland_spatial(double delta, const Vec3& x, const Vec3& y) {
    if (!(delta > 0.0 && delta <= 2.0)) throw error("wendland_spatial: delta must be in (0,2]");
    return wendland_profile((x - y).norm() / delta) / (delta * delta);
}

struct WendlandKernel {
    double delta = 1.0;
    double operator()(const Vec3& x, const Vec3& y) const { return wendland_spatial(delta, x, y); }
};

struct WendlandSpectrum {
    double delta = 1.0;
    int max_degree = 0;
    std::vector<double> coeffs;  // addition-theorem coefficients, index n
};

namespace detail {

inline mpfr_prec_t wendland_series_prec(double delta, int N) {
    const double x = delta * delta / 4.0;
    return static_cast<mpfr_prec_t>(192 + std::ceil(2.9 * N * std::sqrt(x)));
}

}  // namespace detail

/// Legendre coefficients of the scaled Wendland kernel:
///   coeff_n = (pi/7) 3F2(-n, n+1, 5/2; 4, 9/2; delta^2/4).
/// The series terminates after n+1 terms but alternates with terms far
/// larger than the sum, so it is accumulated in extended precision sized to
/// the worst-case cancellation.
inline WendlandSpectrum wendland_coeffs(double delta, int N) {
    if (!(delta > 0.0 && delta <= 2.0)) throw error("wendland_coeffs: delta must be in (0,2]");
    if (N < 0) throw error("wendland_coeffs: N must be >= 0");
    using detail::BigFloat;
    const mpfr_prec_t prec = detail::wendland_series_prec(delta, N);
    const BigFloat x(delta * delta / 4.0, prec);
    const BigFloat pref = BigFloat::pi(prec) * (1.0 / 7.0);

    WendlandSpectrum spec;
    spec.delta = delta;
    spec.max_degree = N;
    spec.coeffs.resize(N + 1);
    for (int n = 0; n <= N; ++n) {
        BigFloat term(1.0, prec);
        BigFloat sum(1.0, prec);
        for (long j = 0; j < n; ++j) {
            // term_{j+1} / term_j = (j-n)(n+1+j)(5/2+j) / ((4+j)(9/2+j)(1+j)) * x
            term *= x;
            term *= (j - n);
            term *= (n + 1 + j);
            term *= (2 * j + 5);
            term /= (4 + j);
            term /= (2 * j + 9);
            term /= (1 + j);
            sum += term;
        }
        spec.coeffs[n] = (pref * sum).to_double();
    }
    return spec;
}

namespace detail {

/// Gauss-Legendre nodes/weights on [-1,1] refined to MPFR precision by
/// Newton iterations on P_m (the double-precision nodes are the starting
/// guesses; each iteration doubles the correct digits).
inline void gauss_legendre_bigfloat(int m, mpfr_prec_t prec, std::vector<BigFloat>& nodes,
                                    std::vector<BigFloat>& weights) {
    std::vector<double> x0, w0;
    gauss_legendre(m, x0, w0);
    nodes.assign(m, BigFloat(prec));
    weights.assign(m, BigFloat(prec));
    const int newton_iters = 4 + static_cast<int>(prec / 50);
    for (int i = 0; i < m; ++i) {
        BigFloat x(x0[i], prec);
        BigFloat dp(prec);
        for (int it = 0; it < newton_iters; ++it) {
            // Legendre recurrence at x, tracking P_{m-1} and P_m.
            BigFloat p0(1.0, prec), p1 = x;
            for (long n = 1; n < m; ++n) {
                BigFloat p2 = x * p1;
                p2 *= (2 * n + 1);
                BigFloat q = p0;
                q *= n;
                p2 -= q;
                p2 /= (n + 1);
                p0 = p1;
                p1 = p2;
            }
            // (1 - x^2) P_m' = m (P_{m-1} - x P_m)
            BigFloat one_minus_x2(1.0, prec);
            one_minus_x2 -= x * x;
            dp = (p0 - x * p1);
            dp *= static_cast<long>(m);
            dp /= one_minus_x2;
            x -= p1 / dp;
        }
        nodes[i] = x;
        // w = 2 / ((1 - x^2) P_m'(x)^2)
        BigFloat one_minus_x2(1.0, prec);
        one_minus_x2 -= x * x;
        BigFloat w(2.0, prec);
        w /= one_minus_x2;
        w /= dp * dp;
        weights[i] = w;
    }
}

}  // namespace detail

/// Reference transform coeff_n = 2 pi int F(t) P_n(t) dt for the scaled
/// Wendland kernel, computed by substituting t = 1 - (delta r)^2 / 2 (which
/// turns the integrand into the polynomial psi(r) P_n(...) r of degree
/// 2n + 6) and applying an exact extended-precision Gauss rule.
inline WendlandSpectrum wendland_coeffs_by_quadrature(double delta, int N, int quad_nodes = 200) {
    if (!(delta > 0.0 && delta <= 2.0))
        throw error("wendland_coeffs_by_quadrature: delta must be in (0,2]");
    if (2 * quad_nodes - 1 < 2 * N + 6)
        throw error("wendland_coeffs_by_quadrature: quadrature rule under-resolves the degree");
    using detail::BigFloat;
    const mpfr_prec_t prec = 320;
    std::vector<BigFloat> xs, ws;
    detail::gauss_legendre_bigfloat(quad_nodes, prec, xs, ws);

    std::vector<BigFloat> sums(N + 1, BigFloat(prec));
    const BigFloat half(0.5, prec);
    const BigFloat d2(delta * delta, prec);
    for (int i = 0; i < quad_nodes; ++i) {
        // map [-1,1] -> r in [0,1]; dr = dx / 2
        const BigFloat r = (xs[i] + BigFloat(1.0, prec)) * half;
        BigFloat one_minus_r(1.0, prec);
        one_minus_r -= r;
        BigFloat psi = one_minus_r * one_minus_r;
        psi *= psi;
        BigFloat lin = r;
        lin *= 4L;
        lin += BigFloat(1.0, prec);
        psi *= lin;
        BigFloat t(1.0, prec);
        t -= d2 * r * r * half;
        const BigFloat common = ws[i] * half * psi * r;
        // Legendre recurrence in t, accumulating all degrees.
        BigFloat p0(1.0, prec), p1 = t;
        sums[0] += common * p0;
        if (N >= 1) sums[1] += common * p1;
        for (long n = 1; n < N; ++n) {
            BigFloat p2 = t * p1;
            p2 *= (2 * n + 1);
            BigFloat q = p0;
            q *= n;
            p2 -= q;
            p2 /= (n + 1);
            p0 = p1;
            p1 = p2;
            sums[n + 1] += common * p1;
        }
    }
    WendlandSpectrum spec;
    spec.delta = delta;
    spec.max_degree = N;
    spec.coeffs.resize(N + 1);
    const BigFloat two_pi = BigFloat::pi(prec) * 2L;
    for (int n = 0; n <= N; ++n) spec.coeffs[n] = (two_pi * sums[n]).to_double();
    return spec;
}

// ---------------------------------------------------------------------------
// Fundamental solution of the surface Laplacian and its C^1 regularization
// ---------------------------------------------------------------------------

inline double green_value_t(double t) {
    if (t > 1.0 - 1e-14) throw error("green_value_t: singular at coincident points");
    return std::log(1.0 - t) / (4.0 * pi) + (1.0 - std::log(2.0)) / (4.0 * pi);
}

inline double green_spatial(const Vec3& x, const Vec3& y) { return green_value_t(x.dot(y)); }

/// Addition-theorem coefficients of G: 0 for n = 0, -1/(n(n+1)) otherwise.
inline std::vector<double> green_coeffs(int N) {
    std::vector<double> c(N + 1, 0.0);
    for (int n = 1; n <= N; ++n) c[n] = -1.0 / (static_cast<double>(n) * (n + 1));
    return c;
}

inline double reg_green_value_t(double rho, double t) {
    if (!(rho > 0.0 && rho < 2.0)) throw error("reg_green_value_t: rho must be in (0,2)");
    if (t <= 1.0 - rho) return green_value_t(t);
    return (1.0 - t) / (4.0 * pi * rho) + (std::log(rho) - std::log(2.0)) / (4.0 * pi);
}

inline double reg_green_spatial(double rho, const Vec3& x, const Vec3& y) {
    return reg_green_value_t(rho, x.dot(y));
}

/// d/dt of the regularized fundamental solution (used for surface
/// gradients: grad_y G^rho(c.y) = g'(t) (c - t y)).
inline double reg_green_dt(double rho, double t) {
    if (t <= 1.0 - rho) return -1.0 / (4.0 * pi * (1.0 - t));
    return -1.0 / (4.0 * pi * rho);
}

inline Vec3 reg_green_gradient(double rho, const Vec3& center, const Vec3& y) {
    const double t = center.dot(y);
    return reg_green_dt(rho, t) * (center - t * y);
}

/// Pointwise surface Laplacian of G^rho(c, .): -1/(4 pi) away from the
/// center cap, t/(2 pi rho) inside it.
inline double reg_green_laplacian_t(double rho, double t) {
    if (t <= 1.0 - rho) return -1.0 / (4.0 * pi);
    return t / (2.0 * pi * rho);
}

struct RegularizedGreen {
    double rho = 0.1;
    int max_degree = 0;
    std::vector<double> coeffs;  // addition-theorem coefficients, index n
};

/// Closed-form Legendre coefficients of G^rho (all Legendre polynomials
/// evaluated at 1 - rho by the standard recurrence).
inline RegularizedGreen reg_green_coeffs(double rho, int N) {
    if (!(rho > 0.0 && rho < 2.0)) throw error("reg_green_coeffs: rho must be in (0,2)");
    if (N < 0) throw error("reg_green_coeffs: N must be >= 0");
    RegularizedGreen rg;
    rg.rho = rho;
    rg.max_degree = N;
    rg.coeffs.resize(N + 1);
    rg.coeffs[0] = rho / 4.0;
    if (N >= 1) rg.coeffs[1] = -0.5 + rho / 4.0 - rho * rho / 24.0;
    if (N >= 2) {
        const std::vector<double> P = legendre_all(1.0 - rho, N + 2);
        for (int n = 2; n <= N; ++n) {
            const double dn = static_cast<double>(n);
            double c = (P[n + 1] - P[n - 1]) / (2.0 * dn * (dn + 1) * (2 * dn + 1));
            c -= (2.0 - rho) / (2.0 * dn * (dn + 1)) * P[n];
            c += (P[n] - P[n + 2]) / (2.0 * rho * (2 * dn + 1) * (2 * dn + 3));
            c -= (P[n - 2] - P[n]) / (2.0 * rho * (2 * dn + 1) * (2 * dn - 1));
            rg.coeffs[n] = c;
        }
    }
    return rg;
}

// ---------------------------------------------------------------------------
// Difference of two regularized fundamental solutions (mean-free atom)
// ---------------------------------------------------------------------------

struct GreenDifferenceAtom {
    Vec3 x = Vec3(0, 0, 1);
    Vec3 xbar = Vec3(0, 0, -1);
    double rho = 0.1;
};

inline double green_diff_value(const GreenDifferenceAtom& atom, const Vec3& y) {
    return reg_green_value_t(atom.rho, atom.x.dot(y)) -
           reg_green_value_t(atom.rho, atom.xbar.dot(y));
}

/// Surface Laplacian of the difference atom; identically zero outside
/// C_rho(x) and C_rho(xbar) because the -1/(4 pi) contributions cancel
/// exactly.
inline double green_diff_laplacian(const GreenDifferenceAtom& atom, const Vec3& y) {
    return reg_green_laplacian_t(atom.rho, atom.x.dot(y)) -
           reg_green_laplacian_t(atom.rho, atom.xbar.dot(y));
}

inline Vec3 green_diff_gradient(const GreenDifferenceAtom& atom, const Vec3& y) {
    return reg_green_gradient(atom.rho, atom.x, y) - reg_green_gradient(atom.rho, atom.xbar, y);
}

}  // namespace sphardy
