// Real spherical harmonics and spectral fields.
//
// Basis convention (orthonormal, geodesy-style, no Condon-Shortley phase):
//   Y_{n,0}  = N_{n,0}(cos theta)
//   Y_{n,k}  = sqrt(2) N_{n,k}(cos theta) cos(k phi),   k > 0
//   Y_{n,-k} = sqrt(2) N_{n,k}(cos theta) sin(k phi),   k > 0
// with the addition theorem sum_k Y_{n,k}(x) Y_{n,k}(y) = (2n+1)/(4 pi) P_n(x.y).
//
// Vector fields are expanded in the mutually orthogonal families
//   b+_{n,k} = -( n eta Y_{n,k} + grad Y_{n,k} ) / (2n+1)          (n >= 1)
//   b-_{n,k} = ( (n+1) eta Y_{n,k} - grad Y_{n,k} ) / (2n+1)       (n >= 0)
//   c_{n,k}  = ( eta x grad Y_{n,k} ) / sqrt(n(n+1))               (n >= 1)
// with |b+|^2 = n/(2n+1), |b-|^2 = (n+1)/(2n+1), |c| = 1, where eta is the
// outward unit normal and grad the surface gradient.
#pragma once

#include <cmath>
#include <functional>
#include <vector>

#include "sphardy/core.hpp"
#include "sphardy/legendre.hpp"

namespace sphardy {

struct SpectralScalarField {
    int max_degree = 0;
    std::vector<double> coeffs;  // flat sh_index(n, k)

    explicit SpectralScalarField(int N = 0) : max_degree(N), coeffs(sh_count(N), 0.0) {}
    double& at(int n, int k) { return coeffs[sh_index(n, k)]; }
    double at(int n, int k) const { return coeffs[sh_index(n, k)]; }
};

struct SpectralVectorField {
    int max_degree = 0;
    std::vector<double> plus;   // b+ coefficients, entries with n = 0 stay 0
    std::vector<double> minus;  // b- coefficients
    std::vector<double> df;     // c coefficients, entries with n = 0 stay 0

    explicit SpectralVectorField(int N = 0)
        : max_degree(N), plus(sh_count(N), 0.0), minus(sh_count(N), 0.0), df(sh_count(N), 0.0) {}
};

/// Y_{n,k}(p) for all 0 <= n <= N, |k| <= n, flat sh_index order.
inline std::vector<double> ylm_table(const Vec3& p, int N) {
    double theta, phi;
    to_angles(p, theta, phi);
    std::vector<double> L;
    assoc_legendre_table(std::cos(theta), N, L);
    std::vector<double> cosk(N + 1), sink(N + 1);
    for (int k = 0; k <= N; ++k) {
        cosk[k] = std::cos(k * phi);
        sink[k] = std::sin(k * phi);
    }
    constexpr double rt2 = 1.41421356237309504880168872420969808;
    std::vector<double> Y(sh_count(N));
    for (int n = 0; n <= N; ++n) {
        Y[sh_index(n, 0)] = L[tri_index(n, 0)];
        for (int k = 1; k <= n; ++k) {
            const double base = rt2 * L[tri_index(n, k)];
            Y[sh_index(n, k)] = base * cosk[k];
            Y[sh_index(n, -k)] = base * sink[k];
        }
    }
    return Y;
}

inline double ylm_eval(int n, int k, const Vec3& p) {
    if (std::abs(k) > n) throw error("ylm_eval: |k| > n");
    return ylm_table(p, n)[sh_index(n, k)];
}

/// Surface gradient of Y_{n,k} at p.  Within 1e-7 of the coordinate poles
/// the analytic limit is used: only |k| = 1 modes contribute there.
inline Vec3 grad_ylm(int n, int k, const Vec3& p) {
    if (std::abs(k) > n) throw error("grad_ylm: |k| > n");
    if (n == 0) return Vec3::Zero();
    const double st = std::hypot(p.x(), p.y());
    constexpr double rt2 = 1.41421356237309504880168872420969808;
    if (st < 1e-7) {
        const bool north = p.z() > 0;
        if (std::abs(k) != 1) return Vec3::Zero();
        const double m = assoc_order1_over_sin_at_pole(n, north);
        return rt2 * m * (k == 1 ? Vec3(1, 0, 0) : Vec3(0, 1, 0));
    }
    double theta, phi;
    to_angles(p, theta, phi);
    std::vector<double> L, dL;
    assoc_legendre_table_with_dtheta(std::cos(theta), n, L, dL);
    Vec3 e_theta, e_phi;
    tangent_frame(p, e_theta, e_phi);
    const int ka = std::abs(k);
    const double norm = (k == 0) ? 1.0 : rt2;
    const double azim = (k >= 0) ? std::cos(ka * phi) : std::sin(ka * phi);
    const double dazim = (k >= 0) ? -ka * std::sin(ka * phi) : ka * std::cos(ka * phi);
    const double d_theta = norm * dL[tri_index(n, ka)] * azim;
    const double d_phi = norm * L[tri_index(n, ka)] * dazim / st;
    return d_theta * e_theta + d_phi * e_phi;
}

// ---------------------------------------------------------------------------
// Gauss-latitude x equispaced-longitude grids
// ---------------------------------------------------------------------------

/// Product grid: Gauss-Legendre latitudes (nodes in t = cos theta) and
/// equispaced longitudes.  Quadrature sum_j sum_m w_j (2 pi / n_lon) f
/// integrates spherical polynomials of degree <= min(2 n_lat - 1, n_lon - 1).
struct GaussGrid {
    int n_lat = 0;
    int n_lon = 0;
    std::vector<double> t;  // ascending Gauss nodes
    std::vector<double> w;  // Gauss weights

    static GaussGrid for_degree(int N, int oversample = 1) {
        GaussGrid g;
        g.n_lat = oversample * (N + 1);
        g.n_lon = oversample * (2 * N + 1);
        gauss_legendre(g.n_lat, g.t, g.w);
        return g;
    }

    std::size_t size() const { return static_cast<std::size_t>(n_lat) * n_lon; }
    double phi(int m) const { return 2.0 * pi * m / n_lon; }
    Vec3 node(int j, int m) const {
        const double st = std::sqrt(std::max(0.0, 1.0 - t[j] * t[j]));
        return {st * std::cos(phi(m)), st * std::sin(phi(m)), t[j]};
    }
    double node_weight(int j) const { return w[j] * 2.0 * pi / n_lon; }
};

/// Scalar spherical-harmonic analysis on a Gauss grid; exact for inputs
/// band-limited to degree N when the grid has >= N+1 latitudes and
/// >= 2N+1 longitudes.  values are indexed j * n_lon + m.
inline SpectralScalarField analyze(const GaussGrid& grid, const std::vector<double>& values,
                                   int N) {
    if (grid.n_lat < N + 1 || grid.n_lon < 2 * N + 1)
        throw error("analyze: grid too small for requested degree");
    if (values.size() != grid.size()) throw error("analyze: value/grid size mismatch");
    constexpr double rt2 = 1.41421356237309504880168872420969808;
    SpectralScalarField f(N);
    std::vector<double> L;
    std::vector<double> cosk(static_cast<std::size_t>(N + 1) * grid.n_lon);
    std::vector<double> sink(cosk.size());
    for (int k = 0; k <= N; ++k)
        for (int m = 0; m < grid.n_lon; ++m) {
            cosk[k * grid.n_lon + m] = std::cos(k * grid.phi(m));
            sink[k * grid.n_lon + m] = std::sin(k * grid.phi(m));
        }
    for (int j = 0; j < grid.n_lat; ++j) {
        assoc_legendre_table(grid.t[j], N, L);
        const double wj = grid.node_weight(j);
        // longitude transforms of this latitude ring
        std::vector<double> C(N + 1, 0.0), S(N + 1, 0.0);
        for (int k = 0; k <= N; ++k) {
            double c = 0.0, s = 0.0;
            for (int m = 0; m < grid.n_lon; ++m) {
                const double v = values[static_cast<std::size_t>(j) * grid.n_lon + m];
                c += v * cosk[k * grid.n_lon + m];
                s += v * sink[k * grid.n_lon + m];
            }
            C[k] = c;
            S[k] = s;
        }
        for (int n = 0; n <= N; ++n) {
            f.at(n, 0) += wj * L[tri_index(n, 0)] * C[0];
            for (int k = 1; k <= n; ++k) {
                const double base = wj * rt2 * L[tri_index(n, k)];
                f.at(n, k) += base * C[k];
                f.at(n, -k) += base * S[k];
            }
        }
    }
    return f;
}

/// Pointwise synthesis sum_{n,k} fhat_{n,k} Y_{n,k}(p).
inline double synthesize(const SpectralScalarField& f, const Vec3& p) {
    const std::vector<double> Y = ylm_table(p, f.max_degree);
    double acc = 0.0;
    for (std::size_t i = 0; i < Y.size(); ++i) acc += f.coeffs[i] * Y[i];
    return acc;
}

/// Synthesis on a full Gauss grid, latitude-blocked; returns values indexed
/// j * n_lon + m.
inline std::vector<double> synthesize_on_grid(const SpectralScalarField& f,
                                              const GaussGrid& grid) {
    const int N = f.max_degree;
    constexpr double rt2 = 1.41421356237309504880168872420969808;
    std::vector<double> values(grid.size(), 0.0);
    std::vector<double> L;
    for (int j = 0; j < grid.n_lat; ++j) {
        assoc_legendre_table(grid.t[j], N, L);
        std::vector<double> A(N + 1, 0.0), B(N + 1, 0.0);  // cos / sin ring coefficients
        for (int n = 0; n <= N; ++n) {
            A[0] += f.at(n, 0) * L[tri_index(n, 0)];
            for (int k = 1; k <= n; ++k) {
                const double base = rt2 * L[tri_index(n, k)];
                A[k] += f.at(n, k) * base;
                B[k] += f.at(n, -k) * base;
            }
        }
        for (int m = 0; m < grid.n_lon; ++m) {
            const double phi = grid.phi(m);
            double acc = A[0];
            for (int k = 1; k <= N; ++k) acc += A[k] * std::cos(k * phi) + B[k] * std::sin(k * phi);
            values[static_cast<std::size_t>(j) * grid.n_lon + m] = acc;
        }
    }
    return values;
}

inline double sobolev_norm(const SpectralScalarField& f, double s) {
    double acc = 0.0;
    for (int n = 0; n <= f.max_degree; ++n) {
        const double w = std::pow(n + 0.5, 2.0 * s);
        for (int k = -n; k <= n; ++k) {
            const double c = f.at(n, k);
            acc += w * c * c;
        }
    }
    return std::sqrt(acc);
}

/// Coefficient-wise product with a zonal symbol: out_{n,k} = zonal_n * f_{n,k}.
/// The zonal sequence uses the addition-theorem convention, i.e. the kernel
/// is sum_n (2n+1)/(4 pi) zonal_n P_n(x.y).
inline SpectralScalarField zonal_convolve(const std::vector<double>& zonal,
                                          const SpectralScalarField& f) {
    if (zonal.size() < static_cast<std::size_t>(f.max_degree) + 1)
        throw error("zonal_convolve: zonal sequence shorter than field degree");
    SpectralScalarField out(f.max_degree);
    for (int n = 0; n <= f.max_degree; ++n)
        for (int k = -n; k <= n; ++k) out.at(n, k) = zonal[n] * f.at(n, k);
    return out;
}

inline SpectralScalarField laplace_beltrami(const SpectralScalarField& f) {
    SpectralScalarField out(f.max_degree);
    for (int n = 0; n <= f.max_degree; ++n)
        for (int k = -n; k <= n; ++k) out.at(n, k) = -static_cast<double>(n) * (n + 1) * f.at(n, k);
    return out;
}

// ---------------------------------------------------------------------------
// Vector synthesis / analysis
// ---------------------------------------------------------------------------

namespace detail {

/// Per-(n,k) multipliers of the three building blocks eta Y, grad Y, and
/// eta x grad Y equivalent to a (plus, minus, df) expansion.
struct VectorMultipliers {
    int N = 0;
    std::vector<double> radial, grad, curl;
};

inline VectorMultipliers to_multipliers(const SpectralVectorField& F) {
    VectorMultipliers m;
    m.N = F.max_degree;
    m.radial.assign(sh_count(m.N), 0.0);
    m.grad.assign(sh_count(m.N), 0.0);
    m.curl.assign(sh_count(m.N), 0.0);
    for (int n = 0; n <= m.N; ++n) {
        const double inv = 1.0 / (2.0 * n + 1.0);
        for (int k = -n; k <= n; ++k) {
            const std::size_t i = sh_index(n, k);
            m.radial[i] = (-n * F.plus[i] + (n + 1.0) * F.minus[i]) * inv;
            m.grad[i] = -(F.plus[i] + F.minus[i]) * inv;
            m.curl[i] = (n >= 1) ? F.df[i] / std::sqrt(static_cast<double>(n) * (n + 1)) : 0.0;
        }
    }
    return m;
}

/// Evaluates radial/grad/curl multiplier tables at one point, with the
/// analytic pole limits (only k = 0 radial and |k| = 1 tangential modes
/// survive at the coordinate poles).
inline Vec3 evaluate_multipliers(const VectorMultipliers& m, const Vec3& p) {
    const int N = m.N;
    constexpr double rt2 = 1.41421356237309504880168872420969808;
    const double st = std::hypot(p.x(), p.y());
    if (st < 1e-7) {
        const bool north = p.z() > 0;
        Vec3 acc = Vec3::Zero();
        std::vector<double> L;
        assoc_legendre_table(north ? 1.0 : -1.0, N, L);
        const Vec3 eta = north ? Vec3(0, 0, 1) : Vec3(0, 0, -1);
        for (int n = 0; n <= N; ++n) acc += m.radial[sh_index(n, 0)] * L[tri_index(n, 0)] * eta;
        for (int n = 1; n <= N; ++n) {
            const double g = rt2 * assoc_order1_over_sin_at_pole(n, north);
            const Vec3 g_p1 = g * Vec3(1, 0, 0);  // grad Y_{n,+1}
            const Vec3 g_m1 = g * Vec3(0, 1, 0);  // grad Y_{n,-1}
            acc += m.grad[sh_index(n, 1)] * g_p1 + m.grad[sh_index(n, -1)] * g_m1;
            acc += m.curl[sh_index(n, 1)] * eta.cross(g_p1) + m.curl[sh_index(n, -1)] * eta.cross(g_m1);
        }
        return acc;
    }
    double theta, phi;
    to_angles(p, theta, phi);
    std::vector<double> L, dL;
    assoc_legendre_table_with_dtheta(std::cos(theta), N, L, dL);
    Vec3 e_theta, e_phi;
    tangent_frame(p, e_theta, e_phi);
    double f_r = 0.0, f_th = 0.0, f_ph = 0.0;
    std::vector<double> cosk(N + 1), sink(N + 1);
    for (int k = 0; k <= N; ++k) {
        cosk[k] = std::cos(k * phi);
        sink[k] = std::sin(k * phi);
    }
    for (int n = 0; n <= N; ++n) {
        for (int k = -n; k <= n; ++k) {
            const int ka = std::abs(k);
            const double norm = (k == 0) ? 1.0 : rt2;
            const double azim = (k >= 0) ? cosk[ka] : sink[ka];
            const double dazim = (k >= 0) ? -ka * sink[ka] : ka * cosk[ka];
            const std::size_t i = sh_index(n, k);
            const double Y = norm * L[tri_index(n, ka)] * azim;
            const double gth = norm * dL[tri_index(n, ka)] * azim;      // theta comp of grad Y
            const double gph = norm * L[tri_index(n, ka)] * dazim / st;  // phi comp of grad Y
            f_r += m.radial[i] * Y;
            f_th += m.grad[i] * gth - m.curl[i] * gph;  // eta x grad: theta comp = -gph
            f_ph += m.grad[i] * gph + m.curl[i] * gth;  //              phi comp  = +gth
        }
    }
    return f_r * p + f_th * e_theta + f_ph * e_phi;
}

}  // namespace detail

inline Vec3 synthesize_vector(const SpectralVectorField& F, const Vec3& p) {
    return detail::evaluate_multipliers(detail::to_multipliers(F), p);
}

inline std::vector<Vec3> synthesize_vector(const SpectralVectorField& F,
                                           const std::vector<Vec3>& points) {
    const detail::VectorMultipliers m = detail::to_multipliers(F);
    std::vector<Vec3> out(points.size());
    for (std::size_t i = 0; i < points.size(); ++i) out[i] = detail::evaluate_multipliers(m, points[i]);
    return out;
}

/// Samples on a Gauss grid, indexed j * n_lon + m to pair with analyze_vector.
inline std::vector<Vec3> synthesize_vector(const SpectralVectorField& F, const GaussGrid& grid) {
    const detail::VectorMultipliers mult = detail::to_multipliers(F);
    std::vector<Vec3> out(grid.size());
    for (int j = 0; j < grid.n_lat; ++j)
        for (int m = 0; m < grid.n_lon; ++m)
            out[j * grid.n_lon + m] = detail::evaluate_multipliers(mult, grid.node(j, m));
    return out;
}

/// Vector spherical-harmonic analysis: projects grid samples of a tangent-
/// plus-radial field onto {b+, b-, c} by Gauss-grid quadrature.  Exact for
/// band-limited fields when the grid suits degree N.  values indexed
/// j * n_lon + m.
inline SpectralVectorField analyze_vector(const GaussGrid& grid, const std::vector<Vec3>& values,
                                          int N) {
    if (grid.n_lat < N + 1 || grid.n_lon < 2 * N + 1)
        throw error("analyze_vector: grid too small for requested degree");
    if (values.size() != grid.size()) throw error("analyze_vector: value/grid size mismatch");
    constexpr double rt2 = 1.41421356237309504880168872420969808;
    SpectralVectorField F(N);
    std::vector<double> L, dL;
    std::vector<double> cosk(static_cast<std::size_t>(N + 1) * grid.n_lon);
    std::vector<double> sink(cosk.size());
    for (int k = 0; k <= N; ++k)
        for (int m = 0; m < grid.n_lon; ++m) {
            cosk[static_cast<std::size_t>(k) * grid.n_lon + m] = std::cos(k * grid.phi(m));
            sink[static_cast<std::size_t>(k) * grid.n_lon + m] = std::sin(k * grid.phi(m));
        }
    for (int j = 0; j < grid.n_lat; ++j) {
        assoc_legendre_table_with_dtheta(grid.t[j], N, L, dL);
        const double wj = grid.node_weight(j);
        const double st = std::sqrt(std::max(0.0, 1.0 - grid.t[j] * grid.t[j]));
        // component rings
        std::vector<double> Cr(N + 1, 0.0), Sr(N + 1, 0.0);
        std::vector<double> Ct(N + 1, 0.0), St(N + 1, 0.0);
        std::vector<double> Cp(N + 1, 0.0), Sp(N + 1, 0.0);
        for (int m = 0; m < grid.n_lon; ++m) {
            const Vec3 p = grid.node(j, m);
            Vec3 e_theta, e_phi;
            tangent_frame(p, e_theta, e_phi);
            const Vec3& v = values[static_cast<std::size_t>(j) * grid.n_lon + m];
            const double vr = v.dot(p), vt = v.dot(e_theta), vp = v.dot(e_phi);
            for (int k = 0; k <= N; ++k) {
                const double c = cosk[static_cast<std::size_t>(k) * grid.n_lon + m];
                const double s = sink[static_cast<std::size_t>(k) * grid.n_lon + m];
                Cr[k] += vr * c;
                Sr[k] += vr * s;
                Ct[k] += vt * c;
                St[k] += vt * s;
                Cp[k] += vp * c;
                Sp[k] += vp * s;
            }
        }
        for (int n = 0; n <= N; ++n) {
            for (int k = -n; k <= n; ++k) {
                const int ka = std::abs(k);
                const double norm = (k == 0) ? 1.0 : rt2;
                const double Lnk = L[tri_index(n, ka)];
                const double dLnk = dL[tri_index(n, ka)];
                // ring picks: cos branch for k >= 0, sin branch for k < 0
                const double ring_r = (k >= 0) ? Cr[ka] : Sr[ka];
                const double ring_t = (k >= 0) ? Ct[ka] : St[ka];
                const double ring_p = (k >= 0) ? Cp[ka] : Sp[ka];
                const double ring_p_other = (k >= 0) ? Sp[ka] : Cp[ka];
                const double ring_t_other = (k >= 0) ? St[ka] : Ct[ka];
                const double dazim_sign = (k >= 0) ? -1.0 : 1.0;  // pairs with the other ring
                const std::size_t i = sh_index(n, k);
                const double R = wj * norm * Lnk * ring_r;  // <F.eta, Y>
                // <F, grad Y> = int F_t dY/dtheta + F_p (1/st) dY/dphi
                const double G = wj * norm *
                                 (dLnk * ring_t + dazim_sign * ka * Lnk / st * ring_p_other);
                // <F, eta x grad Y> = int F_p dY/dtheta - F_t (1/st) dY/dphi
                const double C = wj * norm *
                                 (dLnk * ring_p - dazim_sign * ka * Lnk / st * ring_t_other);
                if (n == 0) {
                    F.minus[i] += R;  // b-_{0,0} = eta Y_{0,0}
                    continue;
                }
                // <F, b+> = -(n R + G)/(2n+1); coefficient = <F,b+>(2n+1)/n
                F.plus[i] += -(n * R + G) / n;
                F.minus[i] += ((n + 1.0) * R - G) / (n + 1.0);
                F.df[i] += C / std::sqrt(static_cast<double>(n) * (n + 1));
            }
        }
    }
    return F;
}

/// L^2 norm of a vector field from its (plus, minus, df) coefficients:
/// |F|^2 = sum n/(2n+1) plus^2 + sum (n+1)/(2n+1) minus^2 + sum df^2.
inline double vector_l2_norm(const SpectralVectorField& F) {
    double acc = 0.0;
    for (int n = 0; n <= F.max_degree; ++n)
        for (int k = -n; k <= n; ++k) {
            const std::size_t i = sh_index(n, k);
            acc += n / (2.0 * n + 1.0) * F.plus[i] * F.plus[i];
            acc += (n + 1.0) / (2.0 * n + 1.0) * F.minus[i] * F.minus[i];
            acc += F.df[i] * F.df[i];
        }
    return std::sqrt(acc);
}

}  // namespace sphardy
