#pragma once

// Harmonic extension on a spherical cap from Neumann boundary data.  The
// basis is the conical family (tan(theta/2)/tan(theta0/2))^k {cos,sin}(k phi)
// in a frame whose pole is the cap center: each element is exactly
// Delta_S-harmonic on the open cap, regular (vanishing) at the center, and
// scaled to 1 on the boundary circle so high orders cannot underflow.  The
// normal derivative of the order-k element on the boundary is just
// (k / sin theta0) times its own azimuthal factor, so least-squares
// collocation at equispaced boundary points reduces to independent Fourier
// projections (the normal matrix is exactly diagonal).

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <vector>

#include "sphardy/geometry.hpp"
#include "sphardy/kernels.hpp"

namespace sphardy {

struct NeumannSolution {
    SphericalCap cap;
    Vec3 u{1, 0, 0}, v{0, 1, 0};  // tangent frame at the cap center
    double tan_half_theta0 = 1.0;
    std::vector<double> a, b;  // cos / sin coefficients for orders 1..K
};

/// Solves Delta_S N = 0 on the cap with the normal derivative of N matched
/// to `data(p, e_theta)` at M equispaced boundary points; `data` must return
/// the e_theta-directed derivative of the target at p (e_theta points away
/// from the cap center, and the orientation cancels between the two sides).
/// The data must carry no net flux: its boundary mean times the circle
/// length must vanish, or no harmonic extension exists.  The k = 0 mode of
/// compatible data is zero, which is why the basis starts at k = 1; the
/// solution is normalized to vanish at the cap center.
template <typename DataFn>
NeumannSolution neumann_cap_solve(const SphericalCap& cap, DataFn&& data, int M = 256,
                                  int K = 32) {
    if (K < 1) throw error("neumann_cap_solve: need at least one azimuthal order");
    if (M < 2 * K + 1) throw error("neumann_cap_solve: need M >= 2K + 1 boundary points");
    const double ct = 1.0 - cap.rho;
    if (!(ct > -1.0 && ct < 1.0)) throw error("neumann_cap_solve: degenerate cap");
    const double st = std::sqrt(1.0 - ct * ct);

    NeumannSolution sol;
    sol.cap = cap;
    tangent_frame(cap.center, sol.u, sol.v);
    sol.tan_half_theta0 = st / (1.0 + ct);

    std::vector<double> g(M);
    double sup = 0.0, mean = 0.0;
    for (int i = 0; i < M; ++i) {
        const double phi = 2.0 * pi * i / M;
        const Vec3 w = std::cos(phi) * sol.u + std::sin(phi) * sol.v;
        const Vec3 e_theta = ct * w - st * cap.center;
        g[i] = data(ct * cap.center + st * w, e_theta);
        sup = std::max(sup, std::abs(g[i]));
        mean += g[i];
    }
    if (std::abs(mean / M) * 2.0 * pi * st > 1e-8 * (1.0 + sup))
        throw error("neumann_cap_solve: boundary data violates zero-flux compatibility");

    sol.a.assign(K, 0.0);
    sol.b.assign(K, 0.0);
    for (int k = 1; k <= K; ++k) {
        double ca = 0.0, cb = 0.0;
        for (int i = 0; i < M; ++i) {
            const double phi = 2.0 * pi * k * i / M;
            ca += g[i] * std::cos(phi);
            cb += g[i] * std::sin(phi);
        }
        sol.a[k - 1] = ca * (2.0 / M) * st / k;
        sol.b[k - 1] = cb * (2.0 / M) * st / k;
    }
    return sol;
}

/// Neumann solution matching the boundary flux of the difference kernel
/// G^rho_{x,xbar}.  Compatible (zero net flux) whenever both source caps sit
/// on one side of the boundary circle; with both inside the cap this is the
/// harmonic stand-in the piecewise df-correction needs.
inline NeumannSolution neumann_cap_solve(const SphericalCap& cap, const Vec3& x,
                                         const Vec3& xbar, double rho, int M = 256,
                                         int K = 32) {
    return neumann_cap_solve(
        cap,
        [&](const Vec3& p, const Vec3& e_theta) {
            return e_theta.dot(reg_green_gradient(rho, x, p) -
                               reg_green_gradient(rho, xbar, p));
        },
        M, K);
}

/// Value at y (meaningful on the closed cap; the harmonic continuation
/// grows like (tan(theta/2))^K beyond it).  Vanishes at the cap center.
inline double neumann_eval(const NeumannSolution& sol, const Vec3& y) {
    const double t = std::clamp(sol.cap.center.dot(y), -1.0, 1.0);
    const Vec3 w = y - t * sol.cap.center;
    const double s = w.norm();
    if (s == 0.0) return 0.0;
    const double r = s / ((1.0 + t) * sol.tan_half_theta0);
    const double cphi = sol.u.dot(w) / s, sphi = sol.v.dot(w) / s;
    double cre = 1.0, cim = 0.0;  // r^k cos(k phi), r^k sin(k phi), from k = 0
    double acc = 0.0;
    for (std::size_t i = 0; i < sol.a.size(); ++i) {
        const double nre = r * (cre * cphi - cim * sphi);
        const double nim = r * (cre * sphi + cim * cphi);
        cre = nre;
        cim = nim;
        acc += sol.a[i] * cre + sol.b[i] * cim;
    }
    return acc;
}

/// Tangential surface gradient of the solution at y.
inline Vec3 neumann_gradient(const NeumannSolution& sol, const Vec3& y) {
    const double t = std::clamp(sol.cap.center.dot(y), -1.0, 1.0);
    const Vec3 w = y - t * sol.cap.center;
    const double s = w.norm();
    const double tau0 = sol.tan_half_theta0;
    if (s < 1e-14) {
        // only the k = 1 mode has a nonzero gradient at the center
        if (sol.a.empty()) return Vec3::Zero();
        return (sol.a[0] * sol.u + sol.b[0] * sol.v) / (2.0 * tau0);
    }
    const Vec3 what = w / s;
    const Vec3 e_theta = t * what - s * sol.cap.center;
    const Vec3 e_phi = sol.cap.center.cross(what);
    const double r = s / ((1.0 + t) * tau0);
    const double cphi = sol.u.dot(what), sphi = sol.v.dot(what);
    // d(r^k)/dtheta = k r^k / sin theta and r / sin theta = 1/(tau0 (1+t)),
    // so each term carries k r^{k-1} / (tau0 (1+t)) -- finite at the center.
    double cre = 1.0, cim = 0.0;  // r^{k-1} cos((k-1) phi), r^{k-1} sin((k-1) phi)
    double gt = 0.0, gp = 0.0;
    for (std::size_t i = 0; i < sol.a.size(); ++i) {
        const double pre = (i + 1.0) / (tau0 * (1.0 + t));
        const double ck = cre * cphi - cim * sphi;  // r^{k-1} cos(k phi)
        const double sk = cre * sphi + cim * cphi;
        gt += pre * (sol.a[i] * ck + sol.b[i] * sk);
        gp += pre * (-sol.a[i] * sk + sol.b[i] * ck);
        cre = r * ck;
        cim = r * sk;
    }
    return gt * e_theta + gp * e_phi;
}

}  // namespace sphardy
