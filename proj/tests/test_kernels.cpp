#include <catch2/catch_amalgamated.hpp>

#include <Eigen/Dense>
#include <cmath>
#include <random>

#include "sphardy/geometry.hpp"
#include "sphardy/kernels.hpp"

using namespace sphardy;
using Catch::Approx;

namespace {

std::mt19937_64& rng() {
    static std::mt19937_64 gen(5150ULL);
    return gen;
}

Vec3 random_unit() {
    std::normal_distribution<double> n(0.0, 1.0);
    Vec3 v(n(rng()), n(rng()), n(rng()));
    while (v.norm() < 1e-8) v = Vec3(n(rng()), n(rng()), n(rng()));
    return v.normalized();
}

double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const double n = static_cast<double>(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double lx = std::log(x[i]), ly = std::log(y[i]);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

/// Composite Gauss-Legendre transform oracle for the regularized
/// fundamental solution: 2 pi int_{-1}^{1} G^rho(t) P_n(t) dt with dyadic
/// panels toward the (mild) log endpoint at t = 1 - rho.
std::vector<double> reg_green_transform_oracle(double rho, int N) {
    std::vector<double> x, w;
    gauss_legendre(80, x, w);
    std::vector<double> sums(N + 1, 0.0);
    auto add_panel = [&](double a, double b) {
        for (std::size_t i = 0; i < x.size(); ++i) {
            const double t = 0.5 * (a + b) + 0.5 * (b - a) * x[i];
            const double ww = 0.5 * (b - a) * w[i];
            const std::vector<double> P = legendre_all(t, N);
            const double g = reg_green_value_t(rho, t);
            for (int n = 0; n <= N; ++n) sums[n] += ww * g * P[n];
        }
    };
    // inner branch: polynomial, one panel suffices
    add_panel(1.0 - rho, 1.0);
    // outer branch: dyadic panels shrinking toward t = 1 - rho
    double edge = rho;
    while (1.0 - edge > -1.0) {
        const double right = 1.0 - edge;
        const double left = std::max(-1.0, 1.0 - 2.0 * edge);
        add_panel(left, right);
        edge *= 2.0;
    }
    for (double& s : sums) s *= 2.0 * pi;
    return sums;
}

}  // namespace

TEST_CASE("wendland kernel: closed-form values and exact support") {
    const Vec3 x = random_unit();
    REQUIRE(wendland_spatial(0.5, x, x) == Approx(4.0).margin(1e-15));
    REQUIRE(wendland_profile(0.5) == Approx(0.1875).margin(1e-16));
    REQUIRE(wendland_profile(1.0) == 0.0);
    REQUIRE(wendland_profile(1.7) == 0.0);
    // support edge exactly zero in the scaled kernel too
    for (int trial = 0; trial < 50; ++trial) {
        const Vec3 a = random_unit(), b = random_unit();
        const double r = (a - b).norm();
        if (r >= 0.6) REQUIRE(wendland_spatial(0.6, a, b) == 0.0);
    }
    REQUIRE_THROWS(wendland_spatial(0.0, x, x));
    REQUIRE_THROWS(wendland_spatial(2.5, x, x));
}

TEST_CASE("wendland coefficients: mean, positivity, quadrature oracle") {
    for (const double delta : {0.1, 0.385, 1.0}) {
        const WendlandSpectrum spec = wendland_coeffs(delta, 50);
        REQUIRE(spec.coeffs[0] == Approx(pi / 7.0).epsilon(1e-14));
        for (const double c : spec.coeffs) REQUIRE(c > 0.0);
        const WendlandSpectrum ref = wendland_coeffs_by_quadrature(delta, 50);
        for (int n = 0; n <= 50; ++n)
            REQUIRE(spec.coeffs[n] == Approx(ref.coeffs[n]).epsilon(1e-8));
    }
    // pinned single value n=3, delta=0.5
    const WendlandSpectrum s5 = wendland_coeffs(0.5, 3);
    const WendlandSpectrum r5 = wendland_coeffs_by_quadrature(0.5, 3);
    REQUIRE(s5.coeffs[3] == Approx(r5.coeffs[3]).epsilon(1e-8));
}

TEST_CASE("wendland coefficients decay like (1 + delta n)^-5") {
    const double delta = 0.3;
    const WendlandSpectrum spec = wendland_coeffs(delta, 100);
    std::vector<double> xs, ys;
    for (int n = 20; n <= 100; n += 5) {
        xs.push_back(1.0 + delta * n);
        ys.push_back(spec.coeffs[n]);
    }
    const double slope = loglog_slope(xs, ys);
    REQUIRE(slope == Approx(-5.0).margin(0.3));
}

TEST_CASE("wendland kernel matrices are positive definite") {
    PointSet X;
    for (int i = 0; i < 50; ++i) X.points.push_back(random_unit());
    Eigen::MatrixXd K(50, 50);
    for (int i = 0; i < 50; ++i)
        for (int j = 0; j < 50; ++j) K(i, j) = wendland_spatial(0.8, X.points[i], X.points[j]);
    const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(K);
    REQUIRE(eig.eigenvalues().minCoeff() > 0.0);
}

TEST_CASE("native-space scaling constants are stable across delta") {
    // || f ||_{H^{5/2}} vs the kernel-native norm: the per-degree ratio
    // (n + 1/2)^5 psihat_n must be bounded below by a delta-independent
    // constant and above by C^2 delta^-5 with stable C.
    std::vector<double> cbar, Cbar;
    for (const double delta : {0.4, 0.2, 0.1}) {
        const WendlandSpectrum spec = wendland_coeffs(delta, 200);
        double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
        for (int n = 0; n <= 200; ++n) {
            const double v = std::pow(n + 0.5, 5.0) * spec.coeffs[n];
            lo = std::min(lo, v);
            hi = std::max(hi, v);
        }
        cbar.push_back(std::sqrt(lo));
        Cbar.push_back(std::sqrt(hi) * std::pow(delta, 2.5));
    }
    for (std::size_t i = 1; i < cbar.size(); ++i) {
        REQUIRE(cbar[i] / cbar[0] > 0.5);
        REQUIRE(cbar[i] / cbar[0] < 2.0);
        REQUIRE(Cbar[i] / Cbar[0] > 0.5);
        REQUIRE(Cbar[i] / Cbar[0] < 2.0);
    }
}

TEST_CASE("fundamental solution: values, singularity guard, series") {
    REQUIRE(green_value_t(-1.0) == Approx(1.0 / (4 * pi)).margin(1e-15));
    // ln(1-t) = 1 - ln 2 at t = 1 - e/2, so the constant doubles
    REQUIRE(green_value_t(1.0 - std::exp(1.0) / 2.0) ==
            Approx((2.0 - 2.0 * std::log(2.0)) / (4 * pi)).margin(1e-15));
    REQUIRE_THROWS_WITH(green_value_t(1.0), Catch::Matchers::ContainsSubstring("singular"));
    REQUIRE_THROWS(green_spatial(Vec3(0, 0, 1), Vec3(0, 0, 1)));

    // partial sums of sum (2n+1)/(4 pi) * (-1/(n(n+1))) P_n(t) converge to it
    const int N = 5000;
    const std::vector<double> c = green_coeffs(N);
    REQUIRE(c[0] == 0.0);
    const std::vector<double> P = legendre_all(0.0, N);
    double acc = 0.0;
    for (int n = 1; n <= N; ++n) acc += (2 * n + 1) / (4 * pi) * c[n] * P[n];
    REQUIRE(acc == Approx(green_value_t(0.0)).margin(1e-4));
}

TEST_CASE("regularized fundamental solution: joins and diagonal value") {
    for (const double rho : {0.105, 0.025, 0.5}) {
        // diagonal
        REQUIRE(reg_green_value_t(rho, 1.0) == Approx(std::log(rho / 2) / (4 * pi)).margin(1e-15));
        // C0 join: both closed forms at t = 1 - rho agree
        const double t = 1.0 - rho;
        const double outer = std::log(1.0 - t) / (4 * pi) + (1 - std::log(2.0)) / (4 * pi);
        const double inner = (1.0 - t) / (4 * pi * rho) + (std::log(rho) - std::log(2.0)) / (4 * pi);
        REQUIRE(outer == Approx(inner).margin(1e-14));
        REQUIRE(reg_green_value_t(rho, t) == Approx(outer).margin(1e-14));
        // C1 join: one-sided slopes both equal -1/(4 pi rho)
        REQUIRE(reg_green_dt(rho, t) == Approx(-1.0 / (4 * pi * rho)).margin(1e-12));
        REQUIRE(reg_green_dt(rho, t + 1e-12) == Approx(-1.0 / (4 * pi * rho)).margin(1e-12));
        REQUIRE(reg_green_dt(rho, t - 1e-9) ==
                Approx(-1.0 / (4 * pi * (1.0 - (t - 1e-9)))).margin(1e-15));
    }
}

TEST_CASE("regularized coefficients: pinned values and quadrature oracle") {
    const RegularizedGreen rg = reg_green_coeffs(0.105, 50);
    REQUIRE(rg.coeffs[0] == Approx(0.02625).margin(1e-16));
    REQUIRE(rg.coeffs[1] == Approx(-0.5 + 0.105 / 4 - 0.105 * 0.105 / 24).margin(1e-16));

    for (const double rho : {0.105, 0.025}) {
        const RegularizedGreen spec = reg_green_coeffs(rho, 50);
        const std::vector<double> ref = reg_green_transform_oracle(rho, 50);
        for (int n = 0; n <= 50; ++n)
            REQUIRE(spec.coeffs[n] == Approx(ref[n]).epsilon(1e-8));
    }

    // rho -> 0 limit recovers the unregularized coefficients -1/(n(n+1));
    // the finite-rho deviation of the ratio grows like rho * n^2
    const RegularizedGreen tiny = reg_green_coeffs(1e-6, 10);
    for (int n = 2; n <= 10; ++n)
        REQUIRE(tiny.coeffs[n] / (-1.0 / (n * (n + 1.0))) == Approx(1.0).margin(1e-3));
}

TEST_CASE("regularized coefficients synthesize the spatial closed form") {
    for (const double rho : {0.105, 0.025}) {
        const int N = static_cast<int>(std::ceil(2000.0 / rho));
        const RegularizedGreen spec = reg_green_coeffs(rho, N);
        std::uniform_real_distribution<double> ut(-1.0, 1.0);
        for (int trial = 0; trial < 20; ++trial) {
            const double t = ut(rng());
            const std::vector<double> P = legendre_all(t, N);
            double acc = 0.0;
            for (int n = 0; n <= N; ++n) acc += (2 * n + 1) / (4 * pi) * spec.coeffs[n] * P[n];
            REQUIRE(acc == Approx(reg_green_value_t(rho, t)).margin(1e-6));
        }
    }
}

TEST_CASE("difference atoms: support, diagonal, spectral laplacian, tangency") {
    const GreenDifferenceAtom atom{Vec3(0, 0, 1), Vec3(1, 0, 0), 0.105};

    // outside both caps the laplacian vanishes exactly (not just small)
    int outside = 0;
    for (int trial = 0; trial < 10000; ++trial) {
        const Vec3 y = random_unit();
        if (atom.x.dot(y) <= 1 - atom.rho && atom.xbar.dot(y) <= 1 - atom.rho) {
            REQUIRE(green_diff_laplacian(atom, y) == 0.0);
            ++outside;
        }
    }
    REQUIRE(outside > 8000);

    // at y = x (xbar cap far away): 1/(2 pi rho) + 1/(4 pi)
    REQUIRE(green_diff_laplacian(atom, atom.x) ==
            Approx(1.0 / (2 * pi * atom.rho) + 1.0 / (4 * pi)).margin(1e-13));

    // x = xbar degenerates to the zero function
    const GreenDifferenceAtom degenerate{Vec3(0, 1, 0), Vec3(0, 1, 0), 0.105};
    for (int trial = 0; trial < 20; ++trial) {
        const Vec3 y = random_unit();
        REQUIRE(green_diff_value(degenerate, y) == 0.0);
        REQUIRE(green_diff_laplacian(degenerate, y) == 0.0);
        REQUIRE(green_diff_gradient(degenerate, y).norm() == 0.0);
    }

    // spectral laplacian (-n(n+1) Ghat_n synthesis) matches the closed form.
    // The laplacian jumps across the two cap-edge circles, so its Legendre
    // partial sums converge only like 1/N away from the edges (and exhibit
    // Gibbs oscillations on them): measured max error over random points at
    // least 0.02 from both edges is 2.4e-2 at N=400, 5.6e-5 at N=200000.
    const int N = 200000;
    const double edge_band = 0.02;
    const RegularizedGreen spec = reg_green_coeffs(atom.rho, N);
    int checked = 0;
    while (checked < 100) {
        const Vec3 y = random_unit();
        if (std::abs(atom.x.dot(y) - (1 - atom.rho)) < edge_band ||
            std::abs(atom.xbar.dot(y) - (1 - atom.rho)) < edge_band)
            continue;
        const std::vector<double> Px = legendre_all(atom.x.dot(y), N);
        const std::vector<double> Pb = legendre_all(atom.xbar.dot(y), N);
        double acc = 0.0;
        for (int n = 1; n <= N; ++n)
            acc += (2 * n + 1) / (4 * pi) * (-double(n) * (n + 1)) * spec.coeffs[n] *
                   (Px[n] - Pb[n]);
        REQUIRE(acc == Approx(green_diff_laplacian(atom, y)).margin(1e-4));
        ++checked;
    }

    // gradients are tangent fields
    for (int trial = 0; trial < 200; ++trial) {
        const Vec3 y = random_unit();
        const Vec3 g = green_diff_gradient(atom, y);
        REQUIRE(std::abs(g.dot(y)) < 1e-12 * (1.0 + g.norm()));
    }

    // value is the difference of the two regularized kernels
    const Vec3 y0 = random_unit();
    REQUIRE(green_diff_value(atom, y0) ==
            Approx(reg_green_spatial(atom.rho, atom.x, y0) -
                   reg_green_spatial(atom.rho, atom.xbar, y0)).margin(1e-15));
}

TEST_CASE("laplacian mass grows like rho^{-1/2}") {
    std::vector<double> rhos = {0.1, 0.01, 0.001};
    std::vector<double> norms;
    std::vector<double> x, w;
    gauss_legendre(200, x, w);
    for (const double rho : rhos) {
        // || Delta G^rho (x,.) ||_{L2}^2 = 2 pi [ int_{1-rho}^1 (t/(2 pi rho))^2 dt
        //                                       + int_{-1}^{1-rho} (1/(4 pi))^2 dt ]
        double inner = 0.0, outer = 0.0;
        for (std::size_t i = 0; i < x.size(); ++i) {
            const double ti = 1.0 - rho + rho * 0.5 * (x[i] + 1.0);
            inner += rho * 0.5 * w[i] * std::pow(reg_green_laplacian_t(rho, ti), 2);
            const double to = -1.0 + (2.0 - rho) * 0.5 * (x[i] + 1.0);
            outer += (2.0 - rho) * 0.5 * w[i] * std::pow(reg_green_laplacian_t(rho, to), 2);
        }
        const double norm = std::sqrt(2 * pi * (inner + outer));
        norms.push_back(norm);
        REQUIRE(norm * std::sqrt(rho) > 0.1);
        REQUIRE(norm * std::sqrt(rho) < 10.0);
    }
    REQUIRE(loglog_slope(rhos, norms) == Approx(-0.5).margin(0.1));
}

TEST_CASE("smoothing scales: mean deviation exactly rho/4, gradient mass like sqrt(rho)") {
    std::vector<double> rhos = {0.1, 0.01, 0.001};
    std::vector<double> means, grads;
    std::vector<double> x, w;
    gauss_legendre(400, x, w);
    for (const double rho : rhos) {
        // int (G^rho - G) domega = 2 pi int_{1-rho}^{1} (inner - outer)(t) dt;
        // substitute u = 1 - t = rho v^5 to tame the log endpoint.  In terms
        // of u the integrand is (u/rho + ln(rho/u) - 1) / (4 pi).
        double mean = 0.0;
        for (std::size_t i = 0; i < x.size(); ++i) {
            const double v = 0.5 * (x[i] + 1.0);
            const double u = rho * std::pow(v, 5);
            const double diff = (u / rho + std::log(rho / u) - 1.0) / (4 * pi);
            mean += 0.5 * w[i] * 5.0 * rho * std::pow(v, 4) * diff;
        }
        mean *= 2 * pi;
        REQUIRE(std::abs(mean) == Approx(rho / 4.0).epsilon(1e-6));
        means.push_back(std::abs(mean));

        // int |grad G^rho - grad G| domega; substitute u = 1 - t = rho v^2,
        // with |grad difference| = (1/u - 1/rho) sqrt(u (2 - u)) / (4 pi).
        double mass = 0.0;
        for (std::size_t i = 0; i < x.size(); ++i) {
            const double v = 0.5 * (x[i] + 1.0);
            const double u = rho * v * v;
            const double dphi =
                (1.0 / u - 1.0 / rho) * std::sqrt(u * (2.0 - u)) / (4 * pi);
            mass += 0.5 * w[i] * 2.0 * rho * v * dphi;
        }
        mass *= 2 * pi;
        grads.push_back(mass);
    }
    // exact small-rho coefficient of the gradient mass: (2 sqrt2 / 3) sqrt(rho)
    REQUIRE(grads.back() == Approx(2.0 * std::sqrt(2.0) / 3.0 * std::sqrt(rhos.back())).epsilon(0.03));

    // measured decay must be at least as fast as the guaranteed envelopes
    const double mean_slope = loglog_slope(rhos, means);
    std::vector<double> env;
    for (const double r : rhos) env.push_back(r * std::abs(std::log(r)));
    REQUIRE(mean_slope >= loglog_slope(rhos, env) - 0.15);
    const double grad_slope = loglog_slope(rhos, grads);
    std::vector<double> env2;
    for (const double r : rhos) env2.push_back(std::sqrt(r));
    REQUIRE(grad_slope >= loglog_slope(rhos, env2) - 0.15);
}
