// Tours the kernel family: compactly supported window kernels across scales,
// the regularized fundamental solution, and a localized difference atom.
// Prints profiles and spectra as small tables; no files are written.

#include <cstdio>

#include "sphardy/kernels.hpp"

using namespace sphardy;

int main() {
    std::printf("window kernel value profile (rows: geodesic distance)\n");
    std::printf("%10s", "dist");
    for (const double delta : {1.0, 0.385, 0.105}) std::printf("  delta=%-7.3f", delta);
    std::printf("\n");
    const Vec3 north(0, 0, 1);
    for (const double dist : {0.0, 0.05, 0.1, 0.2, 0.4, 0.8}) {
        const Vec3 y(std::sin(dist), 0, std::cos(dist));
        std::printf("%10.2f", dist);
        for (const double delta : {1.0, 0.385, 0.105})
            std::printf("  %13.6f", wendland_spatial(delta, north, y));
        std::printf("\n");
    }

    std::printf("\nwindow kernel spectra (mean pi/7 = %.6f at every scale)\n", pi / 7);
    std::printf("%6s", "n");
    for (const double delta : {1.0, 0.385, 0.105}) std::printf("  delta=%-7.3f", delta);
    std::printf("\n");
    for (const int n : {0, 1, 2, 4, 8, 16, 32}) {
        std::printf("%6d", n);
        for (const double delta : {1.0, 0.385, 0.105})
            std::printf("  %13.4e", wendland_coeffs(delta, 32).coeffs[n]);
        std::printf("\n");
    }

    std::printf("\nregularized fundamental solution, rho = 0.105\n");
    const double rho = 0.105;
    std::printf("  value at the pole      %12.6f (log(rho/2)/(4 pi))\n",
                reg_green_value_t(rho, 1.0));
    std::printf("  value at the join      %12.6f (matches the log branch)\n",
                reg_green_value_t(rho, 1.0 - rho));
    std::printf("  slope at the join      %12.6f (= -1/(4 pi rho))\n",
                reg_green_dt(rho, 1.0 - rho));
    const RegularizedGreen spec = reg_green_coeffs(rho, 8);
    std::printf("  coefficients 0..8     ");
    for (int n = 0; n <= 8; ++n) std::printf(" %.4f", spec.coeffs[n]);
    std::printf("\n  (degree 0 equals rho/4 = %.6f)\n", rho / 4);

    std::printf("\ndifference atom: harmonic away from its two caps\n");
    const GreenDifferenceAtom atom{Vec3(0, 0, 1), Vec3(1, 0, 0), rho};
    for (const double t : {0.2, 0.7, 1.2, 2.0}) {
        const Vec3 y(std::sin(t) / std::sqrt(2.0), std::sin(t) / std::sqrt(2.0),
                     std::cos(t));
        std::printf("  probe angle %.1f: value %11.6f, surface laplacian %g\n", t,
                    green_diff_value(atom, y), green_diff_laplacian(atom, y));
    }
    return 0;
}
