// The locally supported benchmark vector field used by the convergence
// experiment: f(x) = Q(x) (3 (x.d) x - d) with d = (0, 0.6, 0.8)^T and the
// two-branch window
//   Q(t, phi) = (t - a)^3 (t - 1)^2 (phi - 2 pi)^3 sin(2 phi) phi^3,  t > a
//   Q(t, phi) = 0,                                                   t <= a,
// which vanishes outside the polar cap t > a (default a = 0.9, so the field
// is supported in C_{0.1}(e3)).
#pragma once

#include <cmath>
#include <vector>

#include "sphardy/harmonics.hpp"

namespace sphardy {

struct TestField {
    double a = 0.9;
    Vec3 d{0.0, 0.6, 0.8};
};

inline double test_field_window(const TestField& field, const Vec3& x) {
    double theta, phi;
    to_angles(x, theta, phi);
    const double t = std::cos(theta);
    if (t <= field.a) return 0.0;
    const double p1 = t - field.a;
    const double p2 = t - 1.0;
    const double p3 = phi - 2.0 * pi;
    return p1 * p1 * p1 * p2 * p2 * p3 * p3 * p3 * std::sin(2.0 * phi) * phi * phi * phi;
}

inline Vec3 test_field_eval(const TestField& field, const Vec3& x) {
    const double q = test_field_window(field, x);
    if (q == 0.0) return Vec3::Zero();
    return q * (3.0 * x.dot(field.d) * x - field.d);
}

inline std::vector<Vec3> test_field_eval(const TestField& field, const std::vector<Vec3>& pts) {
    std::vector<Vec3> out(pts.size());
    for (std::size_t i = 0; i < pts.size(); ++i) out[i] = test_field_eval(field, pts[i]);
    return out;
}

/// Hardy-Hodge coefficients of the field at truncation N, computed on a
/// 2x-oversampled Gauss grid (the window is not band-limited, so plain
/// degree-N grids alias visibly; oversampling keeps the truncation clean).
inline SpectralVectorField test_field_spectral(const TestField& field, int N) {
    const GaussGrid grid = GaussGrid::for_degree(N, 2);
    std::vector<Vec3> samples(grid.size());
    for (int j = 0; j < grid.n_lat; ++j)
        for (int m = 0; m < grid.n_lon; ++m)
            samples[j * grid.n_lon + m] = test_field_eval(field, grid.node(j, m));
    return analyze_vector(grid, samples, N);
}

}  // namespace sphardy
