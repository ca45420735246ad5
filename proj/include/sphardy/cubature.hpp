// Positive-weight cubature on the sphere with certified polynomial
// exactness: Gauss product rules and scattered-node rules obtained by
// nonnegative least squares on the spherical-harmonic moment system.
#pragma once

#include <cmath>
#include <cstdio>
#include <ostream>
#include <vector>

#include "sphardy/geometry.hpp"
#include "sphardy/harmonics.hpp"
#include "sphardy/linalg.hpp"

namespace sphardy {

struct CubatureRule {
    PointSet nodes;
    std::vector<double> weights;
    int exactness_degree = 0;

    double apply(const std::vector<double>& values) const {
        if (values.size() != weights.size()) throw error("CubatureRule::apply: size mismatch");
        double acc = 0.0;
        for (std::size_t i = 0; i < values.size(); ++i) acc += weights[i] * values[i];
        return acc;
    }

    template <typename F>
    double integrate(F&& f) const {
        double acc = 0.0;
        for (std::size_t i = 0; i < weights.size(); ++i) acc += weights[i] * f(nodes.points[i]);
        return acc;
    }
};

namespace detail {

/// Moment matrix: row sh_index(n,k), column = node.
inline Eigen::MatrixXd moment_matrix(const PointSet& X, int L) {
    Eigen::MatrixXd A(sh_count(L), static_cast<Eigen::Index>(X.size()));
    for (std::size_t j = 0; j < X.size(); ++j) {
        const std::vector<double> Y = ylm_table(X.points[j], L);
        for (std::size_t i = 0; i < Y.size(); ++i) A(static_cast<Eigen::Index>(i), j) = Y[i];
    }
    return A;
}

/// max |Q(Y_{n,k})| over 1 <= n <= L and |Q(Y_{0,0}) - sqrt(4 pi)|.
inline void moment_residuals(const CubatureRule& rule, double& resid_high, double& resid_00) {
    const Eigen::MatrixXd A = moment_matrix(rule.nodes, rule.exactness_degree);
    const Eigen::VectorXd w =
        Eigen::Map<const Eigen::VectorXd>(rule.weights.data(), rule.weights.size());
    const Eigen::VectorXd m = A * w;
    resid_00 = std::abs(m[0] - std::sqrt(4.0 * pi));
    resid_high = 0.0;
    for (Eigen::Index i = 1; i < m.size(); ++i) resid_high = std::max(resid_high, std::abs(m[i]));
}

}  // namespace detail

/// Gauss-Legendre x equispaced-longitude product rule, exact for spherical
/// polynomials of degree <= L, with ceil((L+1)/2) latitudes and L+1
/// longitudes.
inline CubatureRule gauss_product_rule(int L) {
    if (L < 0) throw error("gauss_product_rule: L must be >= 0");
    const int n_lat = (L + 2) / 2;
    const int n_lon = L + 1;
    std::vector<double> t, w;
    gauss_legendre(n_lat, t, w);
    CubatureRule rule;
    rule.exactness_degree = L;
    for (int j = 0; j < n_lat; ++j) {
        const double st = std::sqrt(std::max(0.0, 1.0 - t[j] * t[j]));
        for (int m = 0; m < n_lon; ++m) {
            const double phi = 2.0 * pi * m / n_lon;
            rule.nodes.points.emplace_back(st * std::cos(phi), st * std::sin(phi), t[j]);
            rule.weights.push_back(w[j] * 2.0 * pi / n_lon);
        }
    }
    return rule;
}

/// Positive cubature weights for scattered nodes by Lawson-Hanson NNLS on
/// the moment system sum_i w_i Y_{n,k}(x_i) = sqrt(4 pi) delta_{n,0}.
/// Certifies the moment residuals before returning.
inline CubatureRule scattered_weights(const PointSet& X, int L) {
    if (L < 0) throw error("scattered_weights: L must be >= 0");
    if (X.size() < static_cast<std::size_t>(sh_count(L)))
        throw error("scattered_weights: mesh too coarse for L (need at least (L+1)^2 nodes)");
    const Eigen::MatrixXd A = detail::moment_matrix(X, L);
    Eigen::VectorXd b = Eigen::VectorXd::Zero(A.rows());
    b[0] = std::sqrt(4.0 * pi);
    const Eigen::VectorXd w = nnls(A, b);

    CubatureRule rule;
    rule.nodes = X;
    rule.weights.assign(w.data(), w.data() + w.size());
    rule.exactness_degree = L;
    double resid_high = 0.0, resid_00 = 0.0;
    detail::moment_residuals(rule, resid_high, resid_00);
    if (resid_high > 1e-8 || resid_00 > 1e-10)
        throw error("scattered_weights: mesh too coarse for L (moment residuals not met)");
    return rule;
}

/// CSV serialization: `x,y,z,w` per line, header comment records L.
inline void write_rule_csv(const CubatureRule& rule, std::ostream& out) {
    out << "# cubature rule, exactness_degree L=" << rule.exactness_degree << "\n";
    char line[160];
    for (std::size_t i = 0; i < rule.weights.size(); ++i) {
        const Vec3& p = rule.nodes.points[i];
        std::snprintf(line, sizeof(line), "%.17g,%.17g,%.17g,%.17g\n", p.x(), p.y(), p.z(),
                      rule.weights[i]);
        out << line;
    }
}

}  // namespace sphardy
