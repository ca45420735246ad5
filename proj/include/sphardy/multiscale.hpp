// Scaled-Wendland kernel interpolation and the multiscale residual-
// correction scheme.
//
// A single level solves the symmetric positive definite system
//   [Psi_delta(x_i, x_j)] alpha = values
// so the model s(x) = sum_i alpha_i Psi_delta(x_i, x) reproduces the data at
// the nodes.  The multiscale fit runs the recursion e_0 = f,
// s_i = interpolate(e_{i-1} at X_i with delta_i), e_i = e_{i-1} - s_i, and
// returns f_n = sum s_i; residuals are always evaluated exactly as
// f minus the partial model (no re-gridding).
#pragma once

#include <cmath>
#include <functional>
#include <vector>

#include "sphardy/geometry.hpp"
#include "sphardy/harmonics.hpp"
#include "sphardy/kernels.hpp"
#include "sphardy/linalg.hpp"

namespace sphardy {

struct InterpolationModel {
    PointSet nodes;
    double delta = 1.0;
    std::vector<double> alpha;
};

inline double evaluate(const InterpolationModel& model, const Vec3& x) {
    double acc = 0.0;
    for (std::size_t i = 0; i < model.nodes.size(); ++i)
        acc += model.alpha[i] * wendland_spatial(model.delta, model.nodes.points[i], x);
    return acc;
}

namespace detail {

inline Eigen::MatrixXd kernel_matrix(const PointSet& X, double delta) {
    const Eigen::Index n = static_cast<Eigen::Index>(X.size());
    Eigen::MatrixXd K(n, n);
    for (Eigen::Index j = 0; j < n; ++j)
        for (Eigen::Index i = j; i < n; ++i) {
            const double v = wendland_spatial(delta, X.points[i], X.points[j]);
            K(i, j) = v;
            K(j, i) = v;
        }
    return K;
}

}  // namespace detail

/// Kernel interpolation at pairwise-distinct nodes; iterative refinement
/// drives the linear-system residual below 1e-9 * ||values||.
inline InterpolationModel interpolate(const PointSet& X, double delta,
                                      const std::vector<double>& values) {
    if (X.size() != values.size()) throw error("interpolate: node/value count mismatch");
    InterpolationModel model{X, delta, std::vector<double>(X.size(), 0.0)};
    if (X.size() == 0) return model;

    const Eigen::Map<const Eigen::VectorXd> v(values.data(),
                                              static_cast<Eigen::Index>(values.size()));
    if (v.norm() == 0.0) return model;  // alpha = 0 reproduces zero data exactly

    const Eigen::MatrixXd K = detail::kernel_matrix(X, delta);
    Eigen::VectorXd alpha = solve_spd(K, v);
    for (int pass = 0; pass < 3; ++pass) {
        const Eigen::VectorXd resid = v - K * alpha;
        if (resid.norm() <= 1e-9 * v.norm()) {
            Eigen::VectorXd::Map(model.alpha.data(), alpha.size()) = alpha;
            return model;
        }
        alpha += solve_spd(K, resid);
    }
    throw error("interpolate: ill-conditioned node set");
}

struct MultiscaleModel {
    std::vector<InterpolationModel> levels;
};

inline double evaluate(const MultiscaleModel& model, const Vec3& x) {
    double acc = 0.0;
    for (const InterpolationModel& level : model.levels) acc += evaluate(level, x);
    return acc;
}

/// Residual-correction multiscale fit: level i interpolates the residual of
/// the partial model at its own nodes with its own scale.
inline MultiscaleModel multiscale_fit(const std::function<double(const Vec3&)>& f,
                                      const std::vector<PointSet>& level_nodes,
                                      const std::vector<double>& deltas) {
    if (level_nodes.size() != deltas.size())
        throw error("multiscale_fit: level/scale count mismatch");
    MultiscaleModel model;
    for (std::size_t lvl = 0; lvl < level_nodes.size(); ++lvl) {
        const PointSet& X = level_nodes[lvl];
        std::vector<double> resid(X.size());
        for (std::size_t i = 0; i < X.size(); ++i)
            resid[i] = f(X.points[i]) - evaluate(model, X.points[i]);
        model.levels.push_back(interpolate(X, deltas[lvl], resid));
    }
    return model;
}

/// Convenience form with the schedule delta_i = nu * h_i.
inline MultiscaleModel multiscale_fit(const std::function<double(const Vec3&)>& f,
                                      const HierarchicalPointSets& hierarchy, double nu) {
    if (!(nu > 1.0)) throw error("multiscale_fit: nu must exceed 1");
    std::vector<double> deltas(hierarchy.mesh_widths.size());
    for (std::size_t i = 0; i < deltas.size(); ++i) deltas[i] = nu * hierarchy.mesh_widths[i];
    return multiscale_fit(f, hierarchy.levels, deltas);
}

/// Native-space norm sqrt(sum_{n,k} fhat^2 / Psihat_n) of a band-limited
/// field, with Psihat_n the per-(n,k) coefficient of the kernel (the stored
/// zonal convention).
inline double native_norm(const SpectralScalarField& f, const WendlandSpectrum& spectrum) {
    if (f.max_degree > spectrum.max_degree)
        throw error("native_norm: outside native space (truncated)");
    double acc = 0.0;
    for (int n = 0; n <= f.max_degree; ++n) {
        const double psin = spectrum.coeffs[n];
        for (int k = -n; k <= n; ++k) {
            const double c = f.coeffs[sh_index(n, k)];
            if (c == 0.0) continue;
            if (!(psin > 0.0)) throw error("native_norm: outside native space (truncated)");
            acc += c * c / psin;
        }
    }
    return std::sqrt(acc);
}

/// Native norm of an interpolant directly from its coefficients:
/// ||s||^2_Psi = alpha^T K alpha (exact, no truncation).
inline double native_norm(const InterpolationModel& model) {
    const Eigen::MatrixXd K = detail::kernel_matrix(model.nodes, model.delta);
    const Eigen::Map<const Eigen::VectorXd> a(model.alpha.data(),
                                              static_cast<Eigen::Index>(model.alpha.size()));
    return std::sqrt(std::max(0.0, double(a.dot(K * a))));
}

/// Spectral coefficients of an interpolant at truncation N:
/// (s)^_{n,k} = Psihat_n * sum_i alpha_i Y_{n,k}(x_i).
inline SpectralScalarField spectral_form(const InterpolationModel& model,
                                         const WendlandSpectrum& spectrum, int N) {
    if (N > spectrum.max_degree) throw error("spectral_form: spectrum truncated below N");
    SpectralScalarField f(N);
    for (std::size_t i = 0; i < model.nodes.size(); ++i) {
        const std::vector<double> Y = ylm_table(model.nodes.points[i], N);
        for (std::size_t j = 0; j < Y.size(); ++j) f.coeffs[j] += model.alpha[i] * Y[j];
    }
    for (int n = 0; n <= N; ++n)
        for (int k = -n; k <= n; ++k) f.coeffs[sh_index(n, k)] *= spectrum.coeffs[n];
    return f;
}

}  // namespace sphardy
