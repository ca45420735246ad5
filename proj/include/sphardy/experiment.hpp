#pragma once

// Convergence-study driver: fits the benchmark field's inner-Hardy potential
// over the multiscale dictionary for one region choice and a ladder of
// levels, reporting the relative error against the Sobolev size of the two
// Hardy potentials together with the predicted-envelope values
// 0.01 (0.15^n + h_n^s).

#include <chrono>
#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "sphardy/dictionary.hpp"
#include "sphardy/potentials.hpp"
#include "sphardy/testfield.hpp"

namespace sphardy {

/// Configuration mistakes (bad labels, out-of-range numbers, unreadable
/// files) — reported separately from numerical failures.
class config_error : public error {
public:
    using error::error;
};

struct ExperimentConfig {
    std::string sigma = "S1";  // S1 | S2 | S3 | custom
    Vec3 center{0, 0, 1};      // custom region only
    double rho = 1.0;          // custom region only
    int n_max = 3;
    int degree = 100;
    double s = 2.25;
    double nu = default_nu;
    double cbar = default_cbar;
    double gamma = 0.5;
    double anchor_h = 0.174;  // level-1 mesh width the lattice is sized to
    std::uint64_t seed = 20260814ULL;
    std::vector<double> lambdas = default_lambda_grid();
    bool allow_large = false;
    std::string out_dir = ".";
};

/// The three study regions; "custom" takes the cap from the config.
inline SphericalCap experiment_region(const ExperimentConfig& cfg) {
    if (cfg.sigma == "S1") return SphericalCap{Vec3(0, 0, 1), 1.0};
    if (cfg.sigma == "S2") return SphericalCap{Vec3(0, 0, 1), 0.2};
    if (cfg.sigma == "S3") return SphericalCap{Vec3(0, 0, 1), 0.1};
    if (cfg.sigma == "custom") {
        if (cfg.center.norm() < 1e-12)
            throw config_error("config: custom region center must be nonzero");
        if (!(cfg.rho > 0.0 && cfg.rho < 2.0))
            throw config_error("config: custom region rho must lie in (0, 2)");
        return SphericalCap{cfg.center.normalized(), cfg.rho};
    }
    throw config_error("config: sigma must be one of S1, S2, S3, custom");
}

/// Levels past 4 square the atom count several times over; they need the
/// explicit opt-in flag.
inline void validate_config(const ExperimentConfig& cfg) {
    experiment_region(cfg);
    if (cfg.n_max < 1) throw config_error("config: n_max must be at least 1");
    if (cfg.n_max > 4 && !cfg.allow_large)
        throw config_error("config: levels beyond 4 need allow_large");
    if (cfg.degree != 100 && cfg.degree != 200)
        throw config_error("config: degree must be 100 or 200");
    if (!(cfg.s > 1.0)) throw config_error("config: s must exceed 1");
    if (!(cfg.nu > 1.0)) throw config_error("config: nu must exceed 1");
    if (!(cfg.cbar > 0.0)) throw config_error("config: cbar must be positive");
    if (!(cfg.gamma > 0.0 && cfg.gamma < 1.0))
        throw config_error("config: gamma must lie in (0, 1)");
    if (!(cfg.anchor_h > 0.0 && cfg.anchor_h < 2.0))
        throw config_error("config: anchor_h must lie in (0, 2)");
    if (cfg.lambdas.empty()) throw config_error("config: lambda grid must be nonempty");
    for (const double l : cfg.lambdas)
        if (!(l >= 0.0)) throw config_error("config: lambda values must be nonnegative");
}

/// Shared per-run state: the nested lattice and the benchmark field's two
/// Hardy potentials (fit target and error denominator).
struct ConvergenceTargets {
    HierarchicalPointSets hierarchy;
    SpectralScalarField plus;   // inner potential: the fit target
    SpectralScalarField minus;  // outer potential: completes the denominator
    double denominator = 0.0;
    double baseline = 0.0;  // empty-dictionary relative error ||f||_L2 / denom
};

inline ConvergenceTargets convergence_setup(const ExperimentConfig& cfg) {
    validate_config(cfg);
    ConvergenceTargets t;
    t.hierarchy = build_hierarchy(count_for_mesh_width(cfg.anchor_h), cfg.n_max, cfg.gamma);
    const SpectralVectorField F = test_field_spectral(TestField{}, cfg.degree);
    t.plus = SpectralScalarField(cfg.degree);
    t.plus.coeffs = F.plus;
    t.minus = tau_ptm_of_localized(F);
    t.denominator = sobolev_norm(t.plus, cfg.s) + sobolev_norm(t.minus, cfg.s);
    double l2sq = 0.0;
    for (const double c : t.plus.coeffs) l2sq += c * c;
    t.baseline = std::sqrt(l2sq) / t.denominator;
    return t;
}

struct ConvergenceLevel {
    int n = 0;
    double h_n = 0.0;
    std::size_t num_atoms = 0;
    double delta_n = 0.0;
    double rho_n = 0.0;
    double lambda = 0.0;
    double rel_error = 0.0;
    double envelope = 0.0;
    double seconds = 0.0;
};

inline double error_envelope(int n, double h_n, double s) {
    return 0.01 * (std::pow(0.15, n) + std::pow(h_n, s));
}

/// One ladder rung: build the level-n dictionary, run the lambda grid, keep
/// the best fit.
inline ConvergenceLevel convergence_level(const ExperimentConfig& cfg,
                                          const ConvergenceTargets& targets, int n) {
    const auto t0 = std::chrono::steady_clock::now();
    const SphericalCap region = experiment_region(cfg);
    const Dictionary dict =
        build_dictionary(region, n, targets.hierarchy, region.center, cfg.nu, cfg.cbar);
    const DictionarySpectra spectra = dictionary_spectra(dict, cfg.degree);
    const FitWorkspace ws = make_fit_workspace(targets.plus, dict, spectra, cfg.s);
    const FitResult fit = fit_best_lambda(ws, cfg.lambdas, targets.denominator);

    ConvergenceLevel row;
    row.n = n;
    row.h_n = targets.hierarchy.mesh_widths[n - 1];
    row.num_atoms = dict.size();
    row.delta_n = dict.schedule.delta[n - 1];
    row.rho_n = dict.schedule.rho[n - 1];
    row.lambda = fit.lambda;
    row.rel_error = fit.relative_error;
    row.envelope = error_envelope(n, row.h_n, cfg.s);
    row.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return row;
}

}  // namespace sphardy
