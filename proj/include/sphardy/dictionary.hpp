// Dictionary of locally supported inner-Hardy atoms over a cap region and
// the regularized least-squares machinery that fits scalar targets in it.
//
// Two atom families live inside the region Sigma^c = C_R(c):
//   green atoms    (K + I/2) S^{-1} G^{rho_n}_{x, xbar}   (level n only)
//   wendland atoms Psi_{delta_i, x'}                      (levels 1..n)
// with per-(n,k) spectral profiles
//   green:    -(m+1) Ghat^rho_m  (Y_{m,k}(x) - Y_{m,k}(xbar))
//   wendland:  Psihat^delta_m     Y_{m,k}(x').
// The sign-flip map onto the outer-Hardy side replaces the profiles by
//   green:    -m Ghat^rho_m (...)          wendland:  -Psihat^delta_m (...)
// Gram matrices in L^2 and H^s are assembled with the addition theorem:
// every entry collapses to Legendre sums over signed center pairs, so no
// per-atom dense spectral rows are kept.
#pragma once

#include <cmath>
#include <functional>
#include <limits>
#include <vector>

#include "sphardy/geometry.hpp"
#include "sphardy/harmonics.hpp"
#include "sphardy/kernels.hpp"
#include "sphardy/linalg.hpp"

namespace sphardy {

struct DictionaryAtom {
    enum class Kind { green, wendland };
    Kind kind = Kind::wendland;
    Vec3 x{0, 0, 1};      // green: source node; wendland: center x'
    Vec3 xbar{0, 0, 1};   // green only
    double scale = 0.0;   // green: rho_n; wendland: delta_i
    int level = 1;        // wendland: the level i whose delta it carries
};

/// Level schedules derived from the hierarchy mesh widths:
/// delta_i = nu h_i and rho_i = (h_i / cbar)^2.
struct LevelSchedule {
    std::vector<double> h;
    std::vector<double> delta;
    std::vector<double> rho;
};

inline LevelSchedule make_schedule(const HierarchicalPointSets& hierarchy, double nu,
                                   double cbar) {
    if (!(nu > 1.0)) throw error("make_schedule: nu must exceed 1");
    if (!(cbar > 0.0)) throw error("make_schedule: cbar must be positive");
    LevelSchedule s;
    s.h = hierarchy.mesh_widths;
    for (const double h : s.h) {
        s.delta.push_back(nu * h);
        s.rho.push_back((h / cbar) * (h / cbar));
    }
    return s;
}

/// Lattice size whose measured mesh width best matches `target_h`.  The
/// scale schedules are anchored to the coarse-level mesh width, and the
/// spiral lattice's width only tracks 1/sqrt(count) approximately, so the
/// bracketing count from the bisection is settled by scanning its integer
/// neighborhood for the closest width.
inline std::size_t count_for_mesh_width(double target_h, std::size_t lo = 16,
                                        std::size_t hi = 16384) {
    if (!(target_h > 0.0)) throw error("count_for_mesh_width: target must be positive");
    if (lo < 1 || hi <= lo) throw error("count_for_mesh_width: bad search range");
    const auto width = [](std::size_t n) { return mesh_width(generate_points(n)); };
    if (width(lo) <= target_h) return lo;
    if (width(hi) > target_h) throw error("count_for_mesh_width: target below range");
    std::size_t coarse = lo, fine = hi;
    while (fine - coarse > 1) {
        const std::size_t mid = coarse + (fine - coarse) / 2;
        (width(mid) > target_h ? coarse : fine) = mid;
    }
    std::size_t best = fine;
    double best_err = std::abs(width(fine) - target_h);
    const std::size_t span = std::max<std::size_t>(3, fine / 100);
    for (std::size_t n = fine > span ? fine - span : 1; n <= fine + span; ++n) {
        const double err = std::abs(width(n) - target_h);
        if (err < best_err) {
            best = n;
            best_err = err;
        }
    }
    return best;
}

struct Dictionary {
    SphericalCap sigma_c;
    int level = 1;
    std::vector<DictionaryAtom> atoms;
    LevelSchedule schedule;

    std::size_t size() const { return atoms.size(); }
};

/// Default schedule constants: nu matches delta_1/h_1 = 0.385/0.174 and
/// cbar matches rho_1 = (h_1/cbar)^2 = 0.105 at h_1 = 0.174.
constexpr double default_nu = 2.213;
constexpr double default_cbar = 0.537;

/// Atoms of level n over sigma_c: wendland atoms accumulate over levels
/// i = 1..n (each filtered so the support ball stays inside the region),
/// green atoms come from level n alone (caps inside the region).  Whenever
/// green atoms are present, xbar's own cap at the level-n radius must fit in
/// the region too, so every difference kernel stays locally harmonic outside
/// it.  (Small regions admit no level-1 cap at all yet gain green atoms on
/// finer levels, so the binding radius is the one actually in use.)
inline Dictionary build_dictionary(const SphericalCap& sigma_c, int n,
                                   const HierarchicalPointSets& hierarchy, const Vec3& xbar,
                                   double nu = default_nu, double cbar = default_cbar) {
    if (n < 1 || n > static_cast<int>(hierarchy.levels.size()))
        throw error("build_dictionary: level outside hierarchy");
    Dictionary dict;
    dict.sigma_c = sigma_c;
    dict.level = n;
    dict.schedule = make_schedule(hierarchy, nu, cbar);

    for (int i = 1; i <= n; ++i) {
        const PointSet kept =
            filter_ball_interior(hierarchy.levels[i - 1], sigma_c, dict.schedule.delta[i - 1]);
        for (const Vec3& xp : kept.points)
            dict.atoms.push_back({DictionaryAtom::Kind::wendland, xp, xp,
                                  dict.schedule.delta[i - 1], i});
    }

    const PointSet green =
        filter_cap_interior(hierarchy.levels[n - 1], sigma_c, dict.schedule.rho[n - 1]);
    if (green.size() > 0) {
        PointSet xbar_ok;
        xbar_ok.points.push_back(xbar);
        if (filter_cap_interior(xbar_ok, sigma_c, dict.schedule.rho[n - 1]).size() != 1)
            throw error("build_dictionary: xbar cap not inside the region");
        for (const Vec3& x : green.points)
            dict.atoms.push_back({DictionaryAtom::Kind::green, x, xbar,
                                  dict.schedule.rho[n - 1], n});
    }
    return dict;
}

/// Per-level kernel spectra shared by all atoms of a dictionary.
struct DictionarySpectra {
    int max_degree = 0;
    std::vector<WendlandSpectrum> wendland;  // index level-1
    RegularizedGreen green;                  // level n only
};

inline DictionarySpectra dictionary_spectra(const Dictionary& dict, int N) {
    DictionarySpectra s;
    s.max_degree = N;
    for (int i = 1; i <= dict.level; ++i)
        s.wendland.push_back(wendland_coeffs(dict.schedule.delta[i - 1], N));
    s.green = reg_green_coeffs(dict.schedule.rho[dict.level - 1], N);
    return s;
}

namespace detail {

/// Zonal profile of an atom: coefficient multiplying Y_{m,k}(center) per
/// degree m.  Plus side is the atom itself; minus side is its sign-flip
/// image.
inline std::vector<double> atom_profile(const DictionaryAtom& atom,
                                        const DictionarySpectra& spectra, bool minus_side) {
    const int N = spectra.max_degree;
    std::vector<double> p(N + 1);
    if (atom.kind == DictionaryAtom::Kind::wendland) {
        const std::vector<double>& psi = spectra.wendland[atom.level - 1].coeffs;
        for (int m = 0; m <= N; ++m) p[m] = minus_side ? -psi[m] : psi[m];
    } else {
        for (int m = 0; m <= N; ++m)
            p[m] = (minus_side ? -double(m) : -double(m + 1)) * spectra.green.coeffs[m];
    }
    return p;
}

struct SignedCenter {
    Vec3 point;
    double sign;
};

inline std::vector<SignedCenter> atom_centers(const DictionaryAtom& atom) {
    if (atom.kind == DictionaryAtom::Kind::wendland) return {{atom.x, 1.0}};
    return {{atom.x, 1.0}, {atom.xbar, -1.0}};
}

}  // namespace detail

/// Spectral coefficients of one atom (plus side, or its minus-side image).
inline SpectralScalarField atom_scalar_field(const DictionaryAtom& atom,
                                             const DictionarySpectra& spectra,
                                             bool minus_side = false) {
    const int N = spectra.max_degree;
    const std::vector<double> profile = detail::atom_profile(atom, spectra, minus_side);
    SpectralScalarField f(N);
    if (atom.kind == DictionaryAtom::Kind::wendland) {
        const std::vector<double> Y = ylm_table(atom.x, N);
        for (int m = 0; m <= N; ++m)
            for (int k = -m; k <= m; ++k)
                f.coeffs[sh_index(m, k)] = profile[m] * Y[sh_index(m, k)];
    } else {
        // difference first, so coincident centers cancel exactly
        const std::vector<double> Yx = ylm_table(atom.x, N);
        const std::vector<double> Yb = ylm_table(atom.xbar, N);
        for (int m = 0; m <= N; ++m)
            for (int k = -m; k <= m; ++k)
                f.coeffs[sh_index(m, k)] =
                    profile[m] * (Yx[sh_index(m, k)] - Yb[sh_index(m, k)]);
    }
    return f;
}

/// Closed-form vector atom: grad_S G^rho_{x,xbar} for green atoms and
/// eta Psi_{delta,x'} for wendland atoms.
inline Vec3 vector_atom_field(const DictionaryAtom& atom, const Vec3& y) {
    if (atom.kind == DictionaryAtom::Kind::wendland)
        return y * wendland_spatial(atom.scale, atom.x, y);
    return reg_green_gradient(atom.scale, atom.x, y) -
           reg_green_gradient(atom.scale, atom.xbar, y);
}

/// Precomputed Gram matrices and data vector for fits over one dictionary.
struct FitWorkspace {
    int max_degree = 0;
    double s = 2.25;
    Eigen::MatrixXd gram_l2;   // <atom_i, atom_j>_{L2}
    Eigen::MatrixXd gram_hs;   // <atom_i, atom_j>_{H^s}
    Eigen::VectorXd data_l2;   // <f, atom_i>_{L2}
    double target_l2sq = 0.0;  // ||f||^2_{L2}
};

namespace detail {

/// Accumulates sign * sum_m w_m p_m q_m (2m+1)/(4 pi) P_m(t) for both
/// weights (L2: w = 1; H^s: w = (m + 1/2)^{2s}) in one Legendre pass.
inline void zonal_pair_sums(const std::vector<double>& p, const std::vector<double>& q,
                            const std::vector<double>& hs_weight, double t, double sign,
                            int N, std::vector<double>& legendre_buf, double& sum_l2,
                            double& sum_hs) {
    legendre_all_into(t, N, legendre_buf);
    double a = 0.0, b = 0.0;
    for (int m = 0; m <= N; ++m) {
        const double base = p[m] * q[m] * (2 * m + 1) * legendre_buf[m];
        a += base;
        b += base * hs_weight[m];
    }
    sum_l2 += sign * a / four_pi;
    sum_hs += sign * b / four_pi;
}

}  // namespace detail

inline FitWorkspace make_fit_workspace(const SpectralScalarField& target,
                                       const Dictionary& dict, const DictionarySpectra& spectra,
                                       double s) {
    const int N = spectra.max_degree;
    if (target.max_degree != N) throw error("make_fit_workspace: target degree mismatch");
    const std::size_t m = dict.size();
    FitWorkspace ws;
    ws.max_degree = N;
    ws.s = s;
    ws.gram_l2.resize(m, m);
    ws.gram_hs.resize(m, m);
    ws.data_l2.resize(m);
    for (double c : target.coeffs) ws.target_l2sq += c * c;
    if (m == 0) return ws;

    std::vector<double> hs_weight(N + 1);
    for (int n = 0; n <= N; ++n) hs_weight[n] = std::pow(n + 0.5, 2.0 * s);

    std::vector<std::vector<double>> profiles(m);
    std::vector<std::vector<detail::SignedCenter>> centers(m);
    for (std::size_t i = 0; i < m; ++i) {
        profiles[i] = detail::atom_profile(dict.atoms[i], spectra, false);
        centers[i] = detail::atom_centers(dict.atoms[i]);
    }

    std::vector<double> legendre_buf(N + 1);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = i; j < m; ++j) {
            double sum_l2 = 0.0, sum_hs = 0.0;
            for (const auto& ci : centers[i])
                for (const auto& cj : centers[j])
                    detail::zonal_pair_sums(profiles[i], profiles[j], hs_weight,
                                            ci.point.dot(cj.point), ci.sign * cj.sign, N,
                                            legendre_buf, sum_l2, sum_hs);
            ws.gram_l2(i, j) = ws.gram_l2(j, i) = sum_l2;
            ws.gram_hs(i, j) = ws.gram_hs(j, i) = sum_hs;
        }

    // data vector: per-degree ring sums of the target at each atom center
    for (std::size_t i = 0; i < m; ++i) {
        double acc = 0.0;
        for (const auto& c : centers[i]) {
            const std::vector<double> Y = ylm_table(c.point, N);
            for (int n = 0; n <= N; ++n) {
                double ring = 0.0;
                for (int k = -n; k <= n; ++k)
                    ring += target.coeffs[sh_index(n, k)] * Y[sh_index(n, k)];
                acc += c.sign * profiles[i][n] * ring;
            }
        }
        ws.data_l2(i) = acc;
    }
    return ws;
}

struct FitResult {
    std::vector<double> coefficients;
    double lambda = 0.0;
    double l2_error = 0.0;
    double relative_error = 0.0;
};

/// Tikhonov-regularized fit: minimizes ||f - g||_{L2}^2 + lambda^2 ||g||_{H^s}^2
/// over the dictionary span; relative_error divides by the caller's
/// denominator (the H^s size of the target's two Hardy legs).
inline FitResult fit_with_lambda(const FitWorkspace& ws, double lambda, double denominator) {
    FitResult fit;
    fit.lambda = lambda;
    const Eigen::Index m = ws.data_l2.size();
    if (m == 0) {
        fit.l2_error = std::sqrt(ws.target_l2sq);
        fit.relative_error = fit.l2_error / denominator;
        return fit;
    }
    const Eigen::MatrixXd M = ws.gram_l2 + lambda * lambda * ws.gram_hs;
    const Eigen::VectorXd c = solve_spd(M, ws.data_l2);
    const double err2 =
        ws.target_l2sq - 2.0 * c.dot(ws.data_l2) + c.dot(ws.gram_l2 * c);
    fit.coefficients.assign(c.data(), c.data() + m);
    fit.l2_error = std::sqrt(std::max(0.0, err2));
    fit.relative_error = fit.l2_error / denominator;
    return fit;
}

/// Runs the lambda grid and keeps the best relative error.
inline FitResult fit_best_lambda(const FitWorkspace& ws, const std::vector<double>& lambdas,
                                 double denominator) {
    FitResult best;
    best.relative_error = std::numeric_limits<double>::infinity();
    for (const double lambda : lambdas) {
        const FitResult fit = fit_with_lambda(ws, lambda, denominator);
        if (fit.relative_error < best.relative_error) best = fit;
    }
    return best;
}

inline std::vector<double> default_lambda_grid() {
    std::vector<double> grid;
    for (int i = 0; i < 15; ++i)
        grid.push_back(std::pow(10.0, -8.0 + 7.0 * i / 14.0));
    return grid;
}

/// Outer-Hardy image of a fitted combination under the sign-flip law.
inline SpectralScalarField map_to_minus(const FitResult& fit, const Dictionary& dict,
                                        const DictionarySpectra& spectra) {
    SpectralScalarField g(spectra.max_degree);
    for (std::size_t i = 0; i < fit.coefficients.size(); ++i) {
        const SpectralScalarField atom =
            atom_scalar_field(dict.atoms[i], spectra, /*minus_side=*/true);
        for (std::size_t j = 0; j < g.coeffs.size(); ++j)
            g.coeffs[j] += fit.coefficients[i] * atom.coeffs[j];
    }
    return g;
}

/// Plus-side counterpart, for assembling the fitted scalar field.
inline SpectralScalarField fitted_field(const FitResult& fit, const Dictionary& dict,
                                        const DictionarySpectra& spectra) {
    SpectralScalarField g(spectra.max_degree);
    for (std::size_t i = 0; i < fit.coefficients.size(); ++i) {
        const SpectralScalarField atom = atom_scalar_field(dict.atoms[i], spectra, false);
        for (std::size_t j = 0; j < g.coeffs.size(); ++j)
            g.coeffs[j] += fit.coefficients[i] * atom.coeffs[j];
    }
    return g;
}

/// Gram of the minus-side atom images in L^2 (the constraint quadratic of
/// the bounded extremal problem).
inline Eigen::MatrixXd minus_gram(const Dictionary& dict, const DictionarySpectra& spectra) {
    const int N = spectra.max_degree;
    const std::size_t m = dict.size();
    Eigen::MatrixXd T(m, m);
    std::vector<std::vector<double>> profiles(m);
    std::vector<std::vector<detail::SignedCenter>> centers(m);
    for (std::size_t i = 0; i < m; ++i) {
        profiles[i] = detail::atom_profile(dict.atoms[i], spectra, true);
        centers[i] = detail::atom_centers(dict.atoms[i]);
    }
    std::vector<double> legendre_buf(N + 1);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = i; j < m; ++j) {
            double acc = 0.0;
            for (const auto& ci : centers[i])
                for (const auto& cj : centers[j]) {
                    legendre_all_into(ci.point.dot(cj.point), N, legendre_buf);
                    double sum = 0.0;
                    for (int n = 0; n <= N; ++n)
                        sum += profiles[i][n] * profiles[j][n] * (2 * n + 1) * legendre_buf[n];
                    acc += ci.sign * cj.sign * sum / four_pi;
                }
            T(i, j) = T(j, i) = acc;
        }
    return T;
}

/// Bounded extremal problem: minimize ||f - g||_{L2} subject to
/// ||tau(g)||_{L2} <= c_bound, via Lagrange-multiplier bisection.
inline FitResult bep_solve(const FitWorkspace& ws, const Eigen::MatrixXd& minus_gram_matrix,
                           double c_bound, double denominator) {
    if (!(c_bound > 0.0)) throw error("bep_solve: c_bound must be positive");
    const Eigen::Index m = ws.data_l2.size();
    FitResult fit;
    if (m == 0) {
        fit.l2_error = std::sqrt(ws.target_l2sq);
        fit.relative_error = fit.l2_error / denominator;
        return fit;
    }

    const auto solve_mu = [&](double mu) {
        const Eigen::MatrixXd M = ws.gram_l2 + mu * minus_gram_matrix;
        return Eigen::VectorXd(solve_spd(M, ws.data_l2));
    };
    const auto constraint = [&](const Eigen::VectorXd& c) {
        return std::sqrt(std::max(0.0, double(c.dot(minus_gram_matrix * c))));
    };

    Eigen::VectorXd c = solve_mu(0.0);
    double mu = 0.0;
    if (constraint(c) > c_bound) {
        double lo = 0.0, hi = 1.0;
        Eigen::VectorXd chi = solve_mu(hi);
        while (constraint(chi) > c_bound) {
            lo = hi;
            hi *= 4.0;
            if (hi > 1e18) throw error("bep_solve: multiplier search diverged");
            chi = solve_mu(hi);
        }
        for (int iter = 0; iter < 200; ++iter) {
            mu = 0.5 * (lo + hi);
            c = solve_mu(mu);
            const double g = constraint(c);
            if (std::abs(g - c_bound) <= 1e-6 * c_bound) break;
            (g > c_bound ? lo : hi) = mu;
        }
        c = solve_mu(mu);
    }

    fit.lambda = mu;  // reports the active multiplier
    const double err2 =
        ws.target_l2sq - 2.0 * c.dot(ws.data_l2) + c.dot(ws.gram_l2 * c);
    fit.coefficients.assign(c.data(), c.data() + m);
    fit.l2_error = std::sqrt(std::max(0.0, err2));
    fit.relative_error = fit.l2_error / denominator;
    return fit;
}

}  // namespace sphardy
