// Integration gate: one self-contained check per advertised guarantee of the
// library, each printing a single PASS/FAIL line.  Optional argv[1] names the
// command-line binary, which the convergence check then also exercises
// end-to-end.  Exit code is the number of failed checks.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include <sys/wait.h>

#include "sphardy/cubature.hpp"
#include "sphardy/experiment.hpp"
#include "sphardy/io.hpp"
#include "sphardy/minnorm.hpp"
#include "sphardy/multiscale.hpp"

using namespace sphardy;

namespace {

std::string g_cli_path;

void require(bool cond, const std::string& what) {
    if (!cond) throw std::runtime_error(what);
}

std::string fmt(const char* pattern, double a, double b = 0.0) {
    char buf[160];
    std::snprintf(buf, sizeof(buf), pattern, a, b);
    return buf;
}

Vec3 random_unit(std::mt19937_64& gen) {
    std::normal_distribution<double> n(0.0, 1.0);
    Vec3 v(n(gen), n(gen), n(gen));
    while (v.norm() < 1e-8) v = Vec3(n(gen), n(gen), n(gen));
    return v.normalized();
}

SpectralScalarField random_field(int N, std::mt19937_64& gen) {
    std::normal_distribution<double> g(0.0, 1.0);
    SpectralScalarField f(N);
    for (double& c : f.coeffs) c = g(gen);
    return f;
}

// --------------------------------------------------------------------------
// 1. layer operators act diagonally with the advertised multipliers
// --------------------------------------------------------------------------
std::string check_layer_multipliers() {
    std::mt19937_64 gen(101);
    const int N = 50;
    const SpectralScalarField f = random_field(N, gen);
    const SpectralScalarField Sf = apply_symbol(single_layer_symbol(N), f);
    const SpectralScalarField Kf = apply_symbol(double_layer_symbol(N), f);
    double worst = 0.0;
    for (int n = 0; n <= N; ++n)
        for (int k = -n; k <= n; ++k) {
            const std::size_t i = sh_index(n, k);
            const double s_ref = -f.coeffs[i] / (2.0 * n + 1.0);
            const double k_ref = f.coeffs[i] / (4.0 * n + 2.0);
            worst = std::max(worst, std::abs(Sf.coeffs[i] - s_ref) / std::abs(s_ref));
            worst = std::max(worst, std::abs(Kf.coeffs[i] - k_ref) / std::abs(k_ref));
        }
    require(worst <= 1e-15, fmt("multiplier relative error %.3g", worst));
    return fmt("single/double layer multipliers exact (max rel err %.2g)", worst);
}

// --------------------------------------------------------------------------
// 2. the two Hardy families are orthogonal with the advertised norms
// --------------------------------------------------------------------------
std::string check_hardy_orthogonality() {
    const int Nmax = 15;
    const GaussGrid grid = GaussGrid::for_degree(2 * Nmax + 1, 1);
    const int count = sh_count(Nmax);
    const Eigen::Index cols = 3 * static_cast<Eigen::Index>(grid.size());
    Eigen::MatrixXd P(count, cols), M(count, cols);
    std::vector<double> w(grid.size());
    for (int j = 0; j < grid.n_lat; ++j)
        for (int m = 0; m < grid.n_lon; ++m)
            w[static_cast<std::size_t>(j) * grid.n_lon + m] = grid.node_weight(j);

    for (int n = 0; n <= Nmax; ++n)
        for (int k = -n; k <= n; ++k) {
            const int row = static_cast<int>(sh_index(n, k));
            SpectralScalarField e(Nmax);
            e.coeffs[sh_index(n, k)] = 1.0;
            const std::vector<Vec3> bp = synthesize_vector(apply_Bplus(e), grid);
            const std::vector<Vec3> bm = synthesize_vector(apply_Bminus(e), grid);
            for (std::size_t i = 0; i < bp.size(); ++i) {
                const double sw = std::sqrt(w[i]);
                for (int c = 0; c < 3; ++c) {
                    P(row, 3 * i + c) = sw * bp[i][c];
                    M(row, 3 * i + c) = sw * bm[i][c];
                }
            }
        }

    const Eigen::MatrixXd cross = P * M.transpose();
    const Eigen::MatrixXd plus_gram = P * P.transpose();
    const double max_cross = cross.cwiseAbs().maxCoeff();
    require(max_cross <= 1e-10, fmt("cross inner product %.3g", max_cross));
    double worst_norm = 0.0;
    for (int n = 0; n <= Nmax; ++n)
        for (int k = -n; k <= n; ++k) {
            const int i = static_cast<int>(sh_index(n, k));
            worst_norm =
                std::max(worst_norm, std::abs(plus_gram(i, i) - n / (2.0 * n + 1.0)));
        }
    require(worst_norm <= 1e-10, fmt("norm deviation %.3g", worst_norm));
    return fmt("families orthogonal to %.2g, norms within %.2g", max_cross, worst_norm);
}

// --------------------------------------------------------------------------
// 3. hypergeometric kernel coefficients match a quadrature transform
// --------------------------------------------------------------------------
std::string check_wendland_spectrum() {
    double worst = 0.0, worst_base = 0.0;
    for (const double delta : {0.1, 0.385, 1.0}) {
        const WendlandSpectrum series = wendland_coeffs(delta, 50);
        const WendlandSpectrum quad = wendland_coeffs_by_quadrature(delta, 50, 200);
        for (int n = 0; n <= 50; ++n)
            worst = std::max(worst, std::abs(series.coeffs[n] - quad.coeffs[n]) /
                                        std::abs(quad.coeffs[n]));
        // the degree-0 series terminates immediately: mean pi/7 at every scale
        worst_base = std::max(worst_base, std::abs(series.coeffs[0] - pi / 7.0));
    }
    require(worst <= 1e-8, fmt("series/quadrature relative gap %.3g", worst));
    require(worst_base <= 1e-14, fmt("degree-0 mean off by %.3g", worst_base));
    return fmt("series matches quadrature to %.2g, base case to %.2g", worst, worst_base);
}

// --------------------------------------------------------------------------
// 4. regularized fundamental solution: coefficients, mean, smooth join
// --------------------------------------------------------------------------
std::string check_reg_green() {
    std::vector<double> x, w;
    gauss_legendre(200, x, w);
    double worst = 0.0, worst_mean = 0.0;
    for (const double rho : {0.105, 0.025}) {
        const RegularizedGreen series = reg_green_coeffs(rho, 50);
        std::vector<double> quad(51, 0.0);
        // split the transform at the branch join so both panels are analytic
        const auto panel = [&](double lo, double hi) {
            for (std::size_t i = 0; i < x.size(); ++i) {
                const double t = lo + (hi - lo) * 0.5 * (x[i] + 1.0);
                const double v = reg_green_value_t(rho, t);
                const std::vector<double> P = legendre_all(t, 50);
                for (int n = 0; n <= 50; ++n)
                    quad[n] += (hi - lo) * 0.5 * w[i] * 2.0 * pi * v * P[n];
            }
        };
        panel(-1.0, 1.0 - rho);
        panel(1.0 - rho, 1.0);
        for (int n = 1; n <= 50; ++n)
            worst = std::max(worst,
                             std::abs(series.coeffs[n] - quad[n]) / std::abs(quad[n]));
        worst_mean = std::max(worst_mean, std::abs(series.coeffs[0] - rho / 4.0));

        // both one-sided closed forms agree at the join, in value and slope
        const double tj = 1.0 - rho;
        const double outer_v = std::log(1.0 - tj) / (4 * pi) + (1 - std::log(2.0)) / (4 * pi);
        const double inner_v =
            (1.0 - tj) / (4 * pi * rho) + (std::log(rho) - std::log(2.0)) / (4 * pi);
        const double jump_v = std::max(std::abs(reg_green_value_t(rho, tj) - outer_v),
                                       std::abs(reg_green_value_t(rho, tj) - inner_v));
        const double jump_d = std::abs(reg_green_dt(rho, tj) + 1.0 / (4 * pi * rho));
        require(jump_v <= 1e-12 && jump_d <= 1e-12,
                fmt("branch join gaps %.3g / %.3g", jump_v, jump_d));
    }
    require(worst <= 1e-8, fmt("series/quadrature relative gap %.3g", worst));
    require(worst_mean <= 1e-15, fmt("mean off rho/4 by %.3g", worst_mean));
    return fmt("coefficients match quadrature to %.2g, mean exact to %.2g", worst,
               worst_mean);
}

// --------------------------------------------------------------------------
// 5. difference kernels are locally harmonic (closed form and spectrally)
// --------------------------------------------------------------------------
std::string check_local_harmonicity() {
    std::mt19937_64 gen(505);
    const GreenDifferenceAtom atom{Vec3(0, 0, 1), Vec3(1, 0, 0), 0.105};
    int outside = 0;
    for (int trial = 0; trial < 10000; ++trial) {
        const Vec3 y = random_unit(gen);
        if (atom.x.dot(y) <= 1 - atom.rho && atom.xbar.dot(y) <= 1 - atom.rho) {
            require(green_diff_laplacian(atom, y) == 0.0, "nonzero laplacian off support");
            ++outside;
        }
    }
    require(outside > 8000, "probe coverage too thin");

    // the surface laplacian jumps across the two cap-edge circles, so its
    // Legendre sums converge slowly; away from an exclusion band a very deep
    // truncation pins the closed form
    const int N = 200000;
    const double band = 0.02;
    const RegularizedGreen spec = reg_green_coeffs(atom.rho, N);
    double worst = 0.0;
    int checked = 0;
    while (checked < 100) {
        const Vec3 y = random_unit(gen);
        if (std::abs(atom.x.dot(y) - (1 - atom.rho)) < band ||
            std::abs(atom.xbar.dot(y) - (1 - atom.rho)) < band)
            continue;
        const std::vector<double> Px = legendre_all(atom.x.dot(y), N);
        const std::vector<double> Pb = legendre_all(atom.xbar.dot(y), N);
        double acc = 0.0;
        for (int n = 1; n <= N; ++n)
            acc += (2 * n + 1) / (4 * pi) * (-double(n) * (n + 1)) * spec.coeffs[n] *
                   (Px[n] - Pb[n]);
        worst = std::max(worst, std::abs(acc - green_diff_laplacian(atom, y)));
        ++checked;
    }
    require(worst <= 1e-4, fmt("spectral laplacian gap %.3g", worst));
    return fmt("exactly zero at %.0f off-support probes, spectral gap %.2g",
               double(outside), worst);
}

// --------------------------------------------------------------------------
// 6. kernel interpolation: reproduction, norm split, multiscale decay
// --------------------------------------------------------------------------
std::string check_interpolation() {
    std::mt19937_64 gen(606);
    const double delta = 0.8;
    const PointSet X = generate_points(50);
    const SpectralScalarField f = random_field(20, gen);
    std::vector<double> values(X.size());
    for (std::size_t i = 0; i < X.size(); ++i) values[i] = synthesize(f, X.points[i]);
    const InterpolationModel model = interpolate(X, delta, values);
    double worst_node = 0.0;
    for (std::size_t i = 0; i < X.size(); ++i)
        worst_node = std::max(worst_node,
                              std::abs(evaluate(model, X.points[i]) - values[i]));
    require(worst_node <= 1e-8, fmt("node reproduction error %.3g", worst_node));

    const WendlandSpectrum spectrum = wendland_coeffs(delta, 400);
    const double f2 = std::pow(native_norm(f, spectrum), 2);
    const double if2 = std::pow(native_norm(model), 2);
    SpectralScalarField diff = spectral_form(model, spectrum, 400);
    for (double& c : diff.coeffs) c = -c;
    for (std::size_t i = 0; i < f.coeffs.size(); ++i) diff.coeffs[i] += f.coeffs[i];
    const double rem2 = std::pow(native_norm(diff, spectrum), 2);
    const double gap = std::abs(f2 - if2 - rem2) / f2;
    require(gap <= 1e-6, fmt("norm split gap %.3g", gap));

    const HierarchicalPointSets hierarchy = build_hierarchy(200, 3);
    const auto bump = [](const Vec3& p) {
        const double t = p.z() - 0.8;
        return t > 0.0 ? t * t * t : 0.0;
    };
    const CubatureRule rule = gauss_product_rule(120);
    MultiscaleModel partial;
    std::vector<double> errors;
    for (std::size_t lvl = 0; lvl < hierarchy.levels.size(); ++lvl) {
        const PointSet& nodes = hierarchy.levels[lvl];
        std::vector<double> resid(nodes.size());
        for (std::size_t i = 0; i < nodes.size(); ++i)
            resid[i] = bump(nodes.points[i]) - evaluate(partial, nodes.points[i]);
        partial.levels.push_back(
            interpolate(nodes, 2.21 * hierarchy.mesh_widths[lvl], resid));
        const double err2 = rule.integrate([&](const Vec3& p) {
            const double e = bump(p) - evaluate(partial, p);
            return e * e;
        });
        errors.push_back(std::sqrt(std::max(0.0, err2)));
    }
    require(errors[1] < errors[0] && errors[2] < errors[1],
            "residual errors not strictly decreasing");
    const double slope = (std::log(errors[2]) - std::log(errors[0])) / 2.0;
    require(slope < std::log(0.9), fmt("multiscale slope %.3g too shallow", slope));
    return fmt("nodes to %.2g, norm split to %.2g", worst_node, gap) +
           fmt(", level slope %.2f", slope);
}

// --------------------------------------------------------------------------
// 7. cubature: product-rule exactness and scattered nonnegative weights
// --------------------------------------------------------------------------
std::string check_cubature() {
    std::mt19937_64 gen(707);
    const CubatureRule product = gauss_product_rule(40);
    const SpectralScalarField f = random_field(40, gen);
    const double integral = product.integrate([&](const Vec3& p) { return synthesize(f, p); });
    const double exact = std::sqrt(4.0 * pi) * f.coeffs[0];
    const double gap = std::abs(integral - exact);
    require(gap <= 1e-12 * (1.0 + std::abs(exact)), fmt("product rule gap %.3g", gap));

    const PointSet X = generate_points(500);
    const CubatureRule scattered = scattered_weights(X, 10);
    double min_w = 1e300;
    for (const double w : scattered.weights) min_w = std::min(min_w, w);
    require(min_w >= 0.0, fmt("negative weight %.3g", min_w));
    double resid = 0.0;
    std::vector<double> acc(sh_count(10), 0.0);
    for (std::size_t i = 0; i < X.size(); ++i) {
        const std::vector<double> Y = ylm_table(X.points[i], 10);
        for (std::size_t j = 0; j < acc.size(); ++j) acc[j] += scattered.weights[i] * Y[j];
    }
    for (std::size_t j = 0; j < acc.size(); ++j) {
        const double target = j == 0 ? std::sqrt(4.0 * pi) : 0.0;
        resid = std::max(resid, std::abs(acc[j] - target));
    }
    require(resid <= 1e-8, fmt("moment residual %.3g", resid));
    return fmt("product rule exact to %.2g, scattered moments to %.2g", gap, resid);
}

// --------------------------------------------------------------------------
// 8. the convergence study: error ladders per region, library and binary
// --------------------------------------------------------------------------
std::string check_convergence_study() {
    double s3_baseline = 0.0, s3_first = 0.0;
    std::string detail;
    for (const std::string sigma : {"S1", "S2", "S3"}) {
        ExperimentConfig cfg;
        cfg.sigma = sigma;
        cfg.n_max = 3;
        cfg.degree = 100;
        const ConvergenceTargets targets = convergence_setup(cfg);
        std::vector<ConvergenceLevel> rows;
        for (int n = 1; n <= 3; ++n) rows.push_back(convergence_level(cfg, targets, n));

        if (sigma == "S3") {
            s3_baseline = targets.baseline;
            s3_first = rows[0].rel_error;
            require(rows[0].num_atoms == 0, "smallest region not empty at level 1");
            require(std::abs(rows[0].rel_error - targets.baseline) <=
                        1e-12 * targets.baseline,
                    "level-1 error differs from the zero-fit baseline");
        } else {
            require(rows[1].rel_error < rows[0].rel_error &&
                        rows[2].rel_error < rows[1].rel_error,
                    sigma + " ladder not strictly decreasing");
        }
        require(rows[2].rel_error < 10.0 * rows[2].envelope,
                sigma + fmt(" level-3 error %.3g above 10x envelope %.3g",
                            rows[2].rel_error, rows[2].envelope));
        detail += (detail.empty() ? "" : ", ") + sigma +
                  fmt(" %.2g->", rows[0].rel_error) + fmt("%.2g", rows[2].rel_error);
    }

    if (!g_cli_path.empty()) {
        const std::string out = "/tmp/sphardy_acceptance_s3";
        const std::string cmd = g_cli_path + " convergence --sigma S3 --nmax 1 --out " +
                                out + " >/dev/null 2>&1";
        const int status = std::system(cmd.c_str());
        require(WIFEXITED(status) && WEXITSTATUS(status) == 0, "binary run failed");
        const std::string csv = read_text_file(out + "/convergence.csv");
        const std::size_t nl = csv.find('\n');
        const std::string row = csv.substr(nl + 1);
        const std::size_t last = row.rfind(',');
        const double cli_err = std::stod(row.substr(last + 1));
        require(std::abs(cli_err - s3_first) <= 1e-12 * s3_first,
                "binary and in-process errors differ");
        detail += ", binary agrees";
    }
    (void)s3_baseline;
    return detail;
}

// --------------------------------------------------------------------------
// 9. plus/minus transfer: per-atom round trip and the two-projector identity
// --------------------------------------------------------------------------
std::string check_tau_round_trip() {
    std::mt19937_64 gen(909);
    const SphericalCap region{Vec3(0, 0, 1), 0.2};
    const HierarchicalPointSets hierarchy = build_hierarchy(count_for_mesh_width(0.174), 1);
    const Dictionary dict = build_dictionary(region, 1, hierarchy, region.center);
    require(dict.size() >= 2, "dictionary unexpectedly small");
    bool has_green = false, has_wendland = false;
    const DictionarySpectra spectra = dictionary_spectra(dict, 60);
    double worst = 0.0;
    for (const DictionaryAtom& atom : dict.atoms) {
        (atom.kind == DictionaryAtom::Kind::green ? has_green : has_wendland) = true;
        const SpectralScalarField plus = atom_scalar_field(atom, spectra, false);
        const SpectralScalarField minus = atom_scalar_field(atom, spectra, true);
        for (int m = 0; m <= 60; ++m) {
            // invert the sign-flip law degree by degree (constants carry no mass)
            const double ratio =
                atom.kind == DictionaryAtom::Kind::green ? (m + 1.0) / std::max(m, 1) : -1.0;
            for (int k = -m; k <= m; ++k) {
                const std::size_t i = sh_index(m, k);
                worst = std::max(worst,
                                 std::abs(ratio * minus.coeffs[i] - plus.coeffs[i]));
            }
        }
    }
    require(has_green && has_wendland, "need both atom kinds for the round trip");
    require(worst <= 1e-13, fmt("round-trip coefficient gap %.3g", worst));

    // two-projector identity: the synthesized pair of Hardy legs equals the
    // closed-form vector atoms
    Dictionary two;
    two.sigma_c = SphericalCap{Vec3(0, 0, 1), 0.5};
    two.level = 1;
    two.schedule.h = {0.174};
    two.schedule.delta = {0.385};
    two.schedule.rho = {0.105};
    DictionaryAtom g;
    g.kind = DictionaryAtom::Kind::green;
    g.x = Vec3(std::sin(0.35), 0, std::cos(0.35));
    g.xbar = Vec3(0, 0, 1);
    g.scale = 0.105;
    DictionaryAtom psi;
    psi.kind = DictionaryAtom::Kind::wendland;
    psi.x = Vec3(0, std::sin(0.3), std::cos(0.3));
    psi.scale = 0.385;
    two.atoms = {g, psi};
    const DictionarySpectra sp200 = dictionary_spectra(two, 200);
    double worst_pt = 0.0;
    for (const DictionaryAtom& atom : two.atoms) {
        const double sign = atom.kind == DictionaryAtom::Kind::green ? 1.0 : -1.0;
        SpectralVectorField F(200);
        F.plus = apply_Bplus(atom_scalar_field(atom, sp200, false)).plus;
        F.minus = apply_Bminus(atom_scalar_field(atom, sp200, true)).minus;
        int checked = 0;
        while (checked < 40) {
            const Vec3 y = random_unit(gen);
            const double tg = y.dot(g.x), tb = y.dot(g.xbar);
            if (std::abs(tg - (1 - g.scale)) < 0.02 || std::abs(tb - (1 - g.scale)) < 0.02)
                continue;  // stay off the kernel's edge circles
            const Vec3 closed = sign * vector_atom_field(atom, y);
            worst_pt = std::max(worst_pt, (synthesize_vector(F, y) - closed).norm());
            ++checked;
        }
    }
    require(worst_pt <= 1e-3, fmt("pointwise identity gap %.3g", worst_pt));
    return fmt("round trip to %.2g, pointwise identity to %.2g", worst, worst_pt);
}

// --------------------------------------------------------------------------
// 10. min-norm assembly: off-region vanishing, orthogonal split, cap solver
// --------------------------------------------------------------------------
std::string check_minnorm() {
    Dictionary dict;
    dict.sigma_c = SphericalCap{Vec3(0, 0, 1), 0.5};
    dict.level = 1;
    dict.schedule.h = {0.174};
    dict.schedule.delta = {0.385};
    dict.schedule.rho = {0.105};
    DictionaryAtom atom;
    atom.kind = DictionaryAtom::Kind::green;
    atom.x = Vec3(std::sin(0.25), 0, std::cos(0.25));
    atom.xbar = Vec3(0, 0, 1);
    atom.scale = 0.105;
    dict.atoms = {atom};
    FitResult fit;
    fit.coefficients = {1.0};
    const DictionarySpectra spectra = dictionary_spectra(dict, 200);
    const MinNormField f = minnorm_assemble(fit, dict, spectra);
    const MinNormDiagnostics d = minnorm_diagnostics(f);
    require(d.sup_vanishing <= 5e-3 * d.total_l2,
            fmt("off-region sup %.3g vs total %.3g", d.sup_vanishing, d.total_l2));
    require(d.pythagoras_gap <= 0.01, fmt("orthogonality gap %.3g", d.pythagoras_gap));

    // cap solver: interior harmonicity by finite differences, flux closure
    const NeumannSolution& sol = f.harmonic[0];
    Vec3 u, v;
    tangent_frame(dict.sigma_c.center, u, v);
    const double ct = 1.0 - dict.sigma_c.rho;
    const double st = std::sqrt(1.0 - ct * ct);
    double sup_data = 0.0, flux = 0.0;
    for (int i = 0; i < 1024; ++i) {
        const double phi = 2.0 * pi * i / 1024;
        const Vec3 w = std::cos(phi) * u + std::sin(phi) * v;
        const Vec3 p = ct * dict.sigma_c.center + st * w;
        const Vec3 e_theta = ct * w - st * dict.sigma_c.center;
        const double gval = e_theta.dot(reg_green_gradient(atom.scale, atom.x, p) -
                                        reg_green_gradient(atom.scale, atom.xbar, p));
        sup_data = std::max(sup_data, std::abs(gval));
        flux += gval;
    }
    flux *= 2.0 * pi * st / 1024;
    require(std::abs(flux) <= 1e-8, fmt("boundary flux %.3g", flux));

    std::mt19937_64 gen(1010);
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    const double theta0 = dict.sigma_c.angular_radius();
    double worst_fd = 0.0;
    for (int i = 0; i < 40; ++i) {
        const double theta = 0.8 * theta0 * std::sqrt(uni(gen));
        const double phi = 2.0 * pi * uni(gen);
        const Vec3 y = std::cos(theta) * dict.sigma_c.center +
                       std::sin(theta) * (std::cos(phi) * u + std::sin(phi) * v);
        Vec3 a, b;
        tangent_frame(y, a, b);
        const double eps = 1e-3, ce = std::cos(eps), se = std::sin(eps);
        const double lap =
            (neumann_eval(sol, ce * y + se * a) + neumann_eval(sol, ce * y - se * a) +
             neumann_eval(sol, ce * y + se * b) + neumann_eval(sol, ce * y - se * b) -
             4.0 * neumann_eval(sol, y)) /
            (eps * eps);
        worst_fd = std::max(worst_fd, std::abs(lap));
    }
    require(worst_fd <= 1e-4 * sup_data,
            fmt("interior laplacian residual %.3g vs data sup %.3g", worst_fd, sup_data));
    return fmt("sup ratio %.2g, split gap %.2g", d.sup_vanishing / d.total_l2,
               d.pythagoras_gap) +
           fmt(", flux %.2g", std::abs(flux));
}

// --------------------------------------------------------------------------
// 11. bounded extremal sweeps: inactive bound is free, error relaxes with c
// --------------------------------------------------------------------------
std::string check_bep() {
    ExperimentConfig cfg;
    cfg.sigma = "S2";
    cfg.n_max = 1;
    const ConvergenceTargets targets = convergence_setup(cfg);
    const SphericalCap region = experiment_region(cfg);
    const Dictionary dict = build_dictionary(region, 1, targets.hierarchy, region.center);
    require(dict.size() > 0, "empty dictionary");
    const DictionarySpectra spectra = dictionary_spectra(dict, cfg.degree);
    const FitWorkspace ws = make_fit_workspace(targets.plus, dict, spectra, cfg.s);
    const Eigen::MatrixXd tau_gram = minus_gram(dict, spectra);

    const FitResult free_fit = fit_with_lambda(ws, 0.0, targets.denominator);
    Eigen::Map<const Eigen::VectorXd> c0(free_fit.coefficients.data(),
                                         free_fit.coefficients.size());
    const double tau_free = std::sqrt(std::max(0.0, double(c0.dot(tau_gram * c0))));

    const FitResult inactive = bep_solve(ws, tau_gram, 2.0 * tau_free, targets.denominator);
    double coeff_gap = 0.0;
    for (std::size_t i = 0; i < free_fit.coefficients.size(); ++i)
        coeff_gap = std::max(coeff_gap, std::abs(inactive.coefficients[i] -
                                                 free_fit.coefficients[i]));
    require(inactive.lambda == 0.0 && coeff_gap <= 1e-10,
            fmt("inactive bound drifted by %.3g", coeff_gap));

    double prev = 1e300, worst_bump = 0.0;
    for (int i = 1; i <= 10; ++i) {
        const double c_bound = tau_free * (0.1 + 0.11 * (i - 1));
        const FitResult fit = bep_solve(ws, tau_gram, c_bound, targets.denominator);
        worst_bump = std::max(worst_bump, fit.l2_error - prev);
        prev = fit.l2_error;
    }
    require(worst_bump <= 1e-10, fmt("data error grew by %.3g along the sweep", worst_bump));
    return fmt("inactive gap %.2g, sweep monotone (worst bump %.2g)", coeff_gap,
               worst_bump);
}

struct Criterion {
    int id;
    const char* label;
    std::function<std::string()> run;
};

}  // namespace

int main(int argc, char** argv) {
    if (argc > 1) g_cli_path = argv[1];
    const std::vector<Criterion> criteria = {
        {1, "layer-operator multipliers", check_layer_multipliers},
        {2, "Hardy-family orthogonality", check_hardy_orthogonality},
        {3, "compact-kernel spectrum", check_wendland_spectrum},
        {4, "regularized fundamental solution", check_reg_green},
        {5, "local harmonicity of difference kernels", check_local_harmonicity},
        {6, "kernel interpolation and multiscale decay", check_interpolation},
        {7, "cubature exactness and scattered weights", check_cubature},
        {8, "convergence study ladders", check_convergence_study},
        {9, "plus/minus transfer identities", check_tau_round_trip},
        {10, "minimum-norm assembly", check_minnorm},
        {11, "bounded extremal sweep", check_bep},
    };

    int failures = 0;
    for (const Criterion& c : criteria) {
        const auto t0 = std::chrono::steady_clock::now();
        std::string verdict, detail;
        try {
            detail = c.run();
            verdict = "PASS";
        } catch (const std::exception& e) {
            detail = e.what();
            verdict = "FAIL";
            ++failures;
        }
        const double secs =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        std::printf("criterion %2d [%s]: %s (%.1fs) -- %s\n", c.id, c.label,
                    verdict.c_str(), secs, detail.c_str());
        std::fflush(stdout);
    }
    if (failures == 0)
        std::printf("all %zu criteria passed\n", criteria.size());
    else
        std::printf("%d of %zu criteria FAILED\n", failures, criteria.size());
    return failures;
}
