// Command-line harness: point generation, the convergence study, field
// decomposition, min-norm assembly, and bounded extremal fits.  All outputs
// land in --out as CSV/JSON; every command also writes a manifest.json.
// Exit codes: 0 success, 2 configuration problem, 3 numerical failure.

#include <chrono>
#include <cstdio>
#include <exception>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "sphardy/io.hpp"
#include "sphardy/minnorm.hpp"

namespace {

using namespace sphardy;

double seconds_since(const std::chrono::steady_clock::time_point& t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string out_path(const ExperimentConfig& cfg, const std::string& name) {
    return (std::filesystem::path(cfg.out_dir) / name).string();
}

void write_manifest(const std::string& command, const ExperimentConfig& cfg,
                    const std::vector<ConvergenceLevel>& levels, double total_seconds) {
    write_text_file(out_path(cfg, "manifest.json"),
                    manifest_json(command, cfg, levels, total_seconds).dump(2) + "\n");
}

int cmd_gen_points(const ExperimentConfig& cfg) {
    const auto t0 = std::chrono::steady_clock::now();
    validate_config(cfg);
    const HierarchicalPointSets hierarchy =
        build_hierarchy(count_for_mesh_width(cfg.anchor_h), cfg.n_max, cfg.gamma);
    for (int i = 1; i <= cfg.n_max; ++i) {
        std::string csv = "x,y,z\n";
        for (const Vec3& p : hierarchy.levels[i - 1].points)
            csv += format_double(p.x()) + "," + format_double(p.y()) + "," +
                   format_double(p.z()) + "\n";
        write_text_file(out_path(cfg, "points_level" + std::to_string(i) + ".csv"), csv);
        std::printf("level %d: %zu points, mesh width %.6f, separation %.6f\n", i,
                    hierarchy.levels[i - 1].points.size(), hierarchy.mesh_widths[i - 1],
                    hierarchy.separations[i - 1]);
    }
    write_manifest("gen-points", cfg, {}, seconds_since(t0));
    return 0;
}

int cmd_convergence(const ExperimentConfig& cfg) {
    const auto t0 = std::chrono::steady_clock::now();
    const ConvergenceTargets targets = convergence_setup(cfg);
    std::printf("sigma %s: baseline relative error %.6g\n", cfg.sigma.c_str(),
                targets.baseline);

    std::vector<ConvergenceLevel> rows;
    const std::string csv_path = out_path(cfg, "convergence.csv");
    for (int n = 1; n <= cfg.n_max; ++n) {
        rows.push_back(convergence_level(cfg, targets, n));
        const ConvergenceLevel& r = rows.back();
        std::printf("n=%d  atoms=%zu  h=%.4f  lambda=%.3g  rel_error=%.6g  envelope=%.3g\n",
                    r.n, r.num_atoms, r.h_n, r.lambda, r.rel_error, r.envelope);
        // flush what we have so far, so an interrupted ladder still leaves data
        std::string csv = std::string(convergence_csv_header) + "\n";
        for (const ConvergenceLevel& row : rows)
            csv += convergence_csv_row(cfg.sigma, row) + "\n";
        write_text_file(csv_path, csv);
    }
    write_text_file(out_path(cfg, "summary.json"),
                    convergence_summary_json(cfg, targets, rows).dump(2) + "\n");
    write_manifest("convergence", cfg, rows, seconds_since(t0));
    return 0;
}

int cmd_decompose(const ExperimentConfig& cfg, const std::string& field_file) {
    const auto t0 = std::chrono::steady_clock::now();
    validate_config(cfg);
    const int N = cfg.degree;

    SpectralVectorField F(N);
    if (field_file.empty()) {
        F = test_field_spectral(TestField{}, N);
    } else {
        // one fx,fy,fz row per node of the degree-N analysis grid (twofold
        // oversampled Gauss x equispaced, latitude-major)
        const GaussGrid grid = GaussGrid::for_degree(N, 2);
        std::vector<Vec3> samples;
        for (const std::string& line : detail::split(read_text_file(field_file), '\n')) {
            if (line.empty() || line[0] == '#' || line.rfind("fx", 0) == 0) continue;
            const std::vector<std::string> p = detail::split(line, ',');
            if (p.size() != 3)
                throw config_error("config: field file rows need fx,fy,fz");
            samples.emplace_back(detail::parse_double("fx", p[0]),
                                 detail::parse_double("fy", p[1]),
                                 detail::parse_double("fz", p[2]));
        }
        if (samples.size() != grid.size())
            throw config_error("config: field file has " + std::to_string(samples.size()) +
                               " rows; the degree-" + std::to_string(N) + " grid needs " +
                               std::to_string(grid.size()));
        F = hardy_hodge_decompose(grid, samples, N);
    }

    double e_plus = 0.0, e_minus = 0.0, e_df = 0.0;
    for (int n = 0; n <= N; ++n)
        for (int k = -n; k <= n; ++k) {
            const std::size_t i = sh_index(n, k);
            e_plus += F.plus[i] * F.plus[i] * n / (2.0 * n + 1.0);
            e_minus += F.minus[i] * F.minus[i] * (n + 1.0) / (2.0 * n + 1.0);
            e_df += F.df[i] * F.df[i];
        }
    nlohmann::json doc{{"degree", N},
                       {"energy",
                        {{"plus", e_plus},
                         {"minus", e_minus},
                         {"df", e_df},
                         {"total", e_plus + e_minus + e_df}}},
                       {"coefficients",
                        {{"plus", F.plus}, {"minus", F.minus}, {"df", F.df}}}};
    write_text_file(out_path(cfg, "decompose.json"), doc.dump() + "\n");

    // plot-ready magnitude field on a lat/lon raster (builtin field only:
    // it has an exact pointwise form)
    if (field_file.empty()) {
        const TestField field;
        std::string csv = "theta,phi,magnitude\n";
        for (int i = 0; i <= 90; ++i) {
            const double theta = pi * i / 90;
            for (int j = 0; j < 180; ++j) {
                const double phi = 2.0 * pi * j / 180;
                const Vec3 x(std::sin(theta) * std::cos(phi), std::sin(theta) * std::sin(phi),
                             std::cos(theta));
                csv += format_double(theta) + "," + format_double(phi) + "," +
                       format_double(test_field_eval(field, x).norm()) + "\n";
            }
        }
        write_text_file(out_path(cfg, "field_magnitude.csv"), csv);
    }

    std::printf("energy split: plus %.6g, minus %.6g, df %.6g\n", e_plus, e_minus, e_df);
    write_manifest("decompose", cfg, {}, seconds_since(t0));
    return 0;
}

int cmd_minnorm(const ExperimentConfig& cfg) {
    const auto t0 = std::chrono::steady_clock::now();
    const ConvergenceTargets targets = convergence_setup(cfg);
    const SphericalCap region = experiment_region(cfg);
    const int n = cfg.n_max;

    const Dictionary dict =
        build_dictionary(region, n, targets.hierarchy, region.center, cfg.nu, cfg.cbar);
    const DictionarySpectra spectra = dictionary_spectra(dict, cfg.degree);
    const FitWorkspace ws = make_fit_workspace(targets.plus, dict, spectra, cfg.s);
    const FitResult fit = fit_best_lambda(ws, cfg.lambdas, targets.denominator);

    const MinNormField f = minnorm_assemble(fit, dict, spectra);
    const MinNormDiagnostics d = minnorm_diagnostics(f, 300, 240, cfg.seed);

    nlohmann::json doc{{"sigma", cfg.sigma},
                       {"level", n},
                       {"num_atoms", dict.size()},
                       {"lambda", fit.lambda},
                       {"rel_error", fit.relative_error},
                       {"diagnostics",
                        {{"sup_vanishing", d.sup_vanishing},
                         {"hardy_l2", d.hardy_l2},
                         {"df_l2", d.df_l2},
                         {"total_l2", d.total_l2},
                         {"pythagoras_gap", d.pythagoras_gap},
                         {"max_flux_residual", d.max_flux_residual}}}};
    write_text_file(out_path(cfg, "minnorm.json"), doc.dump(2) + "\n");
    std::printf(
        "minnorm: %zu atoms, sup off the region %.3g (total L2 %.3g), "
        "orthogonality gap %.3g\n",
        dict.size(), d.sup_vanishing, d.total_l2, d.pythagoras_gap);
    write_manifest("minnorm", cfg, {}, seconds_since(t0));
    return 0;
}

int cmd_bep(const ExperimentConfig& cfg) {
    const auto t0 = std::chrono::steady_clock::now();
    const ConvergenceTargets targets = convergence_setup(cfg);
    const SphericalCap region = experiment_region(cfg);
    const int n = cfg.n_max;

    const Dictionary dict =
        build_dictionary(region, n, targets.hierarchy, region.center, cfg.nu, cfg.cbar);
    const DictionarySpectra spectra = dictionary_spectra(dict, cfg.degree);
    const FitWorkspace ws = make_fit_workspace(targets.plus, dict, spectra, cfg.s);

    std::string csv = "c,mu,data_error,tau_norm\n";
    if (dict.size() == 0) {
        std::printf("bep: empty dictionary, nothing to sweep\n");
    } else {
        const Eigen::MatrixXd tau_gram = minus_gram(dict, spectra);
        const FitResult free_fit = fit_with_lambda(ws, 0.0, targets.denominator);
        Eigen::Map<const Eigen::VectorXd> c0(free_fit.coefficients.data(),
                                             free_fit.coefficients.size());
        const double tau_free = std::sqrt(std::max(0.0, double(c0.dot(tau_gram * c0))));

        // sweep the bound across the active-to-inactive transition
        for (int i = 1; i <= 10; ++i) {
            const double c_bound = tau_free * (0.1 + 0.11 * (i - 1));
            const FitResult fit = bep_solve(ws, tau_gram, c_bound, targets.denominator);
            Eigen::Map<const Eigen::VectorXd> c(fit.coefficients.data(),
                                                fit.coefficients.size());
            const double tau_norm = std::sqrt(std::max(0.0, double(c.dot(tau_gram * c))));
            csv += format_double(c_bound) + "," + format_double(fit.lambda) + "," +
                   format_double(fit.l2_error) + "," + format_double(tau_norm) + "\n";
            std::printf("c=%-12.6g mu=%-12.6g data_error=%.6g\n", c_bound, fit.lambda,
                        fit.l2_error);
        }
    }
    write_text_file(out_path(cfg, "bep.csv"), csv);
    write_manifest("bep", cfg, {}, seconds_since(t0));
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "Locally supported vector fields on the sphere: lattice generation, "
        "Hardy-Hodge decomposition, multiscale dictionary fits, min-norm "
        "assembly, and bounded extremal sweeps"};
    app.require_subcommand(1);

    std::string config_path, sigma, out_dir, field_file;
    int nmax = 0, degree = 0;
    bool allow_large = false;
    app.add_option("--config", config_path, "flat key = value configuration file");
    app.add_option("--sigma", sigma, "region label: S1, S2, S3, or custom")
        ->check(CLI::IsMember({"S1", "S2", "S3", "custom"}));
    app.add_option("--nmax", nmax, "number of levels (capped at 4 unless --allow-large)");
    app.add_option("--degree", degree, "spherical-harmonic truncation degree")
        ->check(CLI::IsMember({100, 200}));
    app.add_option("--out", out_dir, "output directory");
    app.add_flag("--allow-large", allow_large, "permit more than 4 levels");

    CLI::App* gen = app.add_subcommand(
        "gen-points", "write the nested lattice levels as x,y,z CSV files");
    CLI::App* conv = app.add_subcommand(
        "convergence", "fit the benchmark field level by level; write CSV and summary");
    CLI::App* dec = app.add_subcommand(
        "decompose", "split a field into inner/outer Hardy and divergence-free parts");
    dec->add_option("field_file", field_file,
                    "optional fx,fy,fz samples on the analysis grid (builtin field "
                    "when omitted)");
    CLI::App* mn = app.add_subcommand(
        "minnorm", "assemble the vanishing-region representative at level nmax");
    CLI::App* bep = app.add_subcommand("bep", "sweep the bounded extremal problem at level nmax");
    for (CLI::App* sub : {gen, conv, dec, mn, bep}) sub->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        sphardy::ExperimentConfig cfg;
        if (!config_path.empty())
            cfg = sphardy::config_from_map(
                sphardy::parse_config_text(sphardy::read_text_file(config_path)));
        if (app.count("--sigma")) cfg.sigma = sigma;
        if (app.count("--nmax")) cfg.n_max = nmax;
        if (app.count("--degree")) cfg.degree = degree;
        if (app.count("--out")) cfg.out_dir = out_dir;
        if (app.count("--allow-large")) cfg.allow_large = true;

        if (gen->parsed()) return cmd_gen_points(cfg);
        if (conv->parsed()) return cmd_convergence(cfg);
        if (dec->parsed()) return cmd_decompose(cfg, field_file);
        if (mn->parsed()) return cmd_minnorm(cfg);
        return cmd_bep(cfg);
    } catch (const sphardy::config_error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 3;
    }
}
