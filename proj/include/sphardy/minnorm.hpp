#pragma once

// Minimum-norm vector-field representative of a fitted plus-side scalar.
// The two Hardy legs of the fit are kept, and a piecewise correction from
// the df-complement cancels the field on the vanishing region:
//
//   f~ = B+ g + B- tau(g) + f_df,   f_df = -sum_l c_l grad G  (off the cap)
//                                          -sum_l c_l grad N  (on the cap)
//
// where N is the harmonic cap extension whose boundary flux matches grad G's
// (only green atoms contribute: the eta-Psi terms already vanish off the
// cap by support).  The correction's normal component is continuous across
// the boundary circle, which is what places it in the df-complement and
// yields the Pythagoras split of the total norm.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <random>
#include <vector>

#include "sphardy/dictionary.hpp"
#include "sphardy/neumann.hpp"
#include "sphardy/potentials.hpp"

namespace sphardy {

struct MinNormField {
    SphericalCap cap;  // the region carrying the atoms; the field vanishes off it
    std::vector<DictionaryAtom> atoms;
    std::vector<double> coefficients;
    SpectralVectorField hardy;              // B+ g + B- tau(g), band-limited
    std::vector<std::size_t> green;         // indices of the green atoms
    std::vector<NeumannSolution> harmonic;  // cap extension per green atom
};

inline MinNormField minnorm_assemble(const FitResult& fit, const Dictionary& dict,
                                     const DictionarySpectra& spectra, int boundary_points = 256,
                                     int azimuthal_orders = 32) {
    if (fit.coefficients.size() != dict.size())
        throw error("minnorm_assemble: coefficient/dictionary size mismatch");
    MinNormField f;
    f.cap = dict.sigma_c;
    f.atoms = dict.atoms;
    f.coefficients = fit.coefficients;

    const SpectralScalarField plus = fitted_field(fit, dict, spectra);
    const SpectralScalarField minus = map_to_minus(fit, dict, spectra);
    f.hardy = SpectralVectorField(spectra.max_degree);
    f.hardy.plus = apply_Bplus(plus).plus;
    f.hardy.minus = apply_Bminus(minus).minus;

    for (std::size_t i = 0; i < f.atoms.size(); ++i)
        if (f.atoms[i].kind == DictionaryAtom::Kind::green) {
            f.green.push_back(i);
            f.harmonic.push_back(neumann_cap_solve(f.cap, f.atoms[i].x, f.atoms[i].xbar,
                                                   f.atoms[i].scale, boundary_points,
                                                   azimuthal_orders));
        }
    return f;
}

/// The df-correction branch at y.
inline Vec3 minnorm_df(const MinNormField& f, const Vec3& y) {
    Vec3 acc = Vec3::Zero();
    if (f.cap.contains(y)) {
        for (std::size_t j = 0; j < f.green.size(); ++j)
            acc -= f.coefficients[f.green[j]] * neumann_gradient(f.harmonic[j], y);
    } else {
        for (std::size_t j = 0; j < f.green.size(); ++j) {
            const DictionaryAtom& atom = f.atoms[f.green[j]];
            acc -= f.coefficients[f.green[j]] *
                   (reg_green_gradient(atom.scale, atom.x, y) -
                    reg_green_gradient(atom.scale, atom.xbar, y));
        }
    }
    return acc;
}

/// Closed-form Hardy legs via the two-projector identity
/// B+ g + B- tau(g) = sum_l c_l grad G - sum_ik c_ik eta Psi; equals the
/// band-limited legs up to truncation and costs O(1) per atom.
inline Vec3 minnorm_hardy_closed(const MinNormField& f, const Vec3& y) {
    Vec3 acc = Vec3::Zero();
    for (std::size_t i = 0; i < f.atoms.size(); ++i) {
        const double sign =
            f.atoms[i].kind == DictionaryAtom::Kind::green ? 1.0 : -1.0;
        acc += sign * f.coefficients[i] * vector_atom_field(f.atoms[i], y);
    }
    return acc;
}

/// The assembled field: band-limited Hardy legs plus the df correction.
inline Vec3 minnorm_eval(const MinNormField& f, const Vec3& y) {
    return synthesize_vector(f.hardy, y) + minnorm_df(f, y);
}

struct MinNormDiagnostics {
    double sup_vanishing = 0.0;  // sup |f~| over probes off the cap (should be ~0)
    double hardy_l2 = 0.0;       // from the band-limited coefficients
    double df_l2 = 0.0;          // cubature of the correction
    double total_l2 = 0.0;       // cubature of hardy-closed + correction
    double pythagoras_gap = 0.0;  // |total^2 - hardy^2 - df^2| / total^2
    double max_flux_residual = 0.0;  // normal-derivative mismatch on the circle
};

inline MinNormDiagnostics minnorm_diagnostics(const MinNormField& f, int sup_probes = 300,
                                              int quad_degree = 240,
                                              std::uint64_t seed = 20260814ULL) {
    MinNormDiagnostics d;

    std::mt19937_64 gen(seed);
    std::normal_distribution<double> nrm(0.0, 1.0);
    int done = 0;
    while (done < sup_probes) {
        Vec3 y(nrm(gen), nrm(gen), nrm(gen));
        const double len = y.norm();
        if (len < 1e-8) continue;
        y /= len;
        if (f.cap.contains(y)) continue;
        d.sup_vanishing = std::max(d.sup_vanishing, minnorm_eval(f, y).norm());
        ++done;
    }

    d.hardy_l2 = vector_l2_norm(f.hardy);
    const GaussGrid grid = GaussGrid::for_degree(quad_degree, 1);
    double df2 = 0.0, tot2 = 0.0;
    for (int j = 0; j < grid.n_lat; ++j) {
        const double w = grid.node_weight(j);
        for (int m = 0; m < grid.n_lon; ++m) {
            const Vec3 p = grid.node(j, m);
            const Vec3 df = minnorm_df(f, p);
            df2 += w * df.squaredNorm();
            tot2 += w * (minnorm_hardy_closed(f, p) + df).squaredNorm();
        }
    }
    d.df_l2 = std::sqrt(df2);
    d.total_l2 = std::sqrt(tot2);
    const double h2 = d.hardy_l2 * d.hardy_l2;
    d.pythagoras_gap = std::abs(tot2 - h2 - df2) / std::max(tot2, 1e-300);

    const double ct = 1.0 - f.cap.rho;
    const double st = std::sqrt(std::max(0.0, 1.0 - ct * ct));
    Vec3 u, v;
    tangent_frame(f.cap.center, u, v);
    for (int i = 0; i < 512; ++i) {
        const double phi = 2.0 * pi * i / 512;
        const Vec3 w = std::cos(phi) * u + std::sin(phi) * v;
        const Vec3 p = ct * f.cap.center + st * w;
        const Vec3 e_theta = ct * w - st * f.cap.center;
        double inner = 0.0, outer = 0.0;
        for (std::size_t j = 0; j < f.green.size(); ++j) {
            const DictionaryAtom& atom = f.atoms[f.green[j]];
            const double c = f.coefficients[f.green[j]];
            inner += c * e_theta.dot(neumann_gradient(f.harmonic[j], p));
            outer += c * e_theta.dot(reg_green_gradient(atom.scale, atom.x, p) -
                                     reg_green_gradient(atom.scale, atom.xbar, p));
        }
        d.max_flux_residual = std::max(d.max_flux_residual, std::abs(inner - outer));
    }
    return d;
}

}  // namespace sphardy
