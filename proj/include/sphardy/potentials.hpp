// Spectral layer potentials on the sphere and the Hardy split.
//
// All operators here are Fourier multipliers acting degree-wise on
// SpectralScalarField coefficients:
//   S        : lambda_n = -1/(2n+1)        (single layer)
//   S^{-1}   : lambda_n = -(2n+1)
//   K        : lambda_n =  1/(4n+2)        (double layer)
//   K +- I/2 : lambda_n =  1/(4n+2) +- 1/2
// and the Hardy operators
//   B+ = eta (K - I/2) + grad_S S,   B- = eta (K + I/2) + grad_S S,
// which act on scalars and land exactly on the b+ / b- families:
// B+ Y_{n,k} = b+_{n,k} (n >= 1; constants are annihilated) and
// B- Y_{n,k} = b-_{n,k} (n >= 0).  The inner/outer Hardy subspaces and the
// divergence-free complement give the orthogonal decomposition
// L^2(S, R^3) = H+ (+) H- (+) D realized by the {b+, b-, c} coefficients of
// SpectralVectorField.
#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "sphardy/harmonics.hpp"

namespace sphardy {

/// Diagonal (zonal) operator symbol: one multiplier per degree n = 0..N.
struct OperatorSymbol {
    std::string name;
    std::vector<double> lambda;  // indexed by degree

    int max_degree() const { return static_cast<int>(lambda.size()) - 1; }
};

namespace detail {

inline OperatorSymbol make_symbol(std::string name, int N, double (*fn)(int)) {
    OperatorSymbol op{std::move(name), std::vector<double>(N + 1)};
    for (int n = 0; n <= N; ++n) op.lambda[n] = fn(n);
    return op;
}

}  // namespace detail

inline OperatorSymbol single_layer_symbol(int N) {
    return detail::make_symbol("S", N, [](int n) { return -1.0 / (2 * n + 1); });
}

inline OperatorSymbol single_layer_inverse_symbol(int N) {
    return detail::make_symbol("S_inv", N, [](int n) { return -(2.0 * n + 1); });
}

inline OperatorSymbol double_layer_symbol(int N) {
    return detail::make_symbol("K", N, [](int n) { return 1.0 / (4 * n + 2); });
}

inline OperatorSymbol double_layer_plus_half_symbol(int N) {
    return detail::make_symbol("K_plus_half", N,
                               [](int n) { return 1.0 / (4 * n + 2) + 0.5; });
}

inline OperatorSymbol double_layer_minus_half_symbol(int N) {
    return detail::make_symbol("K_minus_half", N,
                               [](int n) { return 1.0 / (4 * n + 2) - 0.5; });
}

inline OperatorSymbol laplace_beltrami_symbol(int N) {
    return detail::make_symbol("laplace_beltrami", N,
                               [](int n) { return -double(n) * (n + 1); });
}

/// (-Delta_S + 1/4)^s with eigenvalues (n(n+1) + 1/4)^s = (n + 1/2)^{2s};
/// the square root of the Sobolev H^s weight used by sobolev_norm.
inline OperatorSymbol neg_lb_plus_quarter_pow_symbol(int N, double s) {
    OperatorSymbol op{"neg_lb_plus_quarter_pow", std::vector<double>(N + 1)};
    for (int n = 0; n <= N; ++n) op.lambda[n] = std::pow(n + 0.5, 2.0 * s);
    return op;
}

/// Composition of diagonal operators multiplies their symbols.
inline OperatorSymbol compose(const OperatorSymbol& a, const OperatorSymbol& b) {
    if (a.lambda.size() != b.lambda.size())
        throw error("compose: operator symbols have different degree ranges");
    OperatorSymbol op{a.name + "*" + b.name, std::vector<double>(a.lambda.size())};
    for (size_t n = 0; n < a.lambda.size(); ++n) op.lambda[n] = a.lambda[n] * b.lambda[n];
    return op;
}

inline SpectralScalarField apply_symbol(const OperatorSymbol& op,
                                        const SpectralScalarField& f) {
    if (op.max_degree() < f.max_degree)
        throw error("apply_symbol: symbol truncated below field degree");
    SpectralScalarField g(f.max_degree);
    for (int n = 0; n <= f.max_degree; ++n)
        for (int k = -n; k <= n; ++k)
            g.coeffs[sh_index(n, k)] = op.lambda[n] * f.coeffs[sh_index(n, k)];
    return g;
}

/// B+ f = eta (K - I/2) f + grad_S S f.  In the b+ basis this is simply the
/// identity on coefficients of degree n >= 1; constants are annihilated.
inline SpectralVectorField apply_Bplus(const SpectralScalarField& f) {
    SpectralVectorField F(f.max_degree);
    for (int n = 1; n <= f.max_degree; ++n)
        for (int k = -n; k <= n; ++k)
            F.plus[sh_index(n, k)] = f.coeffs[sh_index(n, k)];
    return F;
}

/// B- f = eta (K + I/2) f + grad_S S f; identity onto the b- coefficients
/// (all degrees, since b-_{0,0} = eta Y_{0,0}).
inline SpectralVectorField apply_Bminus(const SpectralScalarField& f) {
    SpectralVectorField F(f.max_degree);
    F.minus = f.coeffs;
    return F;
}

/// Orthogonal projection of grid samples of a vector field onto the
/// {b+, b-, c} families: the L^2(S, R^3) = H+ (+) H- (+) D split.
inline SpectralVectorField hardy_hodge_decompose(const GaussGrid& grid,
                                                 const std::vector<Vec3>& samples, int N) {
    return analyze_vector(grid, samples, N);
}

/// Scalar potential of the outer-Hardy leg: for a field supported in the
/// complement region, f- is read off as the b- coefficient family of the
/// sampled field (the general passive-to-minus map is unbounded and is not
/// implemented; dictionary atoms use their explicit sign-flip law instead).
inline SpectralScalarField tau_ptm_of_localized(const SpectralVectorField& F) {
    SpectralScalarField f(F.max_degree);
    f.coeffs = F.minus;
    return f;
}

}  // namespace sphardy
