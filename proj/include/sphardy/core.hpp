// Core definitions shared across the library: 3-vector type, constants,
// error type, and the flat index map for real spherical-harmonic tables.
//
// Conventions used throughout:
//  * Points on the unit sphere are Eigen::Vector3d with |p| = 1.
//  * All sphere distances are Euclidean (chordal), |x - y| in R^3.
//  * Spherical-harmonic tables are stored flat with index n^2 + n + k for
//    degree n >= 0 and order k in [-n, n] ((N+1)^2 entries up to degree N).
#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace sphardy {

using Vec3 = Eigen::Vector3d;

inline constexpr double pi = 3.14159265358979323846264338327950288;
inline constexpr double four_pi = 4.0 * pi;

/// Error type for precondition violations and numerical failures.
class error : public std::runtime_error {
public:
    explicit error(const std::string& what) : std::runtime_error(what) {}
};

/// Flat index of the (n, k) spherical-harmonic entry, n >= 0, |k| <= n.
inline std::size_t sh_index(int n, int k) {
    return static_cast<std::size_t>(n) * n + n + k;
}

/// Number of coefficients in a table truncated at max_degree N.
inline std::size_t sh_count(int max_degree) {
    return static_cast<std::size_t>(max_degree + 1) * (max_degree + 1);
}

/// Normalize a vector to the unit sphere; rejects near-zero input.
inline Vec3 normalized_point(const Vec3& v) {
    const double n = v.norm();
    if (!(n > 1e-300)) throw error("cannot normalize zero vector");
    return v / n;
}

/// Colatitude/longitude of a unit vector; phi in [0, 2*pi).
inline void to_angles(const Vec3& p, double& theta, double& phi) {
    theta = std::acos(std::clamp(p.z(), -1.0, 1.0));
    phi = std::atan2(p.y(), p.x());
    if (phi < 0.0) phi += 2.0 * pi;
}

inline Vec3 from_angles(double theta, double phi) {
    const double st = std::sin(theta);
    return {st * std::cos(phi), st * std::sin(phi), std::cos(theta)};
}

/// Local orthonormal tangent frame (theta-hat, phi-hat) at p; at the
/// coordinate poles an arbitrary fixed frame is returned (callers that need
/// pole-aware values handle those separately).
inline void tangent_frame(const Vec3& p, Vec3& e_theta, Vec3& e_phi) {
    const double st = std::hypot(p.x(), p.y());
    if (st < 1e-14) {
        e_theta = Vec3(1, 0, 0) * (p.z() >= 0 ? 1.0 : -1.0);
        e_phi = Vec3(0, 1, 0);
        return;
    }
    const double ct = p.z();
    const double cp = p.x() / st, sp = p.y() / st;
    e_theta = Vec3(ct * cp, ct * sp, -st);
    e_phi = Vec3(-sp, cp, 0.0);
}

}  // namespace sphardy
