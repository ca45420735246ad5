// Sphere geometry: caps, balls, quasi-uniform point sets (Fibonacci spiral
// lattice), mesh width / separation, inclusion filters, and the
// stereographic projection.
//
// A spherical cap with center c and polar radius rho in (0,2) is
//   C_rho(c) = { y : c.y > 1 - rho },  angular radius  acos(1 - rho).
// The Euclidean ball B_r(c) intersected with the sphere equals the cap with
// rho = r^2/2 (chord r corresponds to 1 - cos(theta) = r^2/2).  All
// distances below are Euclidean (chordal).
#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <vector>

#include "sphardy/core.hpp"

namespace sphardy {

struct SphericalCap {
    Vec3 center{0, 0, 1};
    double rho = 1.0;  // polar radius, in (0, 2)

    bool contains(const Vec3& y) const { return center.dot(y) > 1.0 - rho; }
    double angular_radius() const { return std::acos(std::clamp(1.0 - rho, -1.0, 1.0)); }
};

struct EuclideanSphereBall {
    Vec3 center{0, 0, 1};
    double radius = 1.0;  // chordal, in (0, 2)

    bool contains(const Vec3& y) const { return (center - y).norm() < radius; }
    SphericalCap equivalent_cap() const { return {center, 0.5 * radius * radius}; }
};

/// Region of integration/filtering: the whole sphere, a cap, or a cap
/// complement.  Caps and their complements are the only supported domains.
struct Domain {
    enum class Kind { full_sphere, cap, cap_complement };
    Kind kind = Kind::full_sphere;
    SphericalCap cap{};

    static Domain full() { return {}; }
    static Domain of_cap(const SphericalCap& c) { return {Kind::cap, c}; }
    static Domain complement_of(const SphericalCap& c) { return {Kind::cap_complement, c}; }

    bool contains(const Vec3& y) const {
        switch (kind) {
            case Kind::full_sphere: return true;
            case Kind::cap: return cap.contains(y);
            case Kind::cap_complement: return !cap.contains(y);
        }
        return true;
    }
};

struct PointSet {
    std::vector<Vec3> points;

    std::size_t size() const { return points.size(); }
};

/// Deterministic quasi-uniform nodes: Fibonacci spiral lattice.  Latitudes
/// are z_i = 1 - 2(i + 1/2)/N and longitudes advance by the golden angle
/// pi(3 - sqrt(5)).
inline PointSet generate_points(std::size_t count) {
    if (count < 1) throw error("generate_points: count must be >= 1");
    constexpr double golden_angle = pi * (3.0 - 2.23606797749978969640917366873);  // pi(3 - sqrt 5)
    PointSet set;
    set.points.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        const double z = 1.0 - 2.0 * (static_cast<double>(i) + 0.5) / static_cast<double>(count);
        const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
        const double phi = golden_angle * static_cast<double>(i);
        set.points.emplace_back(r * std::cos(phi), r * std::sin(phi), z);
    }
    return set;
}

/// Uniform 3D cell grid over [-1,1]^3 for nearest-neighbor queries among
/// unit vectors (chordal metric == Euclidean metric in R^3).
class GridNN {
public:
    explicit GridNN(const std::vector<Vec3>& pts) : pts_(pts) {
        const double n = static_cast<double>(std::max<std::size_t>(pts.size(), 1));
        cell_ = std::clamp(7.0 / std::sqrt(n), 0.01, 0.7);
        dim_ = std::max(1, static_cast<int>(std::ceil(2.0 / cell_)));
        cell_ = 2.0 / dim_;  // exact tiling of [-1,1]
        buckets_.assign(static_cast<std::size_t>(dim_) * dim_ * dim_, {});
        for (std::size_t i = 0; i < pts.size(); ++i) buckets_[bucket_of(pts[i])].push_back(static_cast<std::uint32_t>(i));
    }

    /// Index and distance of the nearest stored point to q, optionally
    /// skipping one index (for separation queries).
    std::pair<std::size_t, double> nearest(const Vec3& q, std::ptrdiff_t skip = -1) const {
        const int cx = coord(q.x()), cy = coord(q.y()), cz = coord(q.z());
        double best = std::numeric_limits<double>::infinity();
        std::size_t best_i = static_cast<std::size_t>(-1);
        for (int radius = 0; radius < dim_; ++radius) {
            // All unexplored cells have some coordinate offset >= radius,
            // hence any point there is at distance >= (radius - 1) * cell.
            if (best_i != static_cast<std::size_t>(-1) && best <= (radius - 1) * cell_) break;
            bool any_cell = false;
            for (int dx = -radius; dx <= radius; ++dx)
                for (int dy = -radius; dy <= radius; ++dy)
                    for (int dz = -radius; dz <= radius; ++dz) {
                        if (std::max({std::abs(dx), std::abs(dy), std::abs(dz)}) != radius) continue;
                        const int x = cx + dx, y = cy + dy, z = cz + dz;
                        if (x < 0 || y < 0 || z < 0 || x >= dim_ || y >= dim_ || z >= dim_) continue;
                        any_cell = true;
                        for (std::uint32_t i : buckets_[idx(x, y, z)]) {
                            if (static_cast<std::ptrdiff_t>(i) == skip) continue;
                            const double d = (pts_[i] - q).norm();
                            if (d < best) { best = d; best_i = i; }
                        }
                    }
            if (!any_cell && best_i != static_cast<std::size_t>(-1)) break;
        }
        return {best_i, best};
    }

private:
    int coord(double v) const { return std::clamp(static_cast<int>((v + 1.0) / cell_), 0, dim_ - 1); }
    std::size_t idx(int x, int y, int z) const {
        return (static_cast<std::size_t>(x) * dim_ + y) * dim_ + z;
    }
    std::size_t bucket_of(const Vec3& p) const { return idx(coord(p.x()), coord(p.y()), coord(p.z())); }

    const std::vector<Vec3>& pts_;
    double cell_ = 0.1;
    int dim_ = 20;
    std::vector<std::vector<std::uint32_t>> buckets_;
};

/// Half the minimal pairwise chordal distance.  Errors on |X| < 2.
inline double separation(const PointSet& X) {
    if (X.size() < 2) throw error("separation: need at least two points");
    const GridNN nn(X.points);
    double min_d = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < X.size(); ++i) {
        const auto [j, d] = nn.nearest(X.points[i], static_cast<std::ptrdiff_t>(i));
        (void)j;
        min_d = std::min(min_d, d);
    }
    return 0.5 * min_d;
}

struct PointSetSummary {
    double h = 0.0;  // fill distance over the full sphere
    double q = 0.0;  // half minimal pairwise distance; +inf for a singleton
};

inline double mesh_width(const PointSet& X, const Domain& domain, std::size_t probes);

/// Cached-style (h, q) digest of a node set; a single point gets q = +inf.
inline PointSetSummary summarize(const PointSet& X) {
    PointSetSummary s;
    s.h = mesh_width(X, Domain::full(), 0);
    s.q = (X.size() < 2) ? std::numeric_limits<double>::infinity() : separation(X);
    return s;
}

namespace detail {

/// Local maximization of the distance-to-nearest-node function around a
/// seed probe: shrinking pattern search over tangent-plane offsets,
/// restricted to the domain.  Deterministic.
inline double refine_fill_distance(const GridNN& nn, const Domain& domain, Vec3 seed,
                                   double best, double step) {
    for (int iter = 0; iter < 40 && step > 1e-10; ++iter) {
        Vec3 e1, e2;
        tangent_frame(seed, e1, e2);
        bool improved = false;
        for (int k = 0; k < 8; ++k) {
            const double a = 2.0 * pi * k / 8.0;
            const Vec3 cand = (seed + step * (std::cos(a) * e1 + std::sin(a) * e2)).normalized();
            if (!domain.contains(cand)) continue;
            const double d = nn.nearest(cand).second;
            if (d > best) { best = d; seed = cand; improved = true; }
        }
        if (!improved) step *= 0.5;
    }
    return best;
}

}  // namespace detail

/// Fill distance sup_{y in domain} min_{x in X ∩ domain} |y - x|, estimated
/// on a dense deterministic probe grid (Fibonacci lattice of `probes`
/// points restricted to the domain, plus samples along the domain boundary)
/// and sharpened by local pattern search.
inline double mesh_width(const PointSet& X, const Domain& domain = Domain::full(),
                         std::size_t probes = 0) {
    std::vector<Vec3> nodes;
    for (const Vec3& p : X.points)
        if (domain.contains(p)) nodes.push_back(p);
    if (nodes.empty()) throw error("mesh_width: empty intersection of node set with domain");
    if (nodes.size() == 1 && domain.kind == Domain::Kind::full_sphere) return 2.0;

    if (probes == 0) probes = std::max<std::size_t>(40 * X.size(), 20000);
    if (probes < 1000) throw error("mesh_width: need at least 1000 probes");

    const GridNN nn(nodes);
    double best = 0.0;
    Vec3 best_probe = nodes.front();
    const PointSet probe_grid = generate_points(probes);
    for (const Vec3& y : probe_grid.points) {
        if (!domain.contains(y)) continue;
        const double d = nn.nearest(y).second;
        if (d > best) { best = d; best_probe = y; }
    }
    if (domain.kind != Domain::Kind::full_sphere) {
        // The sup is often attained against the domain boundary circle.
        Vec3 u, v;
        tangent_frame(domain.cap.center, u, v);
        const double theta = domain.cap.angular_radius();
        const std::size_t ring = std::max<std::size_t>(512, probes / 64);
        for (std::size_t m = 0; m < ring; ++m) {
            const double a = 2.0 * pi * m / ring;
            const Vec3 y = std::cos(theta) * domain.cap.center +
                           std::sin(theta) * (std::cos(a) * u + std::sin(a) * v);
            const double d = nn.nearest(y).second;
            if (d > best) { best = d; best_probe = y; }
        }
    }
    const double probe_spacing = 3.6 / std::sqrt(static_cast<double>(probes));
    return detail::refine_fill_distance(nn, domain, best_probe, best, probe_spacing);
}

/// Keep x in X iff the cap C_rho(x) lies inside the cap sigma_c:
/// angle(x, center) + angular_radius(rho) <= angular_radius(sigma_c).
inline PointSet filter_cap_interior(const PointSet& X, const SphericalCap& sigma_c, double rho) {
    if (!(rho > 0.0 && rho < 2.0)) throw error("filter_cap_interior: rho must be in (0,2)");
    const double theta_r = sigma_c.angular_radius();
    const double theta_rho = std::acos(std::clamp(1.0 - rho, -1.0, 1.0));
    PointSet kept;
    for (const Vec3& x : X.points) {
        const double ang = std::acos(std::clamp(sigma_c.center.dot(x), -1.0, 1.0));
        if (ang + theta_rho <= theta_r) kept.points.push_back(x);
    }
    return kept;
}

/// Keep x in X iff the Euclidean ball B_delta(x) ∩ sphere lies inside
/// sigma_c; equivalent to the cap test with rho = delta^2/2.
inline PointSet filter_ball_interior(const PointSet& X, const SphericalCap& sigma_c, double delta) {
    if (!(delta > 0.0 && delta < 2.0)) throw error("filter_ball_interior: delta must be in (0,2)");
    return filter_cap_interior(X, sigma_c, 0.5 * delta * delta);
}

/// Stereographic projection from `pole`: p is rotated so the pole sits at
/// e3, then mapped to (x/(1-z), y/(1-z)).  The antipode of the pole maps to
/// the origin and the equator (w.r.t. the pole) to the unit circle.
inline std::array<double, 2> stereographic(const Vec3& p, const Vec3& pole) {
    if ((p - pole).norm() < 1e-9) throw error("stereographic: projection undefined at pole");
    // Rotation taking pole -> e3 (Rodrigues; identity/flip handled apart).
    Vec3 q;
    const double c = pole.z();
    if (c > 1.0 - 1e-15) {
        q = p;
    } else if (c < -1.0 + 1e-15) {
        q = {p.x(), -p.y(), -p.z()};
    } else {
        const Vec3 axis = Vec3(pole.y(), -pole.x(), 0.0).normalized();  // pole x e3
        const double s = std::sqrt(1.0 - c * c);
        q = p * c + axis.cross(p) * s + axis * (axis.dot(p)) * (1.0 - c);
    }
    const double denom = 1.0 - q.z();
    return {q.x() / denom, q.y() / denom};
}

inline Vec3 inverse_stereographic(const std::array<double, 2>& uv, const Vec3& pole) {
    const double r2 = uv[0] * uv[0] + uv[1] * uv[1];
    const Vec3 q(2.0 * uv[0] / (1.0 + r2), 2.0 * uv[1] / (1.0 + r2), (r2 - 1.0) / (1.0 + r2));
    const double c = pole.z();
    if (c > 1.0 - 1e-15) return q;
    if (c < -1.0 + 1e-15) return {q.x(), -q.y(), -q.z()};
    const Vec3 axis = Vec3(pole.y(), -pole.x(), 0.0).normalized();
    const double s = -std::sqrt(1.0 - c * c);  // inverse rotation
    return q * c + axis.cross(q) * s + axis * (axis.dot(q)) * (1.0 - c);
}

/// Nested quasi-uniform levels with mesh widths verified to satisfy
/// c1 * gamma * h_n <= h_{n+1} <= gamma * h_n and h <= c2 * q.
struct HierarchicalPointSets {
    std::vector<PointSet> levels;
    std::vector<double> mesh_widths;
    std::vector<double> separations;
    double gamma = 0.5;
    double c1 = 0.4;
    double c2 = 4.0;
};

/// Build `level_count` levels starting from `count1` nodes.  Level n starts
/// at ceil(count1 / gamma^{2n-2}) nodes and the count is increased in 3%
/// steps until the mesh-width ratio drops to gamma (the lattice's h only
/// tracks 1/sqrt(count) approximately).  Construction fails if the ratio or
/// quasi-uniformity invariants cannot be met.
inline HierarchicalPointSets build_hierarchy(std::size_t count1, int level_count,
                                             double gamma = 0.5, double c1 = 0.4,
                                             double c2 = 4.0) {
    if (level_count < 1) throw error("build_hierarchy: need at least one level");
    if (!(gamma > 0.0 && gamma < 1.0)) throw error("build_hierarchy: gamma must be in (0,1)");
    HierarchicalPointSets h;
    h.gamma = gamma;
    h.c1 = c1;
    h.c2 = c2;
    double scale = 1.0;  // gamma^{2(n-1)}
    for (int n = 1; n <= level_count; ++n) {
        std::size_t count = static_cast<std::size_t>(std::ceil(count1 / scale));
        PointSet set = generate_points(count);
        double width = mesh_width(set);
        if (n > 1) {
            const double upper = gamma * h.mesh_widths.back();
            while (width > upper) {
                count = static_cast<std::size_t>(std::ceil(count * 1.03)) + 1;
                set = generate_points(count);
                width = mesh_width(set);
            }
            if (width < c1 * upper)
                throw error("build_hierarchy: mesh-width ratio fell below c1*gamma");
        }
        const double q = separation(set);
        if (!(q <= width && width <= c2 * q))
            throw error("build_hierarchy: quasi-uniformity h <= c2*q violated");
        h.levels.push_back(std::move(set));
        h.mesh_widths.push_back(width);
        h.separations.push_back(q);
        scale *= gamma * gamma;
    }
    return h;
}

}  // namespace sphardy
