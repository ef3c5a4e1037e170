#include "scars/orbit.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace scars {

namespace {

constexpr double kPi = 3.14159265358979323846;

void check_pq(int p, int q) {
    if (p < 1 || q <= p || std::gcd(p, q) != 1)
        throw std::domain_error("orbit: need coprime integers q > p >= 1");
}

double wrap_2pi(double a) {
    double w = std::fmod(a, 2.0 * kPi);
    if (w < 0.0) w += 2.0 * kPi;
    return w;
}

double point_segment_distance(double px, double py, const std::array<double, 4>& seg) {
    const double dx = seg[2] - seg[0], dy = seg[3] - seg[1];
    const double len2 = dx * dx + dy * dy;
    double t = len2 > 0.0 ? ((px - seg[0]) * dx + (py - seg[1]) * dy) / len2 : 0.0;
    t = std::clamp(t, 0.0, 1.0);
    const double ex = seg[0] + t * dx - px;
    const double ey = seg[1] + t * dy - py;
    return std::sqrt(ex * ex + ey * ey);
}

}  // namespace

std::vector<double> orbit_vertices(int p, int q, double phi0) {
    check_pq(p, q);
    std::vector<double> out;
    out.reserve(q);
    for (int k = 0; k < q; ++k) out.push_back(wrap_2pi(phi0 + 2.0 * kPi * p * k / q));
    return out;
}

OrbitPath classical_orbit(int p, int q, double phi0, double radius) {
    if (!(radius > 0.0)) throw std::domain_error("orbit: radius must be positive");
    OrbitPath path;
    path.p = p;
    path.q = q;
    path.phi0 = phi0;
    path.radius = radius;
    path.vertex_angles = orbit_vertices(p, q, phi0);
    path.chords.reserve(q);
    for (int k = 0; k < q; ++k) {
        const double a = path.vertex_angles[k];
        const double b = path.vertex_angles[(k + 1) % q];  // closes back to vertex 0
        path.chords.push_back({radius * std::cos(a), radius * std::sin(a),
                               radius * std::cos(b), radius * std::sin(b)});
    }
    path.caustic_radius = radius * std::cos(kPi * p / q);
    path.bounces = q;
    path.m_product = p * q;
    return path;
}

double caustic_radius_of(const Shell& shell) {
    return shell.l0 * shell_radius(shell) / shell.rho_bar;
}

double tube_fraction(const DensityGrid& grid, const OrbitPath& path, double half_width) {
    if (!(half_width > 0.0)) throw std::domain_error("tube_fraction: half_width must be positive");
    const int n = grid.n_cells;
    if (n <= 0 || grid.values.size() != static_cast<std::size_t>(n) * n)
        throw std::domain_error("tube_fraction: malformed grid");
    const double h = 2.0 * grid.radius / n;
    if (half_width < h)
        throw std::domain_error("tube_fraction: half_width narrower than one grid cell");
    double total = 0.0, in_tube = 0.0;
    for (int iy = 0; iy < n; ++iy) {
        const double y = -grid.radius + (iy + 0.5) * h;
        for (int ix = 0; ix < n; ++ix) {
            const std::size_t idx = static_cast<std::size_t>(iy) * n + ix;
            if (!grid.mask[idx]) continue;
            const double v = grid.values[idx];
            total += v;
            const double x = -grid.radius + (ix + 0.5) * h;
            for (const auto& seg : path.chords) {
                if (point_segment_distance(x, y, seg) <= half_width) {
                    in_tube += v;
                    break;
                }
            }
        }
    }
    if (!(total > 0.0)) throw std::domain_error("tube_fraction: grid carries no density");
    return in_tube / total;
}

double fit_orbit_phase(const DensityGrid& grid, int p, int q, double half_width) {
    check_pq(p, q);
    // The vertex set repeats with period 2 pi / q in phi0; 36 samples of one
    // period resolve the antinode alignment well below the tube width.
    const int samples = 36;
    const double period = 2.0 * kPi / q;
    double best_phi = 0.0, best_frac = -1.0;
    for (int i = 0; i < samples; ++i) {
        const double phi = period * i / samples;
        const double frac = tube_fraction(grid, classical_orbit(p, q, phi, grid.radius),
                                          half_width);
        if (frac > best_frac) {
            best_frac = frac;
            best_phi = phi;
        }
    }
    return best_phi;
}

}  // namespace scars
