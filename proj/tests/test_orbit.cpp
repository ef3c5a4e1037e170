#include <algorithm>
#include <array>
#include <cmath>
#include <random>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "scars/grid.hpp"
#include "scars/orbit.hpp"
#include "scars/scar.hpp"
#include "scars/spectrum.hpp"

using scars::DensityGrid;
using scars::OrbitPath;

namespace {
constexpr double kPi = 3.14159265358979323846;

// independent point-to-segment distance for the Monte Carlo oracle
double seg_dist(double px, double py, const std::array<double, 4>& s) {
    const double dx = s[2] - s[0], dy = s[3] - s[1];
    double t = (dx * dx + dy * dy) > 0.0
                   ? ((px - s[0]) * dx + (py - s[1]) * dy) / (dx * dx + dy * dy)
                   : 0.0;
    t = std::clamp(t, 0.0, 1.0);
    const double ex = s[0] + t * dx - px, ey = s[1] + t * dy - py;
    return std::hypot(ex, ey);
}

DensityGrid uniform_disk_grid(int n, double radius) {
    DensityGrid g;
    g.n_cells = n;
    g.radius = radius;
    g.values.assign(static_cast<std::size_t>(n) * n, 0.0);
    g.mask.assign(static_cast<std::size_t>(n) * n, 0);
    const double h = 2.0 * radius / n;
    for (int iy = 0; iy < n; ++iy) {
        const double y = -radius + (iy + 0.5) * h;
        for (int ix = 0; ix < n; ++ix) {
            const double x = -radius + (ix + 0.5) * h;
            if (x * x + y * y <= radius * radius) {
                g.values[static_cast<std::size_t>(iy) * n + ix] = 1.0;
                g.mask[static_cast<std::size_t>(iy) * n + ix] = 1;
            }
        }
    }
    return g;
}
}  // namespace

TEST_CASE("vertex angles for simple and star polygons") {
    const auto tri = scars::orbit_vertices(1, 3, 0.0);
    REQUIRE(tri.size() == 3);
    CHECK(tri[0] == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(tri[1] == doctest::Approx(2.0 * kPi / 3.0).epsilon(1e-14));
    CHECK(tri[2] == doctest::Approx(4.0 * kPi / 3.0).epsilon(1e-14));

    const auto diam = scars::orbit_vertices(1, 2, 0.0);
    REQUIRE(diam.size() == 2);
    CHECK(diam[0] == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(diam[1] == doctest::Approx(kPi).epsilon(1e-14));

    // pentagram: successive vertices advance by 4 pi / 5
    const auto star = scars::orbit_vertices(2, 5, 0.0);
    REQUIRE(star.size() == 5);
    const double step = 4.0 * kPi / 5.0;
    for (int k = 0; k < 5; ++k) {
        const double expect = std::fmod(step * k, 2.0 * kPi);
        CHECK(star[k] == doctest::Approx(expect).epsilon(1e-13));
    }

    // the phase offset shifts every vertex rigidly
    const auto shifted = scars::orbit_vertices(1, 3, 0.4);
    for (int k = 0; k < 3; ++k)
        CHECK(shifted[k] == doctest::Approx(tri[k] + 0.4).epsilon(1e-13));

    CHECK_THROWS_AS(scars::orbit_vertices(2, 4, 0.0), std::domain_error);
    CHECK_THROWS_AS(scars::orbit_vertices(0, 3, 0.0), std::domain_error);
    CHECK_THROWS_AS(scars::orbit_vertices(3, 3, 0.0), std::domain_error);
    CHECK_THROWS_AS(scars::orbit_vertices(3, 2, 0.0), std::domain_error);
}

TEST_CASE("orbit path closes and carries the winding invariants") {
    for (auto [p, q] : {std::pair{1, 3}, {2, 5}, {3, 7}, {1, 2}}) {
        const OrbitPath path = scars::classical_orbit(p, q, 0.3, 1.0);
        REQUIRE(path.chords.size() == static_cast<std::size_t>(q));
        CHECK(path.bounces == q);
        CHECK(path.m_product == p * q);
        CHECK(path.caustic_radius == doctest::Approx(std::cos(kPi * p / q)).epsilon(1e-14));
        // last chord returns to the first vertex
        CHECK(path.chords.back()[2] == doctest::Approx(path.chords.front()[0]).epsilon(1e-14));
        CHECK(path.chords.back()[3] == doctest::Approx(path.chords.front()[1]).epsilon(1e-14));
        // chord endpoints live on the wall
        for (const auto& seg : path.chords) {
            CHECK(std::hypot(seg[0], seg[1]) == doctest::Approx(1.0).epsilon(1e-14));
            CHECK(std::hypot(seg[2], seg[3]) == doctest::Approx(1.0).epsilon(1e-14));
        }
        // every chord is tangent to the caustic circle
        for (const auto& seg : path.chords)
            CHECK(seg_dist(0.0, 0.0, seg) ==
                  doctest::Approx(std::fabs(path.caustic_radius)).epsilon(1e-12));
    }

    const OrbitPath big = scars::classical_orbit(1, 3, 0.0, 2.0);
    CHECK(big.caustic_radius == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(big.chords[0][0] == doctest::Approx(2.0).epsilon(1e-15));
    CHECK_THROWS_AS(scars::classical_orbit(1, 3, 0.0, -1.0), std::domain_error);
}

TEST_CASE("shell caustic radius matches the polygon within semiclassical error") {
    const scars::Shell s = scars::find_shell(scars::BilliardConfig{}, 1, 3, 120, 3);
    const double rc = scars::caustic_radius_of(s);
    CHECK(rc == doctest::Approx(0.49578176760417164).epsilon(1e-10));
    CHECK(std::fabs(rc - scars::classical_orbit(1, 3, 0.0, 1.0).caustic_radius) < 0.005);
}

TEST_CASE("tube fraction against a Monte Carlo area oracle") {
    const DensityGrid g = uniform_disk_grid(256, 1.0);
    const OrbitPath path = scars::classical_orbit(1, 3, 0.0, 1.0);
    const double w = 0.15;
    const double frac = scars::tube_fraction(g, path, w);

    std::mt19937 rng(20250816u);
    std::uniform_real_distribution<double> uni(-1.0, 1.0);
    long inside = 0, hits = 0;
    while (inside < 400000) {
        const double x = uni(rng), y = uni(rng);
        if (x * x + y * y > 1.0) continue;
        ++inside;
        for (const auto& seg : path.chords) {
            if (seg_dist(x, y, seg) <= w) {
                ++hits;
                break;
            }
        }
    }
    const double mc = static_cast<double>(hits) / static_cast<double>(inside);
    CHECK(std::fabs(frac - mc) < 0.012);
    CHECK(frac > 0.2);
    CHECK(frac < 0.8);
}

TEST_CASE("tube fraction limits and monotonicity") {
    const DensityGrid g = uniform_disk_grid(128, 1.0);
    const OrbitPath path = scars::classical_orbit(1, 3, 0.0, 1.0);
    // a tube wider than the disk swallows everything
    CHECK(scars::tube_fraction(g, path, 2.0) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(scars::tube_fraction(g, path, 0.1) < scars::tube_fraction(g, path, 0.2));
    CHECK(scars::tube_fraction(g, path, 0.2) < scars::tube_fraction(g, path, 0.4));
}

TEST_CASE("tube fraction concentrates point masses") {
    const int n = 64;
    DensityGrid g;
    g.n_cells = n;
    g.radius = 1.0;
    g.values.assign(static_cast<std::size_t>(n) * n, 0.0);
    g.mask.assign(static_cast<std::size_t>(n) * n, 1);
    const OrbitPath path = scars::classical_orbit(1, 3, 0.0, 1.0);

    // one cell right on a vertex: everything in the tube
    const double h = 2.0 / n;
    const int ix_v = static_cast<int>(std::floor((1.0 - h / 2.0 + 1.0) / h));
    const int iy_c = n / 2;
    g.values[static_cast<std::size_t>(iy_c) * n + ix_v] = 5.0;
    CHECK(scars::tube_fraction(g, path, 0.15) == doctest::Approx(1.0).epsilon(1e-15));

    // move the mass to the centre, far from all chords: nothing in the tube
    g.values[static_cast<std::size_t>(iy_c) * n + ix_v] = 0.0;
    g.values[static_cast<std::size_t>(iy_c) * n + n / 2] = 5.0;
    CHECK(scars::tube_fraction(g, path, 0.15) == doctest::Approx(0.0).epsilon(1e-15));
}

TEST_CASE("tube fraction guards") {
    const DensityGrid g = uniform_disk_grid(64, 1.0);
    const OrbitPath path = scars::classical_orbit(1, 3, 0.0, 1.0);
    CHECK_THROWS_AS(scars::tube_fraction(g, path, 0.0), std::domain_error);
    CHECK_THROWS_AS(scars::tube_fraction(g, path, 0.02), std::domain_error);  // < cell size

    DensityGrid empty = uniform_disk_grid(64, 1.0);
    for (auto& v : empty.values) v = 0.0;
    CHECK_THROWS_AS(scars::tube_fraction(empty, path, 0.15), std::domain_error);

    DensityGrid bad = uniform_disk_grid(64, 1.0);
    bad.values.pop_back();
    CHECK_THROWS_AS(scars::tube_fraction(bad, path, 0.15), std::domain_error);
}

TEST_CASE("phase fit recovers a known ridge rotation") {
    const scars::Shell s = scars::find_shell(scars::BilliardConfig{}, 1, 3, 120, 3);
    const double phi_true = 2.0 * kPi / 9.0;  // one of the 36 sampled offsets
    const DensityGrid g = scars::eval_grid_asymptotic(s, 0.25, phi_true, 128, 1);
    const double fitted = scars::fit_orbit_phase(g, 1, 3, 0.15);
    CHECK(fitted == doctest::Approx(phi_true).epsilon(1e-12));
    CHECK_THROWS_AS(scars::fit_orbit_phase(g, 2, 4, 0.15), std::domain_error);
}
