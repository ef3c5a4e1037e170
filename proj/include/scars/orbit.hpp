#pragma once

#include <array>
#include <vector>

#include "scars/grid.hpp"
#include "scars/spectrum.hpp"

namespace scars {

// Closed (p, q) billiard orbit: q wall hits advancing 2 pi p / q per bounce,
// polygon for p = 1 and star for p > 1, every chord tangent to the caustic
// circle of radius R cos(pi p / q).
struct OrbitPath {
    int p = 0;
    int q = 0;
    double phi0 = 0.0;
    double radius = 0.0;
    std::vector<double> vertex_angles;            // q angles, traversal order
    std::vector<std::array<double, 4>> chords;    // {x1, y1, x2, y2}, closing
    double caustic_radius = 0.0;                  // R cos(pi p / q)
    int bounces = 0;                              // q wall hits close the orbit
    int m_product = 0;                            // p*q, the naive hit count
};

// Wall-hit angles {phi0 + 2 pi p k / q mod 2 pi}, k = 0..q-1, traversal order.
std::vector<double> orbit_vertices(int p, int q, double phi0);

OrbitPath classical_orbit(int p, int q, double phi0, double radius = 1.0);

// l0 R / rho_bar; within 1% of R cos(pi p / q) for nearly degenerate shells.
double caustic_radius_of(const Shell& shell);

// Fraction of total grid density within distance half_width of any chord.
// Throws std::domain_error if half_width is smaller than one grid cell.
double tube_fraction(const DensityGrid& grid, const OrbitPath& path, double half_width);

// Orbit phase maximizing tube_fraction, scanned over 36 samples of one vertex
// period [0, 2 pi / q). Aligns the polygon with the packet's wall antinodes.
double fit_orbit_phase(const DensityGrid& grid, int p, int q, double half_width);

}  // namespace scars
