#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "scars/scar.hpp"

namespace scars {

// File access and file content problems (unreadable path, malformed header,
// non-finite value tokens). Distinct from numeric-domain errors.
struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Density sampled at cell centres of an n x n Cartesian grid over [-R, R]^2.
// Row-major, index = iy * n + ix; x = -R + (ix + 0.5) h, y = -R + (iy + 0.5) h,
// h = 2R/n. Values outside the disk mask are exactly 0.
struct DensityGrid {
    int n_cells = 0;
    double radius = 0.0;
    std::vector<double> values;
    std::vector<std::uint8_t> mask;  // 1 = cell centre inside the disk
    std::map<std::string, std::string> meta;  // ordered -> deterministic header
};

// threads = 0 picks a hardware-based worker count. Rows are computed
// independently, so the result is byte-identical for any worker count.
DensityGrid eval_grid(const ScarPacket& packet, int n_cells, int threads = 0);
DensityGrid eval_grid_asymptotic(const Shell& shell, double delta_phi, double phi0,
                                 int n_cells, int threads = 0);

// CSV: header line of comma-joined key=value meta pairs, then "ix,iy,value",
// then one row per mask-true cell (iy-major), values at 17 significant digits.
// Read rejects NaN/Inf tokens and malformed headers; write-then-read round-trips
// values bit-exactly and meta unchanged.
void write_csv(const DensityGrid& grid, const std::string& path);
DensityGrid read_csv(const std::string& path);

// Binary NetPBM P5, linear density scale quantized to `levels` bands (2..64),
// max density maps to white; row 0 is the top of the image (y = +R).
void render_pgm(const DensityGrid& grid, const std::string& path, int levels);

// Pearson correlation of two equally-shaped grids over the annulus
// r_lo <= r <= r_hi. block > 1 first coarsens both grids by block x block cell
// averaging and correlates blocks whose centres lie in the annulus: the exact
// density carries sub-cell radial interference fringes the ridge model omits by
// construction, so the comparison is made at the classical (fringe-averaged)
// scale. block = 1 correlates raw cell centres.
double pearson_on_annulus(const DensityGrid& a, const DensityGrid& b,
                          double r_lo, double r_hi, int block = 1);

}  // namespace scars
