#pragma once

#include <stdexcept>
#include <vector>

#include "scars/config.hpp"

namespace scars {

struct EigenMode {
    int n;          // radial quantum number = 1-based zero index
    int l;          // angular momentum, l >= 0 (one rotating branch)
    double rho;     // dimensionless zero of J_l
    double k;       // rho / R
    double energy;  // hbar^2 k^2 / (2 M)
};

// Energy shell: members follow l_j = l0 + j q, n_j = n0 - j p for j = -J..J,
// nearly degenerate because k is stationary along the (Delta l, Delta n) = (q, -p)
// direction when cos(pi p / q) = l0 / rho.
struct Shell {
    int p = 0;
    int q = 0;
    int l0 = 0;
    int n0 = 0;
    std::vector<EigenMode> members;  // ascending j (ascending l)
    double beta0 = 0.0;              // pi p / q
    double rho_bar = 0.0;            // mean member rho
};

// Thrown when no (l0, n0) candidate meets the degeneracy requirement.
struct ShellNotFound : std::runtime_error {
    using std::runtime_error::runtime_error;
};

EigenMode make_mode(const BilliardConfig& cfg, int l, int n);

// All modes with rho <= k_max * R, sorted by energy. In the asymptotic regime the
// count is cross-checked against the smooth (Weyl) estimate for the l >= 0 branch.
std::vector<EigenMode> enumerate_modes(const BilliardConfig& cfg, double k_max);

// Smooth counting estimate for modes of the l >= 0 branch with rho <= x:
// quarter-disk area term x^2/8, boundary term -x/4, plus the l = 0 line x/(2 pi).
double weyl_estimate(double x);

// Quantization defect: sqrt(rho^2 - l^2) - l arccos(l/rho) - (2(n-1)+1) pi/2 - pi/4.
// O(1/rho), so it shrinks for higher zeros of the same order.
double semiclassical_residual(const EigenMode& mode);

// Builds the shell with the given centre; throws std::domain_error if any member
// would need l < 0 or n < 1, and checks the 1% relative-degeneracy requirement.
Shell make_shell(const BilliardConfig& cfg, int p, int q, int l0, int n0,
                 int half_width, double degeneracy_tol = 0.01);

// Picks (l0, n0) minimizing the relative rho-spread. n0 is scanned around the
// zero of J_l0 nearest to l0 / cos(pi p / q). l0 itself is taken from the hint:
// scanning l0 too would select a neighboring ladder with slightly smaller spread,
// losing the canonical shell; an explicit l0_window > 0 re-enables that search.
Shell find_shell(const BilliardConfig& cfg, int p, int q, int l0_hint,
                 int half_width, int l0_window = 0);

// max_j |rho_j - rho_bar| (dimensionless), and the relative version.
double shell_spread(const Shell& shell);
double relative_shell_spread(const Shell& shell);

// 2 pi M R^2 / hbar^2, states per unit energy (dimensionally a density).
double mean_level_density(const BilliardConfig& cfg);

// Radius reproduced from stored member data (rho = k R).
double shell_radius(const Shell& shell);

}  // namespace scars
