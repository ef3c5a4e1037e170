#pragma once

#include <vector>

#include "scars/scar.hpp"

namespace scars {

// Survival probability sampled on a uniform time grid. Times are in units of
// the classical characteristic time T = M R^2 / (hbar rho_bar).
struct SurvivalCurve {
    std::vector<double> times;   // units of T, strictly increasing from 0
    std::vector<double> values;  // C(t) in [0, 1], C(0) = 1
    double tau_numeric = 0.0;    // first 1/e crossing (units of T), +inf if never
};

struct ConsistencyReport {
    double tau_numeric = 0.0;        // units of T
    double tau_q = 0.0;              // units of T
    double ratio_of_estimates = 0.0; // tau_numeric / tau_q
    bool consistent = false;         // ratio in [0.5, 2.0] (degenerate: both inf)
};

// C(t) = |sum_j |c_j|^2 e^{-i E_j t / hbar}|^2, exact under orthonormal modes.
// t in absolute units.
double survival(const ScarPacket& packet, double t);

// Uniform sampling of [0, t_max_over_T * T], steps >= 2 intervals; tau_numeric by
// linear interpolation of the first 1/e crossing.
SurvivalCurve survival_curve(const ScarPacket& packet, double t_max_over_T, int steps);

ConsistencyReport lifetime_consistency(const ScarPacket& packet, double t_max_over_T,
                                       int steps = 2048);

}  // namespace scars
