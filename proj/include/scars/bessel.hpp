#pragma once

#include <vector>

namespace scars {

// Supported range for the self-contained Bessel evaluator. Beyond these the
// Miller recurrence start order / scan cost were not tuned, so we refuse.
inline constexpr int kBesselMaxOrder = 512;
inline constexpr double kBesselMaxArgument = 1024.0;

struct BesselEval {
    int order;
    double argument;
    double value;       // J_l(x)
    double derivative;  // dJ_l/dx
};

// Cylindrical Bessel function of the first kind, integer order l >= 0.
// Absolute error <= 1e-10 over l <= 512, 0 <= x <= 1024.
double bessel_j(int l, double x);

// dJ_l/dx via J_l' = (J_{l-1} - J_{l+1})/2 (J_0' = -J_1). Abs error <= 1e-8.
double bessel_j_prime(int l, double x);

// Value and derivative from one evaluation pass.
BesselEval bessel_eval(int l, double x);

// n-th positive zero of J_l, 1-based. Abs error <= 1e-8; strictly increasing in n.
// Throws std::range_error if the zero lies beyond the supported argument range.
double bessel_zero(int l, int n);

// Every positive zero of J_l in (0, x_max], ascending. A pi/4 sign-change scan
// cannot skip zeros: consecutive zeros of J_l are separated by more than pi.
std::vector<double> bessel_zeros_upto(int l, double x_max);

}  // namespace scars
