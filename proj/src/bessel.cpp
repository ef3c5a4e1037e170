#include "scars/bessel.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace scars {

namespace {

constexpr double kPi = 3.14159265358979323846;

void check_domain(int l, double x) {
    if (l < 0 || l > kBesselMaxOrder)
        throw std::domain_error("bessel: order " + std::to_string(l) +
                                " outside supported range [0, " +
                                std::to_string(kBesselMaxOrder) + "]");
    if (!(x >= 0.0) || x > kBesselMaxArgument)
        throw std::domain_error("bessel: argument " + std::to_string(x) +
                                " outside supported range [0, " +
                                std::to_string(kBesselMaxArgument) + "]");
}

// Power series sum_k (-1)^k (x/2)^{l+2k} / (k! (l+k)!). Leading term through
// lgamma so large l cannot overflow. Used for x <= 2 sqrt(l+1), where terms
// decrease monotonically and there is no cancellation growth.
double series_j(int l, double x) {
    if (x == 0.0) return l == 0 ? 1.0 : 0.0;
    const double half = 0.5 * x;
    const double log_lead = l * std::log(half) - std::lgamma(l + 1.0);
    if (log_lead < -745.0) return 0.0;  // J underflows: terms only shrink here
    double term = std::exp(log_lead);
    double sum = term;
    const double mhsq = -half * half;
    for (int k = 1; k <= 2000; ++k) {
        term *= mhsq / (static_cast<double>(k) * (l + k));
        sum += term;
        if (std::fabs(term) <= 1e-17 * std::fabs(sum)) break;
    }
    return sum;
}

struct Triple {
    double jlm1, jl, jlp1;  // J_{l-1}, J_l, J_{l+1} (jlm1 = 0 when l = 0)
};

// Downward (Miller) recurrence J_{m-1} = (2m/x) J_m - J_{m+1}, seeded high
// above max(l, x) where J decays super-exponentially, normalized afterwards
// with J_0 + 2 sum_{k>=1} J_{2k} = 1. Stable where upward recurrence is not.
Triple miller_j(int l, double x) {
    const int big = std::max(l + 1, static_cast<int>(std::ceil(x)));
    const int start =
        big + 20 + static_cast<int>(std::ceil(9.0 * std::cbrt(static_cast<double>(big))));
    double jp1 = 0.0;    // J_{m+1}
    double jm = 1e-30;   // J_m, arbitrary tiny seed
    double even_sum = (start % 2 == 0) ? 2.0 * jm : 0.0;
    double cap[3] = {0.0, 0.0, 0.0};
    for (int m = start; m >= 1; --m) {
        const double jm1 = (2.0 * m / x) * jm - jp1;
        jp1 = jm;
        jm = jm1;  // now holds J_{m-1}
        const int idx = m - 1;
        if (idx == l + 1) cap[2] = jm;
        else if (idx == l) cap[1] = jm;
        else if (idx == l - 1) cap[0] = jm;
        if (idx >= 2 && idx % 2 == 0) even_sum += 2.0 * jm;
        if (std::fabs(jm) > 1e250) {  // rescale long recurrences before overflow
            constexpr double s = 1e-250;
            jm *= s;
            jp1 *= s;
            even_sum *= s;
            cap[0] *= s;
            cap[1] *= s;
            cap[2] *= s;
        }
    }
    const double norm = even_sum + jm;  // jm is the unnormalized J_0
    return {cap[0] / norm, cap[1] / norm, cap[2] / norm};
}

bool series_region(int l, double x) { return x <= 2.0 * std::sqrt(l + 1.0); }

// Hybrid Newton/bisection inside a sign-change bracket [lo, hi].
double refine_zero(int l, double lo, double hi, double flo) {
    double x = 0.5 * (lo + hi);
    for (int it = 0; it < 80; ++it) {
        const BesselEval ev = bessel_eval(l, x);
        if (ev.value == 0.0) return x;
        if ((ev.value < 0.0) == (flo < 0.0)) lo = x;
        else hi = x;
        double xn = x - ev.value / ev.derivative;
        if (!(xn > lo) || !(xn < hi)) xn = 0.5 * (lo + hi);  // Newton left the bracket
        if (std::fabs(xn - x) <= 1e-13 * std::max(1.0, x)) return xn;
        x = xn;
    }
    return x;
}

}  // namespace

double bessel_j(int l, double x) {
    check_domain(l, x);
    if (x == 0.0) return l == 0 ? 1.0 : 0.0;
    if (series_region(l, x)) return series_j(l, x);
    return miller_j(l, x).jl;
}

BesselEval bessel_eval(int l, double x) {
    check_domain(l, x);
    BesselEval ev{l, x, 0.0, 0.0};
    if (x == 0.0) {
        ev.value = (l == 0) ? 1.0 : 0.0;
        ev.derivative = (l == 1) ? 0.5 : 0.0;
        return ev;
    }
    double jlm1, jl, jlp1;
    if (series_region(l, x)) {
        jl = series_j(l, x);
        jlp1 = series_j(l + 1, x);
        jlm1 = (l >= 1) ? series_j(l - 1, x) : 0.0;
    } else {
        const Triple t = miller_j(l, x);
        jlm1 = t.jlm1;
        jl = t.jl;
        jlp1 = t.jlp1;
    }
    ev.value = jl;
    ev.derivative = (l == 0) ? -jlp1 : 0.5 * (jlm1 - jlp1);
    return ev;
}

double bessel_j_prime(int l, double x) { return bessel_eval(l, x).derivative; }

double bessel_zero(int l, int n) {
    if (n < 1) throw std::domain_error("bessel_zero: zero index must be >= 1");
    check_domain(l, 0.0);
    // pi/4 scan cannot skip a zero: consecutive zeros of J_l are > pi apart.
    const double step = 0.25 * kPi;
    double a = (l == 0) ? 0.0 : static_cast<double>(l);  // all zeros exceed l
    double fa = bessel_j(l, a);
    int found = 0;
    while (a < kBesselMaxArgument) {
        const double b = std::min(a + step, kBesselMaxArgument);
        const double fb = bessel_j(l, b);
        if ((fa < 0.0) != (fb < 0.0)) {
            ++found;
            if (found == n) return refine_zero(l, a, b, fa);
        }
        a = b;
        fa = fb;
    }
    throw std::range_error("bessel_zero: zero " + std::to_string(n) + " of order " +
                           std::to_string(l) + " lies beyond the supported argument range");
}

std::vector<double> bessel_zeros_upto(int l, double x_max) {
    check_domain(l, 0.0);
    if (!(x_max >= 0.0))
        throw std::domain_error("bessel_zeros_upto: x_max must be non-negative");
    if (x_max > kBesselMaxArgument)
        throw std::range_error("bessel_zeros_upto: x_max beyond the supported argument range");
    std::vector<double> zeros;
    const double step = 0.25 * kPi;
    double a = (l == 0) ? 0.0 : static_cast<double>(l);
    if (a >= x_max) return zeros;
    double fa = bessel_j(l, a);
    while (a < x_max) {
        const double b = std::min(a + step, x_max);
        const double fb = bessel_j(l, b);
        if ((fa < 0.0) != (fb < 0.0)) {
            const double z = refine_zero(l, a, b, fa);
            if (z <= x_max) zeros.push_back(z);
        }
        a = b;
        fa = fb;
    }
    return zeros;
}

}  // namespace scars
