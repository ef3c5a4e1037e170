#include "scars/evolution.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace scars {

namespace {
constexpr double kInvE = 0.36787944117144233;  // 1/e lifetime threshold
}

double survival(const ScarPacket& packet, double t) {
    double re = 0.0, im = 0.0;
    const double inv_hbar = 1.0 / packet.config.hbar;
    for (std::size_t i = 0; i < packet.coeffs.size(); ++i) {
        const double w = packet.coeffs[i] * packet.coeffs[i];
        const double theta = packet.shell.members[i].energy * t * inv_hbar;
        re += w * std::cos(theta);
        im -= w * std::sin(theta);
    }
    return re * re + im * im;
}

SurvivalCurve survival_curve(const ScarPacket& packet, double t_max_over_T, int steps) {
    if (!(t_max_over_T > 0.0))
        throw std::domain_error("survival_curve: t_max must be positive");
    if (steps < 2) throw std::domain_error("survival_curve: need at least 2 steps");
    const auto& cfg = packet.config;
    const double T = cfg.mass * cfg.radius * cfg.radius / (cfg.hbar * packet.shell.rho_bar);
    SurvivalCurve curve;
    curve.times.reserve(steps + 1);
    curve.values.reserve(steps + 1);
    for (int i = 0; i <= steps; ++i) {
        const double t_over_T = t_max_over_T * i / steps;
        curve.times.push_back(t_over_T);
        curve.values.push_back(survival(packet, t_over_T * T));
    }
    curve.tau_numeric = std::numeric_limits<double>::infinity();
    for (int i = 1; i <= steps; ++i) {
        if (curve.values[i] <= kInvE) {
            const double c0 = curve.values[i - 1], c1 = curve.values[i];
            const double t0 = curve.times[i - 1], t1 = curve.times[i];
            curve.tau_numeric = (c0 == c1) ? t1 : t0 + (c0 - kInvE) * (t1 - t0) / (c0 - c1);
            break;
        }
    }
    return curve;
}

ConsistencyReport lifetime_consistency(const ScarPacket& packet, double t_max_over_T,
                                       int steps) {
    const SurvivalCurve curve = survival_curve(packet, t_max_over_T, steps);
    const LifetimeReport rep = lifetime_report(packet);
    ConsistencyReport out;
    out.tau_numeric = curve.tau_numeric;
    out.tau_q = rep.tau_q / rep.t_classical;  // units of T
    const bool num_inf = std::isinf(out.tau_numeric);
    const bool q_inf = std::isinf(out.tau_q);
    if (num_inf && q_inf) {  // degenerate shell: both estimators report "never"
        out.ratio_of_estimates = 1.0;
        out.consistent = true;
    } else if (num_inf || q_inf) {
        out.ratio_of_estimates = num_inf ? std::numeric_limits<double>::infinity() : 0.0;
        out.consistent = false;
    } else {
        out.ratio_of_estimates = out.tau_numeric / out.tau_q;
        out.consistent = out.ratio_of_estimates >= 0.5 && out.ratio_of_estimates <= 2.0;
    }
    return out;
}

}  // namespace scars
