#include "scars/scar.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "scars/bessel.hpp"

namespace scars {

namespace {
constexpr double kPi = 3.14159265358979323846;
constexpr double kInvSqrt2Pi = 0.39894228040143268;
}  // namespace

double gaussian_weight(int l, int l0, double delta_l) {
    const double d = (l - l0) / delta_l;
    return std::exp(-0.5 * d * d);
}

ScarPacket build_packet(const BilliardConfig& cfg, const Shell& shell, double delta_phi) {
    validate(cfg);
    if (!(delta_phi > 0.0) || delta_phi > 1.0)
        throw std::domain_error("build_packet: delta_phi must lie in (0, 1]");
    if (shell.members.empty()) throw std::domain_error("build_packet: shell has no members");

    ScarPacket pk;
    pk.shell = shell;
    pk.config = cfg;
    pk.delta_phi = delta_phi;
    pk.delta_l = 1.0 / delta_phi;

    // Probability weights |c_j|^2 follow the Gaussian angular-momentum profile;
    // the flat-profile limit delta_phi -> 0 then gives uniform weights.
    std::vector<double> w(shell.members.size());
    double wsum = 0.0, off_centre = 0.0;
    for (std::size_t i = 0; i < w.size(); ++i) {
        w[i] = gaussian_weight(shell.members[i].l, shell.l0, pk.delta_l);
        wsum += w[i];
        if (shell.members[i].l != shell.l0) off_centre += w[i];
    }
    if (shell.members.size() > 1 && off_centre == 0.0)
        throw std::domain_error(
            "build_packet: every off-centre weight underflowed; packet degenerates to one mode");

    pk.coeffs.resize(w.size());
    pk.norms.resize(w.size());
    for (std::size_t i = 0; i < w.size(); ++i) {
        pk.coeffs[i] = std::sqrt(w[i] / wsum);
        const EigenMode& m = shell.members[i];
        // Radial normalization of a disk mode: integral of N^2 J_l(k r)^2 r dr = 1.
        pk.norms[i] = std::sqrt(2.0) / (cfg.radius * std::fabs(bessel_j(m.l + 1, m.rho)));
    }
    return pk;
}

std::complex<double> packet_amplitude(const ScarPacket& packet, double r, double phi) {
    const double R = packet.config.radius;
    if (!(r >= 0.0) || r > R)
        throw std::domain_error("packet_amplitude: r outside [0, R]");
    double re = 0.0, im = 0.0;
    for (std::size_t i = 0; i < packet.coeffs.size(); ++i) {
        const EigenMode& m = packet.shell.members[i];
        const double rad = packet.coeffs[i] * packet.norms[i] * bessel_j(m.l, m.k * r);
        re += rad * std::cos(m.l * phi);
        im += rad * std::sin(m.l * phi);
    }
    return {re * kInvSqrt2Pi, im * kInvSqrt2Pi};
}

double packet_density(const ScarPacket& packet, double r, double phi) {
    return std::norm(packet_amplitude(packet, r, phi));
}

double caustic_angle(const Shell& shell, double r) {
    const double R = shell_radius(shell);
    const double rc = shell.l0 * R / shell.rho_bar;
    if (!(r >= rc) || r > R)
        throw std::domain_error("caustic_angle: r outside [caustic radius, R]");
    double c = shell.l0 * R / (shell.rho_bar * r);
    if (c > 1.0) c = 1.0;
    return std::acos(c);
}

double asymptotic_density(const Shell& shell, double delta_phi, double r, double phi,
                          double phi0) {
    if (!(delta_phi > 0.0))
        throw std::domain_error("asymptotic_density: delta_phi must be positive");
    const double R = shell_radius(shell);
    if (!(r >= 0.0) || r > R)
        throw std::domain_error("asymptotic_density: r outside [0, R]");
    const double rc = shell.l0 * R / shell.rho_bar;
    if (r < rc) return 0.0;  // classically forbidden inside the caustic
    double c = shell.l0 * R / (shell.rho_bar * r);
    if (c > 1.0) c = 1.0;
    const double beta = std::acos(c);
    const double inv = 1.0 / (delta_phi * delta_phi);
    // Each chord throws Gaussian ridges at phi_mid +- beta(r), phi_mid the chord
    // midpoint normal; at r = R they merge pairwise at the polygon vertices.
    double sum = 0.0;
    for (int k = 0; k < shell.q; ++k) {
        const double mid = phi0 + 2.0 * kPi * shell.p * (k + 0.5) / shell.q;
        for (const double s : {1.0, -1.0}) {
            const double d = std::remainder(phi - (mid + s * beta), 2.0 * kPi);
            sum += std::exp(-d * d * inv);
        }
    }
    return sum;
}

LifetimeReport lifetime_report(const ScarPacket& packet) {
    const auto& mem = packet.shell.members;
    LifetimeReport rep;
    double em = 0.0;
    for (std::size_t i = 0; i < mem.size(); ++i)
        em += packet.coeffs[i] * packet.coeffs[i] * mem[i].energy;
    // Equal eigenvalues make the spread exactly zero; do not let the rounding of
    // em (weights sum to 1 only up to an ulp) fake a finite width.
    bool all_equal = true;
    for (const auto& m : mem) all_equal = all_equal && m.energy == mem.front().energy;
    double var = 0.0;
    if (!all_equal)
        for (std::size_t i = 0; i < mem.size(); ++i) {
            const double d = mem[i].energy - em;
            var += packet.coeffs[i] * packet.coeffs[i] * d * d;
        }
    rep.e_mean = em;
    rep.delta_e = std::sqrt(std::max(var, 0.0));
    const auto& cfg = packet.config;
    rep.t_classical = cfg.mass * cfg.radius * cfg.radius / (cfg.hbar * packet.shell.rho_bar);
    if (rep.delta_e > 0.0) {
        rep.tau_q = cfg.hbar / rep.delta_e;
        const double dl_rel = packet.delta_l / packet.shell.rho_bar;
        rep.g_factor = (rep.delta_e / rep.e_mean) / (dl_rel * dl_rel);
    } else {
        rep.tau_q = std::numeric_limits<double>::infinity();  // degenerate shell
        rep.g_factor = 0.0;
    }
    rep.ratio = rep.tau_q / rep.t_classical;
    rep.eq5_estimate = packet.delta_phi * packet.delta_phi * packet.shell.l0;
    return rep;
}

}  // namespace scars
