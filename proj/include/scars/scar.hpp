#pragma once

#include <complex>
#include <vector>

#include "scars/spectrum.hpp"

namespace scars {

// Gaussian wave packet over a shell: Psi(r, phi) = sum_j c_j N_j J_{l_j}(k_j r)
// e^{i l_j phi} / sqrt(2 pi), with probability weights |c_j|^2 Gaussian in l_j - l0.
struct ScarPacket {
    Shell shell;
    double delta_l = 0.0;             // angular-momentum width, = 1/delta_phi
    double delta_phi = 0.0;           // angular width (radians)
    std::vector<double> coeffs;       // c_j, real positive, aligned with shell.members
    std::vector<double> norms;        // N_j = sqrt(2) / (R |J_{l_j+1}(rho_j)|)
    BilliardConfig config;
};

struct LifetimeReport {
    double e_mean = 0.0;       // sum |c_j|^2 E_j
    double delta_e = 0.0;      // weighted std dev of member energies
    double tau_q = 0.0;        // hbar / delta_e (+inf when degenerate)
    double t_classical = 0.0;  // T = M R^2 / (hbar rho_bar)
    double ratio = 0.0;        // tau_q / t_classical
    double g_factor = 0.0;     // (delta_e / e_mean) / (delta_l / rho_bar)^2
    double eq5_estimate = 0.0; // delta_phi^2 * l0
};

// Unnormalized Gaussian profile exp(-(l - l0)^2 / (2 delta_l^2)).
double gaussian_weight(int l, int l0, double delta_l);

// delta_phi in (0, 1]. Single-member shells are allowed (packet = eigenstate);
// throws std::domain_error if every off-centre weight underflows to zero.
ScarPacket build_packet(const BilliardConfig& cfg, const Shell& shell, double delta_phi);

std::complex<double> packet_amplitude(const ScarPacket& packet, double r, double phi);
double packet_density(const ScarPacket& packet, double r, double phi);

// beta(r) = arccos(l0 R / (rho_bar r)), the ray angle against the tangential
// direction at radius r; defined on [r_c, R] with r_c = l0 R / rho_bar.
double caustic_angle(const Shell& shell, double r);

// Ridge model of the packet density: each of the q chords contributes Gaussian
// ridges at phi = phi_mid +- beta(r) (both rotation senses), phi_mid the chord
// midpoint normal. Returns 0 inside the caustic. phi0 rotates vertex 0.
double asymptotic_density(const Shell& shell, double delta_phi, double r, double phi,
                          double phi0 = 0.0);

LifetimeReport lifetime_report(const ScarPacket& packet);

}  // namespace scars
