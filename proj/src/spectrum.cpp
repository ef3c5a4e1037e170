#include "scars/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <string>

#include "scars/bessel.hpp"

namespace scars {

namespace {

constexpr double kPi = 3.14159265358979323846;

void check_pq(int p, int q) {
    if (p < 1 || q <= p || std::gcd(p, q) != 1)
        throw std::domain_error("shell: need coprime integers q > p >= 1");
}

double mean_rho(const std::vector<EigenMode>& members) {
    double s = 0.0;
    for (const auto& m : members) s += m.rho;
    return s / static_cast<double>(members.size());
}

}  // namespace

EigenMode make_mode(const BilliardConfig& cfg, int l, int n) {
    validate(cfg);
    const double rho = bessel_zero(l, n);
    const double k = rho / cfg.radius;
    return {n, l, rho, k, cfg.hbar * cfg.hbar * k * k / (2.0 * cfg.mass)};
}

double weyl_estimate(double x) { return x * x / 8.0 - x / 4.0 + x / (2.0 * kPi); }

std::vector<EigenMode> enumerate_modes(const BilliardConfig& cfg, double k_max) {
    validate(cfg);
    const double x_max = k_max * cfg.radius;
    if (x_max > kBesselMaxArgument)
        throw std::range_error("enumerate_modes: k_max beyond the supported zero range");
    std::vector<EigenMode> modes;
    for (int l = 0; l <= kBesselMaxOrder && l <= x_max; ++l) {  // first zero of J_l exceeds l
        const auto zeros = bessel_zeros_upto(l, x_max);
        for (std::size_t i = 0; i < zeros.size(); ++i) {
            const double k = zeros[i] / cfg.radius;
            modes.push_back({static_cast<int>(i) + 1, l, zeros[i], k,
                             cfg.hbar * cfg.hbar * k * k / (2.0 * cfg.mass)});
        }
    }
    std::sort(modes.begin(), modes.end(), [](const EigenMode& a, const EigenMode& b) {
        return a.rho != b.rho ? a.rho < b.rho : a.l < b.l;
    });
    // Smooth-count consistency, meaningful only once many modes fit.
    const double est = weyl_estimate(x_max);
    if (est >= 50.0 && std::fabs(static_cast<double>(modes.size()) - est) > 0.10 * est)
        throw std::runtime_error("enumerate_modes: mode count disagrees with the smooth estimate");
    return modes;
}

double semiclassical_residual(const EigenMode& mode) {
    const double rho = mode.rho;
    const double l = mode.l;
    if (!(rho > l))
        throw std::domain_error("semiclassical_residual: rho <= l leaves no radial motion");
    return std::sqrt(rho * rho - l * l) - l * std::acos(l / rho) -
           (2.0 * (mode.n - 1) + 1.0) * kPi / 2.0 - kPi / 4.0;
}

double shell_spread(const Shell& shell) {
    double worst = 0.0;
    for (const auto& m : shell.members) worst = std::max(worst, std::fabs(m.rho - shell.rho_bar));
    return worst;
}

double relative_shell_spread(const Shell& shell) {
    if (!(shell.rho_bar > 0.0)) throw std::domain_error("shell: rho_bar must be positive");
    return shell_spread(shell) / shell.rho_bar;
}

double shell_radius(const Shell& shell) {
    if (shell.members.empty()) throw std::domain_error("shell: no members");
    const auto& m = shell.members.front();
    if (!(m.k > 0.0)) throw std::domain_error("shell: member wavenumber must be positive");
    return m.rho / m.k;
}

Shell make_shell(const BilliardConfig& cfg, int p, int q, int l0, int n0, int half_width,
                 double degeneracy_tol) {
    validate(cfg);
    check_pq(p, q);
    if (half_width < 0) throw std::domain_error("shell: half_width must be >= 0");
    Shell s;
    s.p = p;
    s.q = q;
    s.l0 = l0;
    s.n0 = n0;
    s.beta0 = kPi * p / q;
    for (int j = -half_width; j <= half_width; ++j) {
        const int lj = l0 + j * q;
        const int nj = n0 - j * p;
        if (lj < 0)
            throw std::domain_error("shell: member angular momentum below 0; l0 too small");
        if (nj < 1)
            throw std::domain_error("shell: member radial index below 1; n0 too small");
        s.members.push_back(make_mode(cfg, lj, nj));
    }
    s.rho_bar = mean_rho(s.members);
    if (relative_shell_spread(s) > degeneracy_tol)
        throw std::domain_error("shell: members exceed the degeneracy tolerance");
    return s;
}

Shell find_shell(const BilliardConfig& cfg, int p, int q, int l0_hint, int half_width,
                 int l0_window) {
    validate(cfg);
    check_pq(p, q);
    if (half_width < 1) throw std::domain_error("find_shell: half_width must be >= 1");
    if (l0_window < 0) throw std::domain_error("find_shell: l0_window must be >= 0");
    // cos(pi p/q) <= 0 exactly when 2p >= q; test in integers, cos(pi/2) rounds to 6e-17
    if (2 * p >= q)
        throw std::domain_error(
            "find_shell: cos(pi p/q) <= 0 admits no l >= 0 ladder (diameter-like orbit)");
    const double c = std::cos(kPi * p / q);

    // Zero tables per order, shared across candidates.
    const double top_target = (l0_hint + l0_window) / c;
    const double bound = std::min(kBesselMaxArgument, top_target + 60.0);
    std::map<int, std::vector<double>> tables;
    auto zeros_of = [&](int l) -> const std::vector<double>& {
        auto it = tables.find(l);
        if (it == tables.end()) it = tables.emplace(l, bessel_zeros_upto(l, bound)).first;
        return it->second;
    };

    const double tol = 0.01;
    bool have_best = false;
    Shell best;
    double best_rel = 0.0;
    int best_abs_dl0 = 0;

    for (int step = 0; step <= 2 * l0_window; ++step) {
        // visit hint, hint+1, hint-1, ...: encodes the |l0 - hint| tie-break
        const int dl0 = (step % 2 == 1) ? (step + 1) / 2 : -(step / 2);
        const int l0 = l0_hint + dl0;
        if (l0 < 1 || l0 < half_width * q || l0 + half_width * q > kBesselMaxOrder) continue;
        const auto& z0 = zeros_of(l0);
        if (z0.empty()) continue;
        const double target = l0 / c;
        int n_center = 1;
        double dist = std::fabs(z0[0] - target);
        for (std::size_t i = 1; i < z0.size(); ++i) {
            const double d = std::fabs(z0[i] - target);
            if (d < dist) {
                dist = d;
                n_center = static_cast<int>(i) + 1;
            }
        }
        for (int n0 = n_center - 2; n0 <= n_center + 2; ++n0) {
            if (n0 - half_width * p < 1) continue;
            std::vector<EigenMode> mem;
            mem.reserve(2 * half_width + 1);
            bool ok = true;
            for (int j = -half_width; j <= half_width && ok; ++j) {
                const int lj = l0 + j * q;
                const int nj = n0 - j * p;
                const auto& zl = zeros_of(lj);
                if (static_cast<std::size_t>(nj) > zl.size()) {
                    ok = false;
                    break;
                }
                const double rho = zl[nj - 1];
                const double k = rho / cfg.radius;
                mem.push_back({nj, lj, rho, k, cfg.hbar * cfg.hbar * k * k / (2.0 * cfg.mass)});
            }
            if (!ok) continue;
            const double rbar = mean_rho(mem);
            double worst = 0.0;
            for (const auto& m : mem) worst = std::max(worst, std::fabs(m.rho - rbar));
            const double rel = worst / rbar;
            if (rel > tol) continue;
            if (!have_best || rel < best_rel ||
                (rel == best_rel && std::abs(dl0) < best_abs_dl0)) {
                best = Shell{p, q, l0, n0, std::move(mem), kPi * p / q, rbar};
                best_rel = rel;
                best_abs_dl0 = std::abs(dl0);
                have_best = true;
            }
        }
    }
    if (!have_best)
        throw ShellNotFound("find_shell: no (l0, n0) candidate near l0 = " +
                            std::to_string(l0_hint) + " meets the 1% degeneracy tolerance");
    return best;
}

double mean_level_density(const BilliardConfig& cfg) {
    validate(cfg);
    return 2.0 * kPi * cfg.mass * cfg.radius * cfg.radius / (cfg.hbar * cfg.hbar);
}

}  // namespace scars
