#pragma once

#include <stdexcept>

namespace scars {

// Disk billiard constants. Defaults M = hbar = R = 1, the dimensionless
// convention all headline numbers are quoted in.
struct BilliardConfig {
    double radius = 1.0;
    double mass = 1.0;
    double hbar = 1.0;
};

inline void validate(const BilliardConfig& cfg) {
    if (!(cfg.radius > 0.0) || !(cfg.mass > 0.0) || !(cfg.hbar > 0.0))
        throw std::domain_error("BilliardConfig: radius, mass and hbar must be positive");
}

}  // namespace scars
