#pragma once

#include <cmath>
#include <numbers>

#include "sipot/error.hpp"

namespace sipot {

/// Physical constants of the problem. Defaults are hbar = 1, m = 1/2,
/// so that 2m = 1 and gamma = hbar/sqrt(2m) = 1.
struct UnitSystem {
    double hbar = 1.0;
    double mass = 0.5;

    UnitSystem() = default;
    UnitSystem(double hbar_, double mass_) : hbar(hbar_), mass(mass_) {
        if (!(hbar > 0.0) || !(mass > 0.0))
            throw Error(ErrorKind::Parameter, "UnitSystem requires hbar > 0 and mass > 0");
    }

    // gamma is always derived, never stored.
    double gamma() const { return hbar / std::sqrt(2.0 * mass); }
    double sqrt_2m() const { return std::sqrt(2.0 * mass); }
    double planck_h() const { return 2.0 * std::numbers::pi * hbar; }
};

}  // namespace sipot
