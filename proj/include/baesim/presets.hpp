#pragma once

#include <cmath>

#include "baesim/params.hpp"

namespace baesim {

/// Equal couplings and squeezing rates with s = g/5 = kappa/4 (kappa/2pi =
/// 1 MHz), the sample conditions of the two-port characterization figures.
/// Zero detunings; callers pick the variant.
inline SystemParams preset_twoport() {
    SystemParams p;
    const double kappa = two_pi * 1.0e6;
    p.kappa_a = kappa;
    p.kappa_b = kappa;
    p.g = 1.25 * kappa;
    p.s_a = 0.25 * kappa;
    p.s_b = 0.25 * kappa;
    return p;
}

inline SystemParams preset_twoport_ideal() {
    SystemParams p = preset_twoport();
    p.s_a = p.s_b = 0.0;
    return p;
}

/// Sensing-regime anchor (kappa_a << kappa_l << kappa_b): g/2pi = 7.3 MHz,
/// kappa_l/2pi = 960 kHz, kappa_b/2pi = 20.6 MHz, s_a = 0.07 g, s_b = 0.14 g.
/// The signal port is kappa_l/1000, small enough that every reported ratio is
/// insensitive to it. Zero detunings; policies set them.
inline SystemParams preset_sensing() {
    SystemParams p;
    p.g = two_pi * 7.3e6;
    p.s_a = 0.07 * p.g;
    p.s_b = 0.14 * p.g;
    p.kappa_a = two_pi * 960.0;
    p.kappa_l = two_pi * 0.96e6;
    p.kappa_b = two_pi * 20.6e6;
    return p;
}

/// Pump scale that lands the anchor on the target cooperativity.
inline double lambda_for_cooperativity(const SystemParams& anchor, double c_target) {
    return std::sqrt(c_target / cooperativity(anchor));
}

}  // namespace baesim
