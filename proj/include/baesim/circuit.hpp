#pragma once

#include <array>
#include <cmath>
#include <optional>

#include "baesim/params.hpp"

namespace baesim {

inline constexpr double hbar = 1.054571817e-34;              // J s
inline constexpr double electron_charge = 1.602176634e-19;   // C
inline constexpr double reduced_flux_quantum = hbar / (2.0 * electron_charge);  // Wb

/// Ring-modulator circuit constants. Impedances are the characteristic
/// impedances of the physical resonant modes associated with the coordinates
/// phi_A, phi_B, phi_C (the inductive-energy weight of the common coordinate
/// is folded into the user-supplied Z_C). Bare frequencies are pre-Kerr.
struct JrmCircuit {
    double e_j = 0.0;       // Josephson energy [J]
    double phi_ext = 0.0;   // reduced external flux [rad]
    double z_a = 0.0, z_b = 0.0, z_c = 0.0;          // [ohm]
    double omega_a = 0.0, omega_b = 0.0, omega_c = 0.0;  // bare mode freqs [rad/s]

    static JrmCircuit from_critical_current(double i0, double phi_ext, double z_a, double z_b,
                                            double z_c, double omega_a, double omega_b,
                                            double omega_c) {
        return {i0 * reduced_flux_quantum, phi_ext, z_a, z_b, z_c, omega_a, omega_b, omega_c};
    }

    void validate() const {
        if (!(z_a > 0.0) || !(z_b > 0.0) || !(z_c > 0.0))
            throw ConfigError("JrmCircuit: impedances must be > 0");
        if (!(e_j > 0.0)) throw ConfigError("JrmCircuit: Josephson energy must be > 0");
    }

    /// Zero-point spread of a mode coordinate: sqrt(hbar Z / 2) / phi0.
    static double zero_point_phase(double z) {
        return std::sqrt(hbar * z / 2.0) / reduced_flux_quantum;
    }
};

struct NodeFluxes {
    double phi_1 = 0.0, phi_2 = 0.0, phi_3 = 0.0, phi_4 = 0.0;  // [Wb]
};

struct ModeCoordinates {
    double phi_a = 0.0, phi_b = 0.0, phi_c = 0.0;  // dimensionless
};

/// Differential and common ring coordinates from the four node fluxes. The
/// uniform combination only shifts the overall potential and is dropped.
inline ModeCoordinates mode_coordinates(const NodeFluxes& n) {
    const double p0 = reduced_flux_quantum;
    return {(n.phi_1 - n.phi_2) / p0, (n.phi_3 - n.phi_4) / p0,
            (n.phi_1 + n.phi_2 - n.phi_3 - n.phi_4) / (2.0 * p0)};
}

/// Full four-junction ring potential [J]:
/// -4 E_J [cos(a/2) cos(b/2) cos(c) cos(x/4) + sin(a/2) sin(b/2) sin(c) sin(x/4)].
inline double ring_energy_exact(double phi_a, double phi_b, double phi_c, double phi_ext,
                                double e_j) {
    const double cx = std::cos(0.25 * phi_ext), sx = std::sin(0.25 * phi_ext);
    return -4.0 * e_j *
           (std::cos(0.5 * phi_a) * std::cos(0.5 * phi_b) * std::cos(phi_c) * cx +
            std::sin(0.5 * phi_a) * std::sin(0.5 * phi_b) * std::sin(phi_c) * sx);
}

/// Taylor expansion of the ring potential about zero coordinates, truncated
/// at the given order (3 or 4). The quartic coefficients are the exact
/// expansion of the ring potential; note the a^2 b^2 weight is 1/16.
inline double ring_energy_series(double phi_a, double phi_b, double phi_c, double phi_ext,
                                 double e_j, int order) {
    if (order != 3 && order != 4) throw ConfigError("ring_energy_series: order must be 3 or 4");
    const double cx = std::cos(0.25 * phi_ext), sx = std::sin(0.25 * phi_ext);
    const double a2 = phi_a * phi_a, b2 = phi_b * phi_b, c2 = phi_c * phi_c;
    double e = -4.0 * e_j * cx;
    e += 0.5 * e_j * cx * (a2 + b2 + 4.0 * c2);
    e += -e_j * sx * phi_a * phi_b * phi_c;
    if (order == 4) {
        e += -e_j * cx *
             (a2 * a2 / 96.0 + b2 * b2 / 96.0 + c2 * c2 / 6.0 + a2 * b2 / 16.0 + a2 * c2 / 4.0 +
              b2 * c2 / 4.0);
    }
    return e;
}

/// Self- and cross-Kerr rates [rad/s], coefficients of (m + m^dag)^4 and
/// (m + m^dag)^2 (n + n^dag)^2 after substituting the zero-point spreads
/// into the quartic ring terms. All share the -E_J cos(phi_ext/4) factor.
struct KerrCoefficients {
    double k_aa = 0.0, k_bb = 0.0, k_cc = 0.0;
    double k_ab = 0.0, k_ac = 0.0, k_bc = 0.0;
};

inline KerrCoefficients kerr_coefficients(const JrmCircuit& c) {
    c.validate();
    const double pa = JrmCircuit::zero_point_phase(c.z_a);
    const double pb = JrmCircuit::zero_point_phase(c.z_b);
    const double pc = JrmCircuit::zero_point_phase(c.z_c);
    const double pref = -(c.e_j / hbar) * std::cos(0.25 * c.phi_ext);
    KerrCoefficients k;
    k.k_aa = pref * pa * pa * pa * pa / 96.0;
    k.k_bb = pref * pb * pb * pb * pb / 96.0;
    k.k_cc = pref * pc * pc * pc * pc / 6.0;
    k.k_ab = pref * pa * pa * pb * pb / 16.0;
    k.k_ac = pref * pa * pa * pc * pc / 4.0;
    k.k_bc = pref * pb * pb * pc * pc / 4.0;
    return k;
}

/// Three-wave rate g3 [rad/s], coefficient of (a+a^dag)(b+b^dag)(c+c^dag).
inline double three_wave_rate(const JrmCircuit& c) {
    c.validate();
    const double pa = JrmCircuit::zero_point_phase(c.z_a);
    const double pb = JrmCircuit::zero_point_phase(c.z_b);
    const double pc = JrmCircuit::zero_point_phase(c.z_c);
    return -(c.e_j / hbar) * std::sin(0.25 * c.phi_ext) * pa * pb * pc;
}

/// Kerr-shifted mode frequencies for the given mean occupancies:
/// omega_A = omega_a + 12 K_AA <n_a + 1/2> + 4 K_AB <n_b + 1/2> + 4 K_AC <n_c + 1/2>,
/// and cyclic analogues.
inline std::array<double, 3> kerr_shifted_frequencies(const JrmCircuit& c, double n_a, double n_b,
                                                      double n_c) {
    if (n_a < 0.0 || n_b < 0.0 || n_c < 0.0)
        throw ConfigError("kerr_shifted_frequencies: occupancies must be >= 0");
    const KerrCoefficients k = kerr_coefficients(c);
    const double oa = c.omega_a + 12.0 * k.k_aa * (n_a + 0.5) + 4.0 * k.k_ab * (n_b + 0.5) +
                      4.0 * k.k_ac * (n_c + 0.5);
    const double ob = c.omega_b + 12.0 * k.k_bb * (n_b + 0.5) + 4.0 * k.k_ab * (n_a + 0.5) +
                      4.0 * k.k_bc * (n_c + 0.5);
    const double oc = c.omega_c + 12.0 * k.k_cc * (n_c + 0.5) + 4.0 * k.k_ac * (n_a + 0.5) +
                      4.0 * k.k_bc * (n_b + 0.5);
    return {oa, ob, oc};
}

/// Stiff two-tone pump on the C mode. delta_sigma / delta_delta are the
/// applied detunings of the sum and difference tones; the half-pump-frame
/// detunings are delta_d = (dS - dD)/2 and delta_c = (dS + dD)/2.
struct PumpDrive {
    double c_amp = 0.0;        // |<c>|, dimensionless
    double phase = 0.0;        // phase between the two tones [rad]
    double delta_sigma = 0.0;  // [rad/s]
    double delta_delta = 0.0;  // [rad/s]

    double delta_d() const { return 0.5 * (delta_sigma - delta_delta); }
    double delta_c() const { return 0.5 * (delta_sigma + delta_delta); }

    static PumpDrive from_frame_detunings(double c_amp, double phase, double delta_d,
                                          double delta_c) {
        return {c_amp, phase, delta_c + delta_d, delta_c - delta_d};
    }

    /// Time-averaged pump occupancy of the two-tone classical drive.
    double default_occupancy() const { return 2.0 * c_amp * c_amp; }
};

/// Effective rates of the two-mode model derived from the circuit and drive.
/// The stiff-pump regime (pump power far above the amplified vacuum) is
/// assumed, not enforced.
struct EffectiveRates {
    double g3 = 0.0;   // signed three-wave rate
    double g = 0.0;    // |g3| * c_amp
    double s_a = 0.0;  // 2 K_AC c_amp^2 (signed)
    double s_b = 0.0;  // 2 K_BC c_amp^2 (signed)
    double omega_a_shifted = 0.0, omega_b_shifted = 0.0, omega_c_shifted = 0.0;
    double pump_omega_delta = 0.0;  // applied difference-tone frequency
    double pump_omega_sigma = 0.0;  // applied sum-tone frequency
};

inline EffectiveRates effective_rates(const JrmCircuit& c, const PumpDrive& d,
                                      std::optional<double> n_c = std::nullopt) {
    const KerrCoefficients k = kerr_coefficients(c);
    EffectiveRates r;
    r.g3 = three_wave_rate(c);
    r.g = std::abs(r.g3) * d.c_amp;
    r.s_a = 2.0 * k.k_ac * d.c_amp * d.c_amp;
    r.s_b = 2.0 * k.k_bc * d.c_amp * d.c_amp;
    const double occ_c = n_c.value_or(d.default_occupancy());
    const auto shifted = kerr_shifted_frequencies(c, 0.0, 0.0, occ_c);
    r.omega_a_shifted = shifted[0];
    r.omega_b_shifted = shifted[1];
    r.omega_c_shifted = shifted[2];
    r.pump_omega_delta = (r.omega_b_shifted - r.omega_a_shifted) + d.delta_delta;
    r.pump_omega_sigma = (r.omega_b_shifted + r.omega_a_shifted) + d.delta_sigma;
    return r;
}

/// Ready-to-use two-mode parameters for the derived rates and couplings.
inline SystemParams make_system_params(const EffectiveRates& r, const PumpDrive& d, double kappa_a,
                                       double kappa_l, double kappa_b) {
    SystemParams p;
    p.g = r.g;
    p.s_a = r.s_a;
    p.s_b = r.s_b;
    p.kappa_a = kappa_a;
    p.kappa_l = kappa_l;
    p.kappa_b = kappa_b;
    p.delta_d = d.delta_d();
    p.delta_c = d.delta_c();
    p.pump_phase = d.phase;
    p.validate();
    return p;
}

}  // namespace baesim
