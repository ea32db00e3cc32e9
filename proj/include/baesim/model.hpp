#pragma once

#include <Eigen/Dense>

#include "baesim/params.hpp"

namespace baesim {

/// Symplectic form for the (X_A, Y_A, X_B, Y_B) ordering, [X, Y] = i.
inline Eigen::Matrix4d symplectic_form() {
    Eigen::Matrix4d j = Eigen::Matrix4d::Zero();
    j(XA, YA) = 1.0;
    j(YA, XA) = -1.0;
    j(XB, YB) = 1.0;
    j(YB, XB) = -1.0;
    return j;
}

/// Block-diagonal CCW rotation of both modes' quadrature pairs.
inline Eigen::Matrix4d mode_rotation(double theta_a, double theta_b) {
    Eigen::Matrix4d r = Eigen::Matrix4d::Zero();
    const double ca = std::cos(theta_a), sa = std::sin(theta_a);
    const double cb = std::cos(theta_b), sb = std::sin(theta_b);
    r(XA, XA) = ca; r(XA, YA) = -sa;
    r(YA, XA) = sa; r(YA, YA) = ca;
    r(XB, XB) = cb; r(XB, YB) = -sb;
    r(YB, XB) = sb; r(YB, YB) = cb;
    return r;
}

/// Quadratic form h of the interaction Hamiltonian, H = (1/2) v^T h v with
/// v = (X_A, Y_A, X_B, Y_B), at zero pump phase:
///   2 g X_A X_B
///   + (s_m/2) [cos(psi_m) (X_m^2 - Y_m^2) + sin(psi_m) (X_m Y_m + Y_m X_m)]
///   - (delta_d/2)(X_A^2 + Y_A^2) - (delta_c/2)(X_B^2 + Y_B^2).
inline Eigen::Matrix4d interaction_quadratic_form(const SystemParams& p) {
    Eigen::Matrix4d h = Eigen::Matrix4d::Zero();
    const double ca = std::cos(p.sms_phase_a), sa = std::sin(p.sms_phase_a);
    const double cb = std::cos(p.sms_phase_b), sb = std::sin(p.sms_phase_b);
    h(XA, XA) = p.s_a * ca - p.delta_d;
    h(YA, YA) = -p.s_a * ca - p.delta_d;
    h(XA, YA) = h(YA, XA) = p.s_a * sa;
    h(XB, XB) = p.s_b * cb - p.delta_c;
    h(YB, YB) = -p.s_b * cb - p.delta_c;
    h(XB, YB) = h(YB, XB) = p.s_b * sb;
    h(XA, XB) = h(XB, XA) = 2.0 * p.g;
    return h;
}

/// Drift matrix M of dv/dt = M v + (noise). The interaction part is
/// Omega * h with the pump phase entering as a phi/2 rotation of the
/// quadratic form (the damping is isotropic and does not rotate).
///
/// For pump_phase = sms_phase = 0 the rows read, with kA = kappa_a + kappa_l:
///   dX_A/dt = -kA/2 X_A - (s_a + delta_d) Y_A
///   dY_A/dt = -(s_a - delta_d) X_A - kA/2 Y_A - 2 g X_B
///   dX_B/dt = -kappa_b/2 X_B - (s_b + delta_c) Y_B
///   dY_B/dt = -2 g X_A - (s_b - delta_c) X_B - kappa_b/2 Y_B
inline Eigen::Matrix4d drift_matrix(const SystemParams& p) {
    p.validate();
    Eigen::Matrix4d h = interaction_quadratic_form(p);
    if (p.pump_phase != 0.0) {
        const Eigen::Matrix4d r = mode_rotation(0.5 * p.pump_phase, 0.5 * p.pump_phase);
        h = (r * h * r.transpose()).eval();
    }
    Eigen::Matrix4d m = symplectic_form() * h;
    const double ka2 = 0.5 * p.kappa_a_total();
    const double kb2 = 0.5 * p.kappa_b;
    m(XA, XA) -= ka2;
    m(YA, YA) -= ka2;
    m(XB, XB) -= kb2;
    m(YB, YB) -= kb2;
    return m;
}

/// Input coupling Xi of dv/dt = M v + Xi v_in: 4 x 2N with a sqrt(rate)
/// identity block per port on the quadrature pair of the mode it couples to.
inline Eigen::MatrixXd input_matrix(const SystemParams& p, const PortConfig& ports) {
    ports.validate_against(p);
    Eigen::MatrixXd xi = Eigen::MatrixXd::Zero(4, 2 * static_cast<int>(ports.n_ports()));
    for (std::size_t k = 0; k < ports.n_ports(); ++k) {
        const int row = ports.ports[k].mode == ModeId::A ? XA : XB;
        const double c = std::sqrt(ports.ports[k].rate);
        xi(row, 2 * static_cast<int>(k)) = c;
        xi(row + 1, 2 * static_cast<int>(k) + 1) = c;
    }
    return xi;
}

}  // namespace baesim
