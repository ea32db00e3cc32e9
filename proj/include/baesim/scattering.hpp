#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "baesim/model.hpp"
#include "baesim/params.hpp"

namespace baesim {

using cplx = std::complex<double>;

/// Ordered probe frequencies (offsets from the half-pump frame frequency).
struct FrequencyGrid {
    std::vector<double> omega;
    bool symmetric = false;  // omega[i] == -omega[n-1-i], for integral routines

    static FrequencyGrid linear(double lo, double hi, int n) {
        if (n < 2 || !(hi > lo)) throw ConfigError("FrequencyGrid: need n >= 2 and hi > lo");
        FrequencyGrid g;
        g.omega.resize(n);
        const double step = (hi - lo) / (n - 1);
        for (int i = 0; i < n; ++i) g.omega[i] = lo + step * i;
        g.omega.back() = hi;
        g.detect_symmetry();
        return g;
    }

    /// Symmetric grid about zero with an odd point count (contains 0).
    static FrequencyGrid symmetric_about_zero(double half_width, int n) {
        if (n < 3 || n % 2 == 0)
            throw ConfigError("FrequencyGrid: symmetric grid needs odd n >= 3");
        if (!(half_width > 0.0)) throw ConfigError("FrequencyGrid: half_width must be > 0");
        FrequencyGrid g;
        g.omega.resize(n);
        const int half = n / 2;
        const double step = half_width / half;
        for (int i = 0; i < half; ++i) {
            const double w = step * (half - i);
            g.omega[i] = -w;
            g.omega[n - 1 - i] = w;
        }
        g.omega[half] = 0.0;
        g.symmetric = true;
        return g;
    }

    void detect_symmetry() {
        const std::size_t n = omega.size();
        symmetric = true;
        for (std::size_t i = 0; i < n; ++i)
            if (omega[i] != -omega[n - 1 - i]) { symmetric = false; break; }
    }

    void validate() const {
        if (omega.size() < 1) throw ConfigError("FrequencyGrid: empty");
        for (std::size_t i = 1; i < omega.size(); ++i)
            if (!(omega[i] > omega[i - 1]))
                throw ConfigError("FrequencyGrid: must be strictly increasing");
    }

    std::size_t size() const { return omega.size(); }
};

/// beta_a = (i w + kA/2)^2 - (s_a^2 - delta_d^2), kA the total damping of A;
/// beta_b likewise; beta = beta_a beta_b - 4 g^2 (s_a + delta_d)(s_b + delta_c).
/// beta equals det(i w I - M) for zero SMS phases.
struct BetaFactors {
    cplx beta_a, beta_b, beta;
};

inline BetaFactors beta_factors(const SystemParams& p, double omega) {
    const cplx da(0.5 * p.kappa_a_total(), omega);  // i w + kA/2
    const cplx db(0.5 * p.kappa_b, omega);
    BetaFactors f;
    f.beta_a = da * da - (p.s_a * p.s_a - p.delta_d * p.delta_d);
    f.beta_b = db * db - (p.s_b * p.s_b - p.delta_c * p.delta_c);
    f.beta = f.beta_a * f.beta_b -
             4.0 * p.g * p.g * (p.s_a + p.delta_d) * (p.s_b + p.delta_c);
    return f;
}

/// Frequency-domain map from every bath input quadrature to the port output
/// quadratures, plus the internal-field response rows used for backaction.
/// Convention: fields ~ e^{+i w t}, S(w) = I - Xi^T (i w I - M)^{-1} Xi,
/// internal response (i w I - M)^{-1} Xi, outputs v_out = v_in - Xi^T v.
struct ScatteringMatrix {
    SystemParams params;
    PortConfig ports;
    FrequencyGrid grid;
    std::vector<Eigen::MatrixXcd> s;         // per-omega, 2N x 2N
    std::vector<Eigen::MatrixXcd> internal;  // per-omega, 4 x 2N
    std::vector<std::uint8_t> ok;            // per-omega validity
    double readout_rotation = 0.0;           // angle applied to the readout rows
    std::string convention = "S = I - Xi^T (iwI - M)^{-1} Xi, fields ~ e^{+iwt}";

    int port_row(const std::string& id, int quad01) const {
        const int k = ports.index_of(id);
        if (k < 0) throw ConfigError("ScatteringMatrix: unknown port " + id);
        return 2 * k + quad01;
    }

    cplx entry(std::size_t iw, const std::string& out_port, int out_quad,
               const std::string& in_port, int in_quad) const {
        return s[iw](port_row(out_port, out_quad), port_row(in_port, in_quad));
    }
};

/// Generic dense solve on the 4x4 resolvent per frequency point. Entries at
/// points where the resolvent is singular (marginally stable at that omega)
/// are flagged invalid. With allow_unstable the stability precondition is
/// waived and entries are the analytic continuation used for diagnostics.
inline ScatteringMatrix solve_scattering(const SystemParams& p, const PortConfig& ports,
                                         const FrequencyGrid& grid, bool allow_unstable = false) {
    grid.validate();
    const Eigen::Matrix4d m = drift_matrix(p);
    const Eigen::MatrixXd xi = input_matrix(p, ports);

    if (!allow_unstable) {
        const double max_re = Eigen::EigenSolver<Eigen::Matrix4d>(m, false)
                                  .eigenvalues().real().maxCoeff();
        if (max_re >= 0.0)
            throw NumericalError(
                "solve_scattering: system is not stable; pass allow_unstable for diagnostics");
    }

    ScatteringMatrix out;
    out.params = p;
    out.ports = ports;
    out.grid = grid;
    const std::size_t n = grid.size();
    out.s.resize(n);
    out.internal.resize(n);
    out.ok.assign(n, 1);

    const int cols = static_cast<int>(2 * ports.n_ports());
    const Eigen::MatrixXcd xic = xi.cast<cplx>();
    const double scale = std::max(p.max_rate(), 1e-300);
    for (std::size_t i = 0; i < n; ++i) {
        Eigen::Matrix4cd l = Eigen::Matrix4cd::Identity() * cplx(0.0, grid.omega[i]) -
                             m.cast<cplx>();
        Eigen::PartialPivLU<Eigen::Matrix4cd> lu(l);
        const double point_scale = std::abs(grid.omega[i]) + scale;
        const double det_floor = 1e-14 * point_scale * point_scale * point_scale * point_scale;
        if (std::abs(lu.determinant()) <= det_floor) {
            out.ok[i] = 0;
            out.internal[i] = Eigen::MatrixXcd::Constant(
                4, cols, cplx(std::numeric_limits<double>::quiet_NaN(), 0.0));
            out.s[i] = Eigen::MatrixXcd::Constant(
                cols, cols, cplx(std::numeric_limits<double>::quiet_NaN(), 0.0));
            continue;
        }
        out.internal[i] = lu.solve(xic);
        out.s[i] = Eigen::MatrixXcd::Identity(cols, cols) - xic.transpose() * out.internal[i];
    }
    return out;
}

/// The twelve closed-form scattering parameters of the two-port system
/// (outputs at Y_B, X_A and X_B from all four port inputs).
struct ClosedFormScattering {
    cplx yb_xa, yb_ya, yb_xb, yb_yb;
    cplx xa_xa, xa_ya, xa_xb, xa_yb;
    cplx xb_xa, xb_ya, xb_xb, xb_yb;
};

/// Literal evaluation of the published two-port expressions. Only defined for
/// the configuration they were derived in: no internal loss, zero pump phase
/// and Hamiltonian SMS.
inline ClosedFormScattering closed_form_scattering(const SystemParams& p, double omega) {
    if (p.kappa_l != 0.0)
        throw ConfigError("closed_form_scattering: two-port closed forms need kappa_l = 0");
    if (p.pump_phase != 0.0 || p.sms_phase_a != 0.0 || p.sms_phase_b != 0.0)
        throw ConfigError("closed_form_scattering: needs zero pump phase and SMS phases");
    const BetaFactors f = beta_factors(p, omega);
    const cplx da(0.5 * p.kappa_a, omega);
    const cplx db(0.5 * p.kappa_b, omega);
    const double g = p.g;
    const double ad = p.s_a + p.delta_d;   // common factor nulled by delta_d = -s_a
    const double bc = p.s_b + p.delta_c;
    const double bm = p.s_b - p.delta_c;
    const double rkab = std::sqrt(p.kappa_a * p.kappa_b);
    ClosedFormScattering s;
    s.yb_xa = 2.0 * g * da * db * rkab / f.beta;
    s.yb_ya = -2.0 * g * ad * db * rkab / f.beta;
    s.yb_xb = (4.0 * g * g * ad + f.beta_a * bm) * p.kappa_b / f.beta;
    s.yb_yb = 1.0 - f.beta_a * db * p.kappa_b / f.beta;
    s.xa_xa = 1.0 - f.beta_b * da * p.kappa_a / f.beta;
    s.xa_ya = f.beta_b * ad * p.kappa_a / f.beta;
    s.xa_xb = -2.0 * g * ad * db * rkab / f.beta;
    s.xa_yb = 2.0 * g * ad * bc * rkab / f.beta;
    s.xb_xa = -2.0 * g * bc * da * rkab / f.beta;
    s.xb_ya = 2.0 * g * ad * bc * rkab / f.beta;
    s.xb_xb = 1.0 - f.beta_a * db * p.kappa_b / f.beta;
    s.xb_yb = f.beta_a * bc * p.kappa_b / f.beta;
    return s;
}

}  // namespace baesim
