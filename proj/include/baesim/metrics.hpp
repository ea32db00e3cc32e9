#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "baesim/scattering.hpp"

namespace baesim {

/// Squared-magnitude gains per grid point, measured at the readout output
/// (g_*) and at the science X quadrature (b_*, the backactions). g_loss sums
/// the loss-bath columns; b_a / b_b keep their two-port definitions (signal
/// and readout columns at the science output row).
struct GainSet {
    std::vector<double> g_a, g_loss, g_b, b_a, b_b;
};

namespace detail {

inline double row_power(const Eigen::MatrixXcd& s, int row, int col0) {
    return std::norm(s(row, col0)) + std::norm(s(row, col0 + 1));
}

}  // namespace detail

inline GainSet gains(const ScatteringMatrix& sm) {
    const int sig = sm.ports.index_of("signal");
    const int rdo = sm.ports.index_of("readout");
    const int los = sm.ports.index_of("loss");
    if (sig < 0 || rdo < 0) throw ConfigError("gains: needs signal and readout ports");
    const int yb_row = 2 * rdo + 1;
    const int xa_row = 2 * sig;
    GainSet g;
    const std::size_t n = sm.grid.size();
    g.g_a.resize(n); g.g_loss.assign(n, 0.0); g.g_b.resize(n);
    g.b_a.resize(n); g.b_b.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        const auto& s = sm.s[i];
        g.g_a[i] = detail::row_power(s, yb_row, 2 * sig);
        g.g_b[i] = detail::row_power(s, yb_row, 2 * rdo);
        if (los >= 0) g.g_loss[i] = detail::row_power(s, yb_row, 2 * los);
        g.b_a[i] = detail::row_power(s, xa_row, 2 * sig);
        g.b_b[i] = detail::row_power(s, xa_row, 2 * rdo);
    }
    return g;
}

/// Readout-quadrature rotation: the readout output pair is rotated by
/// R = [[cos, sin], [-sin, cos]] and every input pair by R^T, so the rotated
/// rows read the quadrature at angle theta from X_B. Internal rows rotate on
/// the input side only.
inline ScatteringMatrix rotate_scattering(const ScatteringMatrix& sm, double theta) {
    const int rdo = sm.ports.index_of("readout");
    if (rdo < 0) throw ConfigError("rotate_scattering: needs a readout port");
    ScatteringMatrix out = sm;
    out.readout_rotation = sm.readout_rotation + theta;
    Eigen::Matrix2d r;
    r << std::cos(theta), std::sin(theta), -std::sin(theta), std::cos(theta);
    const int np = static_cast<int>(sm.ports.n_ports());
    Eigen::MatrixXd right = Eigen::MatrixXd::Zero(2 * np, 2 * np);
    for (int k = 0; k < np; ++k) right.block<2, 2>(2 * k, 2 * k) = r.transpose();
    for (std::size_t i = 0; i < sm.s.size(); ++i) {
        out.s[i].block(2 * rdo, 0, 2, 2 * np) =
            (r.cast<cplx>() * sm.s[i].block(2 * rdo, 0, 2, 2 * np)).eval();
        out.s[i] = (out.s[i] * right.cast<cplx>()).eval();
        out.internal[i] = (sm.internal[i] * right.cast<cplx>()).eval();
    }
    return out;
}

/// SNR normalization: signal-port gain as a fraction of the total
/// thermally-weighted output noise at the measured quadrature,
///   SNR = G_sig / sum_p (2 n_p + 1) G_p,
/// dimensionless and bounded to [0, 1] in vacuum.
inline double snr_at(const ScatteringMatrix& sm, std::size_t iw, double theta) {
    const int sig = sm.ports.index_of("signal");
    const int rdo = sm.ports.index_of("readout");
    if (sig < 0 || rdo < 0) throw ConfigError("snr_at: needs signal and readout ports");
    const auto& s = sm.s[iw];
    const int np = static_cast<int>(sm.ports.n_ports());
    const double c = std::cos(theta), sn = std::sin(theta);
    Eigen::RowVectorXcd row =
        c * s.row(2 * rdo) + sn * s.row(2 * rdo + 1);  // quadrature at angle theta from X_B
    double g_sig = 0.0, noise = 0.0;
    for (int k = 0; k < np; ++k) {
        const double gk = std::norm(row(2 * k)) + std::norm(row(2 * k + 1));
        noise += (2.0 * sm.ports.ports[k].occupancy + 1.0) * gk;
        if (k == sig) g_sig = gk;
    }
    if (noise <= 0.0) throw NumericalError("snr_at: vanishing output noise");
    return g_sig / noise;
}

struct SnrSpectrum {
    std::vector<double> snr;  // per grid point
    double theta = 0.0;
    std::string normalization = "gain-fraction-v1";
};

inline SnrSpectrum snr_spectrum(const ScatteringMatrix& sm, double theta) {
    SnrSpectrum out;
    out.theta = theta;
    out.snr.resize(sm.grid.size());
    for (std::size_t i = 0; i < sm.grid.size(); ++i) out.snr[i] = snr_at(sm, i, theta);
    return out;
}

/// Sweep of SNR over the readout angle at a fixed grid point.
inline std::vector<std::pair<double, double>> snr_vs_theta(const ScatteringMatrix& sm,
                                                           std::size_t iw, int n_theta = 180) {
    std::vector<std::pair<double, double>> out;
    out.reserve(n_theta);
    for (int k = 0; k < n_theta; ++k) {
        const double th = M_PI * k / n_theta;  // period pi
        out.emplace_back(th, snr_at(sm, iw, th));
    }
    return out;
}

struct VariationalPoint {
    double theta = 0.0;
    double snr = 0.0;
};

namespace detail {

/// Golden-section maximization on [lo, hi]; f assumed unimodal there.
template <class F>
inline VariationalPoint golden_max(F&& f, double lo, double hi, double tol) {
    const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
    double a = lo, b = hi;
    double x1 = b - gr * (b - a), x2 = a + gr * (b - a);
    double f1 = f(x1), f2 = f(x2);
    while (b - a > tol) {
        if (f1 < f2) {
            a = x1; x1 = x2; f1 = f2;
            x2 = a + gr * (b - a); f2 = f(x2);
        } else {
            b = x2; x2 = x1; f2 = f1;
            x1 = b - gr * (b - a); f1 = f(x1);
        }
    }
    const double xm = 0.5 * (a + b);
    return {xm, f(xm)};
}

}  // namespace detail

/// Best readout angle at one grid point: 1-degree coarse scan refined by
/// golden section to 1e-6 rad.
inline VariationalPoint best_readout_angle(const ScatteringMatrix& sm, std::size_t iw) {
    const int coarse = 180;
    int best = 0;
    double best_val = -1.0;
    for (int k = 0; k < coarse; ++k) {
        const double v = snr_at(sm, iw, M_PI * k / coarse);
        if (v > best_val) { best_val = v; best = k; }
    }
    const double step = M_PI / coarse;
    const double lo = step * (best - 1), hi = step * (best + 1);
    return detail::golden_max([&](double th) { return snr_at(sm, iw, th); }, lo, hi, 1e-6);
}

/// Per-frequency envelope max_theta SNR(omega, theta).
inline std::vector<VariationalPoint> variational_snr(const ScatteringMatrix& sm) {
    std::vector<VariationalPoint> out(sm.grid.size());
    for (std::size_t i = 0; i < sm.grid.size(); ++i) out[i] = best_readout_angle(sm, i);
    return out;
}

}  // namespace baesim
