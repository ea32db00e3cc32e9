#pragma once

#include <complex>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <unsupported/Eigen/MatrixFunctions>

#include "baesim/model.hpp"
#include "baesim/params.hpp"

namespace baesim {

/// Deterministic classical trajectory. v holds quadrature 4-vectors; for the
/// full model these are the demodulated envelope quadratures and a_lab/b_lab
/// carry the lab-frame fields. Divergence truncates with the flag set.
struct Trajectory {
    std::vector<double> t;
    std::vector<Eigen::Vector4d> v;
    std::vector<cplx> a_lab, b_lab;
    std::string frame, model;
    bool diverged = false;
};

namespace detail {

template <class State, class Rhs>
inline State rk4_step(const Rhs& rhs, double t, double dt, const State& y) {
    const State k1 = rhs(t, y);
    const State k2 = rhs(t + 0.5 * dt, State(y + 0.5 * dt * k1));
    const State k3 = rhs(t + 0.5 * dt, State(y + 0.5 * dt * k2));
    const State k4 = rhs(t + dt, State(y + dt * k3));
    return y + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

inline int auto_stride(long long n_steps, int stride) {
    if (stride > 0) return stride;
    const long long max_samples = 200000;
    return static_cast<int>(std::max(1LL, (n_steps + max_samples - 1) / max_samples));
}

}  // namespace detail

/// Classical RK4 integration of the linear envelope equations dv/dt = M v in
/// the half-pump frame. Requires dt <= 0.05 / max rate.
inline Trajectory integrate_rwa(const SystemParams& p, const Eigen::Vector4d& v0, double t_final,
                                double dt, int stride = 0) {
    const double scale = p.max_rate();
    if (scale > 0.0 && dt > 0.05 / scale)
        throw ConfigError("integrate_rwa: dt must be <= 0.05 / max rate");
    if (!(dt > 0.0) || !(t_final > 0.0)) throw ConfigError("integrate_rwa: need dt, T > 0");
    const Eigen::Matrix4d m = drift_matrix(p);
    const long long n = static_cast<long long>(std::ceil(t_final / dt));
    const int keep = detail::auto_stride(n, stride);

    Trajectory out;
    out.frame = "half-pump";
    out.model = "rwa";
    out.t.reserve(static_cast<std::size_t>(n / keep + 2));
    out.v.reserve(static_cast<std::size_t>(n / keep + 2));
    Eigen::Vector4d y = v0;
    out.t.push_back(0.0);
    out.v.push_back(y);
    auto rhs = [&](double, const Eigen::Vector4d& x) -> Eigen::Vector4d { return m * x; };
    for (long long i = 0; i < n; ++i) {
        y = detail::rk4_step(rhs, i * dt, dt, y);
        if (!y.allFinite() || y.cwiseAbs().maxCoeff() > 1e150) {
            out.diverged = true;
            break;
        }
        if ((i + 1) % keep == 0 || i == n - 1) {
            out.t.push_back((i + 1) * dt);
            out.v.push_back(y);
        }
    }
    return out;
}

/// State-transition matrix exp(M t) by scaling-and-squaring, the exact
/// reference for the linear envelope model.
inline Eigen::Matrix4d state_transition(const SystemParams& p, double t) {
    return (drift_matrix(p) * t).exp();
}

/// Pre-RWA model: lab-frame complex amplitudes driven by the explicit
/// two-tone pump, counter-rotating terms retained.
///   da/dt = -i omega_a a - (kA/2) a - i g (b + b*) p1(t) - i s_a (a + a*) p2(t)
/// with p1 the pump tones and p2 the oscillating part of their square,
/// normalized so the co-rotating components reproduce the g, s_a, s_b, delta
/// rates of the envelope model. Envelope frames: omega_a + delta_d and
/// omega_b + delta_c.
struct FullModelParams {
    double omega_a = 0.0, omega_b = 0.0;  // Kerr-shifted mode frequencies
    double g = 0.0, s_a = 0.0, s_b = 0.0;
    double delta_d = 0.0, delta_c = 0.0;
    double kappa_a_total = 0.0, kappa_b = 0.0;

    static FullModelParams from_system(const SystemParams& p, double omega_a, double omega_b) {
        if (p.pump_phase != 0.0 || p.sms_phase_a != 0.0 || p.sms_phase_b != 0.0)
            throw ConfigError("FullModelParams: pump and SMS phases not supported here");
        return {omega_a, omega_b, p.g,       p.s_a,
                p.s_b,   p.delta_d, p.delta_c, p.kappa_a_total(),
                p.kappa_b};
    }

    double pump_omega_delta() const { return (omega_b - omega_a) + (delta_c - delta_d); }
    double pump_omega_sigma() const { return (omega_b + omega_a) + (delta_c + delta_d); }

    double max_rate() const {
        return std::max({std::abs(g), std::abs(s_a), std::abs(s_b), std::abs(delta_d),
                         std::abs(delta_c), kappa_a_total, kappa_b});
    }

    /// The comparison against the envelope model is only meaningful when the
    /// mode frequencies dominate every rate.
    bool rwa_separation_ok(double factor = 50.0) const {
        const double r = max_rate();
        return r == 0.0 || std::min(std::abs(omega_a), std::abs(omega_b)) > factor * r;
    }
};

/// RK4 on the oscillating-coefficient equations; returns lab-frame fields and
/// envelopes demodulated with the exact analytic frame phases. Requires
/// dt <= 2*pi / (40 * pump sum frequency).
inline Trajectory integrate_full(const FullModelParams& f, cplx a0, cplx b0, double t_final,
                                 double dt, int stride = 0) {
    const double w_sigma = f.pump_omega_sigma();
    if (!(dt > 0.0) || !(t_final > 0.0)) throw ConfigError("integrate_full: need dt, T > 0");
    if (w_sigma > 0.0 && dt > two_pi / (40.0 * w_sigma))
        throw ConfigError("integrate_full: dt must resolve the sum-frequency pump");

    const double wd = f.pump_omega_delta(), ws = f.pump_omega_sigma();
    using State = Eigen::Vector4d;  // (Re a, Im a, Re b, Im b)
    auto rhs = [&](double t, const State& y) -> State {
        const cplx a(y[0], y[1]), b(y[2], y[3]);
        const double p1 = 2.0 * std::cos(wd * t) + 2.0 * std::cos(ws * t);
        const double p2 = std::cos(2.0 * wd * t) + std::cos(2.0 * ws * t) +
                          2.0 * std::cos((ws + wd) * t) + 2.0 * std::cos((ws - wd) * t);
        const cplx da = cplx(0.0, -f.omega_a) * a - 0.5 * f.kappa_a_total * a -
                        cplx(0.0, f.g) * (2.0 * b.real()) * p1 -
                        cplx(0.0, f.s_a) * (2.0 * a.real()) * p2;
        const cplx db = cplx(0.0, -f.omega_b) * b - 0.5 * f.kappa_b * b -
                        cplx(0.0, f.g) * (2.0 * a.real()) * p1 -
                        cplx(0.0, f.s_b) * (2.0 * b.real()) * p2;
        return State(da.real(), da.imag(), db.real(), db.imag());
    };

    const long long n = static_cast<long long>(std::ceil(t_final / dt));
    const int keep = detail::auto_stride(n, stride);
    Trajectory out;
    out.frame = "lab + demodulated";
    out.model = "full";
    const std::size_t cap = static_cast<std::size_t>(n / keep + 2);
    out.t.reserve(cap);
    out.v.reserve(cap);
    out.a_lab.reserve(cap);
    out.b_lab.reserve(cap);

    State y(a0.real(), a0.imag(), b0.real(), b0.imag());
    auto record = [&](double t, const State& s) {
        const cplx a(s[0], s[1]), b(s[2], s[3]);
        const cplx env_a = a * std::exp(cplx(0.0, (f.omega_a + f.delta_d) * t));
        const cplx env_b = b * std::exp(cplx(0.0, (f.omega_b + f.delta_c) * t));
        out.t.push_back(t);
        out.a_lab.push_back(a);
        out.b_lab.push_back(b);
        const double r2 = std::sqrt(2.0);
        out.v.emplace_back(r2 * env_a.real(), r2 * env_a.imag(), r2 * env_b.real(),
                           r2 * env_b.imag());
    };
    record(0.0, y);
    for (long long i = 0; i < n; ++i) {
        y = detail::rk4_step(rhs, i * dt, dt, y);
        if (!y.allFinite() || y.cwiseAbs().maxCoeff() > 1e150) {
            out.diverged = true;
            break;
        }
        if ((i + 1) % keep == 0 || i == n - 1) record((i + 1) * dt, y);
    }
    return out;
}

}  // namespace baesim
