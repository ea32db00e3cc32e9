#pragma once

#include <cmath>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "baesim/metrics.hpp"
#include "baesim/stability.hpp"
#include "baesim/sweep.hpp"

namespace baesim {

struct UnstableError : NumericalError {
    StabilityReport report;
    explicit UnstableError(StabilityReport r)
        : NumericalError("system is unstable (margin " + std::to_string(r.margin) + ")"),
          report(std::move(r)) {}
};

/// Controls for the scan-rate integral and the quantum-limited baseline.
struct SreConfig {
    std::string baseline = "matched-QL-v1";  // or "fixed-QL-v1"
    double theta = 0.5 * M_PI;               // readout angle for the integral
    double window_factor = 8.0;              // initial half-window in units of the rate scale
    double resolution_factor = 16.0;         // points per smallest damping rate
    double tail_rel_tol = 1e-4;              // window-doubling stop (contract: < 1e-3)
    int max_doublings = 8;
};

namespace detail {

/// SNR(omega) at a fixed readout angle, one dense 4x4 solve per call.
class SnrEvaluator {
  public:
    SnrEvaluator(const SystemParams& p, double theta) : ports_(PortConfig::standard(p)) {
        m_ = drift_matrix(p);
        xi_ = input_matrix(p, ports_);
        const int np = static_cast<int>(ports_.n_ports());
        weights_.resize(np);
        for (int k = 0; k < np; ++k) weights_[k] = 2.0 * ports_.ports[k].occupancy + 1.0;
        sig_ = ports_.index_of("signal");
        const int rdo = ports_.index_of("readout");
        Eigen::VectorXd u = Eigen::VectorXd::Zero(2 * np);
        u(2 * rdo) = std::cos(theta);
        u(2 * rdo + 1) = std::sin(theta);
        xi_u_ = xi_ * u;
        u_ = u;
    }

    double operator()(double omega) const {
        Eigen::Matrix4cd l = Eigen::Matrix4cd::Identity() * cplx(0.0, omega) - m_.cast<cplx>();
        const Eigen::Vector4cd z = l.transpose().partialPivLu().solve(xi_u_.cast<cplx>());
        // row of S for the measured quadrature: u^T - z^T Xi
        Eigen::RowVectorXcd row = u_.transpose().cast<cplx>() - z.transpose() * xi_.cast<cplx>();
        double g_sig = 0.0, noise = 0.0;
        for (int k = 0; k < static_cast<int>(weights_.size()); ++k) {
            const double gk = std::norm(row(2 * k)) + std::norm(row(2 * k + 1));
            noise += weights_[k] * gk;
            if (k == sig_) g_sig = gk;
        }
        return noise > 0.0 ? g_sig / noise : 0.0;
    }

  private:
    PortConfig ports_;
    Eigen::Matrix4d m_;
    Eigen::MatrixXd xi_;
    Eigen::VectorXd u_;
    Eigen::Vector4d xi_u_;
    std::vector<double> weights_;
    int sig_ = 0;
};

/// Composite Simpson of f^2 over [-w, w] with 2*half+1 points.
template <class F>
inline double simpson_sq(F&& f, double w, int half) {
    const int n = 2 * half;  // even interval count
    const double hstep = w / half;
    auto sq = [&](double x) { const double v = f(x); return v * v; };
    double sum = sq(-w) + sq(w);
    for (int i = 1; i < n; ++i) sum += sq(-w + hstep * i) * (i % 2 ? 4.0 : 2.0);
    return sum * hstep / 3.0;
}

}  // namespace detail

/// Spectral scan rate, integral of SNR(omega, theta)^2 over the line. The
/// window doubles until the result moves by less than tail_rel_tol (the
/// documented contract is < 0.1%). Throws UnstableError on unstable systems.
inline double scan_rate(const SystemParams& p, const SreConfig& cfg = {}) {
    StabilityReport rep = beta_roots(p);
    if (rep.verdict == Verdict::unstable) throw UnstableError(std::move(rep));
    if (p.g == 0.0) return 0.0;  // signal never reaches the readout

    detail::SnrEvaluator snr(p, cfg.theta);
    const double scale = std::max(p.max_rate(), 1e-300);
    const double min_damping = std::min(p.kappa_a_total(), p.kappa_b);
    if (!(min_damping > 0.0)) throw ConfigError("scan_rate: both modes need nonzero damping");
    double w = cfg.window_factor * scale;
    int half = static_cast<int>(std::ceil(w / (min_damping / cfg.resolution_factor)));
    double result = detail::simpson_sq(snr, w, half);
    for (int d = 0; d < cfg.max_doublings; ++d) {
        w *= 2.0;
        half *= 2;
        const double next = detail::simpson_sq(snr, w, half);
        const double change = std::abs(next - result);
        result = next;
        if (change <= cfg.tail_rel_tol * std::max(std::abs(next), 1e-300)) return result;
    }
    throw NumericalError("scan_rate: window doubling did not converge");
}

/// Scan rate of the quantum-limited reference measurement: a two-quadrature
/// readout of the same science mode (kappa_a signal, kappa_l loss) through a
/// measurement port kappa_m,
///   SNR_QL(omega) = kappa_a kappa_m / [((kappa_a + kappa_l + kappa_m)/2)^2 + omega^2] / 2,
/// whose squared integral is pi kappa_a^2 kappa_m^2 / (k0 + kappa_m)^3 with
/// k0 = kappa_a + kappa_l.
///   matched-QL-v1: kappa_m maximizes the integral (analytically 2 k0).
///   fixed-QL-v1:   kappa_m = k0.
inline double baseline_scan_rate(const SystemParams& p, const SreConfig& cfg = {}) {
    const double k0 = p.kappa_a + p.kappa_l;
    if (!(p.kappa_a > 0.0))
        throw ConfigError("baseline_scan_rate: reference needs kappa_a > 0");
    auto rate = [&](double km) {
        const double tot = k0 + km;
        return M_PI * p.kappa_a * p.kappa_a * km * km / (tot * tot * tot);
    };
    if (cfg.baseline == "fixed-QL-v1") return rate(k0);
    if (cfg.baseline != "matched-QL-v1")
        throw ConfigError("baseline_scan_rate: unknown convention " + cfg.baseline);
    const auto best = detail::golden_max([&](double lg) { return rate(std::exp(lg)); },
                                         std::log(k0) - 6.0, std::log(k0) + 6.0, 1e-12);
    return best.snr;
}

/// Scan-rate enhancement over the quantum-limited baseline convention.
inline double sre(const SystemParams& p, const SreConfig& cfg = {}) {
    return scan_rate(p, cfg) / baseline_scan_rate(p, cfg);
}

/// SRE along the pump-scaling path under a detuning policy. Instability is
/// recorded per row (sre = NaN, stable = 0), not thrown.
/// Columns: lambda, cooperativity, sre, stable, margin.
inline SweepResult sre_vs_cooperativity(const SystemParams& anchor,
                                        const std::vector<double>& lambdas, DetuningPolicy policy,
                                        const SreConfig& cfg = {}) {
    SweepResult out;
    out.name = "sre-vs-cooperativity";
    out.columns = {"lambda", "cooperativity", "sre", "stable", "margin"};
    for (double lam : lambdas) {
        const SystemParams q = scaled_with_policy(anchor, lam, policy);
        const StabilityReport rep = beta_roots(q);
        double value = std::numeric_limits<double>::quiet_NaN();
        if (rep.verdict == Verdict::stable) value = sre(q, cfg);
        out.add_row({lam, cooperativity(q), value,
                     rep.verdict == Verdict::stable ? 1.0 : 0.0, rep.margin});
    }
    return out;
}

/// SRE over the detuning plane. Unstable cells are flagged and carry NaN.
/// Columns: delta_d, delta_c, sre, stable, margin.
inline SweepResult sre_map(const SystemParams& p, const std::vector<double>& delta_d_values,
                           const std::vector<double>& delta_c_values, const SreConfig& cfg = {}) {
    SweepResult out;
    out.name = "sre-map";
    out.columns = {"delta_d", "delta_c", "sre", "stable", "margin"};
    for (double dd : delta_d_values) {
        for (double dc : delta_c_values) {
            SystemParams q = p;
            q.delta_d = dd;
            q.delta_c = dc;
            const StabilityReport rep = beta_roots(q);
            double value = std::numeric_limits<double>::quiet_NaN();
            if (rep.verdict == Verdict::stable) value = sre(q, cfg);
            out.add_row({dd, dc, value, rep.verdict == Verdict::stable ? 1.0 : 0.0, rep.margin});
        }
    }
    return out;
}

struct DetuningOptimum {
    double delta_d = 0.0;
    double delta_c = 0.0;
    double sre = 0.0;
    bool converged = false;
    int evaluations = 0;
};

namespace detail {

struct NmPoint {
    double x = 0.0, y = 0.0, f = 0.0;
};

}  // namespace detail

/// Detuning optimizer: coarse stable-region grid seed, then Nelder-Mead with
/// an instability penalty. Non-convergence returns the best point found with
/// converged = false. The seed only affects restart jitter.
inline DetuningOptimum optimize_detunings(const SystemParams& p, const SreConfig& cfg = {},
                                          std::uint64_t seed = 1, int restarts = 2) {
    const double scale = std::max(p.max_rate(), 1e-300);
    const double span = std::max({3.0 * std::abs(p.s_a), 3.0 * std::abs(p.s_b),
                                  0.25 * std::min(p.kappa_a_total(), p.kappa_b)});
    int evals = 0;
    auto objective = [&](double dd, double dc) {
        SystemParams q = p;
        q.delta_d = dd;
        q.delta_c = dc;
        ++evals;
        const StabilityReport rep = beta_roots(q);
        if (rep.verdict != Verdict::stable)
            return 1e6 * (1.0 + std::max(0.0, -rep.margin) / scale);
        return -sre(q, cfg);
    };

    // coarse seed
    detail::NmPoint best{0.0, 0.0, std::numeric_limits<double>::infinity()};
    const int nc = 13;
    for (int i = 0; i < nc; ++i) {
        for (int j = 0; j < nc; ++j) {
            const double dd = -span + 2.0 * span * i / (nc - 1);
            const double dc = -span + 2.0 * span * j / (nc - 1);
            const double f = objective(dd, dc);
            if (f < best.f) best = {dd, dc, f};
        }
    }

    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> jitter(-0.2 * span, 0.2 * span);
    DetuningOptimum out;
    out.sre = -best.f;

    for (int attempt = 0; attempt <= restarts; ++attempt) {
        detail::NmPoint s0 = best;
        if (attempt > 0) {
            s0.x += jitter(rng);
            s0.y += jitter(rng);
            s0.f = objective(s0.x, s0.y);
        }
        const double h = 0.1 * span;
        std::array<detail::NmPoint, 3> sim{
            s0, {s0.x + h, s0.y, objective(s0.x + h, s0.y)},
            {s0.x, s0.y + h, objective(s0.x, s0.y + h)}};
        bool converged = false;
        for (int it = 0; it < 400; ++it) {
            std::sort(sim.begin(), sim.end(),
                      [](const auto& a, const auto& b) { return a.f < b.f; });
            if (std::abs(sim[2].f - sim[0].f) <=
                1e-6 * std::max(std::abs(sim[0].f), 1e-12)) {
                converged = true;
                break;
            }
            const double cx = 0.5 * (sim[0].x + sim[1].x);
            const double cy = 0.5 * (sim[0].y + sim[1].y);
            auto eval = [&](double t) {
                const double x = cx + t * (sim[2].x - cx);
                const double y = cy + t * (sim[2].y - cy);
                return detail::NmPoint{x, y, objective(x, y)};
            };
            detail::NmPoint refl = eval(-1.0);
            if (refl.f < sim[0].f) {
                detail::NmPoint expd = eval(-2.0);
                sim[2] = expd.f < refl.f ? expd : refl;
            } else if (refl.f < sim[1].f) {
                sim[2] = refl;
            } else {
                detail::NmPoint contr = eval(refl.f < sim[2].f ? -0.5 : 0.5);
                if (contr.f < std::min(refl.f, sim[2].f)) {
                    sim[2] = contr;
                } else {
                    for (int k = 1; k < 3; ++k) {
                        sim[k].x = 0.5 * (sim[k].x + sim[0].x);
                        sim[k].y = 0.5 * (sim[k].y + sim[0].y);
                        sim[k].f = objective(sim[k].x, sim[k].y);
                    }
                }
            }
        }
        std::sort(sim.begin(), sim.end(), [](const auto& a, const auto& b) { return a.f < b.f; });
        if (sim[0].f < best.f) best = sim[0];
        if (converged && -best.f > out.sre - 1e-12) out.converged = true;
    }
    out.delta_d = best.x;
    out.delta_c = best.y;
    out.sre = -best.f;
    out.evaluations = evals;
    if (best.f >= 1e6) out.converged = false;  // never left the unstable plateau
    return out;
}

}  // namespace baesim
