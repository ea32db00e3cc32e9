#pragma once

#include <array>
#include <cmath>
#include <complex>

#include <Eigen/Dense>

#include "baesim/model.hpp"
#include "baesim/params.hpp"
#include "baesim/sweep.hpp"

namespace baesim {

enum class Verdict { stable, marginal, unstable };

inline const char* to_string(Verdict v) {
    switch (v) {
        case Verdict::stable: return "stable";
        case Verdict::marginal: return "marginal";
        default: return "unstable";
    }
}

/// Quartic beta(omega), coefficients ascending in omega, its roots, and the
/// verdict. A root with negative imaginary part means a growing solution
/// (fields ~ e^{+i omega t}); margin = min over roots of Im(omega).
struct StabilityReport {
    std::array<cplx, 5> coeffs{};
    std::array<cplx, 4> roots{};
    Verdict verdict = Verdict::marginal;
    double margin = 0.0;
    double tolerance = 0.0;
};

/// beta expanded in omega from its closed form (total damping on A). Valid
/// for any pump phase (a mode rotation leaves the spectrum alone) but not for
/// nonzero SMS phases.
inline std::array<cplx, 5> beta_polynomial_closed(const SystemParams& p) {
    if (p.sms_phase_a != 0.0 || p.sms_phase_b != 0.0)
        throw ConfigError("beta_polynomial_closed: SMS phases need the drift route");
    const double ka = p.kappa_a_total(), kb = p.kappa_b;
    const double ca = 0.25 * ka * ka - (p.s_a * p.s_a - p.delta_d * p.delta_d);
    const double cb = 0.25 * kb * kb - (p.s_b * p.s_b - p.delta_c * p.delta_c);
    const double gamma = 4.0 * p.g * p.g * (p.s_a + p.delta_d) * (p.s_b + p.delta_c);
    // (-w^2 + i ka w + ca)(-w^2 + i kb w + cb) - gamma
    return {cplx(ca * cb - gamma, 0.0),
            cplx(0.0, cb * ka + ca * kb),
            cplx(-(ca + cb + ka * kb), 0.0),
            cplx(0.0, -(ka + kb)),
            cplx(1.0, 0.0)};
}

/// Same quartic from the drift matrix: char poly of M in z (Faddeev-LeVerrier),
/// evaluated at z = i omega. Valid for every parameterization.
inline std::array<cplx, 5> beta_polynomial_from_drift(const SystemParams& p) {
    const Eigen::Matrix4d m = drift_matrix(p);
    // det(zI - M) = z^4 + c3 z^3 + c2 z^2 + c1 z + c0
    Eigen::Matrix4d mk = m;
    double c3 = -mk.trace();
    mk = m * (mk + c3 * Eigen::Matrix4d::Identity());
    double c2 = -0.5 * mk.trace();
    mk = m * (mk + c2 * Eigen::Matrix4d::Identity());
    double c1 = -mk.trace() / 3.0;
    mk = m * (mk + c1 * Eigen::Matrix4d::Identity());
    double c0 = -0.25 * mk.trace();
    // substitute z = i omega
    return {cplx(c0, 0.0), cplx(0.0, c1), cplx(-c2, 0.0), cplx(0.0, -c3), cplx(1.0, 0.0)};
}

inline std::array<cplx, 5> beta_polynomial(const SystemParams& p) {
    if (p.sms_phase_a == 0.0 && p.sms_phase_b == 0.0) return beta_polynomial_closed(p);
    return beta_polynomial_from_drift(p);
}

namespace detail {

inline cplx poly_eval(const std::array<cplx, 5>& c, cplx x) {
    cplx v = c[4];
    for (int k = 3; k >= 0; --k) v = v * x + c[k];
    return v;
}

inline cplx poly_deriv_eval(const std::array<cplx, 5>& c, cplx x) {
    cplx v = 4.0 * c[4];
    for (int k = 3; k >= 1; --k) v = v * x + static_cast<double>(k) * c[k];
    return v;
}

}  // namespace detail

/// All four roots by simultaneous (Durand-Kerner) iteration seeded on a
/// circle, each polished by a few Newton steps. Coefficients are normalized
/// by the rate scale for conditioning.
inline std::array<cplx, 4> quartic_roots(std::array<cplx, 5> c, double scale) {
    if (std::abs(c[4]) == 0.0) throw NumericalError("quartic_roots: degenerate leading coefficient");
    if (scale <= 0.0) scale = 1.0;
    // substitute omega = scale * w
    std::array<cplx, 5> cn;
    double sk = 1.0;
    for (int k = 0; k < 5; ++k) { cn[k] = c[k] * sk; sk *= scale; }
    for (int k = 0; k < 5; ++k) cn[k] /= cn[4];

    double radius = 0.0;
    for (int k = 0; k < 4; ++k) radius = std::max(radius, std::abs(cn[k]));
    radius = 1.0 + radius;

    std::array<cplx, 4> x;
    for (int k = 0; k < 4; ++k) {
        const double ang = 0.4 + two_pi * k / 4.0;  // offset breaks symmetry ties
        x[k] = radius * cplx(std::cos(ang), std::sin(ang));
    }
    bool converged = false;
    for (int it = 0; it < 500 && !converged; ++it) {
        double step = 0.0;
        for (int k = 0; k < 4; ++k) {
            cplx denom(1.0, 0.0);
            for (int j = 0; j < 4; ++j)
                if (j != k) denom *= (x[k] - x[j]);
            if (std::abs(denom) == 0.0) { denom = cplx(1e-30, 0.0); }
            const cplx dx = detail::poly_eval(cn, x[k]) / denom;
            x[k] -= dx;
            step = std::max(step, std::abs(dx));
        }
        converged = step < 1e-14 * radius;
    }
    if (!converged) {
        // multiple roots stall the joint iteration at the cluster radius;
        // accept if residuals are already tiny
        for (int k = 0; k < 4; ++k)
            if (std::abs(detail::poly_eval(cn, x[k])) > 1e-8 * radius)
                throw NumericalError("quartic_roots: Durand-Kerner did not converge");
    }
    for (int k = 0; k < 4; ++k) {
        for (int n = 0; n < 3; ++n) {
            const cplx d = detail::poly_deriv_eval(cn, x[k]);
            if (std::abs(d) < 1e-12) break;
            const cplx dx = detail::poly_eval(cn, x[k]) / d;
            if (!std::isfinite(std::abs(dx))) break;
            if (std::abs(dx) > 0.5) break;  // Newton diverging off a cluster
            x[k] -= dx;
        }
        x[k] *= scale;
    }
    return x;
}

/// Stability from the roots of beta. |margin| within 1e-9 of the rate scale
/// is reported marginal, not stable.
inline StabilityReport beta_roots(const SystemParams& p) {
    StabilityReport rep;
    rep.coeffs = beta_polynomial(p);
    const double scale = std::max(p.max_rate(), 1e-300);
    rep.roots = quartic_roots(rep.coeffs, scale);
    rep.tolerance = 1e-9 * scale;
    rep.margin = std::numeric_limits<double>::infinity();
    for (const auto& r : rep.roots) rep.margin = std::min(rep.margin, r.imag());
    if (rep.margin > rep.tolerance) rep.verdict = Verdict::stable;
    else if (rep.margin < -rep.tolerance) rep.verdict = Verdict::unstable;
    else rep.verdict = Verdict::marginal;
    return rep;
}

inline bool is_stable(const SystemParams& p) {
    return beta_roots(p).verdict == Verdict::stable;
}

/// Margin/verdict grid over the two pump detunings, other parameters fixed.
/// Columns: delta_d, delta_c, margin, stable.
inline SweepResult stability_map(const SystemParams& p, const std::vector<double>& delta_d_values,
                                 const std::vector<double>& delta_c_values) {
    SweepResult out;
    out.name = "stability-map";
    out.columns = {"delta_d", "delta_c", "margin", "stable"};
    for (double dd : delta_d_values) {
        for (double dc : delta_c_values) {
            SystemParams q = p;
            q.delta_d = dd;
            q.delta_c = dc;
            const StabilityReport rep = beta_roots(q);
            out.add_row({dd, dc, rep.margin, rep.verdict == Verdict::stable ? 1.0 : 0.0});
        }
    }
    return out;
}

enum class DetuningPolicy { zero, fixed, tracking_optimal };

inline DetuningPolicy policy_from_string(const std::string& s) {
    if (s == "zero") return DetuningPolicy::zero;
    if (s == "fixed") return DetuningPolicy::fixed;
    if (s == "tracking-optimal") return DetuningPolicy::tracking_optimal;
    throw ConfigError("unknown detuning policy: " + s);
}

/// Pump-scaled parameters with the policy's detunings applied.
inline SystemParams scaled_with_policy(const SystemParams& anchor, double lambda,
                                       DetuningPolicy policy) {
    SystemParams q = scale_pump(anchor, lambda);
    switch (policy) {
        case DetuningPolicy::zero: q.delta_d = 0.0; q.delta_c = 0.0; break;
        case DetuningPolicy::fixed: break;
        case DetuningPolicy::tracking_optimal: q = with_optimal_detunings(q); break;
    }
    return q;
}

struct CriticalCooperativity {
    bool found = false;       // false: stable throughout the search range
    double c_star = 0.0;      // cooperativity at the boundary
    double lambda_star = 0.0; // pump scale at the boundary
};

/// Instability onset along the pump-scaling path g -> lambda g, s -> lambda^2 s.
/// Coarse scan for the first unstable scale, then bisection to rel_tol.
inline CriticalCooperativity critical_cooperativity(const SystemParams& anchor,
                                                    DetuningPolicy policy,
                                                    double lambda_max = 20.0,
                                                    double rel_tol = 1e-4) {
    if (!(anchor.g > 0.0)) throw ConfigError("critical_cooperativity: anchor needs g > 0");
    const int coarse = 256;
    double lo = 0.0, hi = 0.0;
    for (int k = 1; k <= coarse; ++k) {
        const double lam = lambda_max * k / coarse;
        if (beta_roots(scaled_with_policy(anchor, lam, policy)).verdict == Verdict::unstable) {
            hi = lam;
            break;
        }
        lo = lam;
    }
    CriticalCooperativity out;
    if (hi == 0.0) return out;  // open: no instability up to lambda_max
    while ((hi - lo) > rel_tol * hi) {
        const double mid = 0.5 * (lo + hi);
        if (beta_roots(scaled_with_policy(anchor, mid, policy)).verdict == Verdict::unstable)
            hi = mid;
        else
            lo = mid;
    }
    out.found = true;
    out.lambda_star = 0.5 * (lo + hi);
    out.c_star = cooperativity(scale_pump(anchor, out.lambda_star));
    return out;
}

}  // namespace baesim
