#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

namespace baesim {

inline constexpr const char* version = "0.1.0";
inline constexpr double two_pi = 6.283185307179586476925286766559;

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct NumericalError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Fixed quadrature ordering used by every matrix in this library.
enum Quad : int { XA = 0, YA = 1, XB = 2, YB = 3 };

inline constexpr std::array<const char*, 4> quad_names{"X_A", "Y_A", "X_B", "Y_B"};

enum class ModeId : int { A = 0, B = 1 };

/// Effective rates of the two-mode model. All rates are angular frequencies
/// in one consistent unit chosen by the caller (the model is scale invariant
/// under a uniform rescaling of all rates and omega). The CLI ingests Hz and
/// multiplies by 2*pi.
struct SystemParams {
    double g = 0.0;            // matched swap / two-mode-squeeze rate
    double s_a = 0.0;          // single-mode squeezing rate, science mode
    double s_b = 0.0;          // single-mode squeezing rate, measurement mode
    double kappa_a = 0.0;      // science-mode signal-port coupling
    double kappa_l = 0.0;      // science-mode internal loss
    double kappa_b = 0.0;      // measurement-port coupling
    double delta_d = 0.0;      // differential pump detuning
    double delta_c = 0.0;      // common pump detuning
    double pump_phase = 0.0;   // phase between the two pumps [rad]
    double sms_phase_a = 0.0;  // 0 = Hamiltonian SMS; nonzero adds XY cross terms
    double sms_phase_b = 0.0;
    double n_signal = 0.0;     // mean thermal occupancy per bath
    double n_loss = 0.0;
    double n_readout = 0.0;

    double kappa_a_total() const { return kappa_a + kappa_l; }

    double max_rate() const {
        return std::max({std::abs(g), std::abs(s_a), std::abs(s_b), kappa_a, kappa_l,
                         kappa_b, std::abs(delta_d), std::abs(delta_c)});
    }

    void validate() const {
        if (!(kappa_a >= 0.0) || !(kappa_l >= 0.0) || !(kappa_b >= 0.0))
            throw ConfigError("SystemParams: couplings kappa_a, kappa_l, kappa_b must be >= 0");
        if (!(g >= 0.0))
            throw ConfigError("SystemParams: g must be >= 0 (its sign is a pump phase)");
        if (!(n_signal >= 0.0) || !(n_loss >= 0.0) || !(n_readout >= 0.0))
            throw ConfigError("SystemParams: bath occupancies must be >= 0");
    }

    bool operator==(const SystemParams&) const = default;
};

/// One bath port: its id, the mode it couples to, the coupling rate and the
/// mean thermal occupancy of its input field.
struct Port {
    std::string id;
    ModeId mode = ModeId::A;
    double rate = 0.0;
    double occupancy = 0.0;
};

/// Ordered list of baths. Coupling rates of the baths on a mode must sum to
/// that mode's total damping.
struct PortConfig {
    std::vector<Port> ports;

    /// signal->A @ kappa_a, loss->A @ kappa_l (omitted when zero),
    /// readout->B @ kappa_b.
    static PortConfig standard(const SystemParams& p) {
        PortConfig c;
        c.ports.push_back({"signal", ModeId::A, p.kappa_a, p.n_signal});
        if (p.kappa_l > 0.0) c.ports.push_back({"loss", ModeId::A, p.kappa_l, p.n_loss});
        c.ports.push_back({"readout", ModeId::B, p.kappa_b, p.n_readout});
        return c;
    }

    std::size_t n_ports() const { return ports.size(); }

    int index_of(const std::string& id) const {
        for (std::size_t k = 0; k < ports.size(); ++k)
            if (ports[k].id == id) return static_cast<int>(k);
        return -1;
    }

    /// Throws unless per-mode coupling sums reproduce the params' total damping.
    void validate_against(const SystemParams& p) const {
        double sum_a = 0.0, sum_b = 0.0;
        for (const auto& port : ports) {
            if (port.rate < 0.0) throw ConfigError("PortConfig: negative coupling rate");
            (port.mode == ModeId::A ? sum_a : sum_b) += port.rate;
        }
        const double tol = 1e-12 * std::max(1.0, p.max_rate());
        if (std::abs(sum_a - p.kappa_a_total()) > tol)
            throw ConfigError("PortConfig: couplings on mode A do not sum to kappa_a + kappa_l");
        if (std::abs(sum_b - p.kappa_b) > tol)
            throw ConfigError("PortConfig: couplings on mode B do not sum to kappa_b");
    }
};

/// g -> lambda g, s -> lambda^2 s: the squeezing terms are quadratic in the
/// pump field while the swap/TMS interaction is linear.
inline SystemParams scale_pump(const SystemParams& p, double lambda) {
    SystemParams q = p;
    q.g = lambda * p.g;
    q.s_a = lambda * lambda * p.s_a;
    q.s_b = lambda * lambda * p.s_b;
    return q;
}

/// Detunings that cancel the SMS effect on the measured quadrature pair.
inline SystemParams with_optimal_detunings(const SystemParams& p) {
    SystemParams q = p;
    q.delta_d = -p.s_a;
    q.delta_c = p.s_b;
    return q;
}

inline double cooperativity(const SystemParams& p) {
    const double denom = p.kappa_b * p.kappa_a_total();
    if (denom <= 0.0) throw ConfigError("cooperativity: needs kappa_b and kappa_a + kappa_l > 0");
    return 4.0 * p.g * p.g / denom;
}

}  // namespace baesim
