#pragma once

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "baesim/circuit.hpp"
#include "baesim/params.hpp"
#include "baesim/sweep.hpp"

namespace baesim {

using json = nlohmann::json;

/// Full-precision scientific formatting (17 significant digits) so emitted
/// values round-trip exactly and oracle diffs stay meaningful.
inline std::string format_full(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.16e", x);
    return buf;
}

inline std::string fnv1a64(const std::string& data) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : data) {
        h ^= c;
        h *= 1099511628211ull;
    }
    char buf[20];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot read file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline void write_file(const std::string& path, const std::string& data) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw ConfigError("cannot write file: " + path);
    out << data;
    if (!out) throw ConfigError("write failed: " + path);
}

namespace detail {

/// Hz value whose double product with 2*pi reproduces rad exactly, when such
/// a neighbor exists within a few ulps (keeps the params schema round-trip
/// bit-identical).
inline double hz_exact(double rad) {
    double h = rad / two_pi;
    if (h * two_pi == rad) return h;
    double up = h, down = h;
    for (int k = 0; k < 4; ++k) {
        up = std::nextafter(up, std::numeric_limits<double>::infinity());
        down = std::nextafter(down, -std::numeric_limits<double>::infinity());
        if (up * two_pi == rad) return up;
        if (down * two_pi == rad) return down;
    }
    return h;
}

inline double require_number(const json& j, const std::string& key) {
    if (!j.contains(key)) throw ConfigError("params: missing key " + key);
    if (!j.at(key).is_number()) throw ConfigError("params: key " + key + " must be a number");
    return j.at(key).get<double>();
}

inline double optional_number(const json& j, const std::string& key, double fallback) {
    if (!j.contains(key)) return fallback;
    if (!j.at(key).is_number()) throw ConfigError("params: key " + key + " must be a number");
    return j.at(key).get<double>();
}

}  // namespace detail

/// Shared parameter schema of every CLI subcommand: rates in Hz (multiplied
/// by 2*pi at ingestion), phases in rad, occupancies dimensionless.
inline const std::vector<std::string>& params_schema_keys() {
    static const std::vector<std::string> keys{
        "g_hz",        "s_a_hz",      "s_b_hz",          "kappa_a_hz",
        "kappa_l_hz",  "kappa_b_hz",  "delta_d_hz",      "delta_c_hz",
        "pump_phase_rad", "sms_phase_a_rad", "sms_phase_b_rad", "n_bath"};
    return keys;
}

inline SystemParams params_from_json(const json& j) {
    if (!j.is_object()) throw ConfigError("params: expected a JSON object");
    for (auto it = j.begin(); it != j.end(); ++it) {
        bool known = false;
        for (const auto& k : params_schema_keys()) known = known || k == it.key();
        if (!known) throw ConfigError("params: unknown key " + it.key());
    }
    SystemParams p;
    p.g = two_pi * detail::require_number(j, "g_hz");
    p.s_a = two_pi * detail::require_number(j, "s_a_hz");
    p.s_b = two_pi * detail::require_number(j, "s_b_hz");
    p.kappa_a = two_pi * detail::require_number(j, "kappa_a_hz");
    p.kappa_l = two_pi * detail::optional_number(j, "kappa_l_hz", 0.0);
    p.kappa_b = two_pi * detail::require_number(j, "kappa_b_hz");
    p.delta_d = two_pi * detail::optional_number(j, "delta_d_hz", 0.0);
    p.delta_c = two_pi * detail::optional_number(j, "delta_c_hz", 0.0);
    p.pump_phase = detail::optional_number(j, "pump_phase_rad", 0.0);
    p.sms_phase_a = detail::optional_number(j, "sms_phase_a_rad", 0.0);
    p.sms_phase_b = detail::optional_number(j, "sms_phase_b_rad", 0.0);
    if (j.contains("n_bath")) {
        const json& nb = j.at("n_bath");
        if (!nb.is_object()) throw ConfigError("params: n_bath must be an object");
        for (auto it = nb.begin(); it != nb.end(); ++it) {
            if (it.key() != "signal" && it.key() != "loss" && it.key() != "readout")
                throw ConfigError("params: unknown n_bath port " + it.key());
        }
        p.n_signal = detail::optional_number(nb, "signal", 0.0);
        p.n_loss = detail::optional_number(nb, "loss", 0.0);
        p.n_readout = detail::optional_number(nb, "readout", 0.0);
    }
    p.validate();
    return p;
}

inline json params_to_json(const SystemParams& p) {
    json j;
    j["g_hz"] = detail::hz_exact(p.g);
    j["s_a_hz"] = detail::hz_exact(p.s_a);
    j["s_b_hz"] = detail::hz_exact(p.s_b);
    j["kappa_a_hz"] = detail::hz_exact(p.kappa_a);
    j["kappa_l_hz"] = detail::hz_exact(p.kappa_l);
    j["kappa_b_hz"] = detail::hz_exact(p.kappa_b);
    j["delta_d_hz"] = detail::hz_exact(p.delta_d);
    j["delta_c_hz"] = detail::hz_exact(p.delta_c);
    j["pump_phase_rad"] = p.pump_phase;
    j["sms_phase_a_rad"] = p.sms_phase_a;
    j["sms_phase_b_rad"] = p.sms_phase_b;
    j["n_bath"] = {{"signal", p.n_signal}, {"loss", p.n_loss}, {"readout", p.n_readout}};
    return j;
}

inline SystemParams load_params(const std::string& path) {
    json j;
    try {
        j = json::parse(read_file(path));
    } catch (const json::parse_error& e) {
        throw ConfigError("params: invalid JSON in " + path + ": " + e.what());
    }
    return params_from_json(j);
}

/// Circuit input schema for the circuit-rates subcommand.
struct CircuitRun {
    JrmCircuit circuit;
    PumpDrive drive;
    std::optional<double> pump_occupancy;
    double kappa_a = 0.0, kappa_l = 0.0, kappa_b = 0.0;
};

inline CircuitRun circuit_run_from_json(const json& j) {
    if (!j.is_object()) throw ConfigError("circuit: expected a JSON object");
    CircuitRun r;
    JrmCircuit& c = r.circuit;
    if (j.contains("e_j_joule")) c.e_j = detail::require_number(j, "e_j_joule");
    else c.e_j = detail::require_number(j, "i0_amp") * reduced_flux_quantum;
    c.phi_ext = detail::require_number(j, "phi_ext_rad");
    c.z_a = detail::require_number(j, "z_a_ohm");
    c.z_b = detail::require_number(j, "z_b_ohm");
    c.z_c = detail::require_number(j, "z_c_ohm");
    c.omega_a = two_pi * detail::require_number(j, "omega_a_hz");
    c.omega_b = two_pi * detail::require_number(j, "omega_b_hz");
    c.omega_c = two_pi * detail::require_number(j, "omega_c_hz");
    c.validate();
    if (!j.contains("pump") || !j.at("pump").is_object())
        throw ConfigError("circuit: missing pump object");
    const json& d = j.at("pump");
    r.drive.c_amp = detail::require_number(d, "c_amp");
    r.drive.phase = detail::optional_number(d, "phase_rad", 0.0);
    r.drive.delta_sigma = two_pi * detail::optional_number(d, "delta_sigma_hz", 0.0);
    r.drive.delta_delta = two_pi * detail::optional_number(d, "delta_delta_hz", 0.0);
    if (d.contains("n_c")) r.pump_occupancy = detail::require_number(d, "n_c");
    r.kappa_a = two_pi * detail::optional_number(j, "kappa_a_hz", 0.0);
    r.kappa_l = two_pi * detail::optional_number(j, "kappa_l_hz", 0.0);
    r.kappa_b = two_pi * detail::optional_number(j, "kappa_b_hz", 0.0);
    return r;
}

/// CSV with deterministic bytes: fixed column order, %.16e cells, LF endings.
inline std::string to_csv(const SweepResult& s) {
    std::string out;
    for (std::size_t c = 0; c < s.columns.size(); ++c) {
        out += s.columns[c];
        out += (c + 1 < s.columns.size()) ? ',' : '\n';
    }
    for (const auto& row : s.rows) {
        for (std::size_t c = 0; c < row.size(); ++c) {
            out += format_full(row[c]);
            out += (c + 1 < row.size()) ? ',' : '\n';
        }
    }
    return out;
}

/// Metadata sidecar written next to every output file set.
inline json sidecar(const json& params_json, const json& extra = json::object()) {
    json j;
    j["params"] = params_json;
    j["params_hash"] = fnv1a64(params_json.dump());
    j["version"] = version;
    j["conventions"] = {{"snr", "gain-fraction-v1"},
                        {"scattering", "S = I - Xi^T (iwI - M)^{-1} Xi, fields ~ e^{+iwt}"},
                        {"vacuum", "single-quadrature PSD 1/2"}};
    for (auto it = extra.begin(); it != extra.end(); ++it) j[it.key()] = it.value();
    return j;
}

}  // namespace baesim
