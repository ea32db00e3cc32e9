#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "baesim/io.hpp"
#include "baesim/metrics.hpp"
#include "baesim/presets.hpp"
#include "baesim/scanrate.hpp"
#include "baesim/svg.hpp"

namespace baesim {

namespace detail {

inline std::string out_path(const std::string& outdir, const std::string& name) {
    std::filesystem::create_directories(outdir);
    return (std::filesystem::path(outdir) / name).string();
}

struct TwoPortCases {
    SystemParams ideal, zero, optimal;
};

inline TwoPortCases twoport_cases() {
    TwoPortCases c;
    c.ideal = preset_twoport_ideal();
    c.zero = preset_twoport();
    c.optimal = with_optimal_detunings(preset_twoport());
    return c;
}

inline std::vector<double> linspace(double lo, double hi, int n) {
    std::vector<double> v(n);
    for (int i = 0; i < n; ++i) v[i] = lo + (hi - lo) * i / (n - 1);
    return v;
}

}  // namespace detail

/// Port gains and backactions of the two-port sample conditions over
/// frequency, for the ideal (s = 0), uncompensated and optimally detuned
/// cases. The uncompensated case is linearly unstable; its response is the
/// same analytic continuation the reference curves use.
inline std::vector<std::string> render_fig2a(const std::string& outdir) {
    const auto cases = detail::twoport_cases();
    const double kappa = cases.zero.kappa_a;
    const FrequencyGrid grid = FrequencyGrid::symmetric_about_zero(4.0 * kappa, 401);

    SweepResult table;
    table.name = "fig2a";
    table.columns = {"omega_hz",
                     "g_a_ideal", "g_b_ideal", "b_a_ideal", "b_b_ideal",
                     "g_a_zero",  "g_b_zero",  "b_a_zero",  "b_b_zero",
                     "g_a_opt",   "g_b_opt",   "b_a_opt",   "b_b_opt"};
    const SystemParams* ps[3] = {&cases.ideal, &cases.zero, &cases.optimal};
    GainSet gs[3];
    for (int k = 0; k < 3; ++k)
        gs[k] = gains(solve_scattering(*ps[k], PortConfig::standard(*ps[k]), grid, true));
    for (std::size_t i = 0; i < grid.size(); ++i) {
        std::vector<double> row{grid.omega[i] / two_pi};
        for (int k = 0; k < 3; ++k) {
            row.push_back(gs[k].g_a[i]);
            row.push_back(gs[k].g_b[i]);
            row.push_back(gs[k].b_a[i]);
            row.push_back(gs[k].b_b[i]);
        }
        table.add_row(std::move(row));
    }
    const json meta = sidecar(params_to_json(cases.zero),
                              {{"figure", "fig2a"}, {"cases", {"ideal", "zero", "optimal"}}});
    table.provenance_hash = meta.at("params_hash").get<std::string>();

    std::vector<std::string> written;
    const std::string csv = detail::out_path(outdir, "fig2a.csv");
    write_file(csv, to_csv(table));
    written.push_back(csv);

    std::vector<double> w(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) w[i] = grid.omega[i] / kappa;
    auto col = [&](int idx) {
        std::vector<double> v(table.rows.size());
        for (std::size_t i = 0; i < table.rows.size(); ++i) v[i] = table.rows[i][idx];
        return v;
    };
    const std::string svg1 = detail::out_path(outdir, "fig2a_gains.svg");
    write_file(svg1, svg_line_plot("Port gains at Y_B", "omega / kappa", "gain",
                                   {{"G_A ideal", w, col(1)}, {"G_A zero", w, col(5)},
                                    {"G_A opt", w, col(9)}, {"G_B ideal", w, col(2)},
                                    {"G_B zero", w, col(6)}, {"G_B opt", w, col(10)}}));
    written.push_back(svg1);
    const std::string svg2 = detail::out_path(outdir, "fig2a_backaction.svg");
    write_file(svg2, svg_line_plot("Backaction on X_A", "omega / kappa", "backaction",
                                   {{"B_B ideal", w, col(4)}, {"B_B zero", w, col(8)},
                                    {"B_B opt", w, col(12)}}));
    written.push_back(svg2);
    const std::string meta_path = detail::out_path(outdir, "fig2a.json");
    write_file(meta_path, meta.dump(2) + "\n");
    written.push_back(meta_path);
    return written;
}

/// SNR(omega) at theta = pi/2 for the three two-port cases, normalized to
/// the peak of the ideal case.
inline std::vector<std::string> render_fig2b(const std::string& outdir) {
    const auto cases = detail::twoport_cases();
    const double kappa = cases.zero.kappa_a;
    const FrequencyGrid grid = FrequencyGrid::symmetric_about_zero(4.0 * kappa, 401);
    const double theta = 0.5 * M_PI;

    const SystemParams* ps[3] = {&cases.ideal, &cases.zero, &cases.optimal};
    std::vector<double> snr[3];
    for (int k = 0; k < 3; ++k)
        snr[k] = snr_spectrum(solve_scattering(*ps[k], PortConfig::standard(*ps[k]), grid, true),
                              theta).snr;
    double peak = 0.0;
    for (double v : snr[0]) peak = std::max(peak, v);

    SweepResult table;
    table.name = "fig2b";
    table.columns = {"omega_hz", "snr_ideal", "snr_zero", "snr_opt"};
    for (std::size_t i = 0; i < grid.size(); ++i)
        table.add_row({grid.omega[i] / two_pi, snr[0][i] / peak, snr[1][i] / peak,
                       snr[2][i] / peak});
    const json meta = sidecar(params_to_json(cases.zero),
                              {{"figure", "fig2b"}, {"theta_rad", theta},
                               {"normalized_to", "ideal peak"}});
    table.provenance_hash = meta.at("params_hash").get<std::string>();

    std::vector<std::string> written;
    const std::string csv = detail::out_path(outdir, "fig2b.csv");
    write_file(csv, to_csv(table));
    written.push_back(csv);
    std::vector<double> w(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) w[i] = grid.omega[i] / kappa;
    auto col = [&](int idx) {
        std::vector<double> v(table.rows.size());
        for (std::size_t i = 0; i < table.rows.size(); ++i) v[i] = table.rows[i][idx];
        return v;
    };
    const std::string svg = detail::out_path(outdir, "fig2b.svg");
    write_file(svg, svg_line_plot("SNR at Y_B", "omega / kappa", "SNR (normalized)",
                                  {{"s = 0", w, col(1)}, {"zero detunings", w, col(2)},
                                   {"optimal detunings", w, col(3)}}));
    written.push_back(svg);
    const std::string meta_path = detail::out_path(outdir, "fig2b.json");
    write_file(meta_path, meta.dump(2) + "\n");
    written.push_back(meta_path);
    return written;
}

/// SNR(theta) at the half-pump frame frequency for the three two-port cases,
/// normalized to the ideal-case peak.
inline std::vector<std::string> render_fig2c(const std::string& outdir) {
    const auto cases = detail::twoport_cases();
    FrequencyGrid grid;
    grid.omega = {0.0};
    grid.symmetric = true;

    const SystemParams* ps[3] = {&cases.ideal, &cases.zero, &cases.optimal};
    ScatteringMatrix sm[3];
    for (int k = 0; k < 3; ++k)
        sm[k] = solve_scattering(*ps[k], PortConfig::standard(*ps[k]), grid, true);

    const int n_theta = 361;
    double peak = 0.0;
    for (int i = 0; i < n_theta; ++i)
        peak = std::max(peak, snr_at(sm[0], 0, M_PI * i / (n_theta - 1)));

    SweepResult table;
    table.name = "fig2c";
    table.columns = {"theta_rad", "snr_ideal", "snr_zero", "snr_opt"};
    for (int i = 0; i < n_theta; ++i) {
        const double th = M_PI * i / (n_theta - 1);
        table.add_row({th, snr_at(sm[0], 0, th) / peak, snr_at(sm[1], 0, th) / peak,
                       snr_at(sm[2], 0, th) / peak});
    }
    const json meta = sidecar(params_to_json(cases.zero),
                              {{"figure", "fig2c"}, {"omega", 0.0},
                               {"normalized_to", "ideal peak"}});
    table.provenance_hash = meta.at("params_hash").get<std::string>();

    std::vector<std::string> written;
    const std::string csv = detail::out_path(outdir, "fig2c.csv");
    write_file(csv, to_csv(table));
    written.push_back(csv);
    auto col = [&](int idx) {
        std::vector<double> v(table.rows.size());
        for (std::size_t i = 0; i < table.rows.size(); ++i) v[i] = table.rows[i][idx];
        return v;
    };
    const std::string svg = detail::out_path(outdir, "fig2c.svg");
    write_file(svg, svg_line_plot("SNR vs readout angle at omega = 0", "theta [rad]",
                                  "SNR (normalized)",
                                  {{"s = 0", col(0), col(1)}, {"zero detunings", col(0), col(2)},
                                   {"optimal detunings", col(0), col(3)}}));
    written.push_back(svg);
    const std::string meta_path = detail::out_path(outdir, "fig2c.json");
    write_file(meta_path, meta.dump(2) + "\n");
    written.push_back(meta_path);
    return written;
}

/// SRE over the detuning plane at C = 10.4 for the sensing-regime rates,
/// with the unstable cells flagged, plus the line cut along delta_d = -s_a.
inline std::vector<std::string> render_fig3a(const std::string& outdir) {
    const SystemParams anchor = preset_sensing();
    const SystemParams p = scale_pump(anchor, lambda_for_cooperativity(anchor, 10.4));
    const double sa = p.s_a, sb = p.s_b;
    const SreConfig cfg;

    const auto dd = detail::linspace(-sa - 2.5 * sa, -sa + 2.5 * sa, 41);
    const auto dc = detail::linspace(sb - 2.5 * sa, sb + 2.5 * sa, 41);
    SweepResult map = sre_map(p, dd, dc, cfg);
    map.name = "fig3a";
    // report detunings in Hz to match the params schema
    SweepResult map_hz;
    map_hz.name = "fig3a";
    map_hz.columns = {"delta_d_hz", "delta_c_hz", "sre", "stable", "margin"};
    for (const auto& row : map.rows)
        map_hz.add_row({row[0] / two_pi, row[1] / two_pi, row[2], row[3], row[4]});

    SweepResult line;
    line.name = "fig3a-line";
    line.columns = {"delta_c_hz", "sre", "stable"};
    std::vector<double> line_x, line_y;
    for (double c : dc) {
        SystemParams q = p;
        q.delta_d = -sa;
        q.delta_c = c;
        const StabilityReport rep = beta_roots(q);
        const bool ok = rep.verdict == Verdict::stable;
        const double v = ok ? sre(q, cfg) : std::numeric_limits<double>::quiet_NaN();
        line.add_row({c / two_pi, v, ok ? 1.0 : 0.0});
        line_x.push_back(c / sb);
        line_y.push_back(v);
    }
    const json meta =
        sidecar(params_to_json(p), {{"figure", "fig3a"}, {"cooperativity", cooperativity(p)},
                                    {"baseline", cfg.baseline}});
    map_hz.provenance_hash = meta.at("params_hash").get<std::string>();
    line.provenance_hash = map_hz.provenance_hash;

    std::vector<std::string> written;
    const std::string csv = detail::out_path(outdir, "fig3a_map.csv");
    write_file(csv, to_csv(map_hz));
    written.push_back(csv);
    const std::string line_csv = detail::out_path(outdir, "fig3a_line.csv");
    write_file(line_csv, to_csv(line));
    written.push_back(line_csv);
    const std::string svg = detail::out_path(outdir, "fig3a_line.svg");
    write_file(svg, svg_line_plot("SRE along delta_d = -s_a", "delta_c / s_b", "SRE",
                                  {{"SRE", line_x, line_y}}));
    written.push_back(svg);
    const std::string meta_path = detail::out_path(outdir, "fig3a.json");
    write_file(meta_path, meta.dump(2) + "\n");
    written.push_back(meta_path);
    return written;
}

/// SRE against cooperativity for the zero and tracking-optimal detuning
/// policies, plus the compensation-sensitivity map (delta_c optimal, delta_d
/// offset about -s_a, SRE normalized to the optimal value at that C).
inline std::vector<std::string> render_fig3b(const std::string& outdir) {
    const SystemParams anchor = preset_sensing();
    const SreConfig cfg;
    const double c0 = cooperativity(anchor);

    std::vector<double> lambdas;
    for (double c = 0.5; c <= 12.0 + 1e-9; c += 0.5) lambdas.push_back(std::sqrt(c / c0));
    SweepResult zero = sre_vs_cooperativity(anchor, lambdas, DetuningPolicy::zero, cfg);
    SweepResult opt = sre_vs_cooperativity(anchor, lambdas, DetuningPolicy::tracking_optimal, cfg);

    SweepResult upper;
    upper.name = "fig3b-upper";
    upper.columns = {"lambda", "cooperativity", "sre_zero", "stable_zero", "sre_opt",
                     "stable_opt"};
    for (std::size_t i = 0; i < zero.rows.size(); ++i)
        upper.add_row({zero.rows[i][0], zero.rows[i][1], zero.rows[i][2], zero.rows[i][3],
                       opt.rows[i][2], opt.rows[i][3]});

    SweepResult lower;
    lower.name = "fig3b-lower";
    lower.columns = {"cooperativity", "delta_d_offset_over_s_a", "sre_normalized", "stable"};
    const auto offsets = detail::linspace(-1.5, 1.5, 33);
    for (double c = 1.0; c <= 12.0 + 1e-9; c += 0.5) {
        const double lam = std::sqrt(c / c0);
        const SystemParams base =
            scaled_with_policy(anchor, lam, DetuningPolicy::tracking_optimal);
        const double sre_opt_c = sre(base, cfg);
        for (double r : offsets) {
            SystemParams q = base;
            q.delta_d = -q.s_a + r * q.s_a;
            const StabilityReport rep = beta_roots(q);
            const bool ok = rep.verdict == Verdict::stable;
            lower.add_row({c, r, ok ? sre(q, cfg) / sre_opt_c
                                    : std::numeric_limits<double>::quiet_NaN(),
                           ok ? 1.0 : 0.0});
        }
    }
    const json meta = sidecar(params_to_json(anchor),
                              {{"figure", "fig3b"}, {"baseline", cfg.baseline},
                               {"pump_scaling", "g -> lambda g, s -> lambda^2 s"}});
    upper.provenance_hash = meta.at("params_hash").get<std::string>();
    lower.provenance_hash = upper.provenance_hash;

    std::vector<std::string> written;
    const std::string upper_csv = detail::out_path(outdir, "fig3b_upper.csv");
    write_file(upper_csv, to_csv(upper));
    written.push_back(upper_csv);
    const std::string lower_csv = detail::out_path(outdir, "fig3b_lower.csv");
    write_file(lower_csv, to_csv(lower));
    written.push_back(lower_csv);

    auto col = [&](const SweepResult& s, int idx) {
        std::vector<double> v(s.rows.size());
        for (std::size_t i = 0; i < s.rows.size(); ++i) v[i] = s.rows[i][idx];
        return v;
    };
    const std::string svg = detail::out_path(outdir, "fig3b_upper.svg");
    write_file(svg, svg_line_plot("SRE vs cooperativity", "C", "SRE",
                                  {{"zero detunings", col(upper, 1), col(upper, 2)},
                                   {"optimal detunings", col(upper, 1), col(upper, 4)}}));
    written.push_back(svg);
    const std::string meta_path = detail::out_path(outdir, "fig3b.json");
    write_file(meta_path, meta.dump(2) + "\n");
    written.push_back(meta_path);
    return written;
}

/// Figure-reproduction presets; deterministic bytes for a fixed version.
inline std::vector<std::string> reproduce_figure(const std::string& id,
                                                 const std::string& outdir) {
    if (id == "fig2a") return render_fig2a(outdir);
    if (id == "fig2b") return render_fig2b(outdir);
    if (id == "fig2c") return render_fig2c(outdir);
    if (id == "fig3a") return render_fig3a(outdir);
    if (id == "fig3b") return render_fig3b(outdir);
    throw ConfigError("reproduce: unknown figure id " + id +
                      " (expected fig2a, fig2b, fig2c, fig3a, fig3b)");
}

}  // namespace baesim
