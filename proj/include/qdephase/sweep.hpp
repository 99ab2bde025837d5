#pragma once

// Parameter sweeps over (config, g, p, lambda, tau), figure presets, the
// Monte Carlo validation run and CSV emission.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <limits>
#include <optional>
#include <ostream>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

#include "qdephase/errors.hpp"
#include "qdephase/evolution.hpp"
#include "qdephase/measures.hpp"
#include "qdephase/noise_model.hpp"
#include "qdephase/parallel.hpp"

namespace qdephase {

inline constexpr std::string_view version = "0.1.0";

enum class preset { fig2, fig3, fig4, fig5, fig6, fig7, fig8 };

inline constexpr std::array all_presets = {preset::fig2, preset::fig3, preset::fig4, preset::fig5,
                                           preset::fig6, preset::fig7, preset::fig8};

inline std::string_view to_string(preset p) {
    constexpr std::array names = {"fig2", "fig3", "fig4", "fig5", "fig6", "fig7", "fig8"};
    return names[static_cast<std::size_t>(p)];
}

inline preset parse_preset(std::string_view s) {
    for (preset p : all_presets)
        if (to_string(p) == s) return p;
    throw usage_error("unknown preset '" + std::string(s) + "' (expected fig2 .. fig8)");
}

struct sweep_config {
    std::optional<preset> preset_id;
    std::vector<noise_config> configs{noise_config::cqn};
    averaging_mode mode = averaging_mode::paper_literal;
    std::vector<double> g_values{0.4};
    std::vector<double> p_values{1.0};
    std::vector<double> lambda_values{1.0};
    double tau_max = 20.0;
    std::size_t tau_points = 400;

    // Noise-free evolution with constant chi_a = chi_b = chi (the EW
    // preset). g_values are ignored and rows carry g = 0.
    bool noiseless = false;
    double chi = 1.0;

    std::optional<mc_settings> mc;
    unsigned workers = 1;

    void validate() const {
        if (configs.empty()) throw usage_error("config: at least one of CQN, IQN is required");
        if (tau_points < 2) throw usage_error("tau_points: must be >= 2");
        if (!(tau_max > 0.0) || !std::isfinite(tau_max)) throw usage_error("tau_max: must be > 0");
        if (!noiseless)
            for (double g : g_values)
                if (!(g > 0.0) || !std::isfinite(g)) throw usage_error("g_values: every g must be > 0");
        for (double p : p_values)
            if (!(p >= 0.0 && p <= 1.0)) throw usage_error("p_values: every p must lie in [0, 1]");
        for (double l : lambda_values)
            if (!(l > 0.0) || !std::isfinite(l)) throw usage_error("lambda: every lambda must be > 0");
        if (!std::isfinite(chi)) throw usage_error("chi: must be finite");
        if (mc) {
            if (mc->n_traj < 100) throw usage_error("n_traj: must be >= 100");
            if (!(mc->dt > 0.0)) throw usage_error("dt: must be > 0");
        }
    }
};

// Parameters stated in (or chosen for) each figure. Every preset uses the
// default tau grid [0, 20] with 400 points.
inline sweep_config preset_config(preset id) {
    sweep_config cfg;
    cfg.preset_id = id;
    const std::vector<double> g_sweep{0.01, 0.1, 0.4, 1.0};
    switch (id) {
        case preset::fig2:
            cfg.noiseless = true;
            cfg.chi = 1.0;
            cfg.g_values = {};
            cfg.lambda_values = {0.25, 0.5, 1.0, 2.0};
            cfg.p_values = {0.4, 0.6, 0.8, 1.0};
            break;
        case preset::fig3:
            cfg.g_values = {0.4};
            cfg.p_values = {1.0};
            break;
        case preset::fig4:
            cfg.g_values = g_sweep;
            cfg.p_values = {1.0};
            break;
        case preset::fig5:
            cfg.g_values = {0.1};
            cfg.p_values = {0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 1.0};
            break;
        case preset::fig6:
            cfg.configs = {noise_config::iqn};
            cfg.g_values = {0.4};
            cfg.p_values = {1.0};
            break;
        case preset::fig7:
            cfg.configs = {noise_config::iqn};
            cfg.g_values = g_sweep;
            cfg.p_values = {1.0};
            break;
        case preset::fig8:
            cfg.configs = {noise_config::cqn, noise_config::iqn};
            cfg.g_values = {0.1};
            cfg.p_values.clear();
            for (int k = 0; k <= 20; ++k) cfg.p_values.push_back(k / 20.0);
            break;
    }
    return cfg;
}

// Uniform grid including both endpoints.
inline std::vector<double> linspace(double lo, double hi, std::size_t n) {
    std::vector<double> v(n);
    for (std::size_t k = 0; k < n; ++k)
        v[k] = (n == 1) ? lo : lo + (hi - lo) * static_cast<double>(k) / static_cast<double>(n - 1);
    return v;
}

inline std::vector<double> tau_grid(const sweep_config& cfg) { return linspace(0.0, cfg.tau_max, cfg.tau_points); }

struct sweep_row {
    noise_config config = noise_config::cqn;
    averaging_mode mode = averaging_mode::paper_literal;
    double g = 0.0;
    double p = 0.0;
    double lambda = 0.0;
    measure_record m;
};

struct sweep_result {
    sweep_config config;
    std::vector<sweep_row> rows;
};

namespace detail {

struct sweep_line {
    noise_config config;
    double g, p, lambda;
};

inline void check_row(const sweep_row& r) {
    const auto& m = r.m;
    for (double v : {m.tau, m.L, m.R, m.U, m.C, m.EW})
        if (!std::isfinite(v)) throw domain_error("non-finite measure in sweep row");
    if (m.L < m.R - 1e-9) throw domain_error("uncertainty relation violated: L < R at tau = " + std::to_string(m.tau));
    if (m.C < 0.0 || m.C > 1.0) throw domain_error("concurrence outside [0, 1]");
}

inline std::vector<sweep_row> evaluate_line(const sweep_config& cfg, const sweep_line& line,
                                            std::span<const double> taus) {
    const werner_params wp{line.p, 0.0};
    const density_matrix4 rho0 = werner_state(line.p);
    std::vector<sweep_row> rows;
    rows.reserve(taus.size());
    auto push = [&](const density_matrix4& rho, double tau) {
        sweep_row r{line.config, cfg.mode, line.g, line.p, line.lambda, measure(rho, rho0, tau)};
        check_row(r);
        rows.push_back(r);
    };

    if (cfg.noiseless) {
        for (double tau : taus) push(evolve_deterministic(wp, tau, line.lambda, cfg.chi, cfg.chi).rho, tau);
        return rows;
    }
    const noise_params np{line.g, line.lambda, line.config, cfg.mode};
    if (cfg.mc) {
        mc_settings mc = *cfg.mc;
        mc.workers = 1;  // already parallel over lines
        for (const auto& s : mc_averaged_series(wp, np, taus, mc)) push(s.state.rho, s.state.tau);
    } else {
        for (double tau : taus) push(averaged_state(wp, np, tau).rho, tau);
    }
    return rows;
}

}  // namespace detail

// Rows are sorted by (g, p, tau), ties broken by lambda, config, mode.
inline sweep_result run_sweep(const sweep_config& cfg) {
    cfg.validate();
    const auto taus = tau_grid(cfg);

    std::vector<detail::sweep_line> lines;
    const std::vector<double> noiseless_g{0.0};
    const auto& gs = cfg.noiseless ? noiseless_g : cfg.g_values;
    const std::vector<noise_config> noiseless_cfg{noise_config::cqn};
    const auto& configs = cfg.noiseless ? noiseless_cfg : cfg.configs;
    for (noise_config c : configs)
        for (double g : gs)
            for (double p : cfg.p_values)
                for (double l : cfg.lambda_values) lines.push_back({c, g, p, l});

    std::vector<std::vector<sweep_row>> per_line(lines.size());
    parallel_for(lines.size(), cfg.workers,
                 [&](std::size_t i) { per_line[i] = detail::evaluate_line(cfg, lines[i], taus); });

    sweep_result res{cfg, {}};
    for (auto& block : per_line) res.rows.insert(res.rows.end(), block.begin(), block.end());
    std::stable_sort(res.rows.begin(), res.rows.end(), [](const sweep_row& a, const sweep_row& b) {
        return std::tuple(a.g, a.p, a.m.tau, a.lambda, a.config, a.mode) <
               std::tuple(b.g, b.p, b.m.tau, b.lambda, b.config, b.mode);
    });
    return res;
}

// ---------------------------------------------------------------------------
// CSV

inline constexpr std::string_view csv_header = "config,mode,g,p,lambda,tau,L,R,U,C,EW";

inline std::string format_number(double v) {
    if (v == 0.0) v = 0.0;  // drop the sign of -0
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

inline void write_csv(const sweep_result& result, std::ostream& os) {
    os << csv_header << '\n';
    for (const auto& r : result.rows) {
        os << to_string(r.config) << ',' << to_string(r.mode) << ',' << format_number(r.g) << ','
           << format_number(r.p) << ',' << format_number(r.lambda) << ',' << format_number(r.m.tau) << ','
           << format_number(r.m.L) << ',' << format_number(r.m.R) << ',' << format_number(r.m.U) << ','
           << format_number(r.m.C) << ',' << format_number(r.m.EW) << '\n';
    }
}

inline void emit_csv(const sweep_result& result, const std::string& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw io_error("cannot open CSV for writing", path);
    write_csv(result, out);
    out.flush();
    if (!out) throw io_error("failed writing CSV", path);
}

// ---------------------------------------------------------------------------
// Monte Carlo validation

struct mc_check {
    noise_config config;
    double g, lambda, p, tau;
    double mc_corner;   // Re of the sampled rho(0,3)
    double mc_abs;      // |rho(0,3)|
    double std_error;   // SE of the real part
    double expected;    // closed-form corner (p/2) Gamma
    double z;
};

struct mc_report {
    std::vector<mc_check> checks;
    double max_abs_z = 0.0;
    static constexpr double z_limit = 4.0;
    bool passed() const { return max_abs_z <= z_limit; }
};

inline const std::vector<double>& default_validation_taus() {
    static const std::vector<double> taus{1.0, 2.0, 5.0};
    return taus;
}

// The imaginary part of the corner averages to zero by symmetry, so the
// comparison uses the real part, whose standard error is well defined even
// where the closed form is ~0 (a magnitude would be biased upward there).
inline mc_report run_mc_validation(const sweep_config& cfg, std::span<const double> taus) {
    if (!cfg.mc) throw usage_error("mc: Monte Carlo settings are required for validation");
    cfg.validate();
    if (cfg.noiseless) throw usage_error("mc: validation needs a noisy configuration");
    if (taus.empty()) throw usage_error("taus: at least one validation time is required");

    struct job {
        noise_config config;
        double g, p, lambda;
    };
    std::vector<job> jobs;
    for (noise_config c : cfg.configs)
        for (double g : cfg.g_values)
            for (double p : cfg.p_values)
                for (double l : cfg.lambda_values) jobs.push_back({c, g, p, l});

    std::vector<double> sorted_taus(taus.begin(), taus.end());
    std::sort(sorted_taus.begin(), sorted_taus.end());

    std::vector<std::vector<mc_check>> per_job(jobs.size());
    mc_settings mc = *cfg.mc;
    const unsigned outer = std::min<unsigned>(cfg.workers, static_cast<unsigned>(jobs.size()));
    mc.workers = std::max(1u, cfg.workers / std::max(1u, outer));
    parallel_for(jobs.size(), outer, [&](std::size_t i) {
        const job& j = jobs[i];
        const werner_params wp{j.p, 0.0};
        const noise_params np{j.g, j.lambda, j.config, cfg.mode};
        const auto states = mc_averaged_series(wp, np, sorted_taus, mc);
        for (const auto& s : states) {
            const complex corner = s.state.rho(0, 3);
            const double se = s.std_error(0, 3).real();
            const double expected = averaged_state(wp, np, s.state.tau).rho(0, 3).real();
            const double diff = corner.real() - expected;
            double z = 0.0;
            if (se > 0.0)
                z = diff / se;
            else if (std::abs(diff) > 1e-12)
                z = std::numeric_limits<double>::infinity();
            per_job[i].push_back({j.config, j.g, j.lambda, j.p, s.state.tau, corner.real(), std::abs(corner), se, expected, z});
        }
    });

    mc_report rep;
    for (auto& v : per_job)
        for (auto& c : v) {
            rep.max_abs_z = std::max(rep.max_abs_z, std::abs(c.z));
            rep.checks.push_back(c);
        }
    return rep;
}

inline void write_mc_report(const mc_report& rep, std::ostream& os) {
    os << "config,g,lambda,p,tau,mc_corner,mc_abs,std_error,expected,z\n";
    for (const auto& c : rep.checks)
        os << to_string(c.config) << ',' << format_number(c.g) << ',' << format_number(c.lambda) << ','
           << format_number(c.p) << ',' << format_number(c.tau) << ',' << format_number(c.mc_corner) << ','
           << format_number(c.mc_abs) << ',' << format_number(c.std_error) << ',' << format_number(c.expected)
           << ',' << format_number(c.z) << '\n';
}

}  // namespace qdephase
