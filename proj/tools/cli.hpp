#pragma once

// Command-line front end. Exit codes: 0 success, 1 usage or I/O error,
// 2 numerical/positivity error, 3 Monte Carlo validation failure.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "qdephase/config_io.hpp"
#include "qdephase/sweep.hpp"

namespace qdephase::cli {

enum exit_code : int { ok = 0, usage = 1, numerical = 2, mc_failure = 3 };

namespace detail {

struct options {
    std::string preset;
    std::string config;
    std::string mode;
    std::vector<double> g, p, lambda, taus;
    double tau_max = 0.0;
    std::size_t tau_points = 0;
    double chi = 1.0;
    std::string out = "-";
    std::string meta_out;
    std::string config_file;
    std::uint64_t seed = 0;
    std::size_t n_traj = 0;
    double dt = 0.0;
    unsigned workers = 1;
};

struct flags {
    CLI::Option *preset = nullptr, *config = nullptr, *mode = nullptr, *g = nullptr, *p = nullptr,
                *lambda = nullptr, *tau_max = nullptr, *tau_points = nullptr, *chi = nullptr, *seed = nullptr,
                *n_traj = nullptr, *dt = nullptr, *workers = nullptr;
};

inline std::vector<noise_config> parse_configs(const std::string& s) {
    if (s == "both" || s == "all") return {noise_config::cqn, noise_config::iqn};
    std::vector<noise_config> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ','))
        if (!item.empty()) out.push_back(parse_noise_config(item));
    return out;
}

inline flags add_common(CLI::App* cmd, options& o, bool with_noise) {
    flags f;
    if (with_noise) {
        f.preset = cmd->add_option("--preset", o.preset, "figure preset (fig2 .. fig8)");
        f.config = cmd->add_option("--config", o.config, "qubit-noise configuration: CQN, IQN or both");
        f.mode = cmd->add_option("--mode", o.mode, "averaging mode: PaperLiteral or GaussianExact");
        f.g = cmd->add_option("--g", o.g, "OU memory parameters (comma separated)")->delimiter(',');
        f.seed = cmd->add_option("--seed", o.seed, "Monte Carlo seed");
        f.n_traj = cmd->add_option("--n-traj", o.n_traj, "Monte Carlo trajectories");
        f.dt = cmd->add_option("--dt", o.dt, "Monte Carlo integration step");
    } else {
        f.chi = cmd->add_option("--chi", o.chi, "constant field value chi_a = chi_b");
    }
    f.p = cmd->add_option("--p", o.p, "Werner purities (comma separated)")->delimiter(',');
    f.lambda = cmd->add_option("--lambda", o.lambda, "couplings (comma separated)")->delimiter(',');
    f.tau_max = cmd->add_option("--tau-max", o.tau_max, "end of the time grid");
    f.tau_points = cmd->add_option("--tau-points", o.tau_points, "number of time points");
    f.workers = cmd->add_option("--workers", o.workers, "worker threads");
    cmd->add_option("--config-file", o.config_file, "JSON file with sweep settings; flags override it");
    return f;
}

// preset defaults, then the JSON file, then explicit flags.
inline sweep_config build_config(const options& o, const flags& f, std::optional<preset> forced = std::nullopt,
                                 averaging_mode default_mode = averaging_mode::paper_literal) {
    std::optional<nlohmann::json> doc;
    if (!o.config_file.empty()) doc = load_json_file(o.config_file);

    std::optional<preset> id = forced;
    if (!id && f.preset && f.preset->count()) id = parse_preset(o.preset);
    if (!id && doc) id = json_preset(*doc);

    sweep_config cfg = id ? preset_config(*id) : sweep_config{};
    cfg.mode = default_mode;
    if (doc) apply_json(*doc, cfg);
    if (id) cfg.preset_id = id;

    if (f.config && f.config->count()) cfg.configs = parse_configs(o.config);
    if (f.mode && f.mode->count()) cfg.mode = parse_averaging_mode(o.mode);
    if (f.g && f.g->count()) cfg.g_values = o.g;
    if (f.p->count()) cfg.p_values = o.p;
    if (f.lambda->count()) cfg.lambda_values = o.lambda;
    if (f.tau_max->count()) cfg.tau_max = o.tau_max;
    if (f.tau_points->count()) cfg.tau_points = o.tau_points;
    if (f.chi && f.chi->count()) cfg.chi = o.chi;
    if (f.workers->count()) cfg.workers = o.workers;

    const bool any_mc = f.seed && (f.seed->count() || f.n_traj->count() || f.dt->count());
    if (any_mc) {
        mc_settings mc = cfg.mc.value_or(mc_settings{});
        if (f.seed->count()) mc.seed = o.seed;
        if (f.n_traj->count()) mc.n_traj = o.n_traj;
        if (f.dt->count()) mc.dt = o.dt;
        cfg.mc = mc;
    }
    if (cfg.mc) cfg.mc->workers = cfg.workers;
    return cfg;
}

inline void write_output(const std::string& path, std::ostream& stdout_stream, const auto& writer) {
    if (path.empty() || path == "-") {
        writer(stdout_stream);
        return;
    }
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw io_error("cannot open output for writing", path);
    writer(out);
    out.flush();
    if (!out) throw io_error("failed writing output", path);
}

inline void write_sweep(const sweep_result& res, const options& o, std::ostream& out) {
    write_output(o.out, out, [&](std::ostream& os) { write_csv(res, os); });
    if (!o.meta_out.empty())
        write_output(o.meta_out, out, [&](std::ostream& os) { os << sweep_metadata(res).dump(2) << '\n'; });
}

}  // namespace detail

inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Entropic uncertainty and entanglement of two qubits under Ornstein-Uhlenbeck dephasing",
                 "qdephase"};
    app.require_subcommand(1);

    detail::options so, vo, eo;

    auto* sweep = app.add_subcommand("sweep", "evaluate L, R, U, C, EW over a parameter grid and write CSV");
    auto sf = detail::add_common(sweep, so, true);
    sweep->add_option("--out", so.out, "CSV output path ('-' for stdout)");
    sweep->add_option("--meta-out", so.meta_out, "JSON metadata output path");

    auto* validate = app.add_subcommand("validate-mc", "compare Monte Carlo averaged coherences with the closed form");
    auto vf = detail::add_common(validate, vo, true);
    validate->add_option("--taus", vo.taus, "validation times (comma separated)")->delimiter(',');
    validate->add_option("--out", vo.out, "report CSV path ('-' for stdout)");

    auto* ew = app.add_subcommand("ew", "noiseless entanglement-witness dynamics (fig2 preset)");
    auto ef = detail::add_common(ew, eo, false);
    ew->add_option("--out", eo.out, "CSV output path ('-' for stdout)");
    ew->add_option("--meta-out", eo.meta_out, "JSON metadata output path");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? exit_code::ok : exit_code::usage;
    }

    try {
        if (*sweep) {
            const sweep_config cfg = detail::build_config(so, sf);
            detail::write_sweep(run_sweep(cfg), so, out);
            return exit_code::ok;
        }
        if (*ew) {
            sweep_config cfg = detail::build_config(eo, ef, preset::fig2);
            detail::write_sweep(run_sweep(cfg), eo, out);
            return exit_code::ok;
        }
        if (*validate) {
            sweep_config cfg = detail::build_config(vo, vf, std::nullopt, averaging_mode::gaussian_exact);
            if (!cfg.mc) cfg.mc = mc_settings{};
            cfg.mc->workers = cfg.workers;
            const std::vector<double> taus = vo.taus.empty() ? default_validation_taus() : vo.taus;
            const mc_report rep = run_mc_validation(cfg, taus);
            detail::write_output(vo.out, out, [&](std::ostream& os) { write_mc_report(rep, os); });
            err << "max |z| = " << format_number(rep.max_abs_z) << " over " << rep.checks.size() << " checks ("
                << (rep.passed() ? "pass" : "FAIL") << ", limit " << mc_report::z_limit << ")\n";
            return rep.passed() ? exit_code::ok : exit_code::mc_failure;
        }
    } catch (const usage_error& e) {
        err << "usage error: " << e.what() << '\n';
        return exit_code::usage;
    } catch (const io_error& e) {
        err << "I/O error: " << e.what() << '\n';
        return exit_code::usage;
    } catch (const domain_error& e) {
        err << "numerical error: " << e.what() << '\n';
        return exit_code::numerical;
    }
    return exit_code::usage;
}

}  // namespace qdephase::cli
