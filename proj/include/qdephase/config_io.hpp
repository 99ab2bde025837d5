#pragma once

// JSON form of sweep_config. Field names mirror the struct; every field is
// optional and only the ones present override the target.
//
//   {
//     "preset": "fig3", "config": ["CQN", "IQN"], "mode": "GaussianExact",
//     "g_values": [0.1, 0.4], "p_values": [1.0], "lambda": [1.0],
//     "tau_max": 20, "tau_points": 400, "workers": 4,
//     "mc": {"n_traj": 100000, "dt": 0.01, "seed": 7}
//   }

#include <fstream>
#include <set>
#include <string>

#include "json.hpp"
#include "qdephase/errors.hpp"
#include "qdephase/sweep.hpp"

namespace qdephase {

namespace detail {

inline std::vector<double> json_numbers(const nlohmann::json& v, const char* field) {
    if (v.is_number()) return {v.get<double>()};
    if (!v.is_array()) throw usage_error(std::string(field) + ": expected a number or an array of numbers");
    std::vector<double> out;
    for (const auto& x : v) {
        if (!x.is_number()) throw usage_error(std::string(field) + ": expected numbers");
        out.push_back(x.get<double>());
    }
    return out;
}

inline std::vector<noise_config> json_configs(const nlohmann::json& v) {
    std::vector<noise_config> out;
    auto add = [&](const nlohmann::json& x) {
        if (!x.is_string()) throw usage_error("config: expected \"CQN\" or \"IQN\"");
        out.push_back(parse_noise_config(x.get<std::string>()));
    };
    if (v.is_array())
        for (const auto& x : v) add(x);
    else
        add(v);
    return out;
}

}  // namespace detail

// Preset named in the document, if any.
inline std::optional<preset> json_preset(const nlohmann::json& doc) {
    if (!doc.contains("preset") || doc["preset"].is_null()) return std::nullopt;
    if (!doc["preset"].is_string()) throw usage_error("preset: expected a string");
    return parse_preset(doc["preset"].get<std::string>());
}

inline void apply_json(const nlohmann::json& doc, sweep_config& cfg) {
    if (!doc.is_object()) throw usage_error("config file: top level must be a JSON object");
    static const std::set<std::string> known{"preset",     "config",   "mode",  "g_values", "p_values", "lambda",
                                             "tau_max",    "tau_points", "mc",  "workers",  "chi",      "noiseless"};
    for (const auto& [key, _] : doc.items())
        if (!known.count(key)) throw usage_error("config file: unknown field '" + key + "'");

    try {
        if (auto p = json_preset(doc)) cfg.preset_id = p;
        if (doc.contains("config")) cfg.configs = detail::json_configs(doc["config"]);
        if (doc.contains("mode")) cfg.mode = parse_averaging_mode(doc["mode"].get<std::string>());
        if (doc.contains("g_values")) cfg.g_values = detail::json_numbers(doc["g_values"], "g_values");
        if (doc.contains("p_values")) cfg.p_values = detail::json_numbers(doc["p_values"], "p_values");
        if (doc.contains("lambda")) cfg.lambda_values = detail::json_numbers(doc["lambda"], "lambda");
        if (doc.contains("tau_max")) cfg.tau_max = doc["tau_max"].get<double>();
        if (doc.contains("tau_points")) cfg.tau_points = doc["tau_points"].get<std::size_t>();
        if (doc.contains("workers")) cfg.workers = doc["workers"].get<unsigned>();
        if (doc.contains("chi")) cfg.chi = doc["chi"].get<double>();
        if (doc.contains("noiseless")) cfg.noiseless = doc["noiseless"].get<bool>();
        if (doc.contains("mc") && !doc["mc"].is_null()) {
            const auto& m = doc["mc"];
            if (!m.is_object()) throw usage_error("mc: expected an object");
            mc_settings mc = cfg.mc.value_or(mc_settings{});
            if (m.contains("n_traj")) mc.n_traj = m["n_traj"].get<std::size_t>();
            if (m.contains("dt")) mc.dt = m["dt"].get<double>();
            if (m.contains("seed")) mc.seed = m["seed"].get<std::uint64_t>();
            cfg.mc = mc;
        }
    } catch (const nlohmann::json::exception& e) {
        throw usage_error(std::string("config file: ") + e.what());
    }
}

inline nlohmann::json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw io_error("cannot open config file", path);
    try {
        return nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw usage_error("config file " + path + ": " + e.what());
    }
}

inline nlohmann::json to_json(const sweep_config& cfg) {
    nlohmann::json j;
    j["preset"] = cfg.preset_id ? nlohmann::json(std::string(to_string(*cfg.preset_id))) : nlohmann::json(nullptr);
    j["config"] = nlohmann::json::array();
    for (auto c : cfg.configs) j["config"].push_back(std::string(to_string(c)));
    j["mode"] = std::string(to_string(cfg.mode));
    j["g_values"] = cfg.g_values;
    j["p_values"] = cfg.p_values;
    j["lambda"] = cfg.lambda_values;
    j["tau_max"] = cfg.tau_max;
    j["tau_points"] = cfg.tau_points;
    j["noiseless"] = cfg.noiseless;
    j["chi"] = cfg.chi;
    j["workers"] = cfg.workers;
    if (cfg.mc)
        j["mc"] = {{"n_traj", cfg.mc->n_traj}, {"dt", cfg.mc->dt}, {"seed", cfg.mc->seed}};
    else
        j["mc"] = nullptr;
    return j;
}

// Sidecar metadata for a sweep: the configuration echo plus version and seed.
inline nlohmann::json sweep_metadata(const sweep_result& result) {
    nlohmann::json j;
    j["version"] = std::string(version);
    j["config"] = to_json(result.config);
    j["seed"] = result.config.mc ? nlohmann::json(result.config.mc->seed) : nlohmann::json(nullptr);
    j["rows"] = result.rows.size();
    j["columns"] = std::string(csv_header);
    j["tau_grid"] = {{"min", 0.0}, {"max", result.config.tau_max}, {"points", result.config.tau_points}};
    if (result.config.noiseless) j["note"] = "noiseless evolution with chi_a = chi_b = chi; g column is 0";
    return j;
}

}  // namespace qdephase
