#pragma once

#include <charconv>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "hyfso/cli/sweep.hpp"
#include "hyfso/errors.hpp"

namespace hyfso {

namespace detail {

struct ConfigEntry {
    std::string value;
    int line = 0;
};

inline std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

inline std::vector<std::string> split_list(const std::string& s) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (!item.empty()) out.push_back(item);
    }
    return out;
}

inline double parse_number(const std::string& path, const ConfigEntry& e,
                           const std::string& key) {
    double v = 0.0;
    const char* first = e.value.data();
    const char* last = first + e.value.size();
    auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc() || ptr != last)
        throw config_error(path + ":" + std::to_string(e.line) + ": key '" + key +
                           "' expects a number, got '" + e.value + "'");
    return v;
}

inline std::uint64_t parse_unsigned(const std::string& path, const ConfigEntry& e,
                                    const std::string& key) {
    std::uint64_t v = 0;
    const char* first = e.value.data();
    const char* last = first + e.value.size();
    auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc() || ptr != last)
        throw config_error(path + ":" + std::to_string(e.line) + ": key '" + key +
                           "' expects a nonnegative integer, got '" + e.value + "'");
    return v;
}

} // namespace detail

// Flat key=value scenario file. '#' starts a comment; keys are single-shot
// (a duplicate is an error); every key must be known. Units are explicit in
// key names: *_db keys take decibels, *_linear keys take linear SNR.
//
// Recognized keys:
//   scheme (df|af), n_users, alpha, beta, xi, rytov_variance, kappa, eta,
//   c_const, gamma_th_db | gamma_th_linear,
//   gamma_avg_db | gamma_avg_linear | mean_snr_rf_db | mean_snr_rf_linear |
//   mean_snr_fso_db | mean_snr_fso_linear,
//   sweep_variable (gamma_avg_db|n_users|gamma_th_db), sweep_values,
//   metrics (outage,ber), modes (analytic,sim|both), trials, seed,
//   batch_size, workers, output_path
inline SweepSpec parse_config(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw config_error("cannot open config file '" + path + "'");

    static const std::set<std::string> known = {
        "scheme", "n_users", "alpha", "beta", "xi", "rytov_variance", "kappa", "eta",
        "c_const", "gamma_th_db", "gamma_th_linear", "gamma_avg_db", "gamma_avg_linear",
        "mean_snr_rf_db", "mean_snr_rf_linear", "mean_snr_fso_db", "mean_snr_fso_linear",
        "sweep_variable", "sweep_values", "metrics", "modes", "trials", "seed",
        "batch_size", "workers", "output_path"};

    std::map<std::string, detail::ConfigEntry> kv;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = detail::trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw config_error(path + ":" + std::to_string(lineno) +
                               ": expected 'key = value', got '" + line + "'");
        const std::string key = detail::trim(line.substr(0, eq));
        const std::string value = detail::trim(line.substr(eq + 1));
        if (!known.count(key))
            throw config_error(path + ":" + std::to_string(lineno) + ": unknown key '" +
                               key + "'");
        if (kv.count(key))
            throw config_error(path + ":" + std::to_string(lineno) + ": duplicate key '" +
                               key + "' (first set on line " +
                               std::to_string(kv[key].line) + ")");
        if (value.empty())
            throw config_error(path + ":" + std::to_string(lineno) + ": key '" + key +
                               "' has an empty value");
        kv[key] = {value, lineno};
    }

    auto has = [&](const std::string& k) { return kv.count(k) != 0; };
    auto num = [&](const std::string& k) { return detail::parse_number(path, kv[k], k); };
    auto uns = [&](const std::string& k) { return detail::parse_unsigned(path, kv[k], k); };
    auto err_at = [&](const std::string& k, const std::string& msg) -> config_error {
        return config_error(path + ":" + std::to_string(kv[k].line) + ": " + msg);
    };

    SweepSpec spec;
    SystemConfig& cfg = spec.base;

    if (!has("scheme"))
        throw config_error(path + ": missing required key 'scheme'");
    if (kv["scheme"].value == "df") cfg.scheme = Scheme::DecodeForward;
    else if (kv["scheme"].value == "af") cfg.scheme = Scheme::AmplifyForward;
    else throw err_at("scheme", "scheme must be 'df' or 'af'");

    if (has("n_users")) {
        const double nv = num("n_users");
        if (nv < 1 || nv != std::floor(nv))
            throw err_at("n_users", "n_users must be a positive integer");
        cfg.n_users = static_cast<int>(nv);
    }

    const double kappa = has("kappa") ? num("kappa") : 1.0;
    if (has("rytov_variance")) {
        if (has("alpha") || has("beta"))
            throw err_at("rytov_variance",
                         "rytov_variance derives alpha/beta; do not also set them");
        if (!has("xi"))
            throw config_error(path + ": 'rytov_variance' requires 'xi'");
        cfg.turbulence = gg_params_from_rytov(num("rytov_variance"), num("xi"), kappa);
    } else {
        if (!has("alpha") || !has("beta") || !has("xi"))
            throw config_error(path +
                               ": turbulence needs 'alpha', 'beta' and 'xi' (or "
                               "'rytov_variance' with 'xi')");
        cfg.turbulence = TurbulenceParams(num("alpha"), num("beta"), num("xi"), kappa);
    }

    if (has("eta")) cfg.eta = num("eta");
    if (has("c_const")) cfg.c_const = num("c_const");

    if (has("gamma_th_db") && has("gamma_th_linear"))
        throw err_at("gamma_th_linear", "set gamma_th in dB or linear, not both");
    if (has("gamma_th_db")) cfg.gamma_th = db_to_linear(num("gamma_th_db"));
    if (has("gamma_th_linear")) cfg.gamma_th = num("gamma_th_linear");

    // Mean-SNR selection: one symmetric knob or per-link values.
    const bool has_avg = has("gamma_avg_db") || has("gamma_avg_linear");
    const bool has_split = has("mean_snr_rf_db") || has("mean_snr_rf_linear") ||
                           has("mean_snr_fso_db") || has("mean_snr_fso_linear");
    if (has_avg && has_split)
        throw config_error(path +
                           ": gamma_avg_* sets both links; do not mix with mean_snr_* keys");
    if (has("gamma_avg_db") && has("gamma_avg_linear"))
        throw err_at("gamma_avg_linear", "set gamma_avg in dB or linear, not both");
    if (has_avg) {
        const double v = has("gamma_avg_db") ? db_to_linear(num("gamma_avg_db"))
                                             : num("gamma_avg_linear");
        cfg.mean_snr_rf = v;
        cfg.mean_snr_fso = v;
    }
    if (has("mean_snr_rf_db") && has("mean_snr_rf_linear"))
        throw err_at("mean_snr_rf_linear", "set mean_snr_rf in dB or linear, not both");
    if (has("mean_snr_rf_db")) cfg.mean_snr_rf = db_to_linear(num("mean_snr_rf_db"));
    if (has("mean_snr_rf_linear")) cfg.mean_snr_rf = num("mean_snr_rf_linear");
    if (has("mean_snr_fso_db")) cfg.mean_snr_fso = db_to_linear(num("mean_snr_fso_db"));
    if (has("mean_snr_fso_linear")) cfg.mean_snr_fso = num("mean_snr_fso_linear");

    // Sweep block.
    if (has("sweep_variable")) {
        const std::string& sv = kv["sweep_variable"].value;
        if (sv == "gamma_avg_db") {
            if (has_avg || has_split)
                throw err_at("sweep_variable",
                             "gamma_avg_db is swept; remove the fixed mean-SNR keys");
            spec.sweep_variable = SweepVariable::GammaAvgDb;
        } else if (sv == "n_users") {
            if (has("n_users"))
                throw err_at("sweep_variable", "n_users is swept; remove the fixed key");
            spec.sweep_variable = SweepVariable::NUsers;
        } else if (sv == "gamma_th_db") {
            if (has("gamma_th_db") || has("gamma_th_linear"))
                throw err_at("sweep_variable", "gamma_th is swept; remove the fixed key");
            spec.sweep_variable = SweepVariable::GammaThDb;
        } else {
            throw err_at("sweep_variable",
                         "sweep_variable must be gamma_avg_db, n_users or gamma_th_db");
        }
        if (!has("sweep_values"))
            throw config_error(path + ": 'sweep_variable' requires 'sweep_values'");
        for (const auto& item : detail::split_list(kv["sweep_values"].value)) {
            double v = 0.0;
            const char* first = item.data();
            auto [ptr, ec] = std::from_chars(first, first + item.size(), v);
            if (ec != std::errc() || ptr != first + item.size())
                throw err_at("sweep_values", "bad number '" + item + "' in sweep_values");
            spec.sweep_values.push_back(v);
        }
    } else {
        if (has("sweep_values"))
            throw err_at("sweep_values", "'sweep_values' requires 'sweep_variable'");
        // Single-point run: degrade to a one-value sweep over the mean SNR.
        spec.sweep_variable = SweepVariable::GammaAvgDb;
        spec.sweep_values = {linear_to_db(cfg.mean_snr_rf)};
    }

    if (has("metrics")) {
        spec.metrics.clear();
        for (const auto& item : detail::split_list(kv["metrics"].value)) {
            if (item == "outage") spec.metrics.push_back(Metric::Outage);
            else if (item == "ber") spec.metrics.push_back(Metric::Ber);
            else throw err_at("metrics", "metric must be 'outage' or 'ber'");
        }
    }

    if (has("modes")) {
        spec.run_analytic = false;
        spec.run_simulate = false;
        for (const auto& item : detail::split_list(kv["modes"].value)) {
            if (item == "analytic") spec.run_analytic = true;
            else if (item == "sim" || item == "simulate") spec.run_simulate = true;
            else if (item == "both") spec.run_analytic = spec.run_simulate = true;
            else throw err_at("modes", "mode must be 'analytic', 'sim' or 'both'");
        }
    }

    if (has("trials")) spec.trials = uns("trials");
    if (has("seed")) spec.seed = uns("seed");
    if (has("batch_size")) {
        const std::uint64_t b = uns("batch_size");
        if (b == 0 || b > (1u << 24))
            throw err_at("batch_size", "batch_size must be in [1, 2^24]");
        spec.batch_size = static_cast<std::uint32_t>(b);
    }
    if (has("workers")) {
        const std::uint64_t w = uns("workers");
        if (w == 0 || w > 256)
            throw err_at("workers", "workers must be in [1, 256]");
        spec.workers = static_cast<int>(w);
    }
    if (has("output_path")) spec.output_path = kv["output_path"].value;

    spec.validate();
    return spec;
}

// Canned sweeps matching the reference experiment grid: moderate turbulence
// (alpha=4, beta=1.9, xi=10.45) and strong turbulence (alpha=4.2, beta=1.4,
// xi=2.45), equal per-link mean SNRs swept 0..30 dB, outage threshold 10 dB.
//   fig2: outage, both schemes, both regimes, N=2
//   fig3: outage, both schemes, moderate, N in {1,2,4}
//   fig4: ber, both schemes, moderate, N in {1,2,4}
//   fig5: ber, both schemes, both regimes, N=2
inline SweepSpec figure_preset(const std::string& name) {
    const TurbulenceParams moderate(4.0, 1.9, 10.45);
    const TurbulenceParams strong(4.2, 1.4, 2.45);

    SweepSpec spec;
    spec.base.scheme = Scheme::DecodeForward;
    spec.base.n_users = 2;
    spec.base.eta = 1.0;
    spec.base.c_const = 1.0;
    spec.base.gamma_th = db_to_linear(10.0);
    spec.base.turbulence = moderate;
    spec.sweep_variable = SweepVariable::GammaAvgDb;
    spec.sweep_values = {0, 5, 10, 15, 20, 25, 30};
    spec.run_analytic = true;
    spec.run_simulate = false;
    spec.output_path = name + ".csv";

    auto both_schemes = [&](const std::vector<TurbulenceParams>& regimes,
                            const std::vector<int>& users) {
        for (Scheme s : {Scheme::DecodeForward, Scheme::AmplifyForward})
            for (const auto& t : regimes)
                for (int n : users)
                    spec.curves.push_back({s, t, n});
    };

    if (name == "fig2") {
        spec.metrics = {Metric::Outage};
        both_schemes({moderate, strong}, {2});
    } else if (name == "fig3") {
        spec.metrics = {Metric::Outage};
        both_schemes({moderate}, {1, 2, 4});
    } else if (name == "fig4") {
        spec.metrics = {Metric::Ber};
        both_schemes({moderate}, {1, 2, 4});
    } else if (name == "fig5") {
        spec.metrics = {Metric::Ber};
        both_schemes({moderate, strong}, {2});
    } else {
        throw config_error("unknown figure preset '" + name +
                           "' (expected fig2, fig3, fig4 or fig5)");
    }
    return spec;
}

} // namespace hyfso
