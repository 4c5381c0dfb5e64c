#pragma once

#include <charconv>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <optional>
#include <string>
#include <vector>

#include "hyfso/errors.hpp"
#include "hyfso/model/analytic_af.hpp"
#include "hyfso/model/analytic_df.hpp"
#include "hyfso/model/system_config.hpp"
#include "hyfso/sim/monte_carlo.hpp"

namespace hyfso {

enum class SweepVariable { GammaAvgDb, NUsers, GammaThDb };
enum class Metric { Outage, Ber };

inline const char* sweep_variable_name(SweepVariable v) {
    switch (v) {
    case SweepVariable::GammaAvgDb: return "gamma_avg_db";
    case SweepVariable::NUsers: return "n_users";
    case SweepVariable::GammaThDb: return "gamma_th_db";
    }
    return "?";
}

inline const char* metric_name(Metric m) {
    return m == Metric::Outage ? "outage" : "ber";
}

// One curve of a sweep: the base configuration with scheme / turbulence /
// user-count overridden. Multi-curve sweeps put several parameter sets into
// one CSV; the per-row parameter columns keep them distinguishable.
struct CurveSpec {
    Scheme scheme;
    TurbulenceParams turbulence;
    int n_users;
};

struct SweepSpec {
    SystemConfig base;
    std::vector<CurveSpec> curves;  // empty = single curve taken from base
    SweepVariable sweep_variable = SweepVariable::GammaAvgDb;
    std::vector<double> sweep_values;
    std::vector<Metric> metrics{Metric::Outage, Metric::Ber};
    bool run_analytic = true;
    bool run_simulate = false;
    std::uint64_t trials = 1000000;
    std::uint64_t seed = 0;
    std::uint32_t batch_size = 65536;
    int workers = 1;
    std::string output_path = "hyfso_out.csv";

    void validate() const {
        base.validate();
        if (sweep_values.empty())
            throw config_error("sweep: sweep_values must be nonempty");
        for (std::size_t i = 1; i < sweep_values.size(); ++i)
            if (!(sweep_values[i - 1] < sweep_values[i]))
                throw config_error("sweep: sweep_values must be strictly increasing");
        if (metrics.empty())
            throw config_error("sweep: metrics must be nonempty");
        if (!run_analytic && !run_simulate)
            throw config_error("sweep: at least one of analytic/simulate modes required");
        if (run_simulate && trials < 10000)
            throw config_error("sweep: simulation requires at least 10^4 trials");
        if (sweep_variable == SweepVariable::NUsers)
            for (double v : sweep_values)
                if (v < 1.0 || v != std::floor(v))
                    throw config_error("sweep: n_users values must be positive integers");
    }
};

struct SweepRow {
    std::string scheme;
    int n_users = 0;
    double alpha = 0, beta = 0, xi = 0, kappa = 0;
    double gamma_th_db = 0, gamma_avg_db = 0;
    std::string metric;
    std::optional<double> analytic_value, sim_value, sim_stderr;
    std::optional<std::uint64_t> trials;
    std::string error;  // empty when the cell evaluated cleanly
};

struct SweepResult {
    std::vector<SweepRow> rows;
    bool any_cell_failed = false;
    std::uint64_t padded_trials = 0;  // 0 when no simulation ran
};

namespace detail {

inline std::string format_double(double v) {
    char buf[40];
    auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    if (ec != std::errc())
        throw io_error("format_double failed");
    return std::string(buf, end);
}

inline SystemConfig cell_config(const SweepSpec& spec, const CurveSpec& curve, double value) {
    SystemConfig cfg = spec.base;
    cfg.scheme = curve.scheme;
    cfg.turbulence = curve.turbulence;
    cfg.n_users = curve.n_users;
    switch (spec.sweep_variable) {
    case SweepVariable::GammaAvgDb:
        cfg.mean_snr_rf = db_to_linear(value);
        cfg.mean_snr_fso = db_to_linear(value);
        break;
    case SweepVariable::NUsers:
        cfg.n_users = static_cast<int>(value);
        break;
    case SweepVariable::GammaThDb:
        cfg.gamma_th = db_to_linear(value);
        break;
    }
    return cfg;
}

inline double analytic_metric(const SystemConfig& cfg, Metric m) {
    if (m == Metric::Outage)
        return cfg.scheme == Scheme::DecodeForward ? pout_df(cfg, cfg.gamma_th)
                                                   : pout_af(cfg, cfg.gamma_th);
    return cfg.scheme == Scheme::DecodeForward ? ber_df(cfg) : ber_af(cfg);
}

inline std::string sanitize_error(std::string s) {
    for (char& c : s)
        if (c == ',' || c == '\n' || c == '\r') c = ';';
    return s;
}

inline void write_csv(const std::string& path, const std::vector<SweepRow>& rows) {
    namespace fs = std::filesystem;
    const fs::path target(path);
    const fs::path tmp = target.parent_path() / (target.filename().string() + ".tmp");
    {
        std::ofstream out(tmp);
        if (!out)
            throw io_error("cannot open " + tmp.string() + " for writing");
        out << "scheme,n_users,alpha,beta,xi,kappa,gamma_th_db,gamma_avg_db,"
               "metric,analytic_value,sim_value,sim_stderr,trials,error\n";
        for (const auto& r : rows) {
            out << r.scheme << ',' << r.n_users << ',' << format_double(r.alpha) << ','
                << format_double(r.beta) << ',' << format_double(r.xi) << ','
                << format_double(r.kappa) << ',' << format_double(r.gamma_th_db) << ','
                << format_double(r.gamma_avg_db) << ',' << r.metric << ',';
            if (r.analytic_value) out << format_double(*r.analytic_value);
            out << ',';
            if (r.sim_value) out << format_double(*r.sim_value);
            out << ',';
            if (r.sim_stderr) out << format_double(*r.sim_stderr);
            out << ',';
            if (r.trials) out << *r.trials;
            out << ',' << r.error << '\n';
        }
        if (!out.flush())
            throw io_error("failed writing " + tmp.string());
    }
    std::error_code ec;
    fs::rename(tmp, target, ec);
    if (ec)
        throw io_error("failed to move " + tmp.string() + " into place: " + ec.message());
}

inline std::string json_escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        if (c == '"' || c == '\\') {
            out += '\\';
            out += c;
        } else if (c == '\n') {
            out += "\\n";
        } else {
            out += c;
        }
    }
    return out;
}

inline void write_metadata(const std::string& csv_path, const SweepSpec& spec,
                           std::uint64_t padded) {
    std::ofstream out(csv_path + ".meta.json");
    if (!out)
        throw io_error("cannot open metadata sidecar for " + csv_path);
    const auto& b = spec.base;
    out << "{\n"
        << "  \"tool\": \"hyfso 1.0.0\",\n"
        << "  \"output\": \"" << json_escape(csv_path) << "\",\n"
        << "  \"sweep_variable\": \"" << sweep_variable_name(spec.sweep_variable) << "\",\n"
        << "  \"sweep_values\": [";
    for (std::size_t i = 0; i < spec.sweep_values.size(); ++i)
        out << (i ? ", " : "") << format_double(spec.sweep_values[i]);
    out << "],\n  \"metrics\": [";
    for (std::size_t i = 0; i < spec.metrics.size(); ++i)
        out << (i ? ", " : "") << '"' << metric_name(spec.metrics[i]) << '"';
    out << "],\n"
        << "  \"modes\": {\"analytic\": " << (spec.run_analytic ? "true" : "false")
        << ", \"simulate\": " << (spec.run_simulate ? "true" : "false") << "},\n"
        << "  \"trials_requested\": " << spec.trials << ",\n"
        << "  \"trials_padded\": " << padded << ",\n"
        << "  \"seed\": " << spec.seed << ",\n"
        << "  \"batch_size\": " << spec.batch_size << ",\n"
        << "  \"workers\": " << spec.workers << ",\n"
        << "  \"curves\": [";
    const auto curves = spec.curves;
    bool first = true;
    for (const auto& c : curves) {
        out << (first ? "" : ", ") << "{\"scheme\": \"" << scheme_name(c.scheme)
            << "\", \"n_users\": " << c.n_users << ", \"alpha\": " << format_double(c.turbulence.alpha)
            << ", \"beta\": " << format_double(c.turbulence.beta)
            << ", \"xi\": " << format_double(c.turbulence.xi)
            << ", \"kappa\": " << format_double(c.turbulence.kappa) << "}";
        first = false;
    }
    out << "],\n"
        << "  \"base\": {\"scheme\": \"" << scheme_name(b.scheme)
        << "\", \"n_users\": " << b.n_users
        << ", \"mean_snr_rf\": " << format_double(b.mean_snr_rf)
        << ", \"mean_snr_fso\": " << format_double(b.mean_snr_fso)
        << ", \"eta\": " << format_double(b.eta)
        << ", \"c_const\": " << format_double(b.c_const)
        << ", \"gamma_th\": " << format_double(b.gamma_th)
        << ", \"alpha\": " << format_double(b.turbulence.alpha)
        << ", \"beta\": " << format_double(b.turbulence.beta)
        << ", \"xi\": " << format_double(b.turbulence.xi)
        << ", \"kappa\": " << format_double(b.turbulence.kappa) << "}\n"
        << "}\n";
}

} // namespace detail

// Evaluates the grid (curves x sweep values x metrics) and writes the CSV
// plus a .meta.json sidecar when output_path is nonempty. Cells that throw
// keep the run alive: the row carries the message in the error column.
inline SweepResult run_sweep(const SweepSpec& spec) {
    spec.validate();
    std::vector<CurveSpec> curves = spec.curves;
    if (curves.empty())
        curves.push_back({spec.base.scheme, spec.base.turbulence, spec.base.n_users});

    SweepResult result;
    for (const auto& curve : curves) {
        for (double value : spec.sweep_values) {
            for (Metric m : spec.metrics) {
                SystemConfig cfg = detail::cell_config(spec, curve, value);
                SweepRow row;
                row.scheme = scheme_name(cfg.scheme);
                row.n_users = cfg.n_users;
                row.alpha = cfg.turbulence.alpha;
                row.beta = cfg.turbulence.beta;
                row.xi = cfg.turbulence.xi;
                row.kappa = cfg.turbulence.kappa;
                row.gamma_th_db = linear_to_db(cfg.gamma_th);
                row.gamma_avg_db = linear_to_db(cfg.mean_snr_rf);
                row.metric = metric_name(m);
                try {
                    if (spec.run_analytic)
                        row.analytic_value = detail::analytic_metric(cfg, m);
                    if (spec.run_simulate) {
                        RunPlan plan{cfg, spec.trials, spec.seed, spec.batch_size,
                                     spec.workers};
                        const EstimateCI est =
                            m == Metric::Outage ? estimate_outage(plan) : estimate_ber(plan);
                        row.sim_value = est.value;
                        row.sim_stderr = est.std_error;
                        row.trials = est.trials;
                        result.padded_trials = est.trials;
                    }
                } catch (const std::exception& e) {
                    row.error = detail::sanitize_error(e.what());
                    result.any_cell_failed = true;
                }
                result.rows.push_back(std::move(row));
            }
        }
    }
    if (!spec.output_path.empty()) {
        detail::write_csv(spec.output_path, result.rows);
        SweepSpec resolved = spec;
        resolved.curves = curves;
        detail::write_metadata(spec.output_path, resolved, result.padded_trials);
    }
    return result;
}

// Comparison gate between the closed forms and the Monte Carlo estimates.
struct VerifyOptions {
    double stderr_mult = 3.0;
    long corrupt_cell = -1;  // negative control: damage this row's analytic value
};

struct VerifyCell {
    SweepRow row;
    bool pass = false;
    std::string detail;
};

struct VerifyReport {
    std::vector<VerifyCell> cells;
    std::size_t failed = 0;
    std::uint64_t padded_trials = 0;
    bool pass = false;
};

inline VerifyReport verify(const SweepSpec& spec_in, const VerifyOptions& opt = {}) {
    SweepSpec spec = spec_in;
    spec.run_analytic = true;
    spec.run_simulate = true;
    SweepResult swept = run_sweep(spec);

    VerifyReport report;
    report.padded_trials = swept.padded_trials;
    for (std::size_t i = 0; i < swept.rows.size(); ++i) {
        VerifyCell cell;
        cell.row = swept.rows[i];
        if (opt.corrupt_cell >= 0 && static_cast<std::size_t>(opt.corrupt_cell) == i &&
            cell.row.analytic_value) {
            cell.row.analytic_value = *cell.row.analytic_value * 1.5 + 1e-3;
            cell.detail = "negative control: analytic value deliberately corrupted; ";
        }
        if (!cell.row.error.empty() || !cell.row.analytic_value || !cell.row.sim_value) {
            cell.pass = false;
            cell.detail += cell.row.error.empty() ? "missing values" : cell.row.error;
        } else {
            const double a = *cell.row.analytic_value;
            const double s = *cell.row.sim_value;
            const double se = cell.row.sim_stderr.value_or(0.0);
            const double n = static_cast<double>(cell.row.trials.value_or(1));
            const double diff = std::abs(a - s);
            const double floor = opt.stderr_mult / n;
            if (s == 0.0 && cell.row.metric == "outage") {
                // Zero-count cell: the normal-theory band is degenerate; use
                // the upper bound mult/trials instead.
                cell.pass = a <= floor;
                cell.detail += "zero-count bound " + detail::format_double(floor);
            } else if (cell.row.metric == "ber" && s < floor && a < floor) {
                // Means of [0,1] variables below ~mult/trials are invisible
                // to the sampler and its empirical stderr collapses; both
                // sides under the floor is agreement at this trial count.
                cell.pass = true;
                cell.detail += "below mc resolution " + detail::format_double(floor);
            } else {
                cell.pass = diff <= opt.stderr_mult * se;
                cell.detail += "|a-s|=" + detail::format_double(diff) + " vs " +
                               detail::format_double(opt.stderr_mult) + "*se=" +
                               detail::format_double(opt.stderr_mult * se);
            }
        }
        if (!cell.pass) ++report.failed;
        report.cells.push_back(std::move(cell));
    }
    const double frac = report.cells.empty()
                            ? 1.0
                            : static_cast<double>(report.failed) /
                                  static_cast<double>(report.cells.size());
    report.pass = frac <= 0.02;
    return report;
}

} // namespace hyfso
