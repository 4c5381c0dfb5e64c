#include <cstdio>
#include <exception>
#include <string>

#include <CLI11.hpp>

#include "hyfso/cli/config_parse.hpp"
#include "hyfso/cli/sweep.hpp"
#include "hyfso/errors.hpp"

namespace {

struct CommonOpts {
    std::optional<std::uint64_t> trials;
    std::optional<std::uint64_t> seed;
    std::optional<int> workers;
    std::optional<std::string> out;
};

void add_common(CLI::App* cmd, CommonOpts& o) {
    cmd->add_option("--trials", o.trials, "Monte Carlo trials per cell");
    cmd->add_option("--seed", o.seed, "root RNG seed");
    cmd->add_option("--workers", o.workers, "worker threads")->check(CLI::Range(1, 256));
    cmd->add_option("--out", o.out, "output CSV path");
}

void apply_common(hyfso::SweepSpec& spec, const CommonOpts& o) {
    if (o.trials) spec.trials = *o.trials;
    if (o.seed) spec.seed = *o.seed;
    if (o.workers) spec.workers = *o.workers;
    if (o.out) spec.output_path = *o.out;
}

int run_sweep_command(hyfso::SweepSpec spec, const CommonOpts& o) {
    apply_common(spec, o);
    spec.validate();
    const hyfso::SweepResult result = hyfso::run_sweep(spec);
    if (spec.run_simulate && result.padded_trials != spec.trials)
        std::printf("note: trials padded from %llu to %llu (multiple of batch_size %u)\n",
                    static_cast<unsigned long long>(spec.trials),
                    static_cast<unsigned long long>(result.padded_trials),
                    spec.batch_size);
    std::size_t failed = 0;
    for (const auto& row : result.rows)
        if (!row.error.empty()) {
            std::fprintf(stderr, "cell error: %s %s n=%d gamma_avg=%.6g dB: %s\n",
                         row.scheme.c_str(), row.metric.c_str(), row.n_users,
                         row.gamma_avg_db, row.error.c_str());
            ++failed;
        }
    std::printf("wrote %zu rows to %s (%zu cell errors)\n", result.rows.size(),
                spec.output_path.c_str(), failed);
    return failed == 0 ? 0 : 3;
}

int run_verify_command(hyfso::SweepSpec spec, const CommonOpts& o,
                       const hyfso::VerifyOptions& vopt) {
    apply_common(spec, o);
    spec.validate();
    const hyfso::VerifyReport report = hyfso::verify(spec, vopt);
    std::printf("%-6s %-7s %2s %12s %14s %14s %12s  %s\n", "scheme", "metric", "N",
                "gamma_avg", "analytic", "simulated", "stderr", "status");
    std::size_t errored = 0;
    for (const auto& cell : report.cells) {
        const auto& r = cell.row;
        if (!r.error.empty()) {
            std::printf("%-6s %-7s %2d %10.4g dB %14s %14s %12s  ERROR %s\n",
                        r.scheme.c_str(), r.metric.c_str(), r.n_users, r.gamma_avg_db,
                        "-", "-", "-", r.error.c_str());
            ++errored;
            continue;
        }
        std::printf("%-6s %-7s %2d %10.4g dB %14.6e %14.6e %12.3e  %s (%s)\n",
                    r.scheme.c_str(), r.metric.c_str(), r.n_users, r.gamma_avg_db,
                    r.analytic_value.value_or(0.0), r.sim_value.value_or(0.0),
                    r.sim_stderr.value_or(0.0), cell.pass ? "ok" : "EXCEED",
                    cell.detail.c_str());
    }
    if (report.padded_trials != 0 && report.padded_trials != spec.trials)
        std::printf("note: trials padded from %llu to %llu (multiple of batch_size %u)\n",
                    static_cast<unsigned long long>(spec.trials),
                    static_cast<unsigned long long>(report.padded_trials),
                    spec.batch_size);
    const std::size_t max_allowed =
        static_cast<std::size_t>(0.02 * static_cast<double>(report.cells.size()));
    std::printf("verify: %zu/%zu cells within %.3g*stderr (max allowed failures %zu) -> %s\n",
                report.cells.size() - report.failed, report.cells.size(),
                vopt.stderr_mult, max_allowed, report.pass ? "PASS" : "FAIL");
    if (errored > 0) return 3;
    return report.pass ? 0 : 2;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"dual-hop mixed RF/optical multiuser link performance tool"};
    app.require_subcommand(1);

    std::string config_path;
    std::string figure_name;
    CommonOpts opts;
    hyfso::VerifyOptions vopt;

    auto* analytic = app.add_subcommand("analytic", "closed-form metrics over a sweep");
    analytic->add_option("config", config_path, "scenario file")->required();
    add_common(analytic, opts);

    auto* simulate = app.add_subcommand("simulate", "Monte Carlo metrics over a sweep");
    simulate->add_option("config", config_path, "scenario file")->required();
    add_common(simulate, opts);

    auto* verify = app.add_subcommand(
        "verify", "run analytic and Monte Carlo side by side and compare");
    verify->add_option("config", config_path, "scenario file")->required();
    add_common(verify, opts);
    verify->add_option("--tolerance-stderr-mult", vopt.stderr_mult,
                       "allowed |analytic - simulated| in stderr units")
        ->check(CLI::PositiveNumber);
    verify->add_option("--corrupt-cell", vopt.corrupt_cell)->group("");

    auto* figure = app.add_subcommand("figure", "canned sweep presets (fig2..fig5)");
    figure->add_option("name", figure_name, "preset name")->required();
    add_common(figure, opts);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (analytic->parsed()) {
            hyfso::SweepSpec spec = hyfso::parse_config(config_path);
            spec.run_analytic = true;
            spec.run_simulate = false;
            return run_sweep_command(std::move(spec), opts);
        }
        if (simulate->parsed()) {
            hyfso::SweepSpec spec = hyfso::parse_config(config_path);
            spec.run_analytic = false;
            spec.run_simulate = true;
            return run_sweep_command(std::move(spec), opts);
        }
        if (verify->parsed()) {
            hyfso::SweepSpec spec = hyfso::parse_config(config_path);
            return run_verify_command(std::move(spec), opts, vopt);
        }
        if (figure->parsed()) {
            hyfso::SweepSpec spec = hyfso::figure_preset(figure_name);
            if (opts.out) {
                spec.output_path = *opts.out;
                opts.out.reset();
            }
            return run_sweep_command(std::move(spec), opts);
        }
    } catch (const hyfso::config_error& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return 1;
    } catch (const hyfso::io_error& e) {
        std::fprintf(stderr, "io error: %s\n", e.what());
        return 1;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 3;
    }
    return 1;
}
