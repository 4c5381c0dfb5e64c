#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "hyfso/model/analytic_af.hpp"
#include "hyfso/model/analytic_df.hpp"
#include "hyfso/sim/monte_carlo.hpp"

using namespace hyfso;

namespace {

SystemConfig base_config(Scheme s, double snr_db, int n) {
    SystemConfig cfg;
    cfg.scheme = s;
    cfg.n_users = n;
    cfg.mean_snr_rf = db_to_linear(snr_db);
    cfg.mean_snr_fso = db_to_linear(snr_db);
    cfg.turbulence = TurbulenceParams(4.0, 1.9, 10.45);
    cfg.gamma_th = db_to_linear(10.0);
    return cfg;
}

} // namespace

TEST_CASE("trial counts pad to whole batches") {
    RunPlan plan{base_config(Scheme::DecodeForward, 10, 1), 100000, 1, 65536, 1};
    CHECK(detail::padded_trials(plan) == 131072);
    const EstimateCI est = estimate_outage(plan);
    CHECK(est.trials == 131072);
    plan.trials = 65536;
    CHECK(detail::padded_trials(plan) == 65536);
}

TEST_CASE("degenerate thresholds give certain outcomes") {
    SystemConfig cfg = base_config(Scheme::DecodeForward, 10, 2);
    cfg.gamma_th = 1e30;
    RunPlan plan{cfg, 65536, 3, 65536, 1};
    EstimateCI est = estimate_outage(plan);
    CHECK(est.value == 1.0);
    CHECK(est.std_error == 0.0);

    cfg.gamma_th = 1e-30;
    plan.config = cfg;
    est = estimate_outage(plan);
    CHECK(est.value == 0.0);
    CHECK(est.std_error == 0.0);
}

TEST_CASE("deep fades push the error rate to one half") {
    const SystemConfig cfg = base_config(Scheme::DecodeForward, -60, 1);
    RunPlan plan{cfg, 262144, 5, 65536, 1};
    const EstimateCI est = estimate_ber(plan);
    CHECK(est.value == Catch::Approx(0.5).margin(0.002));
    CHECK(est.std_error < 0.5 / std::sqrt(262144.0) * 1.1);
}

TEST_CASE("estimates are byte-identical across worker counts") {
    for (Scheme s : {Scheme::DecodeForward, Scheme::AmplifyForward}) {
        const SystemConfig cfg = base_config(s, 15, 2);
        RunPlan plan{cfg, 262144, 42, 65536, 1};
        const EstimateCI o1 = estimate_outage(plan);
        const EstimateCI b1 = estimate_ber(plan);
        for (int w : {4, 8}) {
            plan.workers = w;
            const EstimateCI ow = estimate_outage(plan);
            CHECK(ow.value == o1.value);
            CHECK(ow.std_error == o1.std_error);
            const EstimateCI bw = estimate_ber(plan);
            CHECK(bw.value == b1.value);
            CHECK(bw.std_error == b1.std_error);
        }
    }
}

TEST_CASE("same plan replays identically, other seeds differ") {
    const SystemConfig cfg = base_config(Scheme::AmplifyForward, 12, 2);
    RunPlan plan{cfg, 131072, 9, 65536, 1};
    const EstimateCI a = estimate_outage(plan);
    const EstimateCI b = estimate_outage(plan);
    CHECK(a.value == b.value);
    plan.seed = 10;
    const EstimateCI c = estimate_outage(plan);
    CHECK(a.value != c.value);
}

TEST_CASE("relay never beats its own first hop") {
    // Selection relaying caps the equivalent SNR by the single decoded first
    // hop; fixed-gain relaying runs one independent first hop per branch, so
    // its cap is the max of two, i.e. the end-to-end CDF dominates the
    // squared access-point CDF.
    const std::vector<double> grid = {0.5, 2.0, 8.0, 20.0, 60.0};

    const SystemConfig df = base_config(Scheme::DecodeForward, 13, 2);
    const auto ap_df = empirical_hop_cdf(df, Hop::AccessPoint, grid, 200000, 21);
    const auto ee_df = empirical_hop_cdf(df, Hop::EndToEnd, grid, 200000, 22);
    for (std::size_t i = 0; i < grid.size(); ++i)
        CHECK(ee_df[i] >= ap_df[i] - 0.01);

    const SystemConfig af = base_config(Scheme::AmplifyForward, 13, 2);
    const auto ap_af = empirical_hop_cdf(af, Hop::AccessPoint, grid, 200000, 23);
    const auto ee_af = empirical_hop_cdf(af, Hop::EndToEnd, grid, 200000, 24);
    for (std::size_t i = 0; i < grid.size(); ++i)
        CHECK(ee_af[i] >= ap_af[i] * ap_af[i] - 0.01);
}

TEST_CASE("hop draws match their analytic distributions") {
    const std::uint64_t n = 200000;
    const double gate = 2.5 / std::sqrt(static_cast<double>(n));

    const SystemConfig df = base_config(Scheme::DecodeForward, 10, 4);
    const RfParams rf(df.mean_snr_rf);
    const std::vector<double> grid = {1.0, 3.0, 7.0, 10.0, 15.0, 30.0};
    const auto ap = empirical_hop_cdf(df, Hop::AccessPoint, grid, n, 31);
    for (std::size_t i = 0; i < grid.size(); ++i)
        CHECK(std::abs(ap[i] - max_user_cdf(grid[i], rf, 4)) < gate);

    const SystemConfig af = base_config(Scheme::AmplifyForward, 15, 2);
    const auto fso = empirical_hop_cdf(af, Hop::FsoBranch, grid, n, 32);
    const auto rfb = empirical_hop_cdf(af, Hop::RfBranch, grid, n, 33);
    for (std::size_t i = 0; i < grid.size(); ++i) {
        CHECK(std::abs(fso[i] - cdf_af_fso_branch(af, grid[i])) < gate);
        CHECK(std::abs(rfb[i] - cdf_af_rf_branch(af, grid[i])) < gate);
    }
}

TEST_CASE("simulated metrics agree with the closed forms") {
    const std::uint64_t trials = 1048576;

    SystemConfig cfg = base_config(Scheme::DecodeForward, 20, 2);
    RunPlan plan{cfg, trials, 101, 65536, 1};
    EstimateCI est = estimate_outage(plan);
    CHECK(std::abs(est.value - pout_df(cfg, cfg.gamma_th)) < 4.0 * est.std_error);

    cfg = base_config(Scheme::DecodeForward, 10, 2);
    plan.config = cfg;
    plan.seed = 102;
    est = estimate_ber(plan);
    CHECK(std::abs(est.value - ber_df(cfg)) < 4.0 * est.std_error);

    cfg = base_config(Scheme::AmplifyForward, 15, 2);
    plan.config = cfg;
    plan.seed = 103;
    est = estimate_outage(plan);
    CHECK(std::abs(est.value - pout_af(cfg, cfg.gamma_th)) < 4.0 * est.std_error);

    cfg = base_config(Scheme::AmplifyForward, 10, 1);
    plan.config = cfg;
    plan.seed = 104;
    est = estimate_ber(plan);
    CHECK(std::abs(est.value - ber_af(cfg)) < 4.0 * est.std_error);
}

TEST_CASE("ideal optical hop reduces to selection over one RF link") {
    SystemConfig cfg = base_config(Scheme::DecodeForward, 8, 1);
    cfg.mean_snr_fso = 1e30;
    RunPlan plan{cfg, 1048576, 7, 65536, 1};
    const EstimateCI est = estimate_ber(plan);
    const double want = 0.5 / (1.0 + cfg.mean_snr_rf);
    CHECK(std::abs(est.value - want) < 3.0 * est.std_error);
}
