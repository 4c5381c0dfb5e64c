#pragma once

#include <algorithm>
#include <atomic>
#include <cassert>
#include <cmath>
#include <cstdint>
#include <thread>
#include <vector>

#include "hyfso/channel/sampling.hpp"
#include "hyfso/errors.hpp"
#include "hyfso/model/system_config.hpp"
#include "hyfso/rng/philox.hpp"

namespace hyfso {

struct RunPlan {
    SystemConfig config;
    std::uint64_t trials = 1000000;
    std::uint64_t seed = 0;
    std::uint32_t batch_size = 65536;
    int workers = 1;
};

struct EstimateCI {
    double value = 0.0;
    double std_error = 0.0;
    std::uint64_t trials = 0;  // after padding to whole batches
};

// One end-to-end equivalent-SNR realization. Draw order is part of the
// reproducibility contract:
//   DF: n first-hop exponentials, FSO intensity (2 Gammas + 1 uniform),
//       RF exponential; geq = min(g1, max(g2F, g2R)).
//   AF: each branch has its own independently faded first hop (n
//       exponentials each, FSO branch first), then the second-hop draws as
//       above; branch SNR g1*g2/(g2+C), geq = best branch.
inline double draw_equivalent_snr(PhiloxStream& rng, const SystemConfig& cfg) {
    const RfParams rf(cfg.mean_snr_rf);
    auto max_user = [&]() {
        double m = 0.0;
        for (int i = 0; i < cfg.n_users; ++i)
            m = std::max(m, sample_rf_snr(rng, rf));
        return m;
    };
    if (cfg.scheme == Scheme::DecodeForward) {
        const double g1 = max_user();
        const double g2f = sample_fso_snr(rng, cfg.effective_mean_snr_fso(), cfg.turbulence);
        const double g2r = sample_rf_snr(rng, rf);
        return std::min(g1, std::max(g2f, g2r));
    }
    const double g1f = max_user();
    const double g1r = max_user();
    const double g2f = sample_fso_snr(rng, cfg.effective_mean_snr_fso(), cfg.turbulence);
    const double g2r = sample_rf_snr(rng, rf);
    const double geq = std::max(g1f * g2f / (g2f + cfg.c_const),
                                g1r * g2r / (g2r + cfg.c_const));
    assert(geq < std::max(g1f, g1r));
    return geq;
}

namespace detail {

// Runs `fn(batch_index, stream)` once per batch. Batches may execute on any
// worker; results must be stored by batch index so the final reduction is
// order-fixed and the totals do not depend on the worker count.
template <class Fn>
void for_each_batch(const RunPlan& plan, std::uint64_t n_batches, Fn&& fn) {
    const int workers = std::max(1, plan.workers);
    if (workers == 1 || n_batches <= 1) {
        for (std::uint64_t i = 0; i < n_batches; ++i) {
            PhiloxStream s(plan.seed, i);
            fn(i, s);
        }
        return;
    }
    std::atomic<std::uint64_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    for (int w = 0; w < workers; ++w) {
        pool.emplace_back([&]() {
            for (;;) {
                const std::uint64_t i = next.fetch_add(1);
                if (i >= n_batches) return;
                PhiloxStream s(plan.seed, i);
                fn(i, s);
            }
        });
    }
    for (auto& th : pool) th.join();
}

inline std::uint64_t padded_trials(const RunPlan& plan) {
    if (plan.batch_size == 0)
        throw domain_error("RunPlan: batch_size must be positive");
    if (plan.trials == 0)
        throw domain_error("RunPlan: trials must be positive");
    const std::uint64_t bs = plan.batch_size;
    return (plan.trials + bs - 1) / bs * bs;
}

} // namespace detail

// Outage probability: mean of indicator(geq < gamma_th).
inline EstimateCI estimate_outage(const RunPlan& plan) {
    plan.config.validate();
    const std::uint64_t total = detail::padded_trials(plan);
    const std::uint64_t nb = total / plan.batch_size;
    std::vector<std::uint64_t> counts(static_cast<std::size_t>(nb), 0);
    detail::for_each_batch(plan, nb, [&](std::uint64_t i, PhiloxStream& s) {
        std::uint64_t c = 0;
        for (std::uint32_t t = 0; t < plan.batch_size; ++t)
            if (draw_equivalent_snr(s, plan.config) < plan.config.gamma_th) ++c;
        counts[static_cast<std::size_t>(i)] = c;
    });
    std::uint64_t hits = 0;
    for (std::uint64_t c : counts) hits += c;
    const double p = static_cast<double>(hits) / static_cast<double>(total);
    EstimateCI out;
    out.value = p;
    out.std_error = std::sqrt(p * (1.0 - p) / static_cast<double>(total));
    out.trials = total;
    return out;
}

// Average BER as the semi-analytic mean of the conditional DPSK error
// (1/2) e^{-geq}; far lower variance than counting bit errors.
inline EstimateCI estimate_ber(const RunPlan& plan) {
    plan.config.validate();
    const std::uint64_t total = detail::padded_trials(plan);
    const std::uint64_t nb = total / plan.batch_size;
    std::vector<double> sums(static_cast<std::size_t>(nb), 0.0);
    std::vector<double> sumsqs(static_cast<std::size_t>(nb), 0.0);
    detail::for_each_batch(plan, nb, [&](std::uint64_t i, PhiloxStream& s) {
        double acc = 0.0, acc2 = 0.0;
        for (std::uint32_t t = 0; t < plan.batch_size; ++t) {
            const double v = 0.5 * std::exp(-draw_equivalent_snr(s, plan.config));
            acc += v;
            acc2 += v * v;
        }
        sums[static_cast<std::size_t>(i)] = acc;
        sumsqs[static_cast<std::size_t>(i)] = acc2;
    });
    double sum = 0.0, sumsq = 0.0;
    for (std::uint64_t i = 0; i < nb; ++i) {
        sum += sums[static_cast<std::size_t>(i)];
        sumsq += sumsqs[static_cast<std::size_t>(i)];
    }
    const double n = static_cast<double>(total);
    const double mean = sum / n;
    double var = (sumsq / n - mean * mean) * (n / std::max(n - 1.0, 1.0));
    var = std::max(var, 0.0);
    EstimateCI out;
    out.value = mean;
    out.std_error = std::sqrt(var / n);
    out.trials = total;
    return out;
}

// Which per-hop quantity empirical_hop_cdf draws. For DecodeForward the
// branches are the bare second-hop SNRs; for AmplifyForward they are the
// full repeater-branch SNRs (matching cdf_af_fso_branch/cdf_af_rf_branch).
enum class Hop { AccessPoint, FsoBranch, RfBranch, EndToEnd };

inline std::vector<double> empirical_hop_cdf(const SystemConfig& cfg, Hop hop,
                                             const std::vector<double>& grid,
                                             std::uint64_t trials, std::uint64_t seed) {
    cfg.validate();
    if (!std::is_sorted(grid.begin(), grid.end()))
        throw domain_error("empirical_hop_cdf: grid must be sorted ascending");
    const RfParams rf(cfg.mean_snr_rf);
    std::vector<double> draws;
    draws.reserve(static_cast<std::size_t>(trials));
    const std::uint64_t bs = 65536;
    const std::uint64_t nb = (trials + bs - 1) / bs;
    std::uint64_t remaining = trials;
    for (std::uint64_t i = 0; i < nb; ++i) {
        PhiloxStream s(seed, i);
        const std::uint64_t cnt = std::min(bs, remaining);
        remaining -= cnt;
        for (std::uint64_t t = 0; t < cnt; ++t) {
            double v = 0.0;
            switch (hop) {
            case Hop::AccessPoint: {
                for (int u = 0; u < cfg.n_users; ++u)
                    v = std::max(v, sample_rf_snr(s, rf));
                break;
            }
            case Hop::FsoBranch: {
                if (cfg.scheme == Scheme::DecodeForward) {
                    v = sample_fso_snr(s, cfg.effective_mean_snr_fso(), cfg.turbulence);
                } else {
                    double g1 = 0.0;
                    for (int u = 0; u < cfg.n_users; ++u)
                        g1 = std::max(g1, sample_rf_snr(s, rf));
                    const double g2 = sample_fso_snr(s, cfg.effective_mean_snr_fso(),
                                                     cfg.turbulence);
                    v = g1 * g2 / (g2 + cfg.c_const);
                }
                break;
            }
            case Hop::RfBranch: {
                if (cfg.scheme == Scheme::DecodeForward) {
                    v = sample_rf_snr(s, rf);
                } else {
                    double g1 = 0.0;
                    for (int u = 0; u < cfg.n_users; ++u)
                        g1 = std::max(g1, sample_rf_snr(s, rf));
                    const double g2 = sample_rf_snr(s, rf);
                    v = g1 * g2 / (g2 + cfg.c_const);
                }
                break;
            }
            case Hop::EndToEnd:
                v = draw_equivalent_snr(s, cfg);
                break;
            }
            draws.push_back(v);
        }
    }
    std::sort(draws.begin(), draws.end());
    std::vector<double> out;
    out.reserve(grid.size());
    for (double g : grid) {
        const auto it = std::upper_bound(draws.begin(), draws.end(), g);
        out.push_back(static_cast<double>(it - draws.begin()) /
                      static_cast<double>(trials));
    }
    return out;
}

} // namespace hyfso
