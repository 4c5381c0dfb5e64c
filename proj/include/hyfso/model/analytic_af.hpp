#pragma once

#include <array>
#include <cmath>
#include <map>
#include <mutex>
#include <vector>

#include "hyfso/channel/rf.hpp"
#include "hyfso/channel/turbulence.hpp"
#include "hyfso/math/bessel.hpp"
#include "hyfso/math/bivariate_meijer_g.hpp"
#include "hyfso/math/log_gamma.hpp"
#include "hyfso/math/meijer_g.hpp"
#include "hyfso/model/system_config.hpp"

namespace hyfso {

// Closed forms for the fixed-gain amplify-and-forward scheme. Each branch
// carries the first hop through a repeater, branch SNR = g1*g2/(g2 + C), and
// the destination selects the stronger branch. With the branch first hops
// fading independently, the end-to-end CDF is the product of the branch
// CDFs.

namespace detail {

inline double af_prefactor(const TurbulenceParams& t) {
    return t.xi2() * std::pow(2.0, t.alpha + t.beta - 3.0) /
           (M_PI * std::exp(log_gamma(t.alpha) + log_gamma(t.beta)));
}

inline MeijerGSpec af_fso_spec(const TurbulenceParams& t) {
    const double x2 = t.xi2();
    const double a = t.alpha, b = t.beta;
    return MeijerGSpec(7, 2,
                       {1.0, 0.5, (2.0 + x2) / 2.0, (1.0 + x2) / 2.0},
                       {1.0, (1.0 + x2) / 2.0, x2 / 2.0, (1.0 + a) / 2.0, a / 2.0,
                        (1.0 + b) / 2.0, b / 2.0, 0.5, 0.0});
}

// Same lists with an extra unit pole pair from the Laplace transform.
inline MeijerGSpec af_fso_laplace_spec(const TurbulenceParams& t) {
    const double x2 = t.xi2();
    const double a = t.alpha, b = t.beta;
    return MeijerGSpec(7, 3,
                       {0.0, 1.0, 0.5, (2.0 + x2) / 2.0, (1.0 + x2) / 2.0},
                       {1.0, (1.0 + x2) / 2.0, x2 / 2.0, (1.0 + a) / 2.0, a / 2.0,
                        (1.0 + b) / 2.0, b / 2.0, 0.5, 0.0});
}

// Branch-sum coefficient c_k = C(n-1, k) (-1)^k n/(k+1).
inline long double af_coeff(int n, int k) {
    const long double c = static_cast<long double>(
        binomial(static_cast<unsigned>(n - 1), static_cast<unsigned>(k)));
    const long double v = c * n / (k + 1.0L);
    return (k % 2 == 0) ? v : -v;
}

} // namespace detail

// CDF of the FSO branch SNR g1*g2F/(g2F + C) with the best-of-n first hop:
//
//   F(g) = 1 - sum_{k=0}^{n-1} c_k e^{-(k+1)g/mean_rf}
//              * [1 - A * G^{7,2}_{4,9}((ab kappa)^2 C g (k+1)/(16 mF mR) | ...)]
inline double cdf_af_fso_branch(const SystemConfig& cfg, double g) {
    cfg.validate();
    if (g <= 0.0) return 0.0;
    const auto& t = cfg.turbulence;
    const double mf = cfg.effective_mean_snr_fso(), mr = cfg.mean_snr_rf;
    const double A = detail::af_prefactor(t);
    const auto spec = detail::af_fso_spec(t);
    const double zbase =
        std::pow(t.alpha * t.beta * t.kappa, 2) * cfg.c_const * g / (16.0 * mf * mr);
    long double tot = 0.0L;
    for (int k = 0; k < cfg.n_users; ++k) {
        const double w = A * meijer_g(spec, zbase * (k + 1)).value;
        const long double e = std::exp(-(k + 1) * static_cast<long double>(g) / mr);
        tot += detail::af_coeff(cfg.n_users, k) * e * (1.0L - static_cast<long double>(w));
    }
    return static_cast<double>(1.0L - tot);
}

// CDF of the RF branch SNR g1*g2R/(g2R + C); the kernel
// G^{2,0}_{0,2}(z | -; 1, 0) collapses to 2 sqrt(z) K_1(2 sqrt(z)).
inline double cdf_af_rf_branch(const SystemConfig& cfg, double g) {
    cfg.validate();
    if (g <= 0.0) return 0.0;
    const double mr = cfg.mean_snr_rf;
    long double tot = 0.0L;
    for (int k = 0; k < cfg.n_users; ++k) {
        const double z = g * cfg.c_const * (k + 1) / (mr * mr);
        const double kern = 2.0 * std::sqrt(z) * bessel_k(1.0, 2.0 * std::sqrt(z));
        const long double e = std::exp(-(k + 1) * static_cast<long double>(g) / mr);
        tot += detail::af_coeff(cfg.n_users, k) * e * static_cast<long double>(kern);
    }
    return static_cast<double>(1.0L - tot);
}

// End-to-end outage. The expanded form multiplies the two branch sums out;
// the cross term pairs each FSO-sum index with each RF-sum index. Both forms
// reuse identical kernel values so that their difference isolates the
// expansion algebra.
inline double pout_af(const SystemConfig& cfg, double gamma_th, Form form = Form::Compact) {
    cfg.validate();
    if (gamma_th <= 0.0) return 0.0;
    if (form == Form::Compact)
        return cdf_af_fso_branch(cfg, gamma_th) * cdf_af_rf_branch(cfg, gamma_th);

    const auto& t = cfg.turbulence;
    const double mf = cfg.effective_mean_snr_fso(), mr = cfg.mean_snr_rf;
    const double A = detail::af_prefactor(t);
    const auto spec = detail::af_fso_spec(t);
    const double zbase =
        std::pow(t.alpha * t.beta * t.kappa, 2) * cfg.c_const * gamma_th / (16.0 * mf * mr);
    const int n = cfg.n_users;
    std::vector<long double> cw(static_cast<std::size_t>(n)), cb(static_cast<std::size_t>(n)),
        ee(static_cast<std::size_t>(n));
    for (int k = 0; k < n; ++k) {
        cw[static_cast<std::size_t>(k)] =
            1.0L - static_cast<long double>(A * meijer_g(spec, zbase * (k + 1)).value);
        const double z = gamma_th * cfg.c_const * (k + 1) / (mr * mr);
        cb[static_cast<std::size_t>(k)] =
            static_cast<long double>(2.0 * std::sqrt(z) * bessel_k(1.0, 2.0 * std::sqrt(z)));
        ee[static_cast<std::size_t>(k)] =
            std::exp(-(k + 1) * static_cast<long double>(gamma_th) / mr);
    }
    long double tot = 1.0L;
    for (int k = 0; k < n; ++k) {
        const long double ck = detail::af_coeff(n, k);
        tot -= ck * ee[static_cast<std::size_t>(k)] * cw[static_cast<std::size_t>(k)];
        tot -= ck * ee[static_cast<std::size_t>(k)] * cb[static_cast<std::size_t>(k)];
    }
    for (int kf = 0; kf < n; ++kf)
        for (int kr = 0; kr < n; ++kr)
            tot += detail::af_coeff(n, kf) * detail::af_coeff(n, kr) *
                   ee[static_cast<std::size_t>(kf)] * ee[static_cast<std::size_t>(kr)] *
                   cw[static_cast<std::size_t>(kf)] * cb[static_cast<std::size_t>(kr)];
    return static_cast<double>(tot);
}

namespace detail {

// The BER cross term needs the joint transform
//   D(x, y) = (1/2 pi i)^2 II Gamma(1-s-t) phi_rf(s) phi_fso(t) x^{-s} y^{-t}
// which is a two-fold contour integral; cache it, the sweep grids revisit
// the same (x, y) pairs constantly.
inline double af_cross_kernel(const TurbulenceParams& t, double x, double y) {
    using Key = std::array<double, 5>;
    static std::map<Key, double> cache;
    static std::mutex mu;
    const Key key{t.alpha, t.beta, t.xi, x, y};
    {
        std::lock_guard<std::mutex> lock(mu);
        auto it = cache.find(key);
        if (it != cache.end()) return it->second;
    }
    BivariateGSpec spec{MeijerGSpec(0, 1, {0.0}, {}),
                        MeijerGSpec(2, 0, {}, {1.0, 0.0}), af_fso_spec(t)};
    const double v = bivariate_meijer_g(spec, x, y).value;
    std::lock_guard<std::mutex> lock(mu);
    cache.emplace(key, v);
    return v;
}

} // namespace detail

// Average DPSK BER for the fixed-gain scheme: Laplace transforms of the two
// branch sums at lam = 1 + (k+1)/mean_rf plus the bivariate cross term at
// mu = 1 + (kf+kr+2)/mean_rf.
inline double ber_af(const SystemConfig& cfg) {
    cfg.validate();
    const auto& t = cfg.turbulence;
    const double mf = cfg.effective_mean_snr_fso(), mr = cfg.mean_snr_rf;
    const double A = detail::af_prefactor(t);
    const int n = cfg.n_users;
    const auto lspec = detail::af_fso_laplace_spec(t);
    const MeijerGSpec g21(2, 1, {0.0}, {1.0, 0.0});

    const double zeta0 = std::pow(t.alpha * t.beta * t.kappa, 2) * cfg.c_const / (16.0 * mf * mr);
    const double eta0 = cfg.c_const / (mr * mr);

    long double tot = 1.0L;
    for (int k = 0; k < n; ++k) {
        const long double ck = detail::af_coeff(n, k);
        const double lam = 1.0 + (k + 1) / mr;
        const double wf = 1.0 - A * meijer_g(lspec, zeta0 * (k + 1) / lam).value;
        const double wr = meijer_g(g21, eta0 * (k + 1) / lam).value;
        tot -= ck / lam * static_cast<long double>(wf);
        tot -= ck / lam * static_cast<long double>(wr);
    }
    for (int kf = 0; kf < n; ++kf) {
        for (int kr = 0; kr < n; ++kr) {
            const double mu = 1.0 + (kf + kr + 2) / mr;
            const double x = eta0 * (kr + 1) / mu;
            const double y = zeta0 * (kf + 1) / mu;
            const double cross =
                meijer_g(g21, x).value - A * detail::af_cross_kernel(t, x, y);
            tot += detail::af_coeff(n, kf) * detail::af_coeff(n, kr) / mu *
                   static_cast<long double>(cross);
        }
    }
    return static_cast<double>(tot / 2.0L);
}

} // namespace hyfso
