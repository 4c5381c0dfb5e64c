#pragma once

#include <cmath>
#include <vector>

#include "hyfso/channel/rf.hpp"
#include "hyfso/channel/turbulence.hpp"
#include "hyfso/math/log_gamma.hpp"
#include "hyfso/math/meijer_g.hpp"
#include "hyfso/model/system_config.hpp"

namespace hyfso {

// Closed forms for the decode-and-forward scheme. End-to-end outage couples
// the access-point selection CDF with the second hop, where the FSO and RF
// links are in parallel and the stronger one is used:
//
//   P_out = 1 - (1 - F_1(g)) * (1 - F_fso(g) * F_rf(g)),   g = gamma_th.

namespace detail {

struct DfParts {
    long double e;       // exp(-g / mean_rf)
    double f_fso;        // FSO branch CDF at g
    int n;
};

inline DfParts df_parts(const SystemConfig& cfg, double g) {
    cfg.validate();
    DfParts p;
    p.n = cfg.n_users;
    p.e = std::exp(-static_cast<long double>(g) / cfg.mean_snr_rf);
    p.f_fso = fso_snr_cdf(g, cfg.effective_mean_snr_fso(), cfg.turbulence);
    return p;
}

} // namespace detail

// Both forms share the same FSO CDF value and the same exponential, so their
// agreement isolates the algebra of the binomial expansion.
inline double pout_df(const SystemConfig& cfg, double gamma_th, Form form = Form::Compact) {
    if (gamma_th <= 0.0) return 0.0;
    const auto p = detail::df_parts(cfg, gamma_th);
    const long double one_m_e = 1.0L - p.e;
    if (form == Form::Compact) {
        const long double f1 = powl(one_m_e, p.n);
        const long double f2 = static_cast<long double>(p.f_fso) * one_m_e;
        return static_cast<double>(1.0L - (1.0L - f1) * (1.0L - f2));
    }
    // Expanded: F1 + Ffso*(1-e) - sum_k C(n,k)(-1)^k Ffso (e^k - e^{k+1})
    long double acc = 0.0L, ek = 1.0L;
    const long double ff = static_cast<long double>(p.f_fso);
    for (int k = 0; k <= p.n; ++k) {
        const long double c = static_cast<long double>(
            binomial(static_cast<unsigned>(p.n), static_cast<unsigned>(k)));
        const long double sgn = (k % 2 == 0) ? 1.0L : -1.0L;
        acc += sgn * c * ek;                          // F1 term by term
        acc -= sgn * c * ff * (ek - ek * p.e);        // cross term
        ek *= p.e;
    }
    acc += ff * one_m_e;
    return static_cast<double>(acc);
}

// Laplace transform of the FSO branch CDF,
//   T(lam) = Int_0^inf e^{-lam g} F_fso(g) dg
//          = [xi^2 2^{alpha+beta-3} / (pi Gamma(alpha) Gamma(beta))] (1/lam)
//            * G^{6,3}_{5,8}((alpha beta kappa)^2 / (16 mean lam) | ...),
// the building block of the average-BER closed form.
inline double laplace_fso_cdf(double lam, double mean_snr, const TurbulenceParams& t) {
    if (!(lam > 0.0))
        throw domain_error("laplace_fso_cdf: lam must be positive");
    const double x2 = t.xi2();
    const double a = t.alpha, b = t.beta;
    MeijerGSpec spec(6, 3,
                     {0.0, 0.5, 1.0, (1.0 + x2) / 2.0, (2.0 + x2) / 2.0},
                     {x2 / 2.0, (1.0 + x2) / 2.0, a / 2.0, (1.0 + a) / 2.0,
                      b / 2.0, (1.0 + b) / 2.0, 0.0, 0.5});
    const double z = std::pow(a * b * t.kappa, 2) / (16.0 * mean_snr * lam);
    const double pref =
        x2 * std::pow(2.0, a + b - 3.0) / (M_PI * std::exp(log_gamma(a) + log_gamma(b)));
    return pref / lam * meijer_g(spec, z).value;
}

// Average DPSK BER, ber = 1/2 Int_0^inf e^{-g} P_out(g) dg, assembled from
// T(lam) at lam = 1 + k/mean_rf. The alternating sums cancel heavily at high
// SNR, so the assembly runs in extended precision over shared T values.
inline double ber_df(const SystemConfig& cfg) {
    cfg.validate();
    const int n = cfg.n_users;
    const double mrf = cfg.mean_snr_rf;
    std::vector<long double> tv(static_cast<std::size_t>(n) + 2);
    for (int k = 0; k <= n + 1; ++k)
        tv[static_cast<std::size_t>(k)] = laplace_fso_cdf(
            1.0 + k / mrf, cfg.effective_mean_snr_fso(), cfg.turbulence);

    long double s = 0.0L;
    for (int k = 0; k <= n; ++k) {
        const long double c = static_cast<long double>(
            binomial(static_cast<unsigned>(n), static_cast<unsigned>(k)));
        const long double sgn = (k % 2 == 0) ? 1.0L : -1.0L;
        s += sgn * c / (1.0L + static_cast<long double>(k) / mrf);
        s -= sgn * c * (tv[static_cast<std::size_t>(k)] - tv[static_cast<std::size_t>(k) + 1]);
    }
    s += tv[0] - tv[1];
    return static_cast<double>(s / 2.0L);
}

// Limit of the outage as the pointing-error parameter xi -> 0 (the beam
// never hits): the FSO branch is always out, leaving
//   exact = 1 - [1 - (1 - e^{-g/mean})^n] e^{-g/mean}.
// `quoted_variant` is the commonly quoted simplification (1 - e^{-g/mean})^n
// that drops the RF branch's own outage factor; it is reported alongside for
// comparison, never asserted.
struct XiZeroLimit {
    double exact;
    double quoted_variant;
};

inline XiZeroLimit pout_df_xi_zero_limit(double gamma_th, double mean_snr_rf, int n_users) {
    if (!(mean_snr_rf > 0.0) || n_users < 1)
        throw domain_error("pout_df_xi_zero_limit: bad parameters");
    const double e = std::exp(-gamma_th / mean_snr_rf);
    const double f1 = std::pow(-std::expm1(-gamma_th / mean_snr_rf), n_users);
    return {1.0 - (1.0 - f1) * e, f1};
}

} // namespace hyfso
