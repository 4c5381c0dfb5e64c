#pragma once

#include <cmath>
#include <string>

#include "hyfso/errors.hpp"
#include "hyfso/math/log_gamma.hpp"

namespace hyfso {

struct RfParams {
    double mean_snr = 1.0;

    explicit RfParams(double mean) : mean_snr(mean) {
        if (!(mean_snr > 0.0))
            throw domain_error("RfParams: mean_snr must be positive, got " +
                               std::to_string(mean_snr));
    }
};

// Two algebraically equal writings of the multiuser-selection formulas. The
// compact one is the stable product; the expanded one is the alternating
// binomial sum that the closed-form chains build on. Keeping both lets the
// tests pin their agreement.
enum class Form { Compact, Expanded };

// CDF of the SNR of one Rayleigh-faded link: 1 - exp(-g/mean).
inline double rayleigh_snr_cdf(double g, const RfParams& rf) {
    if (g <= 0.0) return 0.0;
    return -std::expm1(-g / rf.mean_snr);
}

inline double rayleigh_snr_pdf(double g, const RfParams& rf) {
    if (g <= 0.0) return 0.0;
    return std::exp(-g / rf.mean_snr) / rf.mean_snr;
}

// CDF of the best of n_users independent Rayleigh SNRs (opportunistic user
// selection at the access point).
inline double max_user_cdf(double g, const RfParams& rf, int n_users,
                           Form form = Form::Compact) {
    if (n_users < 1 || n_users > 64)
        throw domain_error("max_user_cdf: n_users must be in [1, 64]");
    if (g <= 0.0) return 0.0;
    if (form == Form::Compact) {
        return std::pow(-std::expm1(-g / rf.mean_snr), n_users);
    }
    const long double e = std::exp(-static_cast<long double>(g) / rf.mean_snr);
    long double acc = 0.0L, ek = 1.0L;
    for (int k = 0; k <= n_users; ++k) {
        const long double c = static_cast<long double>(binomial(static_cast<unsigned>(n_users),
                                                                static_cast<unsigned>(k)));
        acc += (k % 2 == 0 ? c : -c) * ek;
        ek *= e;
    }
    return static_cast<double>(acc);
}

inline double max_user_pdf(double g, const RfParams& rf, int n_users,
                           Form form = Form::Compact) {
    if (n_users < 1 || n_users > 64)
        throw domain_error("max_user_pdf: n_users must be in [1, 64]");
    if (g <= 0.0) return 0.0;
    const double invm = 1.0 / rf.mean_snr;
    if (form == Form::Compact) {
        return n_users * invm * std::pow(-std::expm1(-g * invm), n_users - 1) *
               std::exp(-g * invm);
    }
    // d/dg of the expanded CDF: sum_k C(n,k) (-1)^{k+1} (k/mean) e^{-k g/mean}
    const long double e = std::exp(-static_cast<long double>(g) * invm);
    long double acc = 0.0L, ek = 1.0L;
    for (int k = 0; k <= n_users; ++k) {
        const long double c = static_cast<long double>(binomial(static_cast<unsigned>(n_users),
                                                                static_cast<unsigned>(k)));
        const long double term = (k % 2 == 0 ? -c : c) * k * invm * ek;
        acc += term;
        ek *= e;
    }
    return static_cast<double>(acc);
}

} // namespace hyfso
