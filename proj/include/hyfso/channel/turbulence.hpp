#pragma once

#include <cmath>
#include <optional>
#include <string>

#include "hyfso/errors.hpp"
#include "hyfso/math/log_gamma.hpp"
#include "hyfso/math/meijer_g.hpp"

namespace hyfso {

// Gamma-Gamma turbulence with pointing error. alpha/beta are the large- and
// small-scale scintillation shapes; xi is the ratio of equivalent beam
// radius to pointing-jitter deviation (large xi = negligible pointing
// error); kappa collects the remaining detection constants.
struct TurbulenceParams {
    double alpha = 4.0;
    double beta = 1.9;
    double xi = 10.45;
    double kappa = 1.0;
    std::optional<double> rytov_variance;

    TurbulenceParams(double alpha_, double beta_, double xi_, double kappa_ = 1.0,
                     std::optional<double> rytov = std::nullopt)
        : alpha(alpha_), beta(beta_), xi(xi_), kappa(kappa_), rytov_variance(rytov) {
        if (!(alpha > 0.0) || !(beta > 0.0))
            throw domain_error("TurbulenceParams: alpha and beta must be positive");
        if (!(xi > 0.0))
            throw domain_error("TurbulenceParams: xi must be positive");
        if (!(kappa > 0.0))
            throw domain_error("TurbulenceParams: kappa must be positive");
        if (rytov_variance) validate_rytov();
    }

    double xi2() const { return xi * xi; }

private:
    void validate_rytov() const;
};

// Plane-wave scintillation shapes from the Rytov variance:
//   alpha = [exp(0.49 s2 / (1 + 1.11 s2^{6/5})^{7/6}) - 1]^{-1}
//   beta  = [exp(0.51 s2 / (1 + 0.69 s2^{6/5})^{5/6}) - 1]^{-1}
inline std::pair<double, double> rytov_shapes(double rytov_variance) {
    if (!(rytov_variance > 0.0))
        throw domain_error("rytov_shapes: Rytov variance must be positive, got " +
                           std::to_string(rytov_variance));
    const double s2 = rytov_variance;
    const double a =
        1.0 / std::expm1(0.49 * s2 / std::pow(1.0 + 1.11 * std::pow(s2, 1.2), 7.0 / 6.0));
    const double b =
        1.0 / std::expm1(0.51 * s2 / std::pow(1.0 + 0.69 * std::pow(s2, 1.2), 5.0 / 6.0));
    return {a, b};
}

inline TurbulenceParams gg_params_from_rytov(double rytov_variance, double xi,
                                             double kappa = 1.0) {
    auto [a, b] = rytov_shapes(rytov_variance);
    return TurbulenceParams(a, b, xi, kappa, rytov_variance);
}

inline void TurbulenceParams::validate_rytov() const {
    auto [a, b] = rytov_shapes(*rytov_variance);
    if (std::abs(a - alpha) > 1e-12 * std::abs(a) ||
        std::abs(b - beta) > 1e-12 * std::abs(b))
        throw domain_error(
            "TurbulenceParams: alpha/beta inconsistent with the stated Rytov variance");
}

namespace detail {

inline MeijerGSpec fso_cdf_spec(const TurbulenceParams& t) {
    const double x2 = t.xi2();
    return MeijerGSpec(3, 1, {1.0, x2 + 1.0}, {x2, t.alpha, t.beta, 0.0});
}

} // namespace detail

// CDF of the FSO-hop SNR gamma = mean_snr * (I/kappa)^2 where I is the
// product of the unit-mean Gamma-Gamma fade and the pointing-error factor
// U^{1/xi^2}:
//
//   F(g) = xi^2/(Gamma(alpha)Gamma(beta))
//          * G^{3,1}_{2,4}(alpha*beta*kappa*sqrt(g/mean) | 1, xi^2+1 ;
//                                                          xi^2, alpha, beta, 0)
inline double fso_snr_cdf(double g, double mean_snr, const TurbulenceParams& t) {
    if (!(mean_snr > 0.0))
        throw domain_error("fso_snr_cdf: mean_snr must be positive");
    if (g <= 0.0) return 0.0;
    const double z = t.alpha * t.beta * t.kappa * std::sqrt(g / mean_snr);
    const auto spec = detail::fso_cdf_spec(t);
    const double pref =
        t.xi2() / std::exp(log_gamma(t.alpha) + log_gamma(t.beta));
    return pref * meijer_g(spec, z).value;
}

} // namespace hyfso
