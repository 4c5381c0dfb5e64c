#pragma once

#include <cmath>

#include "hyfso/channel/rf.hpp"
#include "hyfso/channel/turbulence.hpp"
#include "hyfso/rng/philox.hpp"

namespace hyfso {

// One Rayleigh-link SNR draw (exponential with the given mean).
inline double sample_rf_snr(PhiloxStream& rng, const RfParams& rf) {
    return rng.next_exponential(rf.mean_snr);
}

// Received optical intensity: I = Ia * Ip with Ia the unit-mean Gamma-Gamma
// fade (product of two Gamma variates with shapes alpha, beta and matching
// rate) and Ip = U^{1/xi^2} the pointing-error attenuation on (0, 1] with
// mean xi^2/(xi^2+1).
inline double sample_fso_intensity(PhiloxStream& rng, const TurbulenceParams& t) {
    const double xa = rng.next_gamma(t.alpha, 1.0 / t.alpha);
    const double xb = rng.next_gamma(t.beta, 1.0 / t.beta);
    const double ip = std::pow(rng.next_uniform(), 1.0 / t.xi2());
    return xa * xb * ip;
}

// SNR of the FSO hop for one intensity draw; the square law pairs with
// fso_snr_cdf.
inline double sample_fso_snr(PhiloxStream& rng, double mean_snr, const TurbulenceParams& t) {
    const double i = sample_fso_intensity(rng, t) / t.kappa;
    return mean_snr * i * i;
}

} // namespace hyfso
