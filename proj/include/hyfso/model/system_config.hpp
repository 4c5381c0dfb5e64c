#pragma once

#include <cmath>
#include <string>

#include "hyfso/channel/rf.hpp"
#include "hyfso/channel/turbulence.hpp"
#include "hyfso/errors.hpp"

namespace hyfso {

// Relaying scheme on the second (hybrid FSO/RF) hop. DecodeForward models a
// relay that decodes and retransmits, selecting the stronger of the two
// parallel links (needs link CSI). AmplifyForward models a fixed-gain
// repeater on each link with selection at the destination (no CSI needed).
enum class Scheme { DecodeForward, AmplifyForward };

inline const char* scheme_name(Scheme s) {
    return s == Scheme::DecodeForward ? "df" : "af";
}

struct SystemConfig {
    Scheme scheme = Scheme::DecodeForward;
    int n_users = 1;
    double mean_snr_rf = 10.0;   // first hop and RF branch, linear
    double mean_snr_fso = 10.0;  // FSO branch electrical mean SNR, linear
    double eta = 1.0;            // optical-to-electrical conversion coefficient
    double c_const = 1.0;        // fixed-gain constant C (AF branches)
    double gamma_th = 10.0;      // outage threshold, linear
    TurbulenceParams turbulence{4.0, 1.9, 10.45};

    void validate() const {
        if (n_users < 1 || n_users > 64)
            throw domain_error("SystemConfig: n_users must be in [1, 64], got " +
                               std::to_string(n_users));
        if (!(mean_snr_rf > 0.0) || !(mean_snr_fso > 0.0))
            throw domain_error("SystemConfig: mean SNRs must be positive");
        if (!(eta > 0.0))
            throw domain_error("SystemConfig: eta must be positive");
        if (!(c_const > 0.0))
            throw domain_error("SystemConfig: c_const must be positive");
        if (!(gamma_th > 0.0))
            throw domain_error("SystemConfig: gamma_th must be positive");
    }

    // The conversion coefficient scales the received electrical power, so it
    // enters every formula only through the effective FSO mean SNR.
    double effective_mean_snr_fso() const { return eta * eta * mean_snr_fso; }
};

inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }
inline double linear_to_db(double lin) { return 10.0 * std::log10(lin); }

} // namespace hyfso
