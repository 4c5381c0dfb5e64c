#pragma once

#include <cmath>
#include <complex>
#include <limits>
#include <optional>
#include <string>
#include <utility>

#include "hyfso/errors.hpp"
#include "hyfso/math/meijer_g.hpp"
#include "hyfso/math/quadrature.hpp"

namespace hyfso {

// Two-fold Mellin-Barnes integral
//
//   (1/2*pi*i)^2 II outer(s+t) X(s) Y(t) x^{-s} y^{-t} ds dt
//
// where each factor is the Gamma product of a MeijerGSpec (see log_phi).
// The s contour is the inner loop, so the cheaper factor belongs in
// `x_block`. Without `outer` the integral decouples into the product of the
// two univariate functions, which the tests use as a cross-check.
struct BivariateGSpec {
    std::optional<MeijerGSpec> outer;
    MeijerGSpec x_block;
    MeijerGSpec y_block;
};

struct BivariateGValue {
    double value = 0.0;
    double error_bound = 0.0;
};

inline BivariateGValue bivariate_meijer_g(const BivariateGSpec& g, double x, double y,
                                          double guarantee_rel = 1e-6,
                                          std::optional<double> cs_in = std::nullopt,
                                          std::optional<double> ct_in = std::nullopt) {
    if (!(x > 0.0) || !(y > 0.0))
        throw domain_error("bivariate_meijer_g: x and y must be positive");

    auto pick = [](std::pair<double, double> st) {
        auto [lo, hi] = st;
        if (std::isinf(lo) && std::isinf(hi)) return 0.0;
        if (std::isinf(lo)) lo = hi - 1.0;
        if (std::isinf(hi)) hi = lo + 1.0;
        if (!(lo < hi))
            throw domain_error("bivariate_meijer_g: empty block strip");
        return 0.5 * (lo + hi);
    };
    const double cs = cs_in ? *cs_in : pick(g.x_block.strip());
    const double ct = ct_in ? *ct_in : pick(g.y_block.strip());
    if (g.outer) {
        auto [wlo, whi] = g.outer->strip();
        if (!(wlo < cs + ct && cs + ct < whi))
            throw domain_error(
                "bivariate_meijer_g: cs + ct lies outside the outer strip; pass "
                "contour abscissas explicitly");
    }

    const double lnx = std::log(x), lny = std::log(y);
    auto L = [&](std::complex<double> s, std::complex<double> t) {
        std::complex<double> r = g.x_block.log_phi(s) + g.y_block.log_phi(t) - s * lnx - t * lny;
        if (g.outer) r += g.outer->log_phi(s + t);
        return r;
    };
    const double L0 = L({cs, 0.0}, {ct, 0.0}).real();

    // Each line inherits exp(-sigma*pi*|.|/2) decay from its own block plus
    // one extra Gamma from the outer factor; truncate once that has fallen
    // below exp(-60).
    const double outer_boost = g.outer ? 1.0 : 0.0;
    const double sig_s = g.x_block.sigma() + outer_boost;
    const double sig_t = g.y_block.sigma() + outer_boost;
    if (sig_s <= 0.0 || sig_t <= 0.0)
        throw domain_error("bivariate_meijer_g: a contour integral diverges");
    const double umax = std::max(60.0 / sig_s, 8.0);
    const double tmax = std::max(60.0 / sig_t, 8.0);

    PanelStats inner_stats;
    auto inner_line = [&](double tv) {
        const std::complex<double> t(ct, tv);
        // The y factor is constant along the s line; hoist it.
        const std::complex<double> yterm = g.y_block.log_phi(t) - t * lny;
        auto fs = [&](double u) {
            const std::complex<double> s(cs, u);
            std::complex<double> r = g.x_block.log_phi(s) + yterm - s * lnx - L0;
            if (g.outer) r += g.outer->log_phi(s + t);
            return std::exp(r);
        };
        std::complex<double> tot(0.0, 0.0);
        double lo = 0.0, nx = 1.0;
        while (lo < umax) {
            const double hi2 = std::min(nx, umax);
            tot += integrate_complex(fs, lo, hi2, 1e-14, 40, &inner_stats);
            tot += integrate_complex(fs, -hi2, -lo, 1e-14, 40, &inner_stats);
            lo = nx;
            nx *= 2.0;
        }
        return tot;
    };

    PanelStats outer_stats;
    std::complex<double> total(0.0, 0.0);
    {
        double lo = 0.0, nx = 1.0;
        while (lo < tmax) {
            const double hi2 = std::min(nx, tmax);
            total += integrate_complex(inner_line, lo, hi2, 1e-11, 12, &outer_stats);
            lo = nx;
            nx *= 2.0;
        }
    }

    const double scale = std::exp(L0) * 2.0 / (4.0 * M_PI * M_PI);
    BivariateGValue out;
    out.value = scale * total.real();

    const double eps = std::numeric_limits<double>::epsilon();
    const double tail_t = std::abs(inner_line(tmax));
    const double err_outer = 10.0 * outer_stats.resid + tail_t + 8.0 * eps * outer_stats.absint;
    const double err_inner = inner_stats.resid + 2.0 * eps * inner_stats.absint;
    out.error_bound =
        scale * (err_outer + err_inner) + 4.0 * eps * std::abs(out.value);

    const double denom = std::max(std::abs(out.value), 1e-300);
    if (out.error_bound > guarantee_rel * denom) {
        const char* which = (err_outer >= err_inner) ? "t contour" : "s contour";
        throw accuracy_error(std::string("bivariate_meijer_g: ") + which +
                             " failed to certify " + std::to_string(guarantee_rel) +
                             " relative accuracy (bound " + std::to_string(out.error_bound) +
                             ", value " + std::to_string(out.value) + ")");
    }
    return out;
}

} // namespace hyfso
