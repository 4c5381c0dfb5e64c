#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "hyfso/errors.hpp"
#include "hyfso/math/log_gamma.hpp"
#include "hyfso/math/quadrature.hpp"

namespace hyfso {

// Parameter block of a Meijer G-function
//
//   G^{m,n}_{p,q}(z | a; b) = (1/2*pi*i) Int phi(s) z^{-s} ds,
//   phi(s) = [prod_{j<=m} Gamma(b_j+s) * prod_{k<=n} Gamma(1-a_k-s)]
//          / [prod_{k>n} Gamma(a_k+s) * prod_{j>m} Gamma(1-b_j-s)].
//
// Poles of the numerator Gammas sit at s = -b_j - l (left family) and
// s = 1 - a_k + l (right family), l = 0, 1, 2, ...  The natural contour runs
// upward inside the strip  -min_{j<=m} b_j < Re s < 1 - max_{k<=n} a_k.
struct MeijerGSpec {
    int m = 0, n = 0;
    std::vector<double> a, b;

    MeijerGSpec(int m_, int n_, std::vector<double> a_, std::vector<double> b_)
        : m(m_), n(n_), a(std::move(a_)), b(std::move(b_)) {
        if (m < 0 || n < 0 || m > q() || n > p())
            throw domain_error("MeijerGSpec: need 0 <= m <= q and 0 <= n <= p");
        for (int k = 0; k < n; ++k)
            for (int j = 0; j < m; ++j) {
                const double d = a[static_cast<std::size_t>(k)] - b[static_cast<std::size_t>(j)];
                if (d > 0.5 && std::abs(d - std::round(d)) < 1e-9)
                    throw domain_error(
                        "MeijerGSpec: a[" + std::to_string(k) + "] - b[" + std::to_string(j) +
                        "] is a positive integer; the two pole families collide");
            }
    }

    int p() const { return static_cast<int>(a.size()); }
    int q() const { return static_cast<int>(b.size()); }

    // Governs the large-|Im s| decay exp(-sigma*pi*|t|/2) of |phi|.
    int sigma() const { return 2 * (m + n) - (p() + q()); }

    std::pair<double, double> strip() const {
        double lo = -std::numeric_limits<double>::infinity();
        double hi = std::numeric_limits<double>::infinity();
        for (int j = 0; j < m; ++j) lo = std::max(lo, -b[static_cast<std::size_t>(j)]);
        for (int k = 0; k < n; ++k) hi = std::min(hi, 1.0 - a[static_cast<std::size_t>(k)]);
        return {lo, hi};
    }

    std::complex<double> log_phi(std::complex<double> s) const {
        std::complex<double> L(0.0, 0.0);
        for (int j = 0; j < m; ++j) L += log_gamma(b[static_cast<std::size_t>(j)] + s);
        for (int k = 0; k < n; ++k) L += log_gamma(1.0 - a[static_cast<std::size_t>(k)] - s);
        for (int k = n; k < p(); ++k) L -= log_gamma(a[static_cast<std::size_t>(k)] + s);
        for (int j = m; j < q(); ++j) L -= log_gamma(1.0 - b[static_cast<std::size_t>(j)] - s);
        return L;
    }
};

struct MeijerGValue {
    double value = 0.0;
    // Conservative absolute error bound assembled from the accepted-panel
    // refinement residuals, the contour tail, and the roundoff floor.
    double error_bound = 0.0;
};

namespace detail {

struct RightPole {
    double position;   // Re s of the pole
    int k;             // index into a[0..n)
    int order;         // l: pole of Gamma(1-a_k-s) at s = 1-a_k+l
};

// Residue of phi(s) z^{-s} at a simple right pole s0 = 1 - a_k + l:
//   Res Gamma(1-a_k-s) = -(-1)^l / l!,  times the remaining factors at s0.
inline double right_pole_residue(const MeijerGSpec& g, const RightPole& rp, double lnz) {
    const double s0 = rp.position;
    double logmag = -static_cast<double>(std::lgamma(rp.order + 1.0)) - s0 * lnz;
    double sign = (rp.order % 2 == 0) ? -1.0 : 1.0;
    for (int j = 0; j < g.m; ++j) {
        const double w = g.b[static_cast<std::size_t>(j)] + s0;
        if (w <= 0.0 && w == std::floor(w))
            throw accuracy_error("meijer_g: residue hits a second pole; not simple");
        // std::lgamma gives log|Gamma|; the sign of Gamma(w) for w < 0
        // alternates with floor(w).
        logmag += std::lgamma(w);
        if (w < 0.0 && static_cast<long long>(std::floor(w)) % 2 != 0) sign = -sign;
    }
    for (int k2 = 0; k2 < g.n; ++k2) {
        if (k2 == rp.k) continue;
        const double w = 1.0 - g.a[static_cast<std::size_t>(k2)] - s0;
        if (w <= 0.0 && w == std::floor(w))
            throw accuracy_error("meijer_g: residue hits a second pole; not simple");
        logmag += std::lgamma(w);
        if (w < 0.0 && static_cast<long long>(std::floor(w)) % 2 != 0) sign = -sign;
    }
    for (int k2 = g.n; k2 < g.p(); ++k2) {
        const double w = g.a[static_cast<std::size_t>(k2)] + s0;
        if (w <= 0.0 && w == std::floor(w)) return 0.0;  // 1/Gamma at a pole
        logmag -= std::lgamma(w);
        if (w < 0.0 && static_cast<long long>(std::floor(w)) % 2 != 0) sign = -sign;
    }
    for (int j2 = g.m; j2 < g.q(); ++j2) {
        const double w = 1.0 - g.b[static_cast<std::size_t>(j2)] - s0;
        if (w <= 0.0 && w == std::floor(w)) return 0.0;
        logmag -= std::lgamma(w);
        if (w < 0.0 && static_cast<long long>(std::floor(w)) % 2 != 0) sign = -sign;
    }
    return sign * std::exp(logmag);
}

} // namespace detail

// Evaluates G^{m,n}_{p,q}(z | a; b) for real z > 0 along a vertical contour.
//
// The contour sits where |phi(c) z^{-c}| is smallest among 41 candidates
// across the admissible strip. When the strip is empty the contour is placed
// just right of the left pole family and the crossed right poles are added
// back as residues. Throws accuracy_error when the certified bound exceeds
// 1e-8 relative (or `guarantee_rel` if given).
inline MeijerGValue meijer_g(const MeijerGSpec& g, double z, double guarantee_rel = 1e-8) {
    if (!(z > 0.0))
        throw domain_error("meijer_g: z must be positive, got " + std::to_string(z));
    if (g.sigma() <= 0)
        throw domain_error("meijer_g: contour integral diverges (2(m+n) <= p+q)");

    const double lnz = std::log(z);
    auto [lo, hi] = g.strip();
    double residue_sum = 0.0;
    bool shifted = false;

    if (std::isinf(lo) && std::isinf(hi)) {
        lo = -2.0;
        hi = 2.0;
    } else if (std::isinf(lo)) {
        lo = hi - 4.0;
    } else if (std::isinf(hi)) {
        hi = lo + 4.0;
    } else if (hi - lo < 0.05) {
        // Empty or pinched strip. A contour squeezed between near-colliding
        // pole families integrates a spike whose area is a tiny fraction of
        // its height, which double precision cannot certify. Run the contour
        // just right of the left poles instead, with clockwise indentations
        // keeping every crossed right pole on the right side, i.e. subtract
        // those residues from the straight line.
        shifted = true;
        double c2 = lo + 0.25;
        std::vector<detail::RightPole> crossed;
        for (int attempt = 0; attempt < 32; ++attempt) {
            crossed.clear();
            bool clash = false;
            for (int k = 0; k < g.n && !clash; ++k) {
                for (int l = 0;; ++l) {
                    const double pos = 1.0 - g.a[static_cast<std::size_t>(k)] + l;
                    if (pos >= c2) break;
                    crossed.push_back({pos, k, l});
                }
            }
            for (const auto& rp : crossed)
                if (std::abs(rp.position - c2) < 1e-3) clash = true;
            if (!clash) break;
            c2 += 0.125 / (attempt + 1.0);
        }
        for (const auto& rp : crossed)
            residue_sum -= detail::right_pole_residue(g, rp, lnz);
        lo = c2;
        hi = c2 + 0.5;
    }

    double c = lo;
    if (!shifted) {
        const double w = hi - lo;
        const double margin = std::min(0.1 * w, 0.05);
        double best = std::numeric_limits<double>::infinity();
        c = 0.5 * (lo + hi);
        for (int i = 0; i <= 40; ++i) {
            const double cc = (lo + margin) + (w - 2.0 * margin) * i / 40.0;
            double val;
            try {
                val = (g.log_phi({cc, 0.0}) - cc * lnz).real();
            } catch (const domain_error&) {
                continue;  // candidate landed on a pole
            }
            if (val < best) {
                best = val;
                c = cc;
            }
        }
    }

    const double L0 = (g.log_phi({c, 0.0}) - c * lnz).real();
    auto f = [&](double t) -> std::complex<double> {
        const std::complex<double> s(c, t);
        return std::exp(g.log_phi(s) - s * lnz - L0);
    };

    // First panel scaled by the distance to the nearest pole, then edges
    // double out to where exp(-sigma*pi*t/2) has died off.
    double d0 = 1.0;
    {
        double dmin = std::numeric_limits<double>::infinity();
        for (int j = 0; j < g.m; ++j)
            for (int l = 0; l < 4; ++l)
                dmin = std::min(dmin, std::abs(-g.b[static_cast<std::size_t>(j)] - l - c));
        for (int k = 0; k < g.n; ++k)
            for (int l = 0; l < 4; ++l)
                dmin = std::min(dmin, std::abs(1.0 - g.a[static_cast<std::size_t>(k)] + l - c));
        if (std::isfinite(dmin)) d0 = dmin;
    }
    const double t1 = std::clamp(d0 * 8.0, 1e-3, 4.0);
    const double tmax = std::max(60.0 / g.sigma(), 8.0);

    PanelStats stats;
    std::complex<double> total(0.0, 0.0);
    double edge = 0.0, next = t1;
    while (edge < tmax) {
        total += integrate_complex(f, edge, std::min(next, tmax), 1e-15, 48, &stats);
        edge = next;
        next = edge * 2.0;
    }

    const double scale = std::exp(L0) / M_PI;
    MeijerGValue out;
    out.value = scale * total.real() + residue_sum;

    // Tail: |f| decays at least like exp(-sigma*pi*t/2); bound the remainder
    // by |f(tmax)| times the decay constant.
    const double tail = std::abs(f(tmax)) * 2.0 / (g.sigma() * M_PI);
    const double eps = std::numeric_limits<double>::epsilon();
    out.error_bound = scale * (10.0 * stats.resid + tail + 8.0 * eps * stats.absint) +
                      4.0 * eps * (std::abs(out.value) + std::abs(residue_sum));

    const double denom = std::max(std::abs(out.value), 1e-300);
    if (out.error_bound > guarantee_rel * denom)
        throw accuracy_error("meijer_g: certified error " + std::to_string(out.error_bound) +
                             " exceeds " + std::to_string(guarantee_rel) +
                             " relative at z=" + std::to_string(z));
    return out;
}

} // namespace hyfso
