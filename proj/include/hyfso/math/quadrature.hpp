#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <cstddef>

namespace hyfso {

// 30-point Gauss-Legendre rule on [-1, 1]. Nodes and weights are computed
// once by Newton iteration on the Legendre recurrence; accurate to machine
// precision, which avoids shipping a long table of literals.
class GaussLegendre30 {
public:
    static const GaussLegendre30& get() {
        static const GaussLegendre30 rule;
        return rule;
    }
    std::array<double, 30> x{}, w{};

private:
    GaussLegendre30() {
        constexpr int n = 30;
        for (int i = 0; i < n; ++i) {
            double t = std::cos(M_PI * (i + 0.75) / (n + 0.5));
            double dp = 0.0;
            for (int it = 0; it < 100; ++it) {
                double p0 = 1.0, p1 = t;
                for (int k = 2; k <= n; ++k) {
                    double p2 = ((2.0 * k - 1.0) * t * p1 - (k - 1.0) * p0) / k;
                    p0 = p1;
                    p1 = p2;
                }
                dp = n * (t * p1 - p0) / (t * t - 1.0);
                double dt = p1 / dp;
                t -= dt;
                if (std::abs(dt) < 1e-15) {
                    p0 = 1.0; p1 = t;
                    for (int k = 2; k <= n; ++k) {
                        double p2 = ((2.0 * k - 1.0) * t * p1 - (k - 1.0) * p0) / k;
                        p0 = p1;
                        p1 = p2;
                    }
                    dp = n * (t * p1 - p0) / (t * t - 1.0);
                    break;
                }
            }
            x[static_cast<std::size_t>(i)] = t;
            w[static_cast<std::size_t>(i)] = 2.0 / ((1.0 - t * t) * dp * dp);
        }
    }
};

// Bookkeeping shared by the adaptive panels: `resid` accumulates the
// last-refinement differences of accepted panels (a conservative estimate of
// the remaining truncation error) and `absint` accumulates integral(|f|),
// which bounds the roundoff floor of the summation.
struct PanelStats {
    double resid = 0.0;
    double absint = 0.0;
};

namespace detail {

template <class F, class V>
V panel_once(F& f, double a, double b, double* absint) {
    const auto& gl = GaussLegendre30::get();
    const double h = 0.5 * (b - a), mid = 0.5 * (a + b);
    V acc{};
    double aacc = 0.0;
    for (int i = 0; i < 30; ++i) {
        V v = f(mid + h * gl.x[static_cast<std::size_t>(i)]);
        acc += gl.w[static_cast<std::size_t>(i)] * v;
        aacc += gl.w[static_cast<std::size_t>(i)] * std::abs(v);
    }
    if (absint) *absint += h * aacc;
    return h * acc;
}

template <class F, class V>
V panel_adaptive(F& f, double a, double b, double tol, int depth, PanelStats& st) {
    V whole = panel_once<F, V>(f, a, b, nullptr);
    const double mid = 0.5 * (a + b);
    double absl = 0.0, absr = 0.0;
    V left = panel_once<F, V>(f, a, mid, &absl);
    V right = panel_once<F, V>(f, mid, b, &absr);
    V refined = left + right;
    const double diff = std::abs(whole - refined);
    if (depth <= 0 || diff <= tol * (1.0 + std::abs(refined)) ||
        std::abs(refined) < 1e-300) {
        st.resid += diff;
        st.absint += absl + absr;
        return refined;
    }
    return panel_adaptive<F, V>(f, a, mid, tol, depth - 1, st) +
           panel_adaptive<F, V>(f, mid, b, tol, depth - 1, st);
}

} // namespace detail

// Adaptive Gauss-Legendre integration of f over [a, b]. The panel is
// accepted when one-level bisection agrees to `tol` (relative to 1 + |I|);
// otherwise both halves recurse, up to `depth` splits.
template <class F>
std::complex<double> integrate_complex(F&& f, double a, double b, double tol = 1e-15,
                                       int depth = 48, PanelStats* stats = nullptr) {
    PanelStats local;
    auto v = detail::panel_adaptive<F, std::complex<double>>(f, a, b, tol, depth, local);
    if (stats) {
        stats->resid += local.resid;
        stats->absint += local.absint;
    }
    return v;
}

template <class F>
double integrate_real(F&& f, double a, double b, double tol = 1e-12,
                      int depth = 48, PanelStats* stats = nullptr) {
    PanelStats local;
    auto v = detail::panel_adaptive<F, double>(f, a, b, tol, depth, local);
    if (stats) {
        stats->resid += local.resid;
        stats->absint += local.absint;
    }
    return v;
}

} // namespace hyfso
