#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <string>

#include "hyfso/errors.hpp"

namespace hyfso {

// log Gamma(x) for x > 0.
inline double log_gamma(double x) {
    if (!(x > 0.0))
        throw domain_error("log_gamma: argument must be positive, got " + std::to_string(x));
    return std::lgamma(x);
}

namespace detail {

// Lanczos approximation, g = 7, 9 coefficients. Valid for Re(z) >= 0.5.
inline std::complex<double> log_gamma_lanczos(std::complex<double> z) {
    static const double g = 7.0;
    static const double c[9] = {
        0.99999999999980993,
        676.5203681218851,
        -1259.1392167224028,
        771.32342877765313,
        -176.61502916214059,
        12.507343278686905,
        -0.13857109526572012,
        9.9843695780195716e-6,
        1.5056327351493116e-7,
    };
    const std::complex<double> zm1 = z - 1.0;
    std::complex<double> s(c[0], 0.0);
    for (int k = 1; k < 9; ++k)
        s += c[k] / (zm1 + static_cast<double>(k));
    const std::complex<double> t = zm1 + g + 0.5;
    const double half_log_two_pi = 0.91893853320467274178;
    return half_log_two_pi + (zm1 + 0.5) * std::log(t) - t + std::log(s);
}

} // namespace detail

// log Gamma(z) on the complex plane. For Re(z) < 0.5 the argument is shifted
// right by recurrence before the Lanczos series is applied:
//   lgamma(w) = lgamma(w+m) - sum_{j=0}^{m-1} log(w+j).
// The imaginary part may differ from the principal branch by multiples of
// 2*pi; callers here only ever exponentiate sums of these values.
inline std::complex<double> log_gamma(std::complex<double> z) {
    if (z.imag() == 0.0 && z.real() <= 0.0 && z.real() == std::floor(z.real()))
        throw domain_error("log_gamma: nonpositive integer argument");
    if (z.real() >= 0.5)
        return detail::log_gamma_lanczos(z);
    const int m = static_cast<int>(std::ceil(0.5 - z.real()));
    std::complex<double> shift(0.0, 0.0);
    for (int j = 0; j < m; ++j)
        shift += std::log(z + static_cast<double>(j));
    return detail::log_gamma_lanczos(z + static_cast<double>(m)) - shift;
}

// Exact binomial coefficient. Throws overflow_error if the value does not
// fit in a uint64_t (cannot happen for n <= 64, which is all callers need).
inline std::uint64_t binomial(unsigned n, unsigned k) {
    if (k > n)
        throw domain_error("binomial: k > n");
    if (k > n - k) k = n - k;
    unsigned __int128 acc = 1;
    for (unsigned j = 1; j <= k; ++j) {
        acc = acc * (n - k + j) / j;
        if (acc > static_cast<unsigned __int128>(UINT64_MAX))
            throw overflow_error("binomial: result exceeds 64 bits for n=" +
                                 std::to_string(n) + " k=" + std::to_string(k));
    }
    return static_cast<std::uint64_t>(acc);
}

} // namespace hyfso
