#pragma once

#include <cmath>
#include <functional>

#include "hyfso/math/quadrature.hpp"

namespace hyfso {

// Average DPSK BER from an SNR CDF:
//   ber = 1/2 Int_0^inf e^{-g} F(g) dg  =  1/2 Int_0^1 F(-ln t) dt.
// The substitution maps the semi-infinite tail onto (0, 1]; the open
// Gauss-Legendre nodes never touch t = 0. Serves as the independent check of
// the closed-form BER expressions.
inline double ber_from_cdf_quadrature(const std::function<double(double)>& cdf,
                                      double tol = 1e-12) {
    auto f = [&](double tt) { return cdf(-std::log(tt)); };
    return 0.5 * integrate_real(f, 0.0, 1.0, tol, 48);
}

} // namespace hyfso
