#pragma once

#include <cmath>
#include <string>

#include "hyfso/errors.hpp"

namespace hyfso {

// Modified Bessel function of the second kind K_nu(x), x > 0. Wraps the
// standard-library implementation; K_{-nu} = K_nu extends it to negative
// orders. Used as an independent cross-check of the contour evaluator.
inline double bessel_k(double nu, double x) {
    if (!(x > 0.0))
        throw domain_error("bessel_k: x must be positive, got " + std::to_string(x));
    return std::cyl_bessel_k(std::fabs(nu), x);
}

} // namespace hyfso
