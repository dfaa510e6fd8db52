#pragma once

#include <cmath>
#include <numbers>

#include <boost/math/special_functions/erf.hpp>

#include "fxsmile/errors.hpp"

namespace fxsmile {

inline double norm_pdf(double x) {
    return std::exp(-0.5 * x * x) / std::sqrt(2.0 * std::numbers::pi);
}

// erfc keeps full relative accuracy in the lower tail.
inline double norm_cdf(double x) {
    return 0.5 * std::erfc(-x / std::numbers::sqrt2);
}

inline double norm_inv_cdf(double p) {
    if (!(p > 0.0 && p < 1.0)) {
        throw DomainError("norm_inv_cdf: probability must lie in (0,1)");
    }
    double x = -std::numbers::sqrt2 * boost::math::erfc_inv(2.0 * p);
    // one Newton polish against our own cdf
    const double pdf = norm_pdf(x);
    if (pdf > 0.0) {
        x -= (norm_cdf(x) - p) / pdf;
    }
    return x;
}

}  // namespace fxsmile
