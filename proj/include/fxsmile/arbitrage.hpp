#pragma once

#include <cmath>
#include <limits>
#include <utility>
#include <vector>

#include "fxsmile/errors.hpp"
#include "fxsmile/normal.hpp"
#include "fxsmile/smile_section.hpp"

namespace fxsmile {

using Interval = std::pair<double, double>;

/// Denominator of the Dupire local variance in log-moneyness.
inline double g_function(const VarianceDerivatives& d, double y) {
    const double w = d.w;
    return 1.0 - y / w * d.dw + 0.25 * (-0.25 - 1.0 / w + y * y / (w * w)) * d.dw * d.dw + 0.5 * d.d2w;
}

inline double g_function(const SmileSection& smile, double y) {
    const auto d = smile.variance_derivatives(y);
    if (!(d.w > 0.0)) throw NegativeVariance(y, d.w);
    return g_function(d, y);
}

/// Risk-neutral density per unit strike, p(K) = g(y) n(d2) / (K sqrt(w)).
inline double density(const SmileSection& smile, double strike) {
    if (!(strike > 0.0)) throw DomainError("strike must be positive");
    const double y = std::log(strike / smile.forward());
    const auto d = smile.variance_derivatives(y);
    if (!(d.w > 0.0)) throw NegativeVariance(y, d.w);
    const double sw = std::sqrt(d.w);
    const double d2 = -y / sw - 0.5 * sw;
    return g_function(d, y) * norm_pdf(d2) / (strike * sw);
}

struct GCurve {
    std::vector<double> y;
    std::vector<double> g;  // NaN where the variance is not positive
    double min_value = std::numeric_limits<double>::infinity();
    std::vector<Interval> negative_intervals;
};

struct DensityCurve {
    std::vector<double> strike;
    std::vector<double> p;  // NaN where the variance is not positive
    double integrates_to = 0.0;  // trapezoid over the scanned strikes, not normalized
    std::vector<double> modes;   // strikes of local maxima
};

struct ScanReport {
    GCurve g;
    DensityCurve density;
    std::vector<Interval> negative_density_intervals;  // in strike
    std::vector<Interval> negative_variance_intervals;  // in y
    std::size_t mode_count() const { return density.modes.size(); }
};

namespace detail {

/// Maximal runs of grid points where `flag` holds, reported by their first and last abscissa.
template <class Pred>
std::vector<Interval> runs(const std::vector<double>& x, Pred flag) {
    std::vector<Interval> out;
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (!flag(i)) continue;
        std::size_t j = i;
        while (j + 1 < x.size() && flag(j + 1)) ++j;
        out.emplace_back(x[i], x[j]);
        i = j;
    }
    return out;
}

}  // namespace detail

/// Uniform scan in y of g and of the density. A mode is an interior sample exceeding
/// both neighbours by a relative 1e-6.
inline ScanReport scan_report(const SmileSection& smile, double y_min, double y_max, int n_points = 801) {
    if (n_points < 3 || !(y_max > y_min)) throw DomainError("scan needs at least 3 points over a proper range");
    ScanReport r;
    const double nan = std::numeric_limits<double>::quiet_NaN();
    const double h = (y_max - y_min) / (n_points - 1);
    std::vector<bool> bad_w;
    for (int i = 0; i < n_points; ++i) {
        const double y = i + 1 == n_points ? y_max : y_min + i * h;
        const double k = smile.forward() * std::exp(y);
        VarianceDerivatives d{std::numeric_limits<double>::quiet_NaN(), 0.0, 0.0};
        try {
            d = smile.variance_derivatives(y);
        } catch (const Error&) {
            // vol lookup failed at this strike; the sample is reported as NaN
        }
        r.g.y.push_back(y);
        r.density.strike.push_back(k);
        if (!(d.w > 0.0)) {
            bad_w.push_back(d.w <= 0.0);
            r.g.g.push_back(nan);
            r.density.p.push_back(nan);
            continue;
        }
        bad_w.push_back(false);
        const double g = g_function(d, y);
        const double sw = std::sqrt(d.w);
        r.g.g.push_back(g);
        r.density.p.push_back(g * norm_pdf(-y / sw - 0.5 * sw) / (k * sw));
        r.g.min_value = std::min(r.g.min_value, g);
    }
    const auto& p = r.density.p;
    const auto& ks = r.density.strike;
    r.g.negative_intervals = detail::runs(r.g.y, [&](std::size_t i) { return r.g.g[i] < 0.0; });
    r.negative_density_intervals = detail::runs(ks, [&](std::size_t i) { return p[i] < 0.0; });
    r.negative_variance_intervals = detail::runs(r.g.y, [&](std::size_t i) { return bad_w[i]; });

    for (std::size_t i = 0; i + 1 < ks.size(); ++i)
        if (std::isfinite(p[i]) && std::isfinite(p[i + 1])) r.density.integrates_to += 0.5 * (p[i] + p[i + 1]) * (ks[i + 1] - ks[i]);
    for (std::size_t i = 1; i + 1 < ks.size(); ++i) {
        if (!std::isfinite(p[i - 1]) || !std::isfinite(p[i]) || !std::isfinite(p[i + 1])) continue;
        const double margin = 1e-6 * std::abs(p[i]);
        if (p[i] - p[i - 1] > margin && p[i] - p[i + 1] > margin) r.density.modes.push_back(ks[i]);
    }
    return r;
}

/// Default scan: 801 points over +-5 ATM standard deviations.
inline ScanReport scan_report(const SmileSection& smile) {
    const double sd = smile.atm_stddev();
    return scan_report(smile, -5.0 * sd, 5.0 * sd, 801);
}

}  // namespace fxsmile
