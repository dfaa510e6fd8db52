#pragma once

#include <cmath>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "fxsmile/cubic_spline.hpp"
#include "fxsmile/delta_smile.hpp"
#include "fxsmile/market.hpp"
#include "fxsmile/smile_section.hpp"

namespace fxsmile {

enum class SplineAxis {
    LogMoneynessVariance,  // sigma^2 against y = ln(K/F)
    DeltaVol               // sigma against the no-premium forward call delta
};

inline std::string to_string(SplineBoundary b) {
    return b == SplineBoundary::Natural ? "natural" : "clamped";
}
inline std::string to_string(SplineExtrapolation e) { return e == SplineExtrapolation::Flat ? "flat" : "linear"; }
inline std::string to_string(SplineAxis a) { return a == SplineAxis::LogMoneynessVariance ? "logm-var" : "delta-vol"; }

/// Cubic spline of implied variance sigma^2 in log-moneyness. Variance may go negative
/// in the extrapolated wings; total_variance reports it rather than clipping.
class LogMoneynessSplineSmile final : public SmileSection {
public:
    LogMoneynessSplineSmile(const SmileQuoteSet& quotes, SplineBoundary boundary, SplineExtrapolation extrapolation)
        : SmileSection(quotes.forward(), quotes.expiry(), quotes.atm_stddev()),
          boundary_(boundary), extrapolation_(extrapolation), strikes_(quotes.strikes()) {
        std::vector<double> y, v;
        for (const auto& p : quotes.pillars()) {
            y.push_back(p.log_moneyness);
            v.push_back(p.quote.vol * p.quote.vol);
        }
        spline_ = CubicSpline(y, v, boundary, extrapolation);
    }

    double total_variance(double y) const override { return spline_(y) * expiry(); }
    VarianceDerivatives variance_derivatives(double y) const override {
        return {spline_(y) * expiry(), spline_.derivative(y) * expiry(), spline_.second_derivative(y) * expiry()};
    }
    std::vector<double> node_strikes() const override { return strikes_; }
    std::string name() const override {
        return "spline-logm-var-" + to_string(boundary_) + "-" + to_string(extrapolation_);
    }
    const CubicSpline& spline() const { return spline_; }

private:
    SplineBoundary boundary_;
    SplineExtrapolation extrapolation_;
    std::vector<double> strikes_;
    CubicSpline spline_;
};

inline std::shared_ptr<DeltaSplineSmile> make_delta_spline_smile(const SmileQuoteSet& quotes,
                                                                 SplineBoundary boundary,
                                                                 SplineExtrapolation extrapolation,
                                                                 DeltaKind kind = DeltaKind::ForwardNoPremium) {
    const auto axis = make_delta_axis(kind, quotes);
    const auto deltas = pillar_deltas(axis, quotes);
    const auto vols = quotes.vols();
    DeltaSpline curve(deltas, vols, boundary, extrapolation);
    std::string name = "spline-delta-vol-" + to_string(boundary) + "-" + to_string(extrapolation);
    return std::make_shared<DeltaSplineSmile>(std::move(curve), axis, std::move(name), quotes.strikes());
}

inline SmilePtr fit_spline_smile(const SmileQuoteSet& quotes, SplineAxis axis, SplineBoundary boundary,
                                 SplineExtrapolation extrapolation) {
    if (axis == SplineAxis::LogMoneynessVariance)
        return std::make_shared<LogMoneynessSplineSmile>(quotes, boundary, extrapolation);
    return make_delta_spline_smile(quotes, boundary, extrapolation);
}

/// Maximal y-intervals on a uniform grid where the variance is not positive.
/// Interval ends are refined by bisection to 1e-12.
inline std::vector<std::pair<double, double>> negative_variance_intervals(const SmileSection& smile, double y_min,
                                                                          double y_max, int n_points = 801) {
    std::vector<std::pair<double, double>> out;
    auto w = [&](double y) { return smile.total_variance(y); };
    auto crossing = [&](double a, double b) {
        // a and b straddle the sign change
        const bool a_neg = w(a) <= 0.0;
        for (int i = 0; i < 200 && std::abs(b - a) > 1e-12; ++i) {
            const double mid = 0.5 * (a + b);
            ((w(mid) <= 0.0) == a_neg ? a : b) = mid;
        }
        return 0.5 * (a + b);
    };
    const double h = (y_max - y_min) / (n_points - 1);
    bool inside = false;
    double start = y_min;
    double prev = y_min;
    for (int i = 0; i < n_points; ++i) {
        const double y = y_min + i * h;
        const bool neg = w(y) <= 0.0;
        if (neg && !inside) {
            start = i == 0 ? y : crossing(prev, y);
            inside = true;
        } else if (!neg && inside) {
            out.emplace_back(start, crossing(prev, y));
            inside = false;
        }
        prev = y;
    }
    if (inside) out.emplace_back(start, y_max);
    return out;
}

}  // namespace fxsmile
