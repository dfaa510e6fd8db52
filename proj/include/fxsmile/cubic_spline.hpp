#pragma once

#include <algorithm>
#include <cmath>
#include <span>
#include <vector>

#include "fxsmile/errors.hpp"

namespace fxsmile {

enum class SplineBoundary {
    Natural,          // second derivative zero at both ends
    ClampedZeroSlope  // first derivative zero at both ends
};

enum class SplineExtrapolation {
    Flat,                // hold the end value
    LinearBoundarySlope  // continue with the end slope
};

/// C2 cubic spline through (x_i, y_i), stored as per-interval coefficients
/// y = a + b t + c t^2 + d t^3 with t = x - x_i.
class CubicSpline {
public:
    CubicSpline() = default;

    CubicSpline(std::span<const double> x, std::span<const double> y, SplineBoundary boundary,
                SplineExtrapolation extrapolation)
        : x_(x.begin(), x.end()), a_(y.begin(), y.end()), boundary_(boundary), extrapolation_(extrapolation) {
        const std::size_t n = x_.size();
        if (n < 3 || y.size() != n) throw DomainError("cubic spline needs at least 3 nodes");
        for (std::size_t i = 1; i < n; ++i)
            if (!(x_[i] > x_[i - 1])) throw NodesNotMonotone("spline nodes must be strictly increasing");

        // tridiagonal system for the second derivatives m_i
        std::vector<double> h(n - 1);
        for (std::size_t i = 0; i + 1 < n; ++i) h[i] = x_[i + 1] - x_[i];
        std::vector<double> lower(n, 0.0), diag(n, 0.0), upper(n, 0.0), rhs(n, 0.0);
        for (std::size_t i = 1; i + 1 < n; ++i) {
            lower[i] = h[i - 1];
            diag[i] = 2.0 * (h[i - 1] + h[i]);
            upper[i] = h[i];
            rhs[i] = 6.0 * ((a_[i + 1] - a_[i]) / h[i] - (a_[i] - a_[i - 1]) / h[i - 1]);
        }
        if (boundary == SplineBoundary::Natural) {
            diag[0] = diag[n - 1] = 1.0;
        } else {
            diag[0] = 2.0 * h[0];
            upper[0] = h[0];
            rhs[0] = 6.0 * (a_[1] - a_[0]) / h[0];
            lower[n - 1] = h[n - 2];
            diag[n - 1] = 2.0 * h[n - 2];
            rhs[n - 1] = -6.0 * (a_[n - 1] - a_[n - 2]) / h[n - 2];
        }
        for (std::size_t i = 1; i < n; ++i) {
            const double w = lower[i] / diag[i - 1];
            diag[i] -= w * upper[i - 1];
            rhs[i] -= w * rhs[i - 1];
        }
        std::vector<double> m(n);
        m[n - 1] = rhs[n - 1] / diag[n - 1];
        for (std::size_t i = n - 1; i-- > 0;) m[i] = (rhs[i] - upper[i] * m[i + 1]) / diag[i];

        b_.resize(n - 1);
        c_.resize(n - 1);
        d_.resize(n - 1);
        for (std::size_t i = 0; i + 1 < n; ++i) {
            b_[i] = (a_[i + 1] - a_[i]) / h[i] - h[i] * (2.0 * m[i] + m[i + 1]) / 6.0;
            c_[i] = 0.5 * m[i];
            d_[i] = (m[i + 1] - m[i]) / (6.0 * h[i]);
        }
    }

    double operator()(double x) const { return eval(x, 0); }
    double derivative(double x) const { return eval(x, 1); }
    double second_derivative(double x) const { return eval(x, 2); }

    /// End slopes, continued by LinearBoundarySlope extrapolation.
    double left_slope() const { return b_.front(); }
    double right_slope() const {
        const std::size_t k = b_.size() - 1;
        const double t = x_[k + 1] - x_[k];
        return b_[k] + 2.0 * c_[k] * t + 3.0 * d_[k] * t * t;
    }

    /// s'(x_i+) - s'(x_i-) at interior nodes; zero at the ends.
    std::vector<double> first_derivative_jumps() const {
        const std::size_t n = x_.size();
        std::vector<double> out(n, 0.0);
        for (std::size_t i = 1; i + 1 < n; ++i) {
            const double t = x_[i] - x_[i - 1];
            out[i] = b_[i] - (b_[i - 1] + 2.0 * c_[i - 1] * t + 3.0 * d_[i - 1] * t * t);
        }
        return out;
    }

    /// s''(x_i+) - s''(x_i-) at every node, the extrapolated side counting as zero curvature.
    std::vector<double> second_derivative_jumps() const {
        const std::size_t n = x_.size();
        std::vector<double> out(n);
        for (std::size_t i = 0; i < n; ++i) {
            const double left = i == 0 ? 0.0 : 2.0 * c_[i - 1] + 6.0 * (x_[i] - x_[i - 1]) * d_[i - 1];
            const double right = i + 1 == n ? 0.0 : 2.0 * c_[i];
            out[i] = right - left;
        }
        return out;
    }

    const std::vector<double>& nodes() const { return x_; }
    SplineBoundary boundary() const { return boundary_; }
    SplineExtrapolation extrapolation() const { return extrapolation_; }

private:
    double eval(double x, int order) const {
        const std::size_t n = x_.size();
        if (x < x_.front() || x > x_.back()) {
            const bool left = x < x_.front();
            const double x0 = left ? x_.front() : x_.back();
            const double y0 = left ? a_.front() : a_.back();
            const double slope = extrapolation_ == SplineExtrapolation::Flat ? 0.0 : (left ? left_slope() : right_slope());
            if (order == 0) return y0 + slope * (x - x0);
            return order == 1 ? slope : 0.0;
        }
        if (order == 0 && x == x_.back()) return a_.back();
        std::size_t k = static_cast<std::size_t>(std::upper_bound(x_.begin(), x_.end(), x) - x_.begin());
        k = std::clamp<std::size_t>(k, 1, n - 1) - 1;
        const double t = x - x_[k];
        switch (order) {
            case 0: return a_[k] + t * (b_[k] + t * (c_[k] + t * d_[k]));
            case 1: return b_[k] + t * (2.0 * c_[k] + 3.0 * t * d_[k]);
            default: return 2.0 * c_[k] + 6.0 * t * d_[k];
        }
    }

    std::vector<double> x_, a_, b_, c_, d_;
    SplineBoundary boundary_{SplineBoundary::Natural};
    SplineExtrapolation extrapolation_{SplineExtrapolation::Flat};
};

}  // namespace fxsmile
