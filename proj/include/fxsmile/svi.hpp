#pragma once

#include <array>
#include <cmath>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "fxsmile/errors.hpp"
#include "fxsmile/market.hpp"
#include "fxsmile/smile_section.hpp"
#include "fxsmile/solvers.hpp"

namespace fxsmile {

/// Raw SVI with per-annum a and b: w(y) = T (a + b (rho (y - m) + sqrt((y - m)^2 + s^2))).
struct SviParams {
    double a;
    double b;
    double rho;
    double m;
    double s;

    void validate() const {
        if (!(b >= 0.0)) throw DomainError("SVI b must be non-negative");
        if (!(std::abs(rho) <= 1.0)) throw DomainError("SVI rho must lie in [-1, 1]");
        if (!(s > 0.0)) throw DomainError("SVI s must be positive");
    }
};

inline VarianceDerivatives svi_derivatives(const SviParams& p, double y, double expiry) {
    const double d = y - p.m;
    const double r = std::hypot(d, p.s);
    return {expiry * (p.a + p.b * (p.rho * d + r)), expiry * p.b * (p.rho + d / r),
            expiry * p.b * p.s * p.s / (r * r * r)};
}

inline double svi_total_variance(const SviParams& p, double y, double expiry) {
    return svi_derivatives(p, y, expiry).w;
}

class SviSmile final : public SmileSection {
public:
    SviSmile(SviParams p, double forward, double expiry, double atm_stddev, std::string name = "svi")
        : SmileSection(forward, expiry, atm_stddev), p_(p), name_(std::move(name)) {
        p_.validate();
    }
    double total_variance(double y) const override { return svi_total_variance(p_, y, expiry()); }
    VarianceDerivatives variance_derivatives(double y) const override { return svi_derivatives(p_, y, expiry()); }
    std::string name() const override { return name_; }
    const SviParams& params() const { return p_; }

private:
    SviParams p_;
    std::string name_;
};

/// Pillar fit diagnostics shared by the calibrators. Residuals are model minus market, in vol.
struct PillarFit {
    std::vector<double> residuals;
    double rmse = 0.0;
    double max_abs = 0.0;
};

inline PillarFit pillar_fit(const SmileSection& smile, const SmileQuoteSet& quotes) {
    PillarFit f;
    for (const auto& p : quotes.pillars()) {
        const double r = smile.vol(p.strike) - p.quote.vol;
        f.residuals.push_back(r);
        f.rmse += r * r;
        f.max_abs = std::max(f.max_abs, std::abs(r));
    }
    f.rmse = std::sqrt(f.rmse / static_cast<double>(f.residuals.size()));
    return f;
}

namespace detail {

struct SviInner {
    double objective;
    Eigen::Vector3d x;  // (a T, rho b s T, b s T)
};

/// min |A x - w|^2 subject to c - d >= 0, c + d >= 0 and optionally a' >= 0,
/// by enumerating active sets and keeping the best feasible KKT point.
inline std::optional<SviInner> svi_inner(const std::vector<double>& y, const std::vector<double>& w, double m,
                                         double s, bool a_non_negative) {
    const auto n = static_cast<Eigen::Index>(y.size());
    Eigen::MatrixXd a(n, 3);
    Eigen::VectorXd rhs(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        const double z = (y[i] - m) / s;
        a(i, 0) = 1.0;
        a(i, 1) = z;
        a(i, 2) = std::sqrt(z * z + 1.0);
        rhs(i) = w[i];
    }
    std::vector<Eigen::RowVector3d> g{{0.0, -1.0, 1.0}, {0.0, 1.0, 1.0}};
    if (a_non_negative) g.push_back({1.0, 0.0, 0.0});
    const Eigen::Matrix3d h = a.transpose() * a;
    const Eigen::Vector3d grad = a.transpose() * rhs;

    std::optional<SviInner> best;
    const unsigned subsets = 1u << g.size();
    for (unsigned mask = 0; mask < subsets; ++mask) {
        std::vector<std::size_t> act;
        for (std::size_t i = 0; i < g.size(); ++i)
            if (mask & (1u << i)) act.push_back(i);
        const auto k = static_cast<Eigen::Index>(act.size());
        Eigen::MatrixXd kkt = Eigen::MatrixXd::Zero(3 + k, 3 + k);
        Eigen::VectorXd b = Eigen::VectorXd::Zero(3 + k);
        kkt.topLeftCorner(3, 3) = 2.0 * h;
        b.head(3) = 2.0 * grad;
        for (Eigen::Index j = 0; j < k; ++j) {
            kkt.block(3 + j, 0, 1, 3) = g[act[j]];
            kkt.block(0, 3 + j, 3, 1) = g[act[j]].transpose();
        }
        const Eigen::FullPivLU<Eigen::MatrixXd> lu(kkt);
        if (!lu.isInvertible()) continue;
        const Eigen::Vector3d x = lu.solve(b).head(3);
        bool feasible = true;
        for (const auto& gi : g) feasible = feasible && gi.dot(x) >= -1e-14;
        if (!feasible) continue;
        const double obj = (a * x - rhs).squaredNorm();
        if (!best || obj < best->objective) best = SviInner{obj, x};
    }
    return best;
}

}  // namespace detail

struct SviCalibration {
    SviParams params;
    double objective;  // sum of squared total-variance errors
    PillarFit fit;
    bool a_non_negative;
};

/// Quasi-explicit calibration: Nelder-Mead over (m, ln s) from a 5x5 grid of seeds,
/// with the linear parameters solved exactly for each (m, s).
inline SviCalibration calibrate_svi(const SmileQuoteSet& quotes, bool a_non_negative) {
    if (quotes.size() < 5) throw DomainError("SVI calibration needs at least 5 pillars");
    const double t = quotes.expiry();
    std::vector<double> y, w;
    for (const auto& p : quotes.pillars()) {
        y.push_back(p.log_moneyness);
        w.push_back(p.quote.vol * p.quote.vol * t);
    }
    const double y_lo = *std::min_element(y.begin(), y.end());
    const double y_hi = *std::max_element(y.begin(), y.end());
    const double span = y_hi - y_lo;

    auto objective = [&](const std::vector<double>& v) {
        const auto inner = detail::svi_inner(y, w, v[0], std::exp(v[1]), a_non_negative);
        return inner ? inner->objective : 1e10;
    };

    std::optional<MinimizeResult> best;
    for (int i = 0; i < 5; ++i) {
        for (int j = 0; j < 5; ++j) {
            const double m0 = y_lo + span * i / 4.0;
            const double s0 = (0.1 + (2.0 - 0.1) * j / 4.0) * span;
            auto r = nelder_mead(objective, {m0, std::log(s0)}, {0.1 * span, 0.5}, 1e-30, 1e-12, 4000);
            if (!best || r.value < best->value) best = std::move(r);
        }
    }
    const double m = best->x[0];
    const double s = std::exp(best->x[1]);
    const auto inner = detail::svi_inner(y, w, m, s, a_non_negative);
    if (!inner) throw CalibrationFailed("SVI inner problem infeasible for every start", best->value);

    const auto& x = inner->x;
    // an active a' >= 0 comes back from the KKT solve as round-off around zero
    SviParams p{a_non_negative ? std::max(x[0] / t, 0.0) : x[0] / t, x[2] / (s * t), x[2] > 0.0 ? std::clamp(x[1] / x[2], -1.0, 1.0) : 0.0, m, s};
    const SviSmile smile(p, quotes.forward(), t, quotes.atm_stddev());
    return {p, inner->objective, pillar_fit(smile, quotes), a_non_negative};
}

inline std::shared_ptr<SviSmile> make_svi_smile(const SmileQuoteSet& quotes, bool a_non_negative) {
    const auto cal = calibrate_svi(quotes, a_non_negative);
    return std::make_shared<SviSmile>(cal.params, quotes.forward(), quotes.expiry(), quotes.atm_stddev(),
                                      a_non_negative ? "svi-a0" : "svi");
}

}  // namespace fxsmile
