#pragma once

#include <cmath>
#include <memory>
#include <optional>
#include <string>

#include <Eigen/Dense>

#include "fxsmile/errors.hpp"
#include "fxsmile/market.hpp"
#include "fxsmile/smile_section.hpp"
#include "fxsmile/solvers.hpp"
#include "fxsmile/svi.hpp"

namespace fxsmile {

/// SSVI slice with a free ATM level:
/// w(y) = theta/2 (1 + rho phi y + sqrt((phi y + rho)^2 + 1 - rho^2)).
struct XssviParams {
    double theta;  // ATM total variance
    double rho;
    double phi;

    double psi() const { return theta * phi; }

    /// Largest theta*phi free of butterfly arbitrage for this theta and rho.
    static double psi_bound(double theta, double rho) {
        return std::min(4.0 / (1.0 + std::abs(rho)), 2.0 * std::sqrt(theta / (1.0 + std::abs(rho))));
    }
    bool arbitrage_free() const { return psi() <= psi_bound(theta, rho) * (1.0 + 1e-12); }

    void validate() const {
        if (!(theta > 0.0)) throw DomainError("xSSVI theta must be positive");
        if (!(std::abs(rho) < 1.0)) throw DomainError("xSSVI rho must lie in (-1, 1)");
        if (!(phi > 0.0)) throw DomainError("xSSVI phi must be positive");
    }
};

inline VarianceDerivatives xssvi_derivatives(const XssviParams& p, double y) {
    const double psi = p.psi();
    const double u = psi * y + p.theta * p.rho;
    const double q = p.theta * p.theta * (1.0 - p.rho * p.rho);
    const double r = std::sqrt(u * u + q);
    return {0.5 * (p.theta + p.rho * psi * y + r), 0.5 * (p.rho * psi + psi * u / r), 0.5 * psi * psi * q / (r * r * r)};
}

class XssviSmile final : public SmileSection {
public:
    XssviSmile(XssviParams p, double forward, double expiry, double atm_stddev)
        : SmileSection(forward, expiry, atm_stddev), p_(p) {
        p_.validate();
    }
    double total_variance(double y) const override { return xssvi_derivatives(p_, y).w; }
    VarianceDerivatives variance_derivatives(double y) const override { return xssvi_derivatives(p_, y); }
    std::string name() const override { return "xssvi"; }
    const XssviParams& params() const { return p_; }

private:
    XssviParams p_;
};

struct XssviCalibration {
    XssviParams params;
    double cost;
    PillarFit fit;
};

/// Least squares on vols. theta*phi is mapped through a logistic onto (0, bound(theta, rho)),
/// so every iterate stays inside the no-butterfly region.
inline XssviCalibration calibrate_xssvi(const SmileQuoteSet& quotes) {
    if (quotes.size() < 4) throw DomainError("xSSVI calibration needs at least 4 pillars");
    const double t = quotes.expiry();
    std::vector<double> y;
    for (const auto& p : quotes.pillars()) y.push_back(p.log_moneyness);
    const auto vols = quotes.vols();

    auto unpack = [](const Eigen::VectorXd& v) {
        const double theta = std::exp(v[0]);
        const double rho = std::tanh(v[1]);
        const double psi = XssviParams::psi_bound(theta, rho) / (1.0 + std::exp(-v[2]));
        return XssviParams{theta, rho, psi / theta};
    };
    auto residuals = [&](const Eigen::VectorXd& v) {
        const auto p = unpack(v);
        Eigen::VectorXd r(static_cast<Eigen::Index>(y.size()));
        for (std::size_t i = 0; i < y.size(); ++i)
            r[static_cast<Eigen::Index>(i)] = std::sqrt(xssvi_derivatives(p, y[i]).w / t) - vols[i];
        return r;
    };

    std::optional<LeastSquaresResult> best;
    for (double rho0 : {-0.5, 0.0, 0.5}) {
        for (double u0 : {-2.0, 0.0, 2.0}) {
            Eigen::VectorXd x0(3);
            x0 << std::log(quotes.atm_vol() * quotes.atm_vol() * t), std::atanh(rho0), u0;
            auto r = levenberg_marquardt(residuals, x0);
            if (std::isfinite(r.cost) && (!best || r.cost < best->cost)) best = std::move(r);
        }
    }
    if (!best) throw CalibrationFailed("xSSVI calibration produced no finite fit", INFINITY);
    const auto p = unpack(best->x);
    const XssviSmile smile(p, quotes.forward(), t, quotes.atm_stddev());
    return {p, best->cost, pillar_fit(smile, quotes)};
}

inline std::shared_ptr<XssviSmile> make_xssvi_smile(const SmileQuoteSet& quotes) {
    return std::make_shared<XssviSmile>(calibrate_xssvi(quotes).params, quotes.forward(), quotes.expiry(),
                                        quotes.atm_stddev());
}

}  // namespace fxsmile
