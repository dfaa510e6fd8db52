#pragma once

#include <array>
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

/// SABR with beta fixed at 1.
struct SabrParams {
    double alpha;
    double rho;
    double nu;

    void validate() const {
        if (!(alpha > 0.0)) throw DomainError("SABR alpha must be positive");
        if (!(std::abs(rho) < 1.0)) throw DomainError("SABR rho must lie in (-1, 1)");
        if (!(nu >= 0.0)) throw DomainError("SABR nu must be non-negative");
    }
};

namespace detail {

/// z / x(z) and its first two derivatives in z.
inline std::array<double, 3> sabr_zeta(double z, double rho) {
    if (std::abs(z) < 1e-4) {
        const double r2 = rho * rho;
        const std::array<double, 6> c{1.0,
                                      -rho / 2.0,
                                      1.0 / 6.0 - r2 / 4.0,
                                      -r2 * rho / 4.0 + 5.0 * rho / 24.0,
                                      -5.0 * r2 * r2 / 16.0 + r2 / 3.0 - 17.0 / 360.0,
                                      -7.0 * r2 * r2 * rho / 16.0 + 55.0 * r2 * rho / 96.0 - 37.0 * rho / 240.0};
        double v = 0.0, d1 = 0.0, d2 = 0.0;
        for (int i = 5; i >= 0; --i) v = v * z + c[i];
        for (int i = 5; i >= 1; --i) d1 = d1 * z + i * c[i];
        for (int i = 5; i >= 2; --i) d2 = d2 * z + i * (i - 1) * c[i];
        return {v, d1, d2};
    }
    const double d = std::sqrt(1.0 - 2.0 * rho * z + z * z);
    // d - 1 written without cancellation so x keeps full precision near z = 0
    const double x = std::log1p((z + z * (z - 2.0 * rho) / (d + 1.0)) / (1.0 - rho));
    const double x2 = x * x;
    return {z / x, 1.0 / x - z / (d * x2),
            -2.0 / (d * x2) + z * (z - rho) / (d * d * d * x2) + 2.0 * z / (d * d * x2 * x)};
}

}  // namespace detail

/// Hagan's lognormal expansion.
inline double sabr_vol(const SabrParams& p, double strike, double forward, double expiry) {
    const double z = p.nu / p.alpha * std::log(forward / strike);
    const double c = 1.0 + (p.rho * p.alpha * p.nu / 4.0 + (2.0 - 3.0 * p.rho * p.rho) * p.nu * p.nu / 24.0) * expiry;
    return p.alpha * detail::sabr_zeta(z, p.rho)[0] * c;
}

class SabrSmile final : public SmileSection {
public:
    SabrSmile(SabrParams p, double forward, double expiry, double atm_stddev)
        : SmileSection(forward, expiry, atm_stddev), p_(p) {
        p_.validate();
    }
    double total_variance(double y) const override {
        const double v = sabr_vol(p_, forward() * std::exp(y), forward(), expiry());
        return v * v * expiry();
    }
    VarianceDerivatives variance_derivatives(double y) const override {
        if (p_.nu == 0.0) return {total_variance(y), 0.0, 0.0};
        const double t = expiry();
        const double c = 1.0 + (p_.rho * p_.alpha * p_.nu / 4.0 + (2.0 - 3.0 * p_.rho * p_.rho) * p_.nu * p_.nu / 24.0) * t;
        const double k = p_.nu / p_.alpha;  // z = -k y
        const auto zeta = detail::sabr_zeta(-k * y, p_.rho);
        const double v = p_.alpha * c * zeta[0];
        const double dv = -p_.alpha * c * k * zeta[1];
        const double d2v = p_.alpha * c * k * k * zeta[2];
        return {v * v * t, 2.0 * v * dv * t, 2.0 * (dv * dv + v * d2v) * t};
    }
    std::string name() const override { return "sabr"; }
    const SabrParams& params() const { return p_; }

private:
    SabrParams p_;
};

struct SabrCalibration {
    SabrParams params;
    double cost;
    PillarFit fit;
};

/// Levenberg-Marquardt on (ln alpha, atanh rho, ln nu), equal weights on vols,
/// best of a fixed grid of (nu, rho) seeds.
inline SabrCalibration calibrate_sabr(const SmileQuoteSet& quotes) {
    if (quotes.size() < 3) throw DomainError("SABR calibration needs at least 3 pillars");
    const auto strikes = quotes.strikes();
    const auto vols = quotes.vols();
    const double f = quotes.forward();
    const double t = quotes.expiry();
    auto unpack = [](const Eigen::VectorXd& v) {
        return SabrParams{std::exp(v[0]), std::tanh(v[1]), std::exp(v[2])};
    };
    auto residuals = [&](const Eigen::VectorXd& v) {
        const auto p = unpack(v);
        Eigen::VectorXd r(static_cast<Eigen::Index>(strikes.size()));
        for (std::size_t i = 0; i < strikes.size(); ++i)
            r[static_cast<Eigen::Index>(i)] = sabr_vol(p, strikes[i], f, t) - vols[i];
        return r;
    };

    std::optional<LeastSquaresResult> best;
    for (double nu0 : {0.2, 0.5, 1.0, 2.0}) {
        for (double rho0 : {-0.5, 0.0, 0.5}) {
            Eigen::VectorXd x0(3);
            x0 << std::log(quotes.atm_vol()), std::atanh(rho0), std::log(nu0);
            auto r = levenberg_marquardt(residuals, x0);
            if (std::isfinite(r.cost) && (!best || r.cost < best->cost)) best = std::move(r);
        }
    }
    if (!best) throw CalibrationFailed("SABR calibration produced no finite fit", INFINITY);
    const auto p = unpack(best->x);
    if (!(std::abs(p.rho) < 1.0)) throw CalibrationFailed("SABR rho reached the boundary", best->cost);
    const SabrSmile smile(p, f, t, quotes.atm_stddev());
    return {p, best->cost, pillar_fit(smile, quotes)};
}

inline std::shared_ptr<SabrSmile> make_sabr_smile(const SmileQuoteSet& quotes) {
    return std::make_shared<SabrSmile>(calibrate_sabr(quotes).params, quotes.forward(), quotes.expiry(),
                                       quotes.atm_stddev());
}

}  // namespace fxsmile
