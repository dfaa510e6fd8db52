#pragma once

#include <algorithm>
#include <cmath>
#include <memory>
#include <string>
#include <vector>

#include "fxsmile/errors.hpp"

namespace fxsmile {

/// Total variance and its first two derivatives in log-moneyness.
struct VarianceDerivatives {
    double w;
    double dw;
    double d2w;
};

/// Uniform view of a calibrated smile at one expiry: total variance w(y) = sigma^2(F e^y) T.
class SmileSection {
public:
    SmileSection(double forward, double expiry, double atm_stddev)
        : forward_(forward), expiry_(expiry), atm_stddev_(atm_stddev) {}
    virtual ~SmileSection() = default;

    double forward() const { return forward_; }
    double expiry() const { return expiry_; }
    /// Scale of the smile, sigma_ATM sqrt(T).
    double atm_stddev() const { return atm_stddev_; }

    virtual double total_variance(double y) const = 0;

    /// Five-point central differences unless a representation knows its derivatives.
    virtual VarianceDerivatives variance_derivatives(double y) const {
        return finite_difference_derivatives(y, fd_step());
    }

    VarianceDerivatives finite_difference_derivatives(double y, double h) const {
        const double wm2 = total_variance(y - 2 * h);
        const double wm1 = total_variance(y - h);
        const double w0 = total_variance(y);
        const double wp1 = total_variance(y + h);
        const double wp2 = total_variance(y + 2 * h);
        return {w0, (wm2 - 8 * wm1 + 8 * wp1 - wp2) / (12 * h),
                (-wm2 + 16 * wm1 - 30 * w0 + 16 * wp1 - wp2) / (12 * h * h)};
    }

    /// Log-moneyness step for finite differences: 1e-4, shrunk for very narrow smiles.
    double fd_step() const { return std::min(1e-4, 1e-2 * atm_stddev_); }

    double vol_at(double y) const {
        const double w = total_variance(y);
        if (!(w > 0.0)) throw NegativeVariance(y, w);
        return std::sqrt(w / expiry_);
    }

    double vol(double strike) const {
        if (!(strike > 0.0)) throw DomainError("strike must be positive");
        return vol_at(std::log(strike / forward_));
    }

    /// Strikes where the representation is less than C2 (quadrature breakpoints).
    virtual std::vector<double> node_strikes() const { return {}; }

    virtual std::string name() const = 0;

private:
    double forward_;
    double expiry_;
    double atm_stddev_;
};

using SmilePtr = std::shared_ptr<const SmileSection>;

class FlatSmile final : public SmileSection {
public:
    FlatSmile(double forward, double expiry, double vol)
        : SmileSection(forward, expiry, vol * std::sqrt(expiry)), vol_(vol) {
        if (!(vol > 0.0)) throw DomainError("flat vol must be positive");
    }
    double total_variance(double) const override { return vol_ * vol_ * expiry(); }
    VarianceDerivatives variance_derivatives(double y) const override { return {total_variance(y), 0.0, 0.0}; }
    std::string name() const override { return "flat"; }

private:
    double vol_;
};

}  // namespace fxsmile
