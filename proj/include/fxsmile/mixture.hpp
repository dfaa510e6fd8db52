#pragma once

#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include "fxsmile/black.hpp"
#include "fxsmile/market.hpp"
#include "fxsmile/solvers.hpp"

namespace fxsmile {

/// Two-component lognormal mixture whose mean equals the forward.
class MixtureParams {
public:
    /// The second component forward follows from w1 F1 + (1 - w1) F2 = F.
    MixtureParams(double weight, double forward1, double vol1, double vol2, double forward)
        : w1_(weight), f1_(forward1), v1_(vol1), v2_(vol2), forward_(forward) {
        if (!(weight > 0.0 && weight <= 1.0)) throw DomainError("mixture weight must lie in (0,1]");
        detail::require_positive(forward1, "component forward");
        detail::require_positive(vol1, "component vol");
        detail::require_positive(vol2, "component vol");
        detail::require_positive(forward, "forward");
        if (weight == 1.0) {
            if (std::abs(forward1 - forward) > 1e-14 * forward)
                throw DomainError("a single component must have the forward as its mean");
            f2_ = forward;
        } else {
            f2_ = (forward - weight * forward1) / (1.0 - weight);
            if (!(f2_ > 0.0)) throw DomainError("mixture mean constraint gives a non-positive second forward");
        }
    }

    double weight() const { return w1_; }
    double forward1() const { return f1_; }
    double forward2() const { return f2_; }
    double vol1() const { return v1_; }
    double vol2() const { return v2_; }
    double forward() const { return forward_; }
    double mean() const { return w1_ * f1_ + (1.0 - w1_) * f2_; }

    /// Undiscounted call price.
    double call_price(double strike, double expiry) const {
        const double s = std::sqrt(expiry);
        double c = w1_ * black_undiscounted(f1_, strike, v1_ * s, OptionKind::Call);
        if (w1_ < 1.0) c += (1.0 - w1_) * black_undiscounted(f2_, strike, v2_ * s, OptionKind::Call);
        return c;
    }

    double density(double strike, double expiry) const {
        auto lognormal = [&](double f, double v) {
            const double sd = v * std::sqrt(expiry);
            const double z = (std::log(strike / f) + 0.5 * sd * sd) / sd;
            return norm_pdf(z) / (strike * sd);
        };
        double p = w1_ * lognormal(f1_, v1_);
        if (w1_ < 1.0) p += (1.0 - w1_) * lognormal(f2_, v2_);
        return p;
    }

private:
    double w1_, f1_, v1_, v2_, forward_;
    double f2_{};
};

/// Pillar quotes implied by a mixture: for each requested pillar, the vol whose delta strike
/// reprices the mixture. `pillars` carries kinds and deltas; their vols are ignored.
inline SmileQuoteSet mixture_quotes(const MixtureParams& p, const std::vector<PillarQuote>& pillars,
                                    const SliceContext& ctx, std::string name = "mixture") {
    if (std::abs(ctx.forward - p.forward()) > 1e-14 * ctx.forward)
        throw DomainError("mixture forward differs from the slice forward");
    const double t = ctx.expiry;
    std::vector<PillarQuote> out;
    for (const auto& q : pillars) {
        auto residual = [&](double vol) {
            PillarQuote trial{q.kind, q.delta, vol};
            const double k = resolve_strike(trial, ctx);
            const double price = p.call_price(k, t);
            const OptionSpec opt{k, t, OptionKind::Call};
            return implied_vol(price, opt, {ctx.forward, 1.0}) - vol;
        };
        const double lo = 0.25 * std::min(p.vol1(), p.vol2());
        const double hi = 4.0 * std::max(p.vol1(), p.vol2());
        out.push_back({q.kind, q.delta, brent_root(residual, lo, hi, 1e-16).root});
    }
    return {std::move(name), "", "", ctx, std::move(out)};
}

}  // namespace fxsmile
