#pragma once

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include <boost/math/quadrature/gauss.hpp>

#include "fxsmile/black.hpp"
#include "fxsmile/errors.hpp"
#include "fxsmile/market.hpp"
#include "fxsmile/normal.hpp"
#include "fxsmile/smile_section.hpp"

namespace fxsmile {

struct QuadratureInfo {
    int nodes = 0;
    double lower = 0.0;  // strike truncation bounds
    double upper = 0.0;
    double error_estimate = 0.0;
};

struct ReplicationResult {
    double price;  // per notional
    double notional;
    QuadratureInfo quadrature;
};

struct VarSwapQuote {
    double fair_vol;   // percent, sqrt of the undiscounted fair variance
    double price_vol;  // percent, sqrt of the discounted fair variance (present value in vol terms)
    QuadratureInfo quadrature;
};

/// Discount and truncation settings for strip replication.
struct PricingContext {
    double domestic_discount = 1.0;
    double wing_stddevs = 8.0;  // strips are truncated at F exp(+-wing_stddevs * wing_stddev)
    double wing_stddev = 0.0;   // sigma_wing sqrt(T); zero falls back to the smile's ATM value
    int panels = 64;            // per strip; error is estimated against twice as many

    /// Discount from the quotes; the wing scale is the largest pillar vol.
    static PricingContext from(const SmileQuoteSet& q) {
        const auto v = q.vols();
        return {q.domestic_discount(), 8.0, *std::max_element(v.begin(), v.end()) * std::sqrt(q.expiry())};
    }

    double span(const SmileSection& s) const {
        return wing_stddevs * (wing_stddev > 0.0 ? wing_stddev : s.atm_stddev());
    }
};

namespace detail {

constexpr int kGaussPoints = 20;

/// Composite Gauss-Legendre over [a, b] split at the given breakpoints.
template <class F>
double composite_gauss(F&& f, double a, double b, const std::vector<double>& breaks, int panels) {
    std::vector<double> cuts{a};
    for (double x : breaks)
        if (x > a && x < b) cuts.push_back(x);
    cuts.push_back(b);
    std::sort(cuts.begin(), cuts.end());
    double total = 0.0;
    for (std::size_t s = 0; s + 1 < cuts.size(); ++s) {
        const double lo = cuts[s], hi = cuts[s + 1];
        const int n = std::max(1, static_cast<int>(std::ceil(panels * (hi - lo) / (b - a))));
        for (int i = 0; i < n; ++i) {
            const double pa = lo + (hi - lo) * i / n;
            const double pb = i + 1 == n ? hi : lo + (hi - lo) * (i + 1) / n;
            total += boost::math::quadrature::gauss<double, kGaussPoints>::integrate(f, pa, pb);
        }
    }
    return total;
}

struct StripIntegral {
    double value;
    QuadratureInfo info;
};

/// Integral over y in [a, b]; panel doubling gives the error estimate.
template <class F>
StripIntegral strip(const SmileSection& smile, F&& f, double a, double b, int panels) {
    std::vector<double> breaks{0.0};
    for (double k : smile.node_strikes()) breaks.push_back(std::log(k / smile.forward()));
    const double coarse = composite_gauss(f, a, b, breaks, panels);
    const double fine = composite_gauss(f, a, b, breaks, 2 * panels);
    if (!std::isfinite(fine)) throw QuadratureFailure("non-finite strip integral");
    const int nodes = 2 * panels * kGaussPoints;
    return {fine, {nodes, smile.forward() * std::exp(a), smile.forward() * std::exp(b), std::abs(fine - coarse)}};
}

inline double otm_undiscounted(const SmileSection& smile, double y) {
    const double k = smile.forward() * std::exp(y);
    const double w = smile.total_variance(y);
    if (!(w > 0.0)) throw NegativeVariance(y, w);
    return black_undiscounted(smile.forward(), k, std::sqrt(w), y < 0.0 ? OptionKind::Put : OptionKind::Call);
}

inline double undiscounted(const SmileSection& smile, double y, OptionKind kind) {
    const double k = smile.forward() * std::exp(y);
    const double w = smile.total_variance(y);
    if (!(w > 0.0)) throw NegativeVariance(y, w);
    return black_undiscounted(smile.forward(), k, std::sqrt(w), kind);
}

}  // namespace detail

enum class DigitalMethod {
    BlackAtSmileVol,  // B_d N(-+d2) with the smile vol at K; no skew term
    SmileConsistent   // -+dC/dK by central differences, including the slope of the smile
};

inline ReplicationResult digital_price(const SmileSection& smile, const PricingContext& ctx, double strike,
                                       OptionKind kind, double notional = 1.0,
                                       DigitalMethod method = DigitalMethod::BlackAtSmileVol) {
    if (!(strike > 0.0)) throw DomainError("strike must be positive");
    const double f = smile.forward();
    const double y = std::log(strike / f);
    double undisc = 0.0;
    if (method == DigitalMethod::BlackAtSmileVol) {
        const double w = smile.total_variance(y);
        if (!(w > 0.0)) throw NegativeVariance(y, w);
        const double sw = std::sqrt(w);
        const double d2 = -y / sw - 0.5 * sw;
        undisc = norm_cdf(sign_of(kind) * d2);
    } else {
        const double h = f * 1e-5;
        const double up = detail::undiscounted(smile, std::log((strike + h) / f), kind);
        const double dn = detail::undiscounted(smile, std::log((strike - h) / f), kind);
        undisc = -sign_of(kind) * (up - dn) / (2.0 * h);
    }
    return {notional * ctx.domestic_discount * undisc, notional, {}};
}

/// Payoff S_T (S_T - K)^+ or S_T (K - S_T)^+, replicated by a strip of vanillas.
inline ReplicationResult auto_quanto_price(const SmileSection& smile, const PricingContext& ctx, double strike,
                                           OptionKind kind, double notional = 1.0) {
    if (!(strike > 0.0)) throw DomainError("strike must be positive");
    const double f = smile.forward();
    const double yk = std::log(strike / f);
    const double span = ctx.span(smile);
    const double vanilla = detail::undiscounted(smile, yk, kind);
    auto integrand = [&](double y) { return detail::undiscounted(smile, y, kind) * f * std::exp(y); };

    double value = strike * vanilla;
    QuadratureInfo info;
    if (kind == OptionKind::Call) {
        if (yk < span) {
            const auto s = detail::strip(smile, integrand, yk, span, ctx.panels);
            value += 2.0 * s.value;
            info = s.info;
        }
    } else if (yk > -span) {
        const auto s = detail::strip(smile, integrand, -span, yk, ctx.panels);
        value -= 2.0 * s.value;
        info = s.info;
    }
    info.error_estimate *= 2.0 * notional * ctx.domestic_discount;
    return {notional * ctx.domestic_discount * value, notional, info};
}

/// Log-contract replication: fair variance (2/T) int OTM(K) / K^2 dK.
inline VarSwapQuote variance_swap_replication(const SmileSection& smile, const PricingContext& ctx) {
    const double f = smile.forward();
    const double span = ctx.span(smile);
    auto integrand = [&](double y) { return detail::otm_undiscounted(smile, y) / (f * std::exp(y)); };
    const auto s = detail::strip(smile, integrand, -span, span, ctx.panels);
    const double var = 2.0 / smile.expiry() * s.value;
    auto info = s.info;
    info.error_estimate *= 2.0 / smile.expiry();
    return {100.0 * std::sqrt(var), 100.0 * std::sqrt(ctx.domestic_discount * var), info};
}

enum class ModelIndependentRule {
    TrapezoidInP,  // sigma^2 trapezoid over p = N(-d2) at the pillars, flat out to p = 0 and p = 1
    LinearInZ      // vol linear in z = -d2 between pillars, end slopes continued; int sigma^2(z) n(z) dz
};

/// Fair variance from the pillar quotes only, as int_0^1 sigma^2 dp with p = N(-d2).
inline VarSwapQuote variance_swap_model_independent(const SmileQuoteSet& quotes,
                                                    ModelIndependentRule rule = ModelIndependentRule::TrapezoidInP) {
    if (quotes.size() < 5) throw DomainError("model-independent variance swap needs at least 5 pillars");
    const double sqrt_t = std::sqrt(quotes.expiry());
    std::vector<std::pair<double, double>> pts;  // (z, vol)
    for (const auto& p : quotes.pillars()) {
        const double sd = p.quote.vol * sqrt_t;
        pts.emplace_back(p.log_moneyness / sd + 0.5 * sd, p.quote.vol);
    }
    std::sort(pts.begin(), pts.end());

    double var = 0.0;
    if (rule == ModelIndependentRule::TrapezoidInP) {
        const double v0 = pts.front().second, vn = pts.back().second;
        var = v0 * v0 * norm_cdf(pts.front().first) + vn * vn * norm_cdf(-pts.back().first);
        for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
            const double a = pts[i].second, b = pts[i + 1].second;
            var += 0.5 * (a * a + b * b) * (norm_cdf(pts[i + 1].first) - norm_cdf(pts[i].first));
        }
    } else {
        // int_{z0}^{z1} (a + b z)^2 n(z) dz in closed form; infinite ends allowed
        auto piece = [](double a, double b, double z0, double z1) {
            auto prim = [&](double z) {
                if (std::isinf(z)) return z > 0 ? a * a + b * b : 0.0;
                const double n = norm_pdf(z), c = norm_cdf(z);
                return a * a * c - 2.0 * a * b * n + b * b * (c - z * n);
            };
            return prim(z1) - prim(z0);
        };
        auto line = [&](std::size_t i) {
            const auto [z0, v0] = pts[i];
            const auto [z1, v1] = pts[i + 1];
            const double b = (v1 - v0) / (z1 - z0);
            return std::pair{v0 - b * z0, b};
        };
        const double inf = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
            const auto [a, b] = line(i);
            var += piece(a, b, pts[i].first, pts[i + 1].first);
        }
        const auto [al, bl] = line(0);
        var += piece(al, bl, -inf, pts.front().first);
        const auto [ar, br] = line(pts.size() - 2);
        var += piece(ar, br, pts.back().first, inf);
    }
    return {100.0 * std::sqrt(var), 100.0 * std::sqrt(quotes.domestic_discount() * var), {}};
}

}  // namespace fxsmile
