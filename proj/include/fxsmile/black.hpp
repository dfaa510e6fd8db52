#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "fxsmile/errors.hpp"
#include "fxsmile/normal.hpp"

namespace fxsmile {

enum class OptionKind { Call, Put };

inline double sign_of(OptionKind kind) { return kind == OptionKind::Call ? 1.0 : -1.0; }

struct OptionSpec {
    double strike;
    double expiry;
    OptionKind kind;
};

/// Forward and domestic discount factor to the option expiry.
struct ForwardContext {
    double forward;
    double domestic_discount = 1.0;
};

namespace detail {

inline void require_positive(double x, const char* what) {
    if (!(x > 0.0) || !std::isfinite(x)) {
        throw DomainError(std::string(what) + " must be positive and finite");
    }
}

}  // namespace detail

/// Undiscounted Black price for a total standard deviation sqrt(w) = sigma*sqrt(T).
inline double black_undiscounted(double forward, double strike, double stddev, OptionKind kind) {
    const double eta = sign_of(kind);
    if (stddev <= 0.0) {
        return std::max(eta * (forward - strike), 0.0);
    }
    const double d1 = std::log(forward / strike) / stddev + 0.5 * stddev;
    const double d2 = d1 - stddev;
    return eta * (forward * norm_cdf(eta * d1) - strike * norm_cdf(eta * d2));
}

inline double black_price(const OptionSpec& opt, double vol, const ForwardContext& ctx) {
    detail::require_positive(opt.strike, "strike");
    detail::require_positive(opt.expiry, "expiry");
    detail::require_positive(ctx.forward, "forward");
    if (vol < 0.0) throw DomainError("black_price: negative volatility");
    return ctx.domestic_discount *
           black_undiscounted(ctx.forward, opt.strike, vol * std::sqrt(opt.expiry), opt.kind);
}

/// dPrice/dSigma, identical for calls and puts.
inline double black_vega(const OptionSpec& opt, double vol, const ForwardContext& ctx) {
    const double sqrt_t = std::sqrt(opt.expiry);
    const double stddev = vol * sqrt_t;
    if (stddev <= 0.0) return 0.0;
    const double d1 = std::log(ctx.forward / opt.strike) / stddev + 0.5 * stddev;
    return ctx.domestic_discount * ctx.forward * norm_pdf(d1) * sqrt_t;
}

/// Black implied volatility. Solved for the total standard deviation with a bracketed
/// Newton iteration started at the vega maximum, bisecting whenever Newton leaves the bracket.
inline double implied_vol(double price, const OptionSpec& opt, const ForwardContext& ctx) {
    detail::require_positive(opt.strike, "strike");
    detail::require_positive(opt.expiry, "expiry");
    detail::require_positive(ctx.forward, "forward");
    const double df = ctx.domestic_discount;
    const double f = ctx.forward;
    const double k = opt.strike;
    const double eta = sign_of(opt.kind);

    const double intrinsic = df * std::max(eta * (f - k), 0.0);
    const double upper = df * (opt.kind == OptionKind::Call ? f : k);
    const double tiny = 1e-15 * df * f;
    if (price < intrinsic - tiny) {
        throw PriceOutOfBounds("implied_vol: price below intrinsic value", price, intrinsic);
    }
    if (price >= upper) {
        throw PriceOutOfBounds("implied_vol: price at or above upper bound", price, upper);
    }
    if (price <= intrinsic + tiny) return 0.0;

    // out-of-the-money undiscounted price has the best relative conditioning
    OptionKind otm = f > k ? OptionKind::Put : OptionKind::Call;
    double target = price / df;
    if (otm != opt.kind) target -= eta * (f - k);
    if (target <= 0.0) return 0.0;

    auto value = [&](double s) { return black_undiscounted(f, k, s, otm) - target; };
    auto vega = [&](double s) {
        const double d1 = std::log(f / k) / s + 0.5 * s;
        return f * norm_pdf(d1);
    };

    double lo = 0.0;
    double hi = 1.0;
    while (value(hi) < 0.0) {
        lo = hi;
        hi *= 2.0;
        if (hi > 1e3) throw PriceOutOfBounds("implied_vol: no finite volatility", price, upper);
    }
    const double lm = std::abs(std::log(f / k));
    double s = lm > 0.0 ? std::sqrt(2.0 * lm) : std::sqrt(2.0 * std::numbers::pi) * target / f;
    if (!(s > lo && s < hi)) s = 0.5 * (lo + hi);

    for (int iter = 0; iter < 200; ++iter) {
        const double v = value(s);
        if (v > 0.0) hi = s; else lo = s;
        if (v == 0.0) break;
        const double dv = vega(s);
        double next = s - v / dv;
        if (!std::isfinite(next) || next <= lo || next >= hi) next = 0.5 * (lo + hi);
        const double step = std::abs(next - s);
        s = next;
        if (step <= 4.0 * std::numeric_limits<double>::epsilon() * s || hi - lo <= 1e-300) break;
    }
    return s / std::sqrt(opt.expiry);
}

}  // namespace fxsmile
