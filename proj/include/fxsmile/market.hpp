#pragma once

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "fxsmile/black.hpp"
#include "fxsmile/errors.hpp"
#include "fxsmile/normal.hpp"
#include "fxsmile/solvers.hpp"

namespace fxsmile {

enum class DeltaMeasure { Spot, Forward };
enum class AtmKind { DeltaNeutralStraddle, ForwardAtm };

struct DeltaConvention {
    DeltaMeasure measure = DeltaMeasure::Forward;
    bool premium_adjusted = false;
    AtmKind atm = AtmKind::ForwardAtm;
};

enum class PillarKind { Atm, DeltaPut, DeltaCall };

/// One quoted vol. `delta` is the unsigned quoted delta (0.25 for 25D) and is ignored for ATM.
struct PillarQuote {
    PillarKind kind;
    double delta;
    double vol;

    static PillarQuote atm(double vol) { return {PillarKind::Atm, 0.5, vol}; }
    static PillarQuote put(double delta, double vol) { return {PillarKind::DeltaPut, delta, vol}; }
    static PillarQuote call(double delta, double vol) { return {PillarKind::DeltaCall, delta, vol}; }

    void validate() const {
        if (!(vol > 0.0) || !std::isfinite(vol)) throw DomainError("pillar vol must be positive");
        if (kind != PillarKind::Atm && !(delta > 0.0 && delta < 0.5)) {
            throw DomainError("pillar delta must lie strictly inside (0, 0.5)");
        }
    }

    std::string label() const {
        if (kind == PillarKind::Atm) return "ATM";
        char buf[32];
        std::snprintf(buf, sizeof buf, "%gD-%s", delta * 100.0, kind == PillarKind::DeltaPut ? "Put" : "Call");
        return buf;
    }
};

/// Market quotes in the simple smile convention. Spreads are in the same units as `atm`.
struct RrBfQuotes {
    double atm;
    double rr25;
    double bf25;
    double rr10;
    double bf10;
};

/// Simple smile convention: call = ATM + BF + RR/2, put = ATM + BF - RR/2.
/// Returns the pillars ordered 10D-Put, 25D-Put, ATM, 25D-Call, 10D-Call.
inline std::array<PillarQuote, 5> convert_simple_rr_bf(const RrBfQuotes& q) {
    if (!(q.atm > 0.0)) throw DomainError("ATM vol must be positive");
    std::array<PillarQuote, 5> out{
        PillarQuote::put(0.10, q.atm + q.bf10 - 0.5 * q.rr10),
        PillarQuote::put(0.25, q.atm + q.bf25 - 0.5 * q.rr25),
        PillarQuote::atm(q.atm),
        PillarQuote::call(0.25, q.atm + q.bf25 + 0.5 * q.rr25),
        PillarQuote::call(0.10, q.atm + q.bf10 + 0.5 * q.rr10),
    };
    for (const auto& p : out) p.validate();
    return out;
}

/// Forward delta. Without premium: +/-N(+/-d1). Premium adjusted: +/-(K/F) N(+/-d2).
inline double forward_delta(double strike, double vol, double expiry, double forward, OptionKind kind,
                            bool premium_adjusted) {
    detail::require_positive(strike, "strike");
    detail::require_positive(vol, "vol");
    detail::require_positive(expiry, "expiry");
    detail::require_positive(forward, "forward");
    const double eta = sign_of(kind);
    const double sd = vol * std::sqrt(expiry);
    const double d1 = std::log(forward / strike) / sd + 0.5 * sd;
    if (!premium_adjusted) return eta * norm_cdf(eta * d1);
    return eta * strike / forward * norm_cdf(eta * (d1 - sd));
}

/// N(ln(F/K) / (vol_ref sqrt(T))). With the ATM vol this is the reduced delta; with the
/// candidate vol it is the simplified forward delta used by the exponential quartic.
inline double reduced_delta(double strike, double vol_ref, double expiry, double forward) {
    detail::require_positive(strike, "strike");
    detail::require_positive(vol_ref, "vol");
    detail::require_positive(expiry, "expiry");
    detail::require_positive(forward, "forward");
    return norm_cdf(std::log(forward / strike) / (vol_ref * std::sqrt(expiry)));
}

/// Forward, discounts and quoting convention of one expiry.
struct SliceContext {
    double expiry;
    double forward;
    double spot;
    double domestic_discount = 1.0;
    double foreign_discount = 1.0;
    DeltaConvention convention{};

    ForwardContext forward_context() const { return {forward, domestic_discount}; }
};

/// Strike at which the quoted delta `delta` (unsigned) is attained for vol `vol`.
inline double strike_from_delta(double delta, OptionKind kind, double vol, const SliceContext& ctx) {
    detail::require_positive(vol, "vol");
    const double t = ctx.expiry;
    const double f = ctx.forward;
    const double sd = vol * std::sqrt(t);
    double target = delta;
    if (ctx.convention.measure == DeltaMeasure::Spot) target /= ctx.foreign_discount;
    if (!(target > 0.0 && target < 1.0) && !ctx.convention.premium_adjusted) {
        throw DomainError("strike_from_delta: delta must lie in (0,1)");
    }
    if (!(target > 0.0)) throw DomainError("strike_from_delta: delta must be positive");

    if (!ctx.convention.premium_adjusted) {
        const double q = norm_inv_cdf(target);
        return kind == OptionKind::Call ? f * std::exp(0.5 * sd * sd - sd * q)
                                        : f * std::exp(0.5 * sd * sd + sd * q);
    }

    double lo = f * std::exp(-8.0 * sd);
    const double hi = f * std::exp(8.0 * sd);
    if (kind == OptionKind::Call) {
        // (K/F) N(d2) peaks where sd*N(d2) = n(d2); quoted call strikes use the branch above the peak
        auto peak = [sd](double d2) { return sd * norm_cdf(d2) - norm_pdf(d2); };
        const double d2_peak = brent_root(peak, -sd, 40.0).root;
        lo = std::max(lo, f * std::exp(-d2_peak * sd - 0.5 * sd * sd));
    }
    auto residual = [&](double k) { return std::abs(forward_delta(k, vol, t, f, kind, true)) - target; };
    try {
        return brent_root(residual, lo, hi, 1e-16 * f).root;
    } catch (const NoBracket&) {
        throw NoSolution("strike_from_delta: premium-adjusted delta has no root", lo, hi);
    }
}

/// A pillar together with the strike implied by its quote.
struct ResolvedPillar {
    PillarQuote quote;
    double strike;
    double log_moneyness;
};

inline double atm_strike(double vol, const SliceContext& ctx) {
    if (ctx.convention.atm == AtmKind::ForwardAtm) return ctx.forward;
    const double w = vol * vol * ctx.expiry;
    return ctx.convention.premium_adjusted ? ctx.forward * std::exp(-0.5 * w)
                                           : ctx.forward * std::exp(0.5 * w);
}

inline double resolve_strike(const PillarQuote& q, const SliceContext& ctx) {
    switch (q.kind) {
        case PillarKind::Atm: return atm_strike(q.vol, ctx);
        case PillarKind::DeltaPut: return strike_from_delta(q.delta, OptionKind::Put, q.vol, ctx);
        case PillarKind::DeltaCall: return strike_from_delta(q.delta, OptionKind::Call, q.vol, ctx);
    }
    return ctx.forward;
}

/// ACT/365 year fraction between two ISO dates (YYYY-MM-DD).
inline double act365(const std::string& from, const std::string& to) {
    auto parse = [](const std::string& s) {
        int y = 0;
        unsigned m = 0, d = 0;
        if (std::sscanf(s.c_str(), "%d-%u-%u", &y, &m, &d) != 3) throw ParseError("bad date '" + s + "'");
        const std::chrono::year_month_day ymd{std::chrono::year{y}, std::chrono::month{m}, std::chrono::day{d}};
        if (!ymd.ok()) throw ParseError("bad date '" + s + "'");
        return std::chrono::sys_days{ymd};
    };
    return static_cast<double>((parse(to) - parse(from)).count()) / 365.0;
}

/// One maturity's market snapshot. Immutable; strikes are resolved at construction.
class SmileQuoteSet {
public:
    SmileQuoteSet(std::string name, std::string valuation_date, std::string expiry_date, SliceContext ctx,
                  std::vector<PillarQuote> pillars)
        : name_(std::move(name)), valuation_(std::move(valuation_date)), expiry_date_(std::move(expiry_date)),
          ctx_(ctx) {
        if (!(ctx_.expiry > 0.0)) throw DomainError("time to expiry must be positive");
        if (!(ctx_.forward > 0.0)) throw DomainError("forward must be positive");
        if (!(ctx_.spot > 0.0)) throw DomainError("spot must be positive");
        if (!(ctx_.domestic_discount > 0.0 && ctx_.domestic_discount <= 1.0) ||
            !(ctx_.foreign_discount > 0.0 && ctx_.foreign_discount <= 1.0)) {
            throw DomainError("discount factors must lie in (0,1]");
        }
        if (pillars.empty()) throw DomainError("quote set has no pillars");
        resolved_.reserve(pillars.size());
        for (const auto& p : pillars) {
            p.validate();
            const double k = resolve_strike(p, ctx_);
            resolved_.push_back({p, k, std::log(k / ctx_.forward)});
        }
        std::sort(resolved_.begin(), resolved_.end(),
                  [](const auto& a, const auto& b) { return a.strike < b.strike; });
        for (std::size_t i = 1; i < resolved_.size(); ++i) {
            if (!(resolved_[i].strike > resolved_[i - 1].strike)) {
                throw DomainError("pillar strikes are not strictly increasing in " + name_);
            }
        }
    }

    const std::string& name() const { return name_; }
    const std::string& valuation_date() const { return valuation_; }
    const std::string& expiry_date() const { return expiry_date_; }
    const SliceContext& context() const { return ctx_; }
    double expiry() const { return ctx_.expiry; }
    double forward() const { return ctx_.forward; }
    double spot() const { return ctx_.spot; }
    double domestic_discount() const { return ctx_.domestic_discount; }
    double foreign_discount() const { return ctx_.foreign_discount; }
    const DeltaConvention& convention() const { return ctx_.convention; }
    const std::vector<ResolvedPillar>& pillars() const { return resolved_; }
    std::size_t size() const { return resolved_.size(); }

    double atm_vol() const {
        for (const auto& p : resolved_)
            if (p.quote.kind == PillarKind::Atm) return p.quote.vol;
        // no explicit ATM: the pillar closest to the forward
        auto it = std::min_element(resolved_.begin(), resolved_.end(), [](const auto& a, const auto& b) {
            return std::abs(a.log_moneyness) < std::abs(b.log_moneyness);
        });
        return it->quote.vol;
    }

    /// ATM standard deviation sigma_ATM * sqrt(T).
    double atm_stddev() const { return atm_vol() * std::sqrt(ctx_.expiry); }

    std::vector<double> strikes() const {
        std::vector<double> out;
        for (const auto& p : resolved_) out.push_back(p.strike);
        return out;
    }
    std::vector<double> vols() const {
        std::vector<double> out;
        for (const auto& p : resolved_) out.push_back(p.quote.vol);
        return out;
    }
    std::vector<PillarQuote> quotes() const {
        std::vector<PillarQuote> out;
        for (const auto& p : resolved_) out.push_back(p.quote);
        return out;
    }

    /// ATM plus the 25D and 10D risk-reversal pillars.
    SmileQuoteSet standard_pillars() const {
        std::vector<PillarQuote> keep;
        for (const auto& p : resolved_) {
            const auto& q = p.quote;
            if (q.kind == PillarKind::Atm || std::abs(q.delta - 0.25) < 1e-12 || std::abs(q.delta - 0.10) < 1e-12)
                keep.push_back(q);
        }
        return {name_, valuation_, expiry_date_, ctx_, keep};
    }

    /// Strike of a pillar identified by kind and delta.
    double strike_of(PillarKind kind, double delta = 0.5) const {
        for (const auto& p : resolved_)
            if (p.quote.kind == kind && (kind == PillarKind::Atm || std::abs(p.quote.delta - delta) < 1e-12))
                return p.strike;
        throw DomainError("no such pillar in " + name_);
    }

private:
    std::string name_;
    std::string valuation_;
    std::string expiry_date_;
    SliceContext ctx_;
    std::vector<ResolvedPillar> resolved_;
};

}  // namespace fxsmile
