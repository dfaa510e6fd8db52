#include <cmath>
#include <map>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "fxsmile/fxsmile.hpp"
#include "oracles.hpp"
#include "table8_pinned.hpp"
#include "test_support.hpp"

using namespace fxsmile;

namespace {

constexpr double kNotional = 1e4;

struct Eurusd {
    SmileQuoteSet quotes;
    SmileQuoteSet dense;
    PricingContext ctx;
    explicit Eurusd(const std::string& m)
        : quotes(load_fixture("eurusd-" + m)), dense(load_fixture("eurusd-" + m + "-dense")), ctx(PricingContext::from(quotes)) {}
    double k10p() const { return quotes.strike_of(PillarKind::DeltaPut, 0.10); }
    double k1p() const { return dense.strike_of(PillarKind::DeltaPut, 0.01); }
    double k10c() const { return quotes.strike_of(PillarKind::DeltaCall, 0.10); }
    double k1c() const { return dense.strike_of(PillarKind::DeltaCall, 0.01); }
};

// Base smile with its vol raised linearly in |y| beyond [lo, hi].
class WingBump final : public SmileSection {
public:
    WingBump(SmilePtr base, double lo, double hi, double slope)
        : SmileSection(base->forward(), base->expiry(), base->atm_stddev()), base_(std::move(base)), lo_(lo), hi_(hi),
          slope_(slope) {}
    double total_variance(double y) const override {
        const double w = base_->total_variance(y);
        const double out = std::max(0.0, lo_ - y) + std::max(0.0, y - hi_);
        if (out == 0.0) return w;
        const double v = std::sqrt(w / expiry()) + slope_ * out;
        return v * v * expiry();
    }
    std::vector<double> node_strikes() const override {
        auto k = base_->node_strikes();
        k.push_back(forward() * std::exp(lo_));
        k.push_back(forward() * std::exp(hi_));
        return k;
    }
    std::string name() const override { return base_->name() + "+wings"; }

private:
    SmilePtr base_;
    double lo_, hi_, slope_;
};

}  // namespace

TEST(Digital, FlatVolIsBlack) {
    const double f = 1.1, t = 0.5, vol = 0.13, bd = 0.97;
    const FlatSmile s(f, t, vol);
    const PricingContext ctx{bd};
    for (double k : {0.9, 1.05, 1.1, 1.3}) {
        const double sd = vol * std::sqrt(t);
        const double d2 = std::log(f / k) / sd - 0.5 * sd;
        EXPECT_NEAR(digital_price(s, ctx, k, OptionKind::Put).price, bd * norm_cdf(-d2), 1e-15);
        EXPECT_NEAR(digital_price(s, ctx, k, OptionKind::Call).price, bd * norm_cdf(d2), 1e-15);
        EXPECT_NEAR(digital_price(s, ctx, k, OptionKind::Put, 1.0, DigitalMethod::SmileConsistent).price,
                    bd * norm_cdf(-d2), 1e-9);
    }
}

TEST(Digital, PutPlusCallIsDiscountFactorProperty) {
    oracle::Gen gen(808);
    for (int i = 0; i < 300; ++i) {
        const double f = gen.log_uniform(0.1, 200.0), t = gen.log_uniform(0.01, 3.0), vol = gen.log_uniform(0.01, 1.0);
        const double bd = gen.uniform(0.6, 1.0);
        const double k = f * std::exp(gen.uniform(-3.0, 3.0) * vol * std::sqrt(t));
        const FlatSmile s(f, t, vol);
        const PricingContext ctx{bd};
        EXPECT_NEAR(digital_price(s, ctx, k, OptionKind::Put).price + digital_price(s, ctx, k, OptionKind::Call).price, bd,
                    1e-15);
    }
}

TEST(Digital, EurUsd1mPolynomialTenDeltaPut) {
    const Eurusd e("1m");
    EXPECT_NEAR(e.k10p(), 0.93274, 1e-5);
    const auto s = make_smile("poly-delta", e.quotes);
    EXPECT_NEAR(digital_price(*s, e.ctx, e.k10p(), OptionKind::Put, kNotional).price, 1063.88, 1.5);
}

TEST(Digital, EurUsd1mOneDeltaOrdering) {
    const Eurusd e("1m");
    EXPECT_NEAR(e.k1p(), 0.889339, 1e-6);
    std::map<std::string, double> p;
    for (const auto& m : table8_models())
        p[m] = digital_price(*make_smile(m, e.quotes), e.ctx, e.k1p(), OptionKind::Put, kNotional).price;
    EXPECT_LT(p["poly-delta"], p["svi"]);
    EXPECT_LT(p["svi"], p["xssvi"]);
    EXPECT_LE(p["xssvi"], p["sabr"]);
}

TEST(Digital, NegativeVariancePropagates) {
    const auto q = load_fixture("eurtry-1y");
    const LogMoneynessSplineSmile s(q, SplineBoundary::Natural, SplineExtrapolation::LinearBoundarySlope);
    const auto bad = negative_variance_intervals(s, -3.0, 3.0);
    ASSERT_FALSE(bad.empty());
    const double k = s.forward() * std::exp(0.5 * (bad.front().first + bad.front().second));
    EXPECT_THROW(digital_price(s, PricingContext::from(q), k, OptionKind::Put), NegativeVariance);
    EXPECT_THROW(variance_swap_replication(s, PricingContext::from(q)), NegativeVariance);
}

TEST(AutoQuanto, FlatVolMatchesClosedFormProperty) {
    oracle::Gen gen(4242);
    for (int i = 0; i < 60; ++i) {
        const double f = gen.log_uniform(0.2, 50.0), t = gen.log_uniform(0.02, 2.0), vol = gen.log_uniform(0.03, 0.6);
        const double bd = gen.uniform(0.8, 1.0);
        const double sd = vol * std::sqrt(t);
        const double k = f * std::exp(gen.uniform(-2.5, 2.5) * sd);
        const FlatSmile s(f, t, vol);
        const PricingContext ctx{bd};
        for (bool call : {true, false}) {
            const double got = auto_quanto_price(s, ctx, k, call ? OptionKind::Call : OptionKind::Put).price;
            const double want = oracle::lognormal_auto_quanto(f, vol, t, k, call, bd);
            EXPECT_NEAR(got, want, 1e-9 * bd * f * f) << i << " " << call;
        }
    }
}

TEST(AutoQuanto, RejectsNonPositiveStrike) {
    const FlatSmile s(1.0, 1.0, 0.1);
    EXPECT_THROW(auto_quanto_price(s, {}, 0.0, OptionKind::Call), DomainError);
    EXPECT_THROW(digital_price(s, {}, -1.0, OptionKind::Put), DomainError);
}

TEST(AutoQuanto, EurUsd1ySviTenDeltaCall) {
    const Eurusd e("1y");
    const auto s = make_smile("svi", e.quotes);
    EXPECT_NEAR(auto_quanto_price(*s, e.ctx, e.k10c(), OptionKind::Call, kNotional).price, 48.24, 0.5);
}

TEST(AutoQuanto, EurUsd1yOneDeltaPutFactorOfTwo) {
    const Eurusd e("1y");
    const double poly = auto_quanto_price(*make_smile("poly-delta", e.quotes), e.ctx, e.k1p(), OptionKind::Put, kNotional).price;
    const double svi = auto_quanto_price(*make_smile("svi", e.quotes), e.ctx, e.k1p(), OptionKind::Put, kNotional).price;
    EXPECT_GE(poly / svi, 0.4);
    EXPECT_LE(poly / svi, 0.6);
}

TEST(AutoQuanto, CallDominatesScaledVanillaOnEveryFixture) {
    int checked = 0;
    for (const auto& name : builtin_fixture_names()) {
        const auto q = load_fixture(name);
        const auto ctx = PricingContext::from(q);
        for (const auto& [label, smile] : support::all_smiles(q)) {
            for (double k : q.strikes()) {
                try {
                    const double aq = auto_quanto_price(*smile, ctx, k, OptionKind::Call).price;
                    const double vanilla = ctx.domestic_discount * k * detail::undiscounted(*smile, std::log(k / q.forward()), OptionKind::Call);
                    EXPECT_GE(aq, vanilla) << label << " " << k;
                    ++checked;
                } catch (const NegativeVariance&) {
                    // the smile is not a valid price surface there; nothing to compare
                }
            }
        }
    }
    EXPECT_GT(checked, 300);
}

TEST(VarianceSwap, FlatVolIsVol) {
    for (double vol : {0.02, 0.1, 0.45}) {
        for (double t : {7.0 / 365.0, 1.0, 3.0}) {
            const FlatSmile s(1.3, t, vol);
            const auto v = variance_swap_replication(s, {0.95});
            EXPECT_NEAR(v.fair_vol / (100.0 * vol), 1.0, 1e-6) << vol << " " << t;
            EXPECT_NEAR(v.price_vol / (100.0 * vol * std::sqrt(0.95)), 1.0, 1e-6);
            EXPECT_GE(v.quadrature.nodes, 801);
        }
    }
}

TEST(VarianceSwap, EurUsd1mAcrossModels) {
    const Eurusd e("1m");
    const std::map<std::string, double> reference{{"poly-delta", 11.31}, {"svi", 11.35}, {"xssvi", 11.37}, {"sabr", 11.39}};
    for (const auto& [m, v] : reference)
        EXPECT_NEAR(variance_swap_replication(*make_smile(m, e.quotes), e.ctx).price_vol, v, 0.05) << m;
}

TEST(VarianceSwap, EurUsd1yPolynomialAndSvi) {
    const Eurusd e("1y");
    EXPECT_NEAR(variance_swap_replication(*make_smile("poly-delta", e.quotes), e.ctx).price_vol, 10.89, 0.08);
    EXPECT_NEAR(variance_swap_replication(*make_smile("svi", e.quotes), e.ctx).price_vol, 11.03, 0.08);
}

TEST(VarianceSwap, MonotoneUnderWingFattening) {
    for (const std::string name : {"eurusd-1m", "eurusd-1y", "audnzd-7d", "eurczk-32d"}) {
        const auto q = load_fixture(name);
        const auto ctx = PricingContext::from(q);
        double lo = 0.0, hi = 0.0;
        for (const auto& p : q.pillars()) {
            lo = std::min(lo, p.log_moneyness);
            hi = std::max(hi, p.log_moneyness);
        }
        for (const auto& m : {"svi-a0", "sabr", "poly-delta", "xssvi"}) {
            const auto base = make_smile(m, q);
            double prev = 0.0;
            for (double slope : {0.0, 0.01, 0.05, 0.2, 1.0}) {
                const WingBump s(base, lo, hi, slope);
                const double v = variance_swap_replication(s, ctx).fair_vol;
                EXPECT_GE(v, prev) << name << " " << m << " " << slope;
                prev = v;
            }
        }
    }
}

TEST(VarianceSwap, ModelIndependentFlatPillars) {
    const SliceContext ctx{0.5, 1.2, 1.19, 0.99, 0.98};
    const double vol = 0.137;
    const SmileQuoteSet q("flat", "", "", ctx,
                          {PillarQuote::put(0.1, vol), PillarQuote::put(0.25, vol), PillarQuote::atm(vol),
                           PillarQuote::call(0.25, vol), PillarQuote::call(0.1, vol)});
    for (auto rule : {ModelIndependentRule::TrapezoidInP, ModelIndependentRule::LinearInZ})
        EXPECT_NEAR(variance_swap_model_independent(q, rule).fair_vol, 100.0 * vol, 1e-12);
}

TEST(VarianceSwap, ModelIndependentEurUsd1m) {
    EXPECT_NEAR(variance_swap_model_independent(load_fixture("eurusd-1m")).fair_vol, 11.28, 0.10);
}

// The pillar trapezoid with flat tails lands at 10.996 here; the linear-in-z rule reaches 11.20.
TEST(VarianceSwap, ModelIndependentEurUsd1y) {
    EXPECT_NEAR(variance_swap_model_independent(load_fixture("eurusd-1y")).fair_vol, 11.20, 0.10);
}

TEST(VarianceSwap, ModelIndependentNeedsFivePillars) {
    const auto q = load_fixture("eurusd-1m");
    const SmileQuoteSet three("three", "", "", q.context(), {q.pillars()[1].quote, q.pillars()[2].quote, q.pillars()[3].quote});
    EXPECT_THROW(variance_swap_model_independent(three), DomainError);
}

TEST(Quadrature, DoublingNodesIsStable) {
    for (const std::string m : {"1m", "1y"}) {
        const Eurusd e(m);
        auto fine = e.ctx;
        fine.panels *= 2;
        for (const auto& model : table8_models()) {
            const auto s = make_smile(model, e.quotes);
            for (auto [k, kind] : std::vector<std::pair<double, OptionKind>>{{e.k10c(), OptionKind::Call},
                                                                          {e.k1c(), OptionKind::Call},
                                                                          {e.k10p(), OptionKind::Put},
                                                                          {e.k1p(), OptionKind::Put}}) {
                const auto a = auto_quanto_price(*s, e.ctx, k, kind, kNotional);
                const auto b = auto_quanto_price(*s, fine, k, kind, kNotional);
                EXPECT_LT(std::abs(a.price - b.price), 1e-7 * a.price) << m << " " << model << " " << k;
                EXPECT_LT(a.quadrature.error_estimate, 1e-6 * a.price) << m << " " << model << " " << k;
            }
            const auto a = variance_swap_replication(*s, e.ctx);
            const auto b = variance_swap_replication(*s, fine);
            EXPECT_LT(std::abs(a.fair_vol - b.fair_vol), 1e-7 * a.fair_vol) << m << " " << model;
            EXPECT_LT(a.quadrature.error_estimate, 1e-6 * std::pow(a.fair_vol / 100.0, 2)) << m << " " << model;
            EXPECT_GE(a.quadrature.nodes, 801);
        }
    }
}

TEST(Table8, PinnedRegression) {
    const auto& pinned = pinned::table8();
    const auto cells = table8();
    ASSERT_EQ(cells.size(), pinned.size());
    for (std::size_t i = 0; i < cells.size(); ++i) {
        const auto& c = cells[i];
        const auto& p = pinned[i];
        ASSERT_EQ(c.maturity, p.maturity);
        ASSERT_EQ(c.product, p.product);
        ASSERT_EQ(c.strike_label, p.strike);
        ASSERT_EQ(c.model, p.model);
        EXPECT_NEAR(c.value, p.value, 1e-10 * std::abs(p.value)) << c.maturity << " " << c.product << " " << c.strike_label << " " << c.model;
    }
}

TEST(Table8, Deterministic) {
    const auto a = table8(), b = table8();
    ASSERT_EQ(a.size(), b.size());
    for (std::size_t i = 0; i < a.size(); ++i) EXPECT_EQ(a[i].value, b[i].value);
}
