#include <cmath>

#include <gtest/gtest.h>

#include "fxsmile/black.hpp"
#include "fxsmile/normal.hpp"
#include "oracles.hpp"

using namespace fxsmile;

TEST(Normal, CdfAtZero) { EXPECT_EQ(norm_cdf(0.0), 0.5); }

TEST(Normal, InverseAtQuartile) { EXPECT_NEAR(norm_inv_cdf(0.25), -0.6744897501960817, 1e-13); }

TEST(Normal, Symmetry) {
    for (double x : {0.5, 1.0, 3.0}) EXPECT_NEAR(norm_cdf(x) + norm_cdf(-x), 1.0, 1e-15) << x;
}

TEST(Normal, InverseRoundTrip) {
    oracle::Gen gen(11);
    for (int i = 0; i < 2000; ++i) {
        const double p = gen.log_uniform(1e-12, 0.5);
        for (double q : {p, 1.0 - p}) {
            if (!(q > 0.0 && q < 1.0)) continue;
            EXPECT_LT(std::abs(norm_cdf(norm_inv_cdf(q)) - q), 1e-14) << q;
        }
    }
}

TEST(Normal, InverseRejectsOutsideUnitInterval) {
    for (double p : {0.0, 1.0, -0.1, 1.5, std::nan("")}) EXPECT_THROW(norm_inv_cdf(p), DomainError) << p;
}

TEST(Normal, CdfReferenceValues) {
    // values from a 30-digit evaluation of erfc
    EXPECT_NEAR(norm_cdf(1.0), 0.8413447460685429, 1e-15);
    EXPECT_NEAR(norm_cdf(-1.0), 0.15865525393145705, 1e-15);
    EXPECT_NEAR(norm_cdf(-5.0) / 2.866515718791939e-07, 1.0, 1e-13);
}

TEST(BlackPrice, ZeroVolIsIntrinsic) {
    EXPECT_NEAR(black_price({1.0, 1.0, OptionKind::Call}, 0.0, {1.1, 1.0}), 0.1, 1e-15);
    EXPECT_EQ(black_price({1.0, 1.0, OptionKind::Put}, 0.0, {1.1, 0.9}), 0.0);
}

TEST(BlackPrice, AtmClosedForm) {
    const double f = 1.3;
    const double p = black_price({f, 1.0, OptionKind::Call}, 0.2, {f, 1.0});
    EXPECT_NEAR(p / f, 2.0 * norm_cdf(0.1) - 1.0, 1e-15);
    EXPECT_NEAR(p / f, 0.0797, 5e-5);
}

TEST(BlackPrice, PutCallParityProperty) {
    oracle::Gen gen(7);
    for (int i = 0; i < 500; ++i) {
        const double f = gen.log_uniform(0.01, 100.0);
        const double k = f * gen.log_uniform(0.3, 3.0);
        const double t = gen.log_uniform(1.0 / 365.0, 5.0);
        const double vol = gen.log_uniform(0.003, 1.5);
        const double bd = gen.uniform(0.5, 1.0);
        const double c = black_price({k, t, OptionKind::Call}, vol, {f, bd});
        const double p = black_price({k, t, OptionKind::Put}, vol, {f, bd});
        EXPECT_NEAR(c - p, bd * (f - k), 1e-13 * std::max(f, k));
    }
}

TEST(BlackPrice, MonotoneInVol) {
    const OptionSpec opt{1.05, 0.5, OptionKind::Call};
    double prev = 0.0;
    for (double v = 0.0; v <= 1.5; v += 0.01) {
        const double p = black_price(opt, v, {1.0, 0.98});
        EXPECT_GE(p, prev);
        prev = p;
    }
}

TEST(BlackPrice, ConvexInStrike) {
    for (double vol : {0.003, 0.05, 0.3, 1.2}) {
        const double f = 1.0, t = 0.75, h = 1e-3;
        for (int i = 1; i < 400; ++i) {
            const double k = 0.5 + i * 0.0025;
            auto c = [&](double x) { return black_price({x, t, OptionKind::Call}, vol, {f, 1.0}); };
            EXPECT_GE(c(k + h) - 2.0 * c(k) + c(k - h), -1e-12) << vol << " " << k;
        }
    }
}

TEST(BlackPrice, RejectsBadInputs) {
    EXPECT_THROW(black_price({-1.0, 1.0, OptionKind::Call}, 0.1, {1.0, 1.0}), DomainError);
    EXPECT_THROW(black_price({1.0, 0.0, OptionKind::Call}, 0.1, {1.0, 1.0}), DomainError);
    EXPECT_THROW(black_price({1.0, 1.0, OptionKind::Call}, 0.1, {0.0, 1.0}), DomainError);
    EXPECT_THROW(black_price({1.0, 1.0, OptionKind::Call}, -0.1, {1.0, 1.0}), DomainError);
}

TEST(Vega, MatchesCentralDifference) {
    oracle::Gen gen(3);
    for (int i = 0; i < 400; ++i) {
        const double vol = gen.log_uniform(0.003, 1.5);
        const double t = gen.log_uniform(7.0 / 365.0, 2.0);
        const double sd = vol * std::sqrt(t);
        const double f = gen.log_uniform(0.5, 50.0);
        const double k = f * std::exp(gen.uniform(-2.0, 2.0) * sd);
        const OptionSpec opt{k, t, i % 2 ? OptionKind::Call : OptionKind::Put};
        const ForwardContext ctx{f, gen.uniform(0.8, 1.0)};
        const double h = 1e-4 * vol;
        // Richardson on two central differences keeps truncation well below 1e-7
        auto cd = [&](double step) {
            return (black_price(opt, vol + step, ctx) - black_price(opt, vol - step, ctx)) / (2.0 * step);
        };
        const double fd = (4.0 * cd(0.5 * h) - cd(h)) / 3.0;
        const double vega = black_vega(opt, vol, ctx);
        EXPECT_NEAR(fd, vega, 1e-7 * vega) << vol << " " << k / f;
    }
}

TEST(ImpliedVol, RoundTripAcrossRegimes) {
    for (double vol : {0.003, 0.05, 0.31, 1.2}) {
        for (double t : {7.0 / 365.0, 0.25, 1.0}) {
            const double sd = vol * std::sqrt(t);
            for (double z : {-2.5, -1.0, 0.0, 0.7, 2.0}) {
                const double f = 3.6725;
                const double k = f * std::exp(z * sd);
                for (auto kind : {OptionKind::Call, OptionKind::Put}) {
                    const OptionSpec opt{k, t, kind};
                    const ForwardContext ctx{f, 0.97};
                    const double p = black_price(opt, vol, ctx);
                    const double iv = implied_vol(p, opt, ctx);
                    EXPECT_NEAR(iv, vol, 1e-10) << vol << " " << t << " " << z;
                    EXPECT_LT(std::abs(black_price(opt, iv, ctx) - p), 1e-12 * 0.97 * f);
                }
            }
        }
    }
}

TEST(ImpliedVol, RoundTripProperty) {
    oracle::Gen gen(2024);
    for (int i = 0; i < 1000; ++i) {
        const double vol = gen.log_uniform(0.003, 1.2);
        const double t = gen.log_uniform(7.0 / 365.0, 2.0);
        const double sd = vol * std::sqrt(t);
        const double f = gen.log_uniform(0.5, 50.0);
        const double k = f * std::exp(gen.uniform(-3.0, 3.0) * sd);
        const OptionSpec opt{k, t, k >= f ? OptionKind::Call : OptionKind::Put};
        const ForwardContext ctx{f, 1.0};
        EXPECT_NEAR(implied_vol(black_price(opt, vol, ctx), opt, ctx), vol, 1e-10 * std::max(1.0, vol));
    }
}

TEST(ImpliedVol, IntrinsicGivesZero) {
    const OptionSpec opt{1.0, 1.0, OptionKind::Call};
    EXPECT_EQ(implied_vol(0.1 * 0.99, opt, {1.1, 0.99}), 0.0);
}

TEST(ImpliedVol, OutOfBoundsThrows) {
    const OptionSpec call{1.0, 1.0, OptionKind::Call};
    EXPECT_THROW(implied_vol(1.2, call, {1.1, 1.0}), PriceOutOfBounds);
    EXPECT_THROW(implied_vol(0.05, call, {1.1, 1.0}), PriceOutOfBounds);
    try {
        implied_vol(0.05, call, {1.1, 1.0});
    } catch (const PriceOutOfBounds& e) {
        EXPECT_NEAR(e.violated_bound(), 0.1, 1e-15);
    }
}
