#pragma once

#include <algorithm>
#include <cmath>
#include <memory>
#include <numeric>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "fxsmile/cubic_spline.hpp"
#include "fxsmile/errors.hpp"
#include "fxsmile/market.hpp"
#include "fxsmile/normal.hpp"
#include "fxsmile/smile_section.hpp"
#include "fxsmile/solvers.hpp"

namespace fxsmile {

enum class DeltaKind {
    ReducedAtm,       // N(ln(F/K) / (sigma_ATM sqrt T)), no dependence on the looked-up vol
    BarForward,       // N(ln(F/K) / (sigma sqrt T))
    ForwardNoPremium  // N(d1), the forward call delta
};

enum class DeltaTransform {
    Identity,  // the curve is the vol itself
    ExpLog     // the curve is ln(vol)
};

/// The delta coordinate against which vols are interpolated. Every pillar, put or call,
/// is placed on the call side so the axis is monotone in strike.
struct DeltaAxis {
    DeltaKind kind;
    double forward;
    double expiry;
    double atm_vol;

    double delta(double strike, double vol) const {
        const double sqrt_t = std::sqrt(expiry);
        const double lm = std::log(forward / strike);
        switch (kind) {
            case DeltaKind::ReducedAtm: return norm_cdf(lm / (atm_vol * sqrt_t));
            case DeltaKind::BarForward: return norm_cdf(lm / (vol * sqrt_t));
            case DeltaKind::ForwardNoPremium: return norm_cdf(lm / (vol * sqrt_t) + 0.5 * vol * sqrt_t);
        }
        return 0.5;
    }

    double d_delta_d_vol(double strike, double vol) const {
        const double sqrt_t = std::sqrt(expiry);
        const double lm = std::log(forward / strike);
        switch (kind) {
            case DeltaKind::ReducedAtm: return 0.0;
            case DeltaKind::BarForward: {
                const double x = lm / (vol * sqrt_t);
                return -norm_pdf(x) * x / vol;
            }
            case DeltaKind::ForwardNoPremium: {
                const double sd = vol * sqrt_t;
                const double d1 = lm / sd + 0.5 * sd;
                return -norm_pdf(d1) * (d1 - sd) / vol;
            }
        }
        return 0.0;
    }
};

inline DeltaAxis make_delta_axis(DeltaKind kind, const SmileQuoteSet& quotes) {
    return {kind, quotes.forward(), quotes.expiry(), quotes.atm_vol()};
}

/// Pillar coordinates on the axis, in strike order.
inline std::vector<double> pillar_deltas(const DeltaAxis& axis, const SmileQuoteSet& quotes) {
    std::vector<double> out;
    for (const auto& p : quotes.pillars()) out.push_back(axis.delta(p.strike, p.quote.vol));
    return out;
}

/// Polynomial in (delta - 1/2), optionally exponentiated.
class DeltaPolynomial {
public:
    DeltaPolynomial(DeltaKind kind, DeltaTransform transform, std::vector<double> coefficients)
        : kind_(kind), transform_(transform), c_(std::move(coefficients)) {}

    double value(double delta) const {
        const double p = poly(delta);
        return transform_ == DeltaTransform::ExpLog ? std::exp(p) : p;
    }
    double derivative(double delta) const {
        const double x = delta - 0.5;
        double dp = 0.0;
        for (std::size_t i = c_.size() - 1; i >= 1; --i) dp = dp * x + static_cast<double>(i) * c_[i];
        return transform_ == DeltaTransform::ExpLog ? std::exp(poly(delta)) * dp : dp;
    }

    DeltaKind kind() const { return kind_; }
    DeltaTransform transform() const { return transform_; }
    int degree() const { return static_cast<int>(c_.size()) - 1; }
    const std::vector<double>& coefficients() const { return c_; }

private:
    double poly(double delta) const {
        const double x = delta - 0.5;
        double p = 0.0;
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) p = p * x + *it;
        return p;
    }

    DeltaKind kind_;
    DeltaTransform transform_;
    std::vector<double> c_;
};

/// Exact interpolation of degree+1 pillars by a polynomial in delta.
inline DeltaPolynomial fit_delta_polynomial(const SmileQuoteSet& quotes, DeltaKind kind, DeltaTransform transform,
                                            int degree) {
    const auto n = static_cast<std::size_t>(degree + 1);
    if (degree < 1 || quotes.size() != n)
        throw DomainError("delta polynomial of degree " + std::to_string(degree) + " needs " + std::to_string(n) +
                          " pillars, got " + std::to_string(quotes.size()));
    const auto axis = make_delta_axis(kind, quotes);
    const auto x = pillar_deltas(axis, quotes);
    auto sorted = x;
    std::sort(sorted.begin(), sorted.end());
    for (std::size_t i = 1; i < n; ++i)
        if (sorted[i] - sorted[i - 1] <= 1e-14) throw SingularSystem("two pillars share the same delta");

    Eigen::MatrixXd v(n, n);
    Eigen::VectorXd rhs(n);
    for (std::size_t i = 0; i < n; ++i) {
        double pw = 1.0;
        for (std::size_t j = 0; j < n; ++j, pw *= x[i] - 0.5) v(i, j) = pw;
        const double vol = quotes.pillars()[i].quote.vol;
        rhs(i) = transform == DeltaTransform::ExpLog ? std::log(vol) : vol;
    }
    const Eigen::FullPivLU<Eigen::MatrixXd> lu(v);
    if (!lu.isInvertible()) throw SingularSystem("Vandermonde system is singular");
    const Eigen::VectorXd c = lu.solve(rhs);
    return {kind, transform, std::vector<double>(c.data(), c.data() + n)};
}

/// Cubic spline of vol against the delta axis.
class DeltaSpline {
public:
    DeltaSpline(std::span<const double> deltas, std::span<const double> vols, SplineBoundary boundary,
                SplineExtrapolation extrapolation) {
        std::vector<std::size_t> idx(deltas.size());
        std::iota(idx.begin(), idx.end(), 0);
        std::sort(idx.begin(), idx.end(), [&](auto a, auto b) { return deltas[a] < deltas[b]; });
        std::vector<double> x, y;
        for (auto i : idx) {
            x.push_back(deltas[i]);
            y.push_back(vols[i]);
        }
        spline_ = CubicSpline(x, y, boundary, extrapolation);
    }
    double value(double delta) const { return spline_(delta); }
    double derivative(double delta) const { return spline_.derivative(delta); }
    const CubicSpline& spline() const { return spline_; }

private:
    CubicSpline spline_;
};

struct StrikeSolverMethod {
    enum class Kind { FixedPoint, Newton, Brent };
    Kind kind = Kind::Newton;
    int max_iter = 100;
    double tol = 1e-10;

    static StrikeSolverMethod fixed_point(int max_iter = 100) { return {Kind::FixedPoint, max_iter, 1e-10}; }
    static StrikeSolverMethod newton(double tol = 1e-15, int max_iter = 100) { return {Kind::Newton, max_iter, tol}; }
    static StrikeSolverMethod brent(double tol = 1e-16) { return {Kind::Brent, 300, tol}; }
};

struct FixedPointStep {
    double delta;  // delta evaluated at the previous vol
    double vol;    // curve value at that delta
};

struct LookupResult {
    double vol;
    bool converged;
    int iterations;
    double residual;  // |f(delta(K, vol)) - vol|
    std::vector<FixedPointStep> trace;
};

class FixedPointDiverged : public Error {
public:
    explicit FixedPointDiverged(LookupResult report)
        : Error("fixed-point vol lookup did not converge in " + std::to_string(report.iterations) + " iterations"),
          report_(std::move(report)) {}
    const LookupResult& report() const { return report_; }

private:
    LookupResult report_;
};

/// Two accumulation points of a 2-cycle: means of the last 16 trace deltas split by parity, sorted.
inline std::pair<double, double> cycle_points(const std::vector<FixedPointStep>& trace) {
    const std::size_t n = std::min<std::size_t>(16, trace.size() - trace.size() % 2);
    double even = 0.0, odd = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const auto& s = trace[trace.size() - n + i];
        (i % 2 == 0 ? even : odd) += s.delta / static_cast<double>(n / 2);
    }
    return {std::min(even, odd), std::max(even, odd)};
}

/// Solves sigma = f(delta(K, sigma)) for the vol at `strike`.
/// Newton and Brent return a report with converged=false on failure; the fixed-point
/// iteration throws FixedPointDiverged carrying its trace.
template <class Curve>
LookupResult lookup_vol(const Curve& curve, const DeltaAxis& axis, double strike, StrikeSolverMethod method) {
    if (!(strike > 0.0)) throw DomainError("strike must be positive");
    auto residual_at = [&](double vol) { return curve.value(axis.delta(strike, vol)) - vol; };

    if (axis.kind == DeltaKind::ReducedAtm && method.kind != StrikeSolverMethod::Kind::FixedPoint) {
        const double vol = curve.value(axis.delta(strike, axis.atm_vol));
        return {vol, true, 1, std::abs(residual_at(vol)), {}};
    }

    switch (method.kind) {
        case StrikeSolverMethod::Kind::FixedPoint: {
            LookupResult r{axis.atm_vol, false, 0, 0.0, {}};
            double vol = axis.atm_vol;
            for (int i = 1; i <= method.max_iter; ++i) {
                const double d = axis.delta(strike, vol);
                const double next = curve.value(d);
                r.trace.push_back({d, next});
                r.iterations = i;
                const bool done = std::abs(next - vol) < method.tol;
                vol = next;
                if (done) {
                    r.converged = true;
                    break;
                }
            }
            r.vol = vol;
            r.residual = std::abs(residual_at(vol));
            if (!r.converged) throw FixedPointDiverged(std::move(r));
            return r;
        }
        case StrikeSolverMethod::Kind::Newton: {
            double vol = axis.atm_vol;
            for (int i = 1; i <= method.max_iter; ++i) {
                const double d = axis.delta(strike, vol);
                const double g = curve.value(d) - vol;
                const double dg = curve.derivative(d) * axis.d_delta_d_vol(strike, vol) - 1.0;
                double step = g / dg;
                if (!std::isfinite(step)) break;
                double next = vol - step;
                if (next <= 0.0) next = 0.5 * vol;
                const double change = std::abs(next - vol);
                vol = next;
                if (change <= method.tol * vol) {
                    // one extra step polishes to the last ulp
                    const double d2 = axis.delta(strike, vol);
                    const double dg2 = curve.derivative(d2) * axis.d_delta_d_vol(strike, vol) - 1.0;
                    const double polished = vol - (curve.value(d2) - vol) / dg2;
                    if (std::isfinite(polished) && polished > 0.0 &&
                        std::abs(residual_at(polished)) <= std::abs(residual_at(vol)))
                        vol = polished;
                    return {vol, true, i, std::abs(residual_at(vol)), {}};
                }
            }
            return {vol, false, method.max_iter, std::abs(residual_at(vol)), {}};
        }
        case StrikeSolverMethod::Kind::Brent: {
            const double lo = 1e-6;
            const double hi = 5.0 * axis.atm_vol + 1.0;
            const auto root = brent_root(residual_at, lo, hi, method.tol, method.max_iter);
            return {root.root, true, root.iterations, std::abs(residual_at(root.root)), {}};
        }
    }
    return {axis.atm_vol, false, 0, 0.0, {}};
}

/// A smile defined implicitly by sigma(K) = f(delta(K, sigma(K))).
/// Vols are looked up with Newton, falling back to Brent.
template <class Curve>
class DeltaSmile final : public SmileSection {
public:
    DeltaSmile(Curve curve, DeltaAxis axis, std::string name, std::vector<double> nodes = {})
        : SmileSection(axis.forward, axis.expiry, axis.atm_vol * std::sqrt(axis.expiry)),
          curve_(std::move(curve)), axis_(axis), name_(std::move(name)), nodes_(std::move(nodes)) {}

    double vol_for_strike(double strike) const {
        if (axis_.kind == DeltaKind::ReducedAtm) return curve_.value(axis_.delta(strike, axis_.atm_vol));
        auto r = lookup_vol(curve_, axis_, strike, StrikeSolverMethod::newton());
        if (r.converged && r.vol > 0.0) return r.vol;
        return lookup_vol(curve_, axis_, strike, StrikeSolverMethod::brent()).vol;
    }

    double total_variance(double y) const override {
        // a polynomial that dips below zero yields negative variance rather than a masked square
        const double v = vol_for_strike(forward() * std::exp(y));
        return v * std::abs(v) * expiry();
    }

    /// Five-point differences with step halving until g settles to 1e-9. If round-off sets in
    /// first, the estimate that agreed best with its predecessor is kept. The vol is only known
    /// through the implicit lookup, so there is nothing analytic to use.
    VarianceDerivatives variance_derivatives(double y) const override {
        auto g_of = [y](const VarianceDerivatives& d) {
            return 1.0 - y / d.w * d.dw + 0.25 * (-0.25 - 1.0 / d.w + y * y / (d.w * d.w)) * d.dw * d.dw + 0.5 * d.d2w;
        };
        // start coarse: smooth smiles settle in a step or two, sharp ones walk down
        // and never let the stencil reach across a node, where a spline has a kink in w''
        double h = 16.0 * fd_step();
        for (double k : nodes_) h = std::min(h, std::max(fd_step(), 0.4 * std::abs(y - std::log(k / forward()))));
        auto prev = finite_difference_derivatives(y, h);
        if (!(prev.w > 0.0)) return finite_difference_derivatives(y, fd_step());
        auto best = prev;
        double best_gap = INFINITY, g_prev = g_of(prev);
        for (int i = 0; i < 10; ++i) {
            h *= 0.5;
            const auto cur = finite_difference_derivatives(y, h);
            const double gc = g_of(cur);
            const double gap = std::abs(gc - g_prev);
            if (gap < best_gap) {
                best_gap = gap;
                best = cur;
                if (gap <= 1e-9 * std::max(1.0, std::abs(gc))) break;
            } else if (gap > 2.0 * best_gap) {
                break;
            }
            g_prev = gc;
        }
        return best;
    }

    std::vector<double> node_strikes() const override { return nodes_; }
    std::string name() const override { return name_; }
    const Curve& curve() const { return curve_; }
    const DeltaAxis& axis() const { return axis_; }

private:
    Curve curve_;
    DeltaAxis axis_;
    std::string name_;
    std::vector<double> nodes_;
};

using DeltaPolynomialSmile = DeltaSmile<DeltaPolynomial>;
using DeltaSplineSmile = DeltaSmile<DeltaSpline>;

inline std::string to_string(DeltaKind k) {
    switch (k) {
        case DeltaKind::ReducedAtm: return "reduced";
        case DeltaKind::BarForward: return "bar";
        case DeltaKind::ForwardNoPremium: return "forward";
    }
    return "?";
}

inline std::shared_ptr<DeltaPolynomialSmile> make_delta_polynomial_smile(const SmileQuoteSet& quotes, DeltaKind kind,
                                                                         DeltaTransform transform, int degree = 4) {
    auto poly = fit_delta_polynomial(quotes, kind, transform, degree);
    const std::string name = std::string(transform == DeltaTransform::ExpLog ? "exp-" : "") + "poly-delta-" + to_string(kind);
    return std::make_shared<DeltaPolynomialSmile>(std::move(poly), make_delta_axis(kind, quotes), name);
}

}  // namespace fxsmile
