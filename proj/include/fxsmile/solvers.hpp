#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>
#include <vector>

#include <Eigen/Dense>

#include "fxsmile/errors.hpp"

namespace fxsmile {

struct RootResult {
    double root;
    double residual;
    int iterations;
};

/// Brent's method (inverse quadratic interpolation, secant and bisection).
template <class F>
RootResult brent_root(F&& f, double a, double b, double xtol = 1e-15, int max_iter = 200) {
    double fa = f(a);
    double fb = f(b);
    if (fa == 0.0) return {a, 0.0, 0};
    if (fb == 0.0) return {b, 0.0, 0};
    if ((fa > 0.0) == (fb > 0.0)) throw NoBracket("brent_root: root not bracketed", a, b);

    double c = a, fc = fa, d = b - a, e = d;
    for (int iter = 1; iter <= max_iter; ++iter) {
        if ((fb > 0.0) == (fc > 0.0)) {
            c = a;
            fc = fa;
            d = e = b - a;
        }
        if (std::abs(fc) < std::abs(fb)) {
            a = b; b = c; c = a;
            fa = fb; fb = fc; fc = fa;
        }
        const double tol = 2.0 * std::numeric_limits<double>::epsilon() * std::abs(b) + 0.5 * xtol;
        const double m = 0.5 * (c - b);
        if (std::abs(m) <= tol || fb == 0.0) return {b, fb, iter};

        if (std::abs(e) >= tol && std::abs(fa) > std::abs(fb)) {
            double p, q, r;
            const double s = fb / fa;
            if (a == c) {
                p = 2.0 * m * s;
                q = 1.0 - s;
            } else {
                q = fa / fc;
                r = fb / fc;
                p = s * (2.0 * m * q * (q - r) - (b - a) * (r - 1.0));
                q = (q - 1.0) * (r - 1.0) * (s - 1.0);
            }
            if (p > 0.0) q = -q; else p = -p;
            if (2.0 * p < std::min(3.0 * m * q - std::abs(tol * q), std::abs(e * q))) {
                e = d;
                d = p / q;
            } else {
                d = m;
                e = m;
            }
        } else {
            d = m;
            e = m;
        }
        a = b;
        fa = fb;
        b += std::abs(d) > tol ? d : (m > 0.0 ? tol : -tol);
        fb = f(b);
    }
    return {b, fb, max_iter};
}

struct MinimizeResult {
    std::vector<double> x;
    double value;
    int iterations;
    bool converged;
};

/// Nelder-Mead simplex minimization with the standard coefficients.
template <class F>
MinimizeResult nelder_mead(F&& f, std::vector<double> x0, std::vector<double> step,
                           double ftol = 1e-30, double xtol = 1e-13, int max_iter = 5000) {
    const std::size_t n = x0.size();
    std::vector<std::vector<double>> pts(n + 1, x0);
    std::vector<double> vals(n + 1);
    for (std::size_t i = 0; i < n; ++i) pts[i + 1][i] += step[i];
    for (std::size_t i = 0; i <= n; ++i) vals[i] = f(pts[i]);

    std::vector<std::size_t> order(n + 1);
    int iter = 0;
    bool converged = false;
    for (; iter < max_iter; ++iter) {
        std::iota(order.begin(), order.end(), 0);
        std::sort(order.begin(), order.end(), [&](auto i, auto j) { return vals[i] < vals[j]; });
        const auto best = order.front();
        const auto worst = order.back();
        const auto second = order[n - 1];

        double spread = 0.0;
        for (std::size_t i = 0; i <= n; ++i)
            for (std::size_t k = 0; k < n; ++k)
                spread = std::max(spread, std::abs(pts[i][k] - pts[best][k]));
        if (std::abs(vals[worst] - vals[best]) <= ftol || spread <= xtol) {
            converged = true;
            break;
        }

        std::vector<double> centroid(n, 0.0);
        for (std::size_t i = 0; i <= n; ++i) {
            if (i == worst) continue;
            for (std::size_t k = 0; k < n; ++k) centroid[k] += pts[i][k] / static_cast<double>(n);
        }
        auto along = [&](double t) {
            std::vector<double> p(n);
            for (std::size_t k = 0; k < n; ++k) p[k] = centroid[k] + t * (pts[worst][k] - centroid[k]);
            return p;
        };

        auto reflected = along(-1.0);
        const double fr = f(reflected);
        if (fr < vals[best]) {
            auto expanded = along(-2.0);
            const double fe = f(expanded);
            if (fe < fr) {
                pts[worst] = std::move(expanded);
                vals[worst] = fe;
            } else {
                pts[worst] = std::move(reflected);
                vals[worst] = fr;
            }
        } else if (fr < vals[second]) {
            pts[worst] = std::move(reflected);
            vals[worst] = fr;
        } else {
            auto contracted = fr < vals[worst] ? along(-0.5) : along(0.5);
            const double fc = f(contracted);
            if (fc < std::min(fr, vals[worst])) {
                pts[worst] = std::move(contracted);
                vals[worst] = fc;
            } else {
                for (std::size_t i = 0; i <= n; ++i) {
                    if (i == best) continue;
                    for (std::size_t k = 0; k < n; ++k)
                        pts[i][k] = pts[best][k] + 0.5 * (pts[i][k] - pts[best][k]);
                    vals[i] = f(pts[i]);
                }
            }
        }
    }
    const auto best = static_cast<std::size_t>(std::min_element(vals.begin(), vals.end()) - vals.begin());
    return {pts[best], vals[best], iter, converged};
}

struct LeastSquaresResult {
    Eigen::VectorXd x;
    Eigen::VectorXd residuals;
    double cost;  // 0.5 * |r|^2
    int iterations;
};

/// Levenberg-Marquardt with a central-difference Jacobian.
/// `residuals` maps an Eigen::VectorXd of parameters to an Eigen::VectorXd of residuals.
template <class R>
LeastSquaresResult levenberg_marquardt(R&& residuals, Eigen::VectorXd x, int max_iter = 500,
                                       double tol = 1e-15) {
    const Eigen::Index n = x.size();
    Eigen::VectorXd r = residuals(x);
    double cost = 0.5 * r.squaredNorm();
    double lambda = 1e-3;
    int iter = 0;
    bool done = false;
    for (; iter < max_iter && !done; ++iter) {
        Eigen::MatrixXd jac(r.size(), n);
        for (Eigen::Index j = 0; j < n; ++j) {
            const double h = 1e-7 * std::max(1.0, std::abs(x[j]));
            Eigen::VectorXd xp = x, xm = x;
            xp[j] += h;
            xm[j] -= h;
            jac.col(j) = (residuals(xp) - residuals(xm)) / (2.0 * h);
        }
        const Eigen::MatrixXd jtj = jac.transpose() * jac;
        const Eigen::VectorXd grad = jac.transpose() * r;
        if (grad.lpNorm<Eigen::Infinity>() < tol * tol) break;

        bool improved = false;
        for (int attempt = 0; attempt < 30; ++attempt) {
            Eigen::MatrixXd a = jtj;
            a.diagonal() += lambda * (jtj.diagonal().array() + 1e-12).matrix();
            const Eigen::VectorXd dx = a.ldlt().solve(-grad);
            const Eigen::VectorXd xn = x + dx;
            const Eigen::VectorXd rn = residuals(xn);
            const double cn = 0.5 * rn.squaredNorm();
            if (std::isfinite(cn) && cn < cost) {
                const double rel = (cost - cn) / std::max(cost, 1e-300);
                const double step = dx.norm() / (x.norm() + tol);
                x = xn;
                r = rn;
                cost = cn;
                lambda = std::max(lambda / 3.0, 1e-12);
                improved = true;
                done = rel < tol || step < tol;
                break;
            }
            lambda *= 4.0;
        }
        if (!improved) break;
    }
    return {x, r, cost, iter};
}

}  // namespace fxsmile
