#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <map>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "fxsmile/arbitrage.hpp"
#include "fxsmile/delta_smile.hpp"
#include "fxsmile/fixtures.hpp"
#include "fxsmile/models.hpp"
#include "fxsmile/pricing.hpp"
#include "fxsmile/spline_smile.hpp"

namespace fxsmile {

/// Long-format curve table: x_kind, x, series, value.
struct CurveRow {
    std::string x_kind;
    double x;
    std::string series;
    double value;
};

class CurveCsv {
public:
    static constexpr const char* header = "x_kind,x,series,value";

    void add(std::string x_kind, double x, std::string series, double value) {
        rows_.push_back({std::move(x_kind), x, std::move(series), value});
    }
    const std::vector<CurveRow>& rows() const { return rows_; }

    static std::string format(double v) {
        if (!std::isfinite(v)) return "NaN";
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.17g", v);
        return buf;
    }

    std::string str() const {
        std::string out = std::string(header) + "\n";
        for (const auto& r : rows_) out += r.x_kind + "," + format(r.x) + "," + r.series + "," + format(r.value) + "\n";
        return out;
    }

    static CurveCsv parse(const std::string& text) {
        std::istringstream in(text);
        std::string line;
        if (!std::getline(in, line) || line != header) throw ParseError("CSV header must be '" + std::string(header) + "'");
        CurveCsv csv;
        int line_no = 1;
        auto number = [&](const std::string& s) {
            if (s == "NaN") return std::numeric_limits<double>::quiet_NaN();
            std::size_t used = 0;
            double v = 0.0;
            try {
                v = std::stod(s, &used);
            } catch (const std::exception&) {
                used = 0;
            }
            if (used != s.size() || s.empty() || !std::isfinite(v))
                throw ParseError("line " + std::to_string(line_no) + ": bad number '" + s + "'");
            return v;
        };
        while (std::getline(in, line)) {
            ++line_no;
            if (line.empty()) continue;
            std::vector<std::string> f;
            std::size_t start = 0;
            for (std::size_t pos; (pos = line.find(',', start)) != std::string::npos; start = pos + 1)
                f.push_back(line.substr(start, pos - start));
            f.push_back(line.substr(start));
            if (f.size() != 4) throw ParseError("line " + std::to_string(line_no) + ": expected 4 fields");
            csv.add(f[0], number(f[1]), f[2], number(f[3]));
        }
        return csv;
    }

private:
    std::vector<CurveRow> rows_;
};

struct ScenarioOutput {
    std::string name;
    std::vector<std::pair<std::string, CurveCsv>> panels;  // panel name -> table
    nlohmann::json summary;
};

namespace scenario_detail {

using nlohmann::json;

inline json number_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

inline json intervals(const std::vector<Interval>& v) {
    json out = json::array();
    for (const auto& [a, b] : v) out.push_back({a, b});
    return out;
}

inline json smile_summary(const SmileSection& smile, const SmileQuoteSet& quotes, const ScanReport& scan) {
    json s;
    s["minG"] = number_or_null(scan.g.min_value);
    s["negativeIntervals"] = intervals(scan.g.negative_intervals);
    s["negativeDensityIntervals"] = intervals(scan.negative_density_intervals);
    s["negativeVarianceIntervals"] = intervals(scan.negative_variance_intervals);
    s["modeCount"] = scan.mode_count();
    s["modes"] = scan.density.modes;
    s["integratesTo"] = scan.density.integrates_to;
    try {
        const auto fit = pillar_fit(smile, quotes);
        s["pillarResiduals"] = fit.residuals;
        s["rmse"] = fit.rmse;
    } catch (const Error& e) {
        s["pillarResiduals"] = nullptr;
        s["fitError"] = e.what();
    }
    return s;
}

inline void add_market(CurveCsv& csv, const SmileQuoteSet& quotes, const std::string& series = "market") {
    for (const auto& p : quotes.pillars()) csv.add("strike", p.strike, series, 100.0 * p.quote.vol);
}

/// Vol in percent on a strike grid; NaN where the smile has no positive variance.
inline void add_smile(CurveCsv& csv, const SmileSection& smile, double y_lo, double y_hi, int n = 201) {
    for (int i = 0; i < n; ++i) {
        const double y = y_lo + (y_hi - y_lo) * i / (n - 1);
        double v = std::numeric_limits<double>::quiet_NaN();
        try {
            v = 100.0 * smile.vol_at(y);
        } catch (const Error&) {
        }
        csv.add("strike", smile.forward() * std::exp(y), smile.name(), v);
    }
}

/// One fixture, several smiles: smile panel plus g or density panel, summary keyed by series.
/// The first smile is the headline series whose numbers are repeated at top level.
inline ScenarioOutput smiles_scenario(const std::string& name, const SmileQuoteSet& quotes,
                                      const std::vector<SmilePtr>& smiles, bool density_panel, double width = 5.0) {
    ScenarioOutput out{name, {}, {}};
    CurveCsv smile_csv, diag_csv;
    add_market(smile_csv, quotes);
    const double sd = quotes.atm_stddev();
    json series = json::object();
    for (const auto& s : smiles) {
        add_smile(smile_csv, *s, -width * sd, width * sd);
        const auto scan = scan_report(*s, -width * sd, width * sd, 801);
        for (std::size_t i = 0; i < scan.g.y.size(); ++i) {
            if (density_panel)
                diag_csv.add("strike", scan.density.strike[i], s->name(), scan.density.p[i]);
            else
                diag_csv.add("log_moneyness", scan.g.y[i], s->name(), scan.g.g[i]);
        }
        series[s->name()] = smile_summary(*s, quotes, scan);
    }
    out.panels.emplace_back("smile", std::move(smile_csv));
    out.panels.emplace_back(density_panel ? "density" : "g", std::move(diag_csv));
    out.summary = series[smiles.front()->name()];
    out.summary["scenario"] = name;
    out.summary["fixture"] = quotes.name();
    out.summary["headline"] = smiles.front()->name();
    out.summary["series"] = series;
    return out;
}

}  // namespace scenario_detail

/// One cell of the EUR/USD pricing table.
struct Table8Cell {
    std::string maturity;  // 1m, 1y
    std::string product;   // digital-put, autoquanto-call, autoquanto-put, varswap
    std::string strike_label;
    double strike;
    std::string model;
    double value;  // per 10,000 notional, or percent vol for the variance swap
};

inline const std::vector<std::string>& table8_models() {
    static const std::vector<std::string> m{"poly-delta", "svi", "xssvi", "sabr"};
    return m;
}

inline std::vector<Table8Cell> table8() {
    std::vector<Table8Cell> cells;
    const double notional = 1e4;
    for (const std::string maturity : {"1m", "1y"}) {
        const auto quotes = load_fixture("eurusd-" + maturity);
        const auto dense = load_fixture("eurusd-" + maturity + "-dense");
        const auto ctx = PricingContext::from(quotes);
        const std::vector<std::pair<std::string, double>> puts{
            {"K10P", quotes.strike_of(PillarKind::DeltaPut, 0.10)}, {"K1P", dense.strike_of(PillarKind::DeltaPut, 0.01)}};
        const std::vector<std::pair<std::string, double>> calls{
            {"K10C", quotes.strike_of(PillarKind::DeltaCall, 0.10)}, {"K1C", dense.strike_of(PillarKind::DeltaCall, 0.01)}};
        for (const auto& model : table8_models()) {
            const auto smile = make_smile(model, quotes);
            for (const auto& [label, k] : puts)
                cells.push_back({maturity, "digital-put", label, k, model,
                                 digital_price(*smile, ctx, k, OptionKind::Put, notional).price});
            for (const auto& [label, k] : calls)
                cells.push_back({maturity, "autoquanto-call", label, k, model,
                                 auto_quanto_price(*smile, ctx, k, OptionKind::Call, notional).price});
            for (const auto& [label, k] : puts)
                cells.push_back({maturity, "autoquanto-put", label, k, model,
                                 auto_quanto_price(*smile, ctx, k, OptionKind::Put, notional).price});
            cells.push_back({maturity, "varswap", "0", 0.0, model, variance_swap_replication(*smile, ctx).price_vol});
        }
    }
    return cells;
}

inline const std::vector<std::string>& scenario_names() {
    static const std::vector<std::string> names{
        "fig1-audnzd-svi-g",         "fig2-audnzd-spline-density", "fig3-eurczk-poly-density",
        "fig4-usdaed-fixedpoint",    "fig5-usdaed-g",              "fig6-eurtry-density",
        "fig7-manufactured-density", "fig8a-eurusd-1m-wings",      "fig8b-eurusd-1y-wings",
        "table8-prices",             "varswap-model-independent"};
    return names;
}

inline ScenarioOutput run_scenario(const std::string& name) {
    using namespace scenario_detail;
    using SB = SplineBoundary;
    using SE = SplineExtrapolation;

    if (name == "fig1-audnzd-svi-g") {
        const auto q = load_fixture("audnzd-7d");
        return smiles_scenario(name, q, {make_svi_smile(q, true), make_svi_smile(q, false)}, false);
    }
    if (name == "fig2-audnzd-spline-density") {
        const auto q = load_fixture("audnzd-7d");
        auto logm_cf = std::make_shared<LogMoneynessSplineSmile>(q, SB::ClampedZeroSlope, SE::Flat);
        auto logm_nl = std::make_shared<LogMoneynessSplineSmile>(q, SB::Natural, SE::LinearBoundarySlope);
        auto delta_cf = make_delta_spline_smile(q, SB::ClampedZeroSlope, SE::Flat);
        auto delta_nl = make_delta_spline_smile(q, SB::Natural, SE::LinearBoundarySlope);
        auto out = smiles_scenario(name, q, {logm_cf, logm_nl, delta_cf, delta_nl}, true);
        // jumps of the second derivative of the interpolated quantity, node by node in strike order
        auto jumps = [](const CubicSpline& s, bool reverse) {
            auto j = s.second_derivative_jumps();
            if (reverse) std::reverse(j.begin(), j.end());
            return j;
        };
        out.summary["secondDerivativeJumps"] = {
            {logm_cf->name(), jumps(logm_cf->spline(), false)},
            {logm_nl->name(), jumps(logm_nl->spline(), false)},
            {delta_cf->name(), jumps(delta_cf->curve().spline(), true)},
            {delta_nl->name(), jumps(delta_nl->curve().spline(), true)}};
        return out;
    }
    if (name == "fig3-eurczk-poly-density") {
        const auto q = load_fixture("eurczk-32d");
        return smiles_scenario(
            name, q,
            {make_delta_polynomial_smile(q, DeltaKind::ReducedAtm, DeltaTransform::Identity),
             make_delta_polynomial_smile(q, DeltaKind::ForwardNoPremium, DeltaTransform::Identity)},
            true);
    }
    if (name == "fig4-usdaed-fixedpoint") {
        const auto q = load_fixture("usdaed-9m");
        const auto poly = fit_delta_polynomial(q, DeltaKind::BarForward, DeltaTransform::ExpLog, 4);
        const auto axis = make_delta_axis(DeltaKind::BarForward, q);
        const double strike = 3.7;
        ScenarioOutput out{name, {}, {}};
        LookupResult fp{};
        try {
            fp = lookup_vol(poly, axis, strike, StrikeSolverMethod::fixed_point(100));
        } catch (const FixedPointDiverged& e) {
            fp = e.report();
        }
        const auto nt = lookup_vol(poly, axis, strike, StrikeSolverMethod::newton());
        const auto br = lookup_vol(poly, axis, strike, StrikeSolverMethod::brent());
        CurveCsv conv;
        for (std::size_t i = 0; i < fp.trace.size(); ++i) {
            conv.add("iteration", static_cast<double>(i + 1), "delta", fp.trace[i].delta);
            conv.add("iteration", static_cast<double>(i + 1), "vol", 100.0 * fp.trace[i].vol);
        }
        // smile drawn by each lookup; the fixed point is stopped after 100 iterations
        CurveCsv smile;
        add_market(smile, q);
        const double sd = q.atm_stddev();
        for (int i = 0; i < 201; ++i) {
            const double k = q.forward() * std::exp(-5.0 * sd + 10.0 * sd * i / 200.0);
            double fixed = 0.0;
            try {
                fixed = lookup_vol(poly, axis, k, StrikeSolverMethod::fixed_point(100)).vol;
            } catch (const FixedPointDiverged& e) {
                fixed = e.report().vol;
            }
            smile.add("strike", k, "fixed-point", 100.0 * fixed);
            smile.add("strike", k, "newton", 100.0 * lookup_vol(poly, axis, k, StrikeSolverMethod::newton()).vol);
        }
        out.panels.emplace_back("smile", std::move(smile));
        out.panels.emplace_back("convergence", std::move(conv));
        const auto cycle = cycle_points(fp.trace);
        out.summary = {{"scenario", name},
                       {"fixture", q.name()},
                       {"strike", strike},
                       {"converged", fp.converged},
                       {"iterations", fp.iterations},
                       {"cyclePoints", {cycle.first, cycle.second}},
                       {"newton", {{"vol", nt.vol}, {"converged", nt.converged}, {"residual", nt.residual}}},
                       {"brent", {{"vol", br.vol}, {"converged", br.converged}, {"residual", br.residual}}},
                       {"newtonBrentGap", std::abs(nt.vol - br.vol)}};
        return out;
    }
    if (name == "fig5-usdaed-g") {
        const auto q = load_fixture("usdaed-9m");
        return smiles_scenario(name, q,
                               {make_svi_smile(q, true), make_svi_smile(q, false), make_xssvi_smile(q),
                                make_sabr_smile(q),
                                make_delta_polynomial_smile(q, DeltaKind::BarForward, DeltaTransform::ExpLog)},
                               false);
    }
    if (name == "fig6-eurtry-density") {
        const auto q = load_fixture("eurtry-1y");
        auto out = smiles_scenario(
            name, q,
            {make_delta_polynomial_smile(q, DeltaKind::BarForward, DeltaTransform::ExpLog), make_svi_smile(q, false),
             make_xssvi_smile(q), std::make_shared<LogMoneynessSplineSmile>(q, SB::Natural, SE::LinearBoundarySlope)},
            true);
        return out;
    }
    if (name == "fig7-manufactured-density") {
        const auto q = load_fixture("manufactured-1y");
        return smiles_scenario(
            name, q,
            {make_delta_polynomial_smile(q, DeltaKind::ForwardNoPremium, DeltaTransform::ExpLog),
             make_delta_polynomial_smile(q, DeltaKind::BarForward, DeltaTransform::ExpLog), make_svi_smile(q, false),
             make_xssvi_smile(q), make_sabr_smile(q)},
            true);
    }
    if (name == "fig8a-eurusd-1m-wings" || name == "fig8b-eurusd-1y-wings") {
        const std::string maturity = name == "fig8a-eurusd-1m-wings" ? "1m" : "1y";
        const auto q = load_fixture("eurusd-" + maturity);
        const auto dense = load_fixture("eurusd-" + maturity + "-dense");
        ScenarioOutput out{name, {}, {}};
        CurveCsv smile;
        add_market(smile, dense, "market-dense");
        add_market(smile, q, "market");
        json series = json::object();
        const double y_lo = 1.2 * dense.pillars().front().log_moneyness;
        const double y_hi = 1.2 * dense.pillars().back().log_moneyness;
        for (const auto& model : table8_models()) {
            const auto s = make_smile(model, q);
            add_smile(smile, *s, y_lo, y_hi);
            series[s->name()] = {{"fitResiduals", pillar_fit(*s, q).residuals},
                                 {"denseResiduals", pillar_fit(*s, dense).residuals},
                                 {"denseRmse", pillar_fit(*s, dense).rmse}};
        }
        out.panels.emplace_back("smile", std::move(smile));
        out.summary = {{"scenario", name}, {"fixture", dense.name()}, {"series", series}};
        return out;
    }
    if (name == "table8-prices") {
        ScenarioOutput out{name, {}, {}};
        CurveCsv csv;
        json prices = json::object();
        for (const auto& c : table8()) {
            csv.add("strike", c.strike, c.maturity + ":" + c.product + ":" + c.strike_label + ":" + c.model, c.value);
            prices[c.maturity][c.product][c.strike_label][c.model] = c.value;
        }
        out.panels.emplace_back("prices", std::move(csv));
        out.summary = {{"scenario", name}, {"notional", 1e4}, {"prices", prices}};
        return out;
    }
    if (name == "varswap-model-independent") {
        ScenarioOutput out{name, {}, {}};
        CurveCsv csv;
        json prices = json::object();
        for (const std::string f : {"eurusd-1m", "eurusd-1y"}) {
            const auto q = load_fixture(f);
            const double sqrt_t = std::sqrt(q.expiry());
            for (const auto& p : q.pillars()) {
                const double sd = p.quote.vol * sqrt_t;
                csv.add("z", p.log_moneyness / sd + 0.5 * sd, f, 100.0 * p.quote.vol);
            }
            const auto mi = variance_swap_model_independent(q);
            const auto lz = variance_swap_model_independent(q, ModelIndependentRule::LinearInZ);
            prices[f] = {{"fairVol", mi.fair_vol}, {"discountedVol", mi.price_vol}, {"linearInZFairVol", lz.fair_vol}};
        }
        out.panels.emplace_back("pillars", std::move(csv));
        out.summary = {{"scenario", name}, {"prices", prices}};
        return out;
    }
    throw DomainError("unknown scenario '" + name + "'");
}

}  // namespace fxsmile
