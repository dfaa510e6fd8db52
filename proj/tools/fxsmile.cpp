#include <cstdlib>
#include <exception>
#include <filesystem>
#include <fstream>
#include <future>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "fxsmile/fxsmile.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace fxsmile;

namespace {

constexpr int kUsage = 1;
constexpr int kFailure = 2;

json params_json(const SmileSection& s) {
    if (auto p = dynamic_cast<const SviSmile*>(&s)) {
        const auto& v = p->params();
        return {{"a", v.a}, {"b", v.b}, {"rho", v.rho}, {"m", v.m}, {"s", v.s}};
    }
    if (auto p = dynamic_cast<const SabrSmile*>(&s)) {
        const auto& v = p->params();
        return {{"alpha", v.alpha}, {"beta", 1.0}, {"rho", v.rho}, {"nu", v.nu}};
    }
    if (auto p = dynamic_cast<const XssviSmile*>(&s)) {
        const auto& v = p->params();
        return {{"theta", v.theta}, {"rho", v.rho}, {"phi", v.phi}};
    }
    if (auto p = dynamic_cast<const DeltaPolynomialSmile*>(&s)) {
        const auto& c = p->curve();
        return {{"deltaKind", to_string(c.kind())},
                {"transform", c.transform() == DeltaTransform::ExpLog ? "exp" : "identity"},
                {"coefficients", c.coefficients()}};
    }
    return json::object();
}

void write_file(const fs::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write " + path.string());
    out << text;
}

struct Options {
    std::string model = "svi";
    std::string fixture;
    std::string axis = "logm-var";
    std::string boundary = "natural";
    std::string extrap = "linear";
    std::string delta_kind = "bar";
    std::string transform = "exp";
    int degree = 4;
};

ModelOptions model_options(const Options& o) {
    ModelOptions m;
    m.delta_kind = parse_delta_kind(o.delta_kind);
    m.transform = parse_transform(o.transform);
    m.degree = o.degree;
    m.axis = parse_axis(o.axis);
    m.boundary = parse_boundary(o.boundary);
    m.extrapolation = parse_extrapolation(o.extrap);
    return m;
}

void add_model_flags(CLI::App* cmd, Options& o) {
    cmd->add_option("--model", o.model, "svi | svi-a0 | sabr | xssvi | poly-delta | spline")
        ->check(CLI::IsMember(model_names()));
    cmd->add_option("--fixture", o.fixture, "built-in fixture name or JSON path")->required();
    cmd->add_option("--axis", o.axis, "spline axis: logm-var | delta-vol");
    cmd->add_option("--boundary", o.boundary, "spline boundary: natural | clamped");
    cmd->add_option("--extrap", o.extrap, "spline extrapolation: flat | linear");
    cmd->add_option("--delta-kind", o.delta_kind, "polynomial delta: reduced | bar | forward");
    cmd->add_option("--transform", o.transform, "polynomial transform: identity | exp");
    cmd->add_option("--degree", o.degree, "polynomial degree");
}

int run_scenarios(std::vector<std::string> names, const std::string& out_dir, bool parallel) {
    if (names.size() == 1 && names.front() == "all") names = scenario_names();
    for (const auto& n : names) {
        if (std::find(scenario_names().begin(), scenario_names().end(), n) == scenario_names().end()) {
            std::cerr << "unknown scenario '" << n << "'\n";
            return kUsage;
        }
    }
    fs::create_directories(out_dir);
    std::vector<std::future<ScenarioOutput>> jobs;
    for (const auto& n : names)
        jobs.push_back(std::async(parallel ? std::launch::async : std::launch::deferred, [n] { return run_scenario(n); }));
    int status = 0;
    for (std::size_t i = 0; i < jobs.size(); ++i) {
        try {
            const auto out = jobs[i].get();
            for (const auto& [panel, csv] : out.panels)
                write_file(fs::path(out_dir) / (out.name + "-" + panel + ".csv"), csv.str());
            write_file(fs::path(out_dir) / (out.name + ".json"), out.summary.dump(2) + "\n");
            std::cout << out.summary.dump() << "\n";
        } catch (const std::exception& e) {
            std::cerr << names[i] << ": " << e.what() << "\n";
            status = kFailure;
        }
    }
    return status;
}

json calibrate(const Options& o) {
    const auto quotes = load_fixture(o.fixture);
    const auto smile = make_smile(o.model, quotes, model_options(o));
    const auto fit = pillar_fit(*smile, quotes);
    json out{{"model", smile->name()},
             {"fixture", quotes.name()},
             {"params", params_json(*smile)},
             {"pillarResiduals", fit.residuals},
             {"rmse", fit.rmse},
             {"maxAbsResidual", fit.max_abs}};
    if (o.model == "spline" && parse_axis(o.axis) == SplineAxis::LogMoneynessVariance) {
        const double sd = quotes.atm_stddev();
        json iv = json::array();
        for (const auto& [a, b] : negative_variance_intervals(*smile, -5.0 * sd, 5.0 * sd)) iv.push_back({a, b});
        out["negativeVarianceIntervals"] = iv;
    }
    const auto scan = scan_report(*smile);
    out["minG"] = std::isfinite(scan.g.min_value) ? json(scan.g.min_value) : json(nullptr);
    out["modeCount"] = scan.mode_count();
    return out;
}

json price(const Options& o, const std::string& product, double strike, const std::string& kind_name,
           double notional, const std::string& method) {
    const auto quotes = load_fixture(o.fixture);
    const auto smile = make_smile(o.model, quotes, model_options(o));
    const auto ctx = PricingContext::from(quotes);
    const auto kind = kind_name == "call" ? OptionKind::Call : OptionKind::Put;
    auto quad = [](const QuadratureInfo& q) {
        return json{{"nodes", q.nodes}, {"lower", q.lower}, {"upper", q.upper}, {"errorEstimate", q.error_estimate}};
    };
    json out{{"product", product}, {"model", smile->name()}, {"fixture", quotes.name()}};
    if (product == "varswap") {
        const auto v = variance_swap_replication(*smile, ctx);
        out["price"] = v.price_vol;
        out["fairVol"] = v.fair_vol;
        out["quadrature"] = quad(v.quadrature);
        out["reportedRange"] = "5 standard deviations";
        return out;
    }
    if (!(strike > 0.0)) throw DomainError("--strike is required for " + product);
    const auto r = product == "digital"
                       ? digital_price(*smile, ctx, strike, kind, notional,
                                       method == "smile" ? DigitalMethod::SmileConsistent
                                                         : DigitalMethod::BlackAtSmileVol)
                       : auto_quanto_price(*smile, ctx, strike, kind, notional);
    out["strike"] = strike;
    out["kind"] = kind_name;
    out["notional"] = notional;
    out["price"] = r.price;
    out["quadrature"] = quad(r.quadrature);
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"FX smile representations: calibration, arbitrage diagnostics and replication pricing"};
    app.require_subcommand(1);

    std::vector<std::string> scenarios;
    std::string out_dir = "out";
    bool parallel = false;
    auto* run = app.add_subcommand("run-scenario", "run named reproductions ('all' runs every one)");
    run->add_option("name", scenarios, "scenario name(s)")->required();
    run->add_option("--out", out_dir, "output directory");
    run->add_flag("--parallel", parallel, "run scenarios concurrently");

    Options cal_opt;
    auto* cal = app.add_subcommand("calibrate", "fit a model and print parameters and residuals");
    add_model_flags(cal, cal_opt);

    Options price_opt;
    std::string product, kind = "put", method = "black";
    double strike = 0.0, notional = 1.0;
    auto* pr = app.add_subcommand("price", "price a product by replication");
    add_model_flags(pr, price_opt);
    pr->add_option("--product", product, "digital | autoquanto | varswap")
        ->required()
        ->check(CLI::IsMember({"digital", "autoquanto", "varswap"}));
    pr->add_option("--strike", strike, "strike");
    pr->add_option("--kind", kind, "call | put")->check(CLI::IsMember({"call", "put"}));
    pr->add_option("--notional", notional, "notional");
    pr->add_option("--digital-method", method, "black | smile")->check(CLI::IsMember({"black", "smile"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kUsage;
    }

    try {
        if (*run) return run_scenarios(scenarios, out_dir, parallel);
        if (*cal) std::cout << calibrate(cal_opt).dump(2) << "\n";
        if (*pr) std::cout << price(price_opt, product, strike, kind, notional, method).dump(2) << "\n";
    } catch (const DomainError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kFailure;
    }
    return 0;
}
