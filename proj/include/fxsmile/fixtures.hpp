#pragma once

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "fxsmile/builtin_fixtures.hpp"
#include "fxsmile/errors.hpp"
#include "fxsmile/market.hpp"

namespace fxsmile {

namespace detail {

inline std::size_t line_of(const std::string& text, std::size_t byte) {
    byte = std::min(byte, text.size());
    return 1 + static_cast<std::size_t>(std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(byte), '\n'));
}

inline const nlohmann::json& field(const nlohmann::json& obj, const std::string& key, const std::string& path) {
    if (!obj.is_object() || !obj.contains(key)) throw ParseError("missing field '" + path + key + "'");
    return obj.at(key);
}

inline double number(const nlohmann::json& obj, const std::string& key, const std::string& path) {
    const auto& v = field(obj, key, path);
    if (!v.is_number()) throw ParseError("field '" + path + key + "': expected a number");
    return v.get<double>();
}

inline std::string text(const nlohmann::json& obj, const std::string& key, const std::string& path) {
    if (!obj.contains(key)) return {};
    const auto& v = obj.at(key);
    if (!v.is_string()) throw ParseError("field '" + path + key + "': expected a string");
    return v.get<std::string>();
}

}  // namespace detail

/// Parses the fixture JSON schema. Vols in the document are percent.
inline SmileQuoteSet parse_fixture(const std::string& document, const std::string& source = "<fixture>") {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(document);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(source + ":" + std::to_string(detail::line_of(document, e.byte)) + ": " + e.what());
    }
    try {
        const std::string name = j.contains("name") ? detail::text(j, "name", "") : source;
        const std::string valuation = detail::text(j, "valuation", "");
        const std::string expiry = detail::text(j, "expiry", "");

        SliceContext ctx;
        if (j.contains("T")) {
            ctx.expiry = detail::number(j, "T", "");
        } else {
            if (valuation.empty() || expiry.empty())
                throw ParseError("field 'T' missing and no valuation/expiry dates to derive it");
            ctx.expiry = act365(valuation, expiry);
        }
        ctx.forward = detail::number(j, "forward", "");
        ctx.spot = detail::number(j, "spot", "");
        ctx.domestic_discount = detail::number(j, "discountDomestic", "");
        ctx.foreign_discount = detail::number(j, "discountForeign", "");

        const auto& c = detail::field(j, "convention", "");
        const std::string measure = detail::text(c, "measure", "convention.");
        if (measure == "spot") ctx.convention.measure = DeltaMeasure::Spot;
        else if (measure == "forward") ctx.convention.measure = DeltaMeasure::Forward;
        else throw ParseError("field 'convention.measure': expected \"spot\" or \"forward\"");
        const auto& prem = detail::field(c, "premium", "convention.");
        if (!prem.is_boolean()) throw ParseError("field 'convention.premium': expected a boolean");
        ctx.convention.premium_adjusted = prem.get<bool>();
        const std::string atm = c.contains("atm") ? detail::text(c, "atm", "convention.") : "forward";
        if (atm == "forward") ctx.convention.atm = AtmKind::ForwardAtm;
        else if (atm == "dns") ctx.convention.atm = AtmKind::DeltaNeutralStraddle;
        else throw ParseError("field 'convention.atm': expected \"forward\" or \"dns\"");

        const auto& arr = detail::field(j, "pillars", "");
        if (!arr.is_array()) throw ParseError("field 'pillars': expected an array");
        std::vector<PillarQuote> pillars;
        for (std::size_t i = 0; i < arr.size(); ++i) {
            const std::string path = "pillars[" + std::to_string(i) + "].";
            const auto& p = arr[i];
            const std::string kind = detail::text(p, "kind", path);
            const double vol = detail::number(p, "vol", path) / 100.0;
            if (kind == "atm") pillars.push_back(PillarQuote::atm(vol));
            else if (kind == "put") pillars.push_back(PillarQuote::put(detail::number(p, "delta", path), vol));
            else if (kind == "call") pillars.push_back(PillarQuote::call(detail::number(p, "delta", path), vol));
            else throw ParseError("field '" + path + "kind': expected \"atm\", \"put\" or \"call\"");
        }
        return {name, valuation, expiry, ctx, std::move(pillars)};
    } catch (const ParseError& e) {
        throw ParseError(source + ": " + e.what());
    } catch (const DomainError& e) {
        throw ParseError(source + ": " + e.what());
    }
}

inline std::vector<std::string> builtin_fixture_names() {
    std::vector<std::string> out;
    for (const auto& [name, _] : builtin::fixtures) out.emplace_back(name);
    return out;
}

/// Resolves a fixture by path, then by name in $FXSMILE_FIXTURE_DIR, then among the built-ins.
/// "<pair>-<tenor>" with a "-dense" sibling loads the ATM/25D/10D subset of the dense quotes.
inline SmileQuoteSet load_fixture(const std::string& name_or_path) {
    namespace fs = std::filesystem;
    auto read = [](const fs::path& p) {
        std::ifstream in(p);
        std::stringstream ss;
        ss << in.rdbuf();
        return parse_fixture(ss.str(), p.string());
    };
    if (fs::is_regular_file(name_or_path)) return read(name_or_path);
    if (const char* dir = std::getenv("FXSMILE_FIXTURE_DIR")) {
        const fs::path p = fs::path(dir) / (name_or_path + ".json");
        if (fs::is_regular_file(p)) return read(p);
    }
    for (const auto& [name, doc] : builtin::fixtures) {
        if (name == name_or_path) return parse_fixture(std::string(doc), std::string(name));
    }
    for (const auto& [name, doc] : builtin::fixtures) {
        if (name == name_or_path + "-dense") {
            const auto dense = parse_fixture(std::string(doc), std::string(name));
            const auto std5 = dense.standard_pillars();
            return {name_or_path, std5.valuation_date(), std5.expiry_date(), std5.context(), std5.quotes()};
        }
    }
    throw Error("unknown fixture '" + name_or_path + "'");
}

}  // namespace fxsmile
