#pragma once

#include <string>
#include <vector>

#include "fxsmile/delta_smile.hpp"
#include "fxsmile/errors.hpp"
#include "fxsmile/market.hpp"
#include "fxsmile/sabr.hpp"
#include "fxsmile/smile_section.hpp"
#include "fxsmile/spline_smile.hpp"
#include "fxsmile/svi.hpp"
#include "fxsmile/xssvi.hpp"

namespace fxsmile {

/// Choices that only some models read.
struct ModelOptions {
    DeltaKind delta_kind = DeltaKind::BarForward;
    DeltaTransform transform = DeltaTransform::ExpLog;
    int degree = 4;
    SplineAxis axis = SplineAxis::LogMoneynessVariance;
    SplineBoundary boundary = SplineBoundary::Natural;
    SplineExtrapolation extrapolation = SplineExtrapolation::LinearBoundarySlope;
};

inline const std::vector<std::string>& model_names() {
    static const std::vector<std::string> names{"svi", "svi-a0", "sabr", "xssvi", "poly-delta", "spline"};
    return names;
}

inline SmilePtr make_smile(const std::string& model, const SmileQuoteSet& quotes, const ModelOptions& opt = {}) {
    if (model == "svi") return make_svi_smile(quotes, false);
    if (model == "svi-a0") return make_svi_smile(quotes, true);
    if (model == "sabr") return make_sabr_smile(quotes);
    if (model == "xssvi") return make_xssvi_smile(quotes);
    if (model == "poly-delta") return make_delta_polynomial_smile(quotes, opt.delta_kind, opt.transform, opt.degree);
    if (model == "spline") return fit_spline_smile(quotes, opt.axis, opt.boundary, opt.extrapolation);
    throw DomainError("unknown model '" + model + "'");
}

inline DeltaKind parse_delta_kind(const std::string& s) {
    if (s == "reduced") return DeltaKind::ReducedAtm;
    if (s == "bar") return DeltaKind::BarForward;
    if (s == "forward") return DeltaKind::ForwardNoPremium;
    throw DomainError("unknown delta kind '" + s + "' (reduced, bar, forward)");
}
inline SplineAxis parse_axis(const std::string& s) {
    if (s == "logm-var") return SplineAxis::LogMoneynessVariance;
    if (s == "delta-vol") return SplineAxis::DeltaVol;
    throw DomainError("unknown spline axis '" + s + "' (logm-var, delta-vol)");
}
inline SplineBoundary parse_boundary(const std::string& s) {
    if (s == "natural") return SplineBoundary::Natural;
    if (s == "clamped") return SplineBoundary::ClampedZeroSlope;
    throw DomainError("unknown boundary '" + s + "' (natural, clamped)");
}
inline SplineExtrapolation parse_extrapolation(const std::string& s) {
    if (s == "flat") return SplineExtrapolation::Flat;
    if (s == "linear") return SplineExtrapolation::LinearBoundarySlope;
    throw DomainError("unknown extrapolation '" + s + "' (flat, linear)");
}
inline DeltaTransform parse_transform(const std::string& s) {
    if (s == "identity") return DeltaTransform::Identity;
    if (s == "exp") return DeltaTransform::ExpLog;
    throw DomainError("unknown transform '" + s + "' (identity, exp)");
}

}  // namespace fxsmile
