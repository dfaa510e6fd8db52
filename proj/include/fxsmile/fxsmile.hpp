#pragma once

#include "fxsmile/arbitrage.hpp"
#include "fxsmile/black.hpp"
#include "fxsmile/cubic_spline.hpp"
#include "fxsmile/delta_smile.hpp"
#include "fxsmile/errors.hpp"
#include "fxsmile/fixtures.hpp"
#include "fxsmile/market.hpp"
#include "fxsmile/mixture.hpp"
#include "fxsmile/models.hpp"
#include "fxsmile/normal.hpp"
#include "fxsmile/pricing.hpp"
#include "fxsmile/sabr.hpp"
#include "fxsmile/scenarios.hpp"
#include "fxsmile/smile_section.hpp"
#include "fxsmile/solvers.hpp"
#include "fxsmile/spline_smile.hpp"
#include "fxsmile/svi.hpp"
#include "fxsmile/xssvi.hpp"
