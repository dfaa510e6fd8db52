#!/usr/bin/env python3
"""Writes fixtures/*.json from the published market tables and regenerates the embedded header.

Vols are in percent. Discount factors that are not printed are derived from the printed
spot, forward and rates (continuous compounding)."""
import json
import math
import pathlib

ROOT = pathlib.Path(__file__).resolve().parent.parent


def conv(measure, premium, atm="forward"):
    return {"measure": measure, "premium": premium, "atm": atm}


def five(p10, p25, atm, c25, c10):
    return [
        {"kind": "put", "delta": 0.10, "vol": p10},
        {"kind": "put", "delta": 0.25, "vol": p25},
        {"kind": "atm", "vol": atm},
        {"kind": "call", "delta": 0.25, "vol": c25},
        {"kind": "call", "delta": 0.10, "vol": c10},
    ]


def simple(atm, rr25, bf25, rr10, bf10):
    return five(atm + bf10 - rr10 / 2, atm + bf25 - rr25 / 2, atm, atm + bf25 + rr25 / 2, atm + bf10 + rr10 / 2)


def dense(vols):
    deltas = [1, 5, 10, 15, 20, 25, 30, 35, 40]
    out = [{"kind": "put", "delta": d / 100, "vol": v} for d, v in zip(deltas, vols[:9])]
    out.append({"kind": "atm", "vol": vols[9]})
    out += [{"kind": "call", "delta": d / 100, "vol": v} for d, v in zip(reversed(deltas), vols[10:])]
    return out


def r12(x):
    return float(f"{x:.12g}")


fixtures = []

# AUD/NZD 7 days, spot delta with premium; NZD discount from spot/forward parity.
s, f, bf = 1.0784, 1.07845, 0.999712587139
fixtures.append(dict(name="audnzd-7d", valuation="2014-07-02", expiry="2014-07-09", forward=f, spot=s,
                     discountDomestic=r12(s * bf / f), discountForeign=bf, convention=conv("spot", True),
                     pillars=simple(5.14, 0.40, 0.25, 0.35, 1.175),
                     note="RR/BF converted with the simple smile convention"))

# EUR/CZK 32 days; the printed forward/discount/spot repeat the AUD/NZD caption and are stored as printed.
fixtures.append(dict(name="eurczk-32d", valuation="2019-12-16", expiry="2020-01-17", forward=f, spot=s,
                     discountDomestic=r12(s * bf / f), discountForeign=bf, convention=conv("forward", True),
                     pillars=[{"kind": "put", "delta": 0.05, "vol": 3.715},
                              {"kind": "put", "delta": 0.25, "vol": 2.765},
                              {"kind": "atm", "vol": 2.830},
                              {"kind": "call", "delta": 0.25, "vol": 3.340},
                              {"kind": "call", "delta": 0.05, "vol": 4.380}],
                     note="forward and discounts as printed (caption repeats the AUD/NZD values)"))

# USD/AED, forward delta with premium. F(9m)=3.67206, r_USD=3.255%; other maturities reuse the implied carry.
s, f9, r_usd = 3.67, 3.67206, 0.03255
carry = math.log(f9 / s) / 0.75
for name, t, expiry, q in [("usdaed-1m", 1 / 12, "2023-02-24", (0.31, 0.142, 0.078, 0.343, 0.142)),
                           ("usdaed-9m", 0.75, "2023-10-24", (0.32, 0.152, 0.084, 0.412, 0.392)),
                           ("usdaed-1y", 1.0, "2024-01-24", (0.29, 0.132, 0.072, 0.359, 0.343))]:
    bf_ = math.exp(-r_usd * t)
    fwd = f9 if name == "usdaed-9m" else r12(s * math.exp(carry * t))
    fixtures.append(dict(name=name, valuation="2023-01-24", expiry=expiry, T=t, forward=fwd, spot=s,
                         discountDomestic=r12(s * bf_ / fwd), discountForeign=r12(bf_),
                         convention=conv("forward", True), pillars=simple(*q),
                         note="RR/BF converted with the simple smile convention"
                              + ("" if name == "usdaed-9m" else "; forward from the 9m carry")))

# EUR/TRY, forward delta with premium.
s = 19.3483
for name, t, expiry, rd, rf, pillars, note in [
        ("eurtry-6m", 184 / 365, "2023-06-01", 0.3677, 0.01167, simple(22.12, 9.385, 2.187, 21.148, 7.633),
         "RR/BF converted with the simple smile convention"),
        ("eurtry-1y", 1.0, "2023-11-29", 0.3773, 0.01784, five(24.08, 28.64, 31.13, 40.21, 51.20),
         "vanilla vols as published")]:
    bd, bf_ = math.exp(-rd * t), math.exp(-rf * t)
    fixtures.append(dict(name=name, valuation="2022-11-29", expiry=expiry, T=t, forward=r12(s * bf_ / bd), spot=s,
                         discountDomestic=r12(bd), discountForeign=r12(bf_), convention=conv("forward", True),
                         pillars=pillars, note=note))

fixtures.append(dict(name="manufactured-1y", valuation="", expiry="", T=1.0, forward=1.0, spot=1.0,
                     discountDomestic=1.0, discountForeign=1.0, convention=conv("forward", False),
                     pillars=five(26.00, 26.00, 19.50, 12.70, 12.70),
                     note="two-lognormal mixture quotes with flat 10D extrapolation"))

# EUR/USD dense deltas, forward delta without premium.
s = 0.9759
f, t = 0.975848, 30 / 365
bd = math.exp(-0.00351836 * t)
fixtures.append(dict(name="eurusd-1m-dense", valuation="2022-03-11", expiry="2022-04-10", T=t, forward=f, spot=s,
                     discountDomestic=r12(bd), discountForeign=r12(f * bd / s), convention=conv("forward", False),
                     pillars=dense([14.04, 13.01, 12.47, 12.16, 11.93, 11.73, 11.54, 11.38, 11.25, 11.02,
                                    10.85, 10.78, 10.73, 10.68, 10.63, 10.58, 10.51, 10.45, 11.11]),
                     note="30 calendar days reproduces the published 10D and 1D strikes"))
f, bd = 0.986772, 0.963113
fixtures.append(dict(name="eurusd-1y-dense", valuation="2022-03-11", expiry="2023-03-11", T=1.0, forward=f, spot=s,
                     discountDomestic=bd, discountForeign=r12(f * bd / s), convention=conv("forward", False),
                     pillars=dense([16.0, 14.57, 13.46, 12.73, 12.19, 11.74, 11.32, 10.96, 10.65, 10.19,
                                    9.84, 9.68, 9.57, 9.48, 9.4, 9.31, 9.21, 9.02, 8.87]),
                     note="USD discount printed with a spurious percent sign"))

for fx in fixtures:
    for p in fx["pillars"]:
        p["vol"] = round(p["vol"], 10)

out_dir = ROOT / "fixtures"
out_dir.mkdir(exist_ok=True)
texts = {}
for fx in fixtures:
    text = json.dumps(fx, indent=2) + "\n"
    (out_dir / f"{fx['name']}.json").write_text(text)
    texts[fx["name"]] = text

lines = ["// Generated by tools/make_fixtures.py from fixtures/*.json. Do not edit.", "#pragma once", "",
         "#include <array>", "#include <string_view>", "#include <utility>", "", "namespace fxsmile::builtin {", "",
         f"inline constexpr std::array<std::pair<std::string_view, std::string_view>, {len(texts)}> fixtures{{{{"]
for name, text in texts.items():
    lines.append(f'    {{"{name}", R"json({text})json"}},')
lines += ["}};", "", "}  // namespace fxsmile::builtin", ""]
(ROOT / "include" / "fxsmile" / "builtin_fixtures.hpp").write_text("\n".join(lines))
