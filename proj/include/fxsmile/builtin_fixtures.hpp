// Generated by tools/make_fixtures.py from fixtures/*.json. Do not edit.
#pragma once

#include <array>
#include <string_view>
#include <utility>

namespace fxsmile::builtin {

inline constexpr std::array<std::pair<std::string_view, std::string_view>, 10> fixtures{{
    {"audnzd-7d", R"json({
  "name": "audnzd-7d",
  "valuation": "2014-07-02",
  "expiry": "2014-07-09",
  "forward": 1.07845,
  "spot": 1.0784,
  "discountDomestic": 0.999666237629,
  "discountForeign": 0.999712587139,
  "convention": {
    "measure": "spot",
    "premium": true,
    "atm": "forward"
  },
  "pillars": [
    {
      "kind": "put",
      "delta": 0.1,
      "vol": 6.14
    },
    {
      "kind": "put",
      "delta": 0.25,
      "vol": 5.19
    },
    {
      "kind": "atm",
      "vol": 5.14
    },
    {
      "kind": "call",
      "delta": 0.25,
      "vol": 5.59
    },
    {
      "kind": "call",
      "delta": 0.1,
      "vol": 6.49
    }
  ],
  "note": "RR/BF converted with the simple smile convention"
}
)json"},
    {"eurczk-32d", R"json({
  "name": "eurczk-32d",
  "valuation": "2019-12-16",
  "expiry": "2020-01-17",
  "forward": 1.07845,
  "spot": 1.0784,
  "discountDomestic": 0.999666237629,
  "discountForeign": 0.999712587139,
  "convention": {
    "measure": "forward",
    "premium": true,
    "atm": "forward"
  },
  "pillars": [
    {
      "kind": "put",
      "delta": 0.05,
      "vol": 3.715
    },
    {
      "kind": "put",
      "delta": 0.25,
      "vol": 2.765
    },
    {
      "kind": "atm",
      "vol": 2.83
    },
    {
      "kind": "call",
      "delta": 0.25,
      "vol": 3.34
    },
    {
      "kind": "call",
      "delta": 0.05,
      "vol": 4.38
    }
  ],
  "note": "forward and discounts as printed (caption repeats the AUD/NZD values)"
}
)json"},
    {"usdaed-1m", R"json({
  "name": "usdaed-1m",
  "valuation": "2023-01-24",
  "expiry": "2023-02-24",
  "T": 0.08333333333333333,
  "forward": 3.67022883181,
  "spot": 3.67,
  "discountDomestic": 0.99722899629,
  "discountForeign": 0.997291175504,
  "convention": {
    "measure": "forward",
    "premium": true,
    "atm": "forward"
  },
  "pillars": [
    {
      "kind": "put",
      "delta": 0.1,
      "vol": 0.2805
    },
    {
      "kind": "put",
      "delta": 0.25,
      "vol": 0.317
    },
    {
      "kind": "atm",
      "vol": 0.31
    },
    {
      "kind": "call",
      "delta": 0.25,
      "vol": 0.459
    },
    {
      "kind": "call",
      "delta": 0.1,
      "vol": 0.6235
    }
  ],
  "note": "RR/BF converted with the simple smile convention; forward from the 9m carry"
}
)json"},
    {"usdaed-9m", R"json({
  "name": "usdaed-9m",
  "valuation": "2023-01-24",
  "expiry": "2023-10-24",
  "T": 0.75,
  "forward": 3.67206,
  "spot": 3.67,
  "discountDomestic": 0.975335611366,
  "discountForeign": 0.975883074952,
  "convention": {
    "measure": "forward",
    "premium": true,
    "atm": "forward"
  },
  "pillars": [
    {
      "kind": "put",
      "delta": 0.1,
      "vol": 0.506
    },
    {
      "kind": "put",
      "delta": 0.25,
      "vol": 0.328
    },
    {
      "kind": "atm",
      "vol": 0.32
    },
    {
      "kind": "call",
      "delta": 0.25,
      "vol": 0.48
    },
    {
      "kind": "call",
      "delta": 0.1,
      "vol": 0.918
    }
  ],
  "note": "RR/BF converted with the simple smile convention"
}
)json"},
    {"usdaed-1y", R"json({
  "name": "usdaed-1y",
  "valuation": "2023-01-24",
  "expiry": "2024-01-24",
  "T": 1.0,
  "forward": 3.67274692359,
  "spot": 3.67,
  "discountDomestic": 0.967250082053,
  "discountForeign": 0.967974049919,
  "convention": {
    "measure": "forward",
    "premium": true,
    "atm": "forward"
  },
  "pillars": [
    {
      "kind": "put",
      "delta": 0.1,
      "vol": 0.4535
    },
    {
      "kind": "put",
      "delta": 0.25,
      "vol": 0.296
    },
    {
      "kind": "atm",
      "vol": 0.29
    },
    {
      "kind": "call",
      "delta": 0.25,
      "vol": 0.428
    },
    {
      "kind": "call",
      "delta": 0.1,
      "vol": 0.8125
    }
  ],
  "note": "RR/BF converted with the simple smile convention; forward from the 9m carry"
}
)json"},
    {"eurtry-6m", R"json({
  "name": "eurtry-6m",
  "valuation": "2022-11-29",
  "expiry": "2023-06-01",
  "T": 0.5041095890410959,
  "forward": 23.1520353628,
  "spot": 19.3483,
  "discountDomestic": 0.830804229688,
  "discountForeign": 0.994134311814,
  "convention": {
    "measure": "forward",
    "premium": true,
    "atm": "forward"
  },
  "pillars": [
    {
      "kind": "put",
      "delta": 0.1,
      "vol": 19.179
    },
    {
      "kind": "put",
      "delta": 0.25,
      "vol": 19.6145
    },
    {
      "kind": "atm",
      "vol": 22.12
    },
    {
      "kind": "call",
      "delta": 0.25,
      "vol": 28.9995
    },
    {
      "kind": "call",
      "delta": 0.1,
      "vol": 40.327
    }
  ],
  "note": "RR/BF converted with the simple smile convention"
}
)json"},
    {"eurtry-1y", R"json({
  "name": "eurtry-1y",
  "valuation": "2022-11-29",
  "expiry": "2023-11-29",
  "T": 1.0,
  "forward": 27.7175160112,
  "spot": 19.3483,
  "discountDomestic": 0.685710329937,
  "discountForeign": 0.982318190696,
  "convention": {
    "measure": "forward",
    "premium": true,
    "atm": "forward"
  },
  "pillars": [
    {
      "kind": "put",
      "delta": 0.1,
      "vol": 24.08
    },
    {
      "kind": "put",
      "delta": 0.25,
      "vol": 28.64
    },
    {
      "kind": "atm",
      "vol": 31.13
    },
    {
      "kind": "call",
      "delta": 0.25,
      "vol": 40.21
    },
    {
      "kind": "call",
      "delta": 0.1,
      "vol": 51.2
    }
  ],
  "note": "vanilla vols as published"
}
)json"},
    {"manufactured-1y", R"json({
  "name": "manufactured-1y",
  "valuation": "",
  "expiry": "",
  "T": 1.0,
  "forward": 1.0,
  "spot": 1.0,
  "discountDomestic": 1.0,
  "discountForeign": 1.0,
  "convention": {
    "measure": "forward",
    "premium": false,
    "atm": "forward"
  },
  "pillars": [
    {
      "kind": "put",
      "delta": 0.1,
      "vol": 26.0
    },
    {
      "kind": "put",
      "delta": 0.25,
      "vol": 26.0
    },
    {
      "kind": "atm",
      "vol": 19.5
    },
    {
      "kind": "call",
      "delta": 0.25,
      "vol": 12.7
    },
    {
      "kind": "call",
      "delta": 0.1,
      "vol": 12.7
    }
  ],
  "note": "two-lognormal mixture quotes with flat 10D extrapolation"
}
)json"},
    {"eurusd-1m-dense", R"json({
  "name": "eurusd-1m-dense",
  "valuation": "2022-03-11",
  "expiry": "2022-04-10",
  "T": 0.0821917808219178,
  "forward": 0.975848,
  "spot": 0.9759,
  "discountDomestic": 0.999710861535,
  "discountForeign": 0.999657592793,
  "convention": {
    "measure": "forward",
    "premium": false,
    "atm": "forward"
  },
  "pillars": [
    {
      "kind": "put",
      "delta": 0.01,
      "vol": 14.04
    },
    {
      "kind": "put",
      "delta": 0.05,
      "vol": 13.01
    },
    {
      "kind": "put",
      "delta": 0.1,
      "vol": 12.47
    },
    {
      "kind": "put",
      "delta": 0.15,
      "vol": 12.16
    },
    {
      "kind": "put",
      "delta": 0.2,
      "vol": 11.93
    },
    {
      "kind": "put",
      "delta": 0.25,
      "vol": 11.73
    },
    {
      "kind": "put",
      "delta": 0.3,
      "vol": 11.54
    },
    {
      "kind": "put",
      "delta": 0.35,
      "vol": 11.38
    },
    {
      "kind": "put",
      "delta": 0.4,
      "vol": 11.25
    },
    {
      "kind": "atm",
      "vol": 11.02
    },
    {
      "kind": "call",
      "delta": 0.4,
      "vol": 10.85
    },
    {
      "kind": "call",
      "delta": 0.35,
      "vol": 10.78
    },
    {
      "kind": "call",
      "delta": 0.3,
      "vol": 10.73
    },
    {
      "kind": "call",
      "delta": 0.25,
      "vol": 10.68
    },
    {
      "kind": "call",
      "delta": 0.2,
      "vol": 10.63
    },
    {
      "kind": "call",
      "delta": 0.15,
      "vol": 10.58
    },
    {
      "kind": "call",
      "delta": 0.1,
      "vol": 10.51
    },
    {
      "kind": "call",
      "delta": 0.05,
      "vol": 10.45
    },
    {
      "kind": "call",
      "delta": 0.01,
      "vol": 11.11
    }
  ],
  "note": "30 calendar days reproduces the published 10D and 1D strikes"
}
)json"},
    {"eurusd-1y-dense", R"json({
  "name": "eurusd-1y-dense",
  "valuation": "2022-03-11",
  "expiry": "2023-03-11",
  "T": 1.0,
  "forward": 0.986772,
  "spot": 0.9759,
  "discountDomestic": 0.963113,
  "discountForeign": 0.973842546609,
  "convention": {
    "measure": "forward",
    "premium": false,
    "atm": "forward"
  },
  "pillars": [
    {
      "kind": "put",
      "delta": 0.01,
      "vol": 16.0
    },
    {
      "kind": "put",
      "delta": 0.05,
      "vol": 14.57
    },
    {
      "kind": "put",
      "delta": 0.1,
      "vol": 13.46
    },
    {
      "kind": "put",
      "delta": 0.15,
      "vol": 12.73
    },
    {
      "kind": "put",
      "delta": 0.2,
      "vol": 12.19
    },
    {
      "kind": "put",
      "delta": 0.25,
      "vol": 11.74
    },
    {
      "kind": "put",
      "delta": 0.3,
      "vol": 11.32
    },
    {
      "kind": "put",
      "delta": 0.35,
      "vol": 10.96
    },
    {
      "kind": "put",
      "delta": 0.4,
      "vol": 10.65
    },
    {
      "kind": "atm",
      "vol": 10.19
    },
    {
      "kind": "call",
      "delta": 0.4,
      "vol": 9.84
    },
    {
      "kind": "call",
      "delta": 0.35,
      "vol": 9.68
    },
    {
      "kind": "call",
      "delta": 0.3,
      "vol": 9.57
    },
    {
      "kind": "call",
      "delta": 0.25,
      "vol": 9.48
    },
    {
      "kind": "call",
      "delta": 0.2,
      "vol": 9.4
    },
    {
      "kind": "call",
      "delta": 0.15,
      "vol": 9.31
    },
    {
      "kind": "call",
      "delta": 0.1,
      "vol": 9.21
    },
    {
      "kind": "call",
      "delta": 0.05,
      "vol": 9.02
    },
    {
      "kind": "call",
      "delta": 0.01,
      "vol": 8.87
    }
  ],
  "note": "USD discount printed with a spurious percent sign"
}
)json"},
}};

}  // namespace fxsmile::builtin
