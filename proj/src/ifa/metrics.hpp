// Copyright 2026 The ifa Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef IFA_METRICS_HPP_
#define IFA_METRICS_HPP_

#include "ifa/equilibrium.hpp"
#include "ifa/model.hpp"

namespace ifa {

// Auction characteristics at one starting price. eu_bidder is the ex-ante
// utility of a single bidder; eu_social = eu_auctioneer + n * eu_bidder.
struct MetricsBundle {
  double s = 0.0;
  double eu_auctioneer = 0.0;
  double eu_bidder = 0.0;
  double eu_social = 0.0;
  double expected_duration = 0.0;
};

// Evaluates revenue, bidder utility, welfare and expected duration for a
// solved profile. The Dutch branch is integrated over [0, p(s)], the English
// branch over [p(s), 1], each with composite Simpson on cfg.num.quad_nodes
// nodes.
//
// The English double integrals are reduced to single integrals by swapping
// the order of integration: for any phi,
//   int_p^1 int_p^v phi(x) h(v,x) dx dv = int_p^1 phi(x) n g(x) (1 - F(x)) dx,
// and the v-weighted welfare term uses the upper partial mean of F instead of
// 1 - F. The solo-bidder terms have closed forms in G(p).
MetricsBundle AuctionMetrics(const MarketConfig& cfg,
                             const EquilibriumProfile& profile);

MetricsBundle DutchBenchmark(const MarketConfig& cfg);
MetricsBundle EnglishBenchmark(const MarketConfig& cfg);

// Revenue under payoff equivalence: int [v - (1-F)/f] dF^n.
double MyersonBaseline(const MarketConfig& cfg);

// dEU_A/ds assembled term by term from the analytic derivative of the revenue
// integral: boundary terms in dp/ds, the solo-sale term, the English-phase
// term in dm/ds and the Dutch-phase term in db/ds. db/ds is a central
// difference in s with step `ds`; dm/ds is analytic.
double AuctioneerUtilitySlope(const MarketConfig& cfg, double s,
                              double ds = 1e-4);

}  // namespace ifa

#endif  // IFA_METRICS_HPP_
