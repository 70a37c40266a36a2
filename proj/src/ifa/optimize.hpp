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

#ifndef IFA_OPTIMIZE_HPP_
#define IFA_OPTIMIZE_HPP_

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ifa/equilibrium.hpp"
#include "ifa/metrics.hpp"
#include "ifa/model.hpp"

namespace ifa {

enum class Objective { kAuctioneer, kBidder, kWelfare, kDuration };

inline constexpr Objective kAllObjectives[] = {
    Objective::kAuctioneer, Objective::kBidder, Objective::kWelfare,
    Objective::kDuration};

std::string_view ObjectiveName(Objective objective);
Objective ParseObjective(std::string_view text);

// Objective value oriented so that larger is better (duration is negated).
double Score(const MetricsBundle& metrics, Objective objective);

// Flower metrics divided by a benchmark's metrics.
struct MetricRatios {
  double auctioneer = 1.0;
  double bidder = 1.0;
  double social = 1.0;
  double duration = 1.0;
};

MetricRatios Ratios(const MetricsBundle& flower, const MetricsBundle& base);

struct OptimizationResult {
  Objective objective = Objective::kAuctioneer;
  double s_star = 0.0;
  double cutoff = 0.0;
  Threshold threshold;
  MetricsBundle metrics;
  MetricsBundle dutch;
  MetricsBundle english;
  MetricRatios vs_dutch;
  MetricRatios vs_english;
  // The scanned objective varied by less than the flat tolerance; s_star is
  // then the smallest tied starting price.
  bool flat = false;
  // 0 < s_star < s~ (both phases occur with positive probability).
  bool nontrivial = false;
  std::vector<std::string> flags;
};

// Metrics over a uniform grid of starting prices, shared by every objective
// optimized for one market.
class StartingPriceScan {
 public:
  StartingPriceScan(const MarketConfig& cfg, int threads = 0);

  const EquilibriumSolver& solver() const { return solver_; }
  const std::vector<MetricsBundle>& points() const { return points_; }
  const MetricsBundle& english() const { return points_.front(); }
  const MetricsBundle& dutch() const { return points_.back(); }
  MetricsBundle Evaluate(double s) const;

 private:
  EquilibriumSolver solver_;
  std::vector<MetricsBundle> points_;
};

// Coarse scan over cfg.num.scan_points starting prices followed by
// golden-section refinement on the bracket around the best scan point.
OptimizationResult OptimizeStartingPrice(const MarketConfig& cfg,
                                         Objective objective, int threads = 0);
OptimizationResult OptimizeStartingPrice(const StartingPriceScan& scan,
                                         Objective objective);

struct SweepRow {
  double mu = 0.0;
  int n = 2;
  Objective objective = Objective::kAuctioneer;
  bool ok = true;
  std::string error;
  double s_star = 0.0;
  double cutoff = 0.0;
  double s_tilde = 1.0;
  MetricRatios ratios;  // relative to the Dutch benchmark
  std::vector<std::string> flags;
};

// One row per (mu, n, objective), ordered mu-major, then n, then objective.
// The cost family comes from base_cfg (linear when base_cfg has none). A
// failing cell is reported in its row and never aborts the sweep.
std::vector<SweepRow> ComparativeSweep(const MarketConfig& base_cfg,
                                       std::span<const double> mu_grid,
                                       std::span<const int> n_grid,
                                       std::span<const Objective> objectives,
                                       int threads = 0);

}  // namespace ifa

#endif  // IFA_OPTIMIZE_HPP_
