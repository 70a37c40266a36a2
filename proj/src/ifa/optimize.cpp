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

#include "ifa/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <exception>

#include "ifa/numerics.hpp"
#include "ifa/parallel.hpp"

namespace ifa {

namespace {

// Scores closer than this are treated as ties; a scan whose whole range is
// within it is flagged flat.
constexpr double kFlatTolerance = 1e-6;

}  // namespace

std::string_view ObjectiveName(Objective objective) {
  switch (objective) {
    case Objective::kAuctioneer:
      return "auctioneer";
    case Objective::kBidder:
      return "bidder";
    case Objective::kWelfare:
      return "welfare";
    case Objective::kDuration:
      return "duration";
  }
  return "?";
}

Objective ParseObjective(std::string_view text) {
  for (Objective o : kAllObjectives) {
    if (ObjectiveName(o) == text) return o;
  }
  throw ValidationError("unknown objective '" + std::string(text) +
                        "' (expected auctioneer, bidder, welfare, duration)");
}

double Score(const MetricsBundle& m, Objective objective) {
  switch (objective) {
    case Objective::kAuctioneer:
      return m.eu_auctioneer;
    case Objective::kBidder:
      return m.eu_bidder;
    case Objective::kWelfare:
      return m.eu_social;
    case Objective::kDuration:
      return -m.expected_duration;
  }
  return 0.0;
}

MetricRatios Ratios(const MetricsBundle& flower, const MetricsBundle& base) {
  return {flower.eu_auctioneer / base.eu_auctioneer,
          flower.eu_bidder / base.eu_bidder, flower.eu_social / base.eu_social,
          flower.expected_duration / base.expected_duration};
}

StartingPriceScan::StartingPriceScan(const MarketConfig& cfg, int threads)
    : solver_(cfg) {
  const int count = cfg.num.scan_points;
  points_.resize(count);
  ParallelFor(count, threads, [&](std::size_t i) {
    const double s =
        (i + 1 == static_cast<std::size_t>(count)) ? 1.0 : double(i) / (count - 1);
    points_[i] = Evaluate(s);
  });
}

MetricsBundle StartingPriceScan::Evaluate(double s) const {
  return AuctionMetrics(solver_.config(), solver_.Solve(s));
}

OptimizationResult OptimizeStartingPrice(const StartingPriceScan& scan,
                                         Objective objective) {
  const auto& points = scan.points();
  const auto& cfg = scan.solver().config();
  OptimizationResult result;
  result.objective = objective;
  result.threshold = scan.solver().threshold();
  result.dutch = scan.dutch();
  result.english = scan.english();

  double best = -INFINITY, worst = INFINITY;
  for (const auto& m : points) {
    best = std::max(best, Score(m, objective));
    worst = std::min(worst, Score(m, objective));
  }
  std::size_t best_index = 0;
  while (Score(points[best_index], objective) < best - 1e-12) ++best_index;

  if (best - worst <= kFlatTolerance * std::max(1.0, std::abs(best))) {
    // Payoff-equivalent landscape: report the smallest tied price.
    result.flat = true;
    result.flags.push_back("flat");
    std::size_t first = 0;
    while (Score(points[first], objective) < best - kFlatTolerance) ++first;
    result.metrics = points[first];
  } else {
    const std::size_t last = points.size() - 1;
    const double lo = points[best_index == 0 ? 0 : best_index - 1].s;
    const double hi = points[std::min(last, best_index + 1)].s;
    auto [s_star, neg_score] = numerics::GoldenMinimize(
        [&](double s) { return -Score(scan.Evaluate(s), objective); }, lo, hi,
        cfg.num.optimizer_tol);
    if (-neg_score >= best) {
      result.metrics = scan.Evaluate(s_star);
    } else {
      result.metrics = points[best_index];
    }
  }
  result.s_star = result.metrics.s;
  result.cutoff = Cutoff(cfg, result.s_star);
  result.vs_dutch = Ratios(result.metrics, result.dutch);
  result.vs_english = Ratios(result.metrics, result.english);
  result.nontrivial =
      result.s_star > 0.0 && result.s_star < result.threshold.value;
  if (cfg.cost.has_time_cost() && !result.nontrivial) {
    result.flags.push_back("trivial");
  }
  if (result.threshold.degenerate) result.flags.push_back("no_time_cost");
  return result;
}

OptimizationResult OptimizeStartingPrice(const MarketConfig& cfg,
                                         Objective objective, int threads) {
  return OptimizeStartingPrice(StartingPriceScan(cfg, threads), objective);
}

std::vector<SweepRow> ComparativeSweep(const MarketConfig& base_cfg,
                                       std::span<const double> mu_grid,
                                       std::span<const int> n_grid,
                                       std::span<const Objective> objectives,
                                       int threads) {
  if (mu_grid.empty() || n_grid.empty() || objectives.empty()) {
    throw ValidationError("sweep grids and objective list must be nonempty");
  }
  for (double mu : mu_grid) {
    if (!(mu >= 0.0 && mu < 1.0)) {
      throw ValidationError("sweep mu values must lie in [0, 1)");
    }
  }
  const CostKind kind = base_cfg.cost.kind() == CostKind::kNone
                            ? CostKind::kLinear
                            : base_cfg.cost.kind();
  const std::size_t cells = mu_grid.size() * n_grid.size();
  const std::size_t per_cell = objectives.size();
  std::vector<SweepRow> rows(cells * per_cell);

  ParallelFor(cells, threads, [&](std::size_t cell) {
    const double mu = mu_grid[cell / n_grid.size()];
    const int n = n_grid[cell % n_grid.size()];
    SweepRow* out = &rows[cell * per_cell];
    for (std::size_t k = 0; k < per_cell; ++k) {
      out[k].mu = mu;
      out[k].n = n;
      out[k].objective = objectives[k];
    }
    try {
      MarketConfig cfg = base_cfg;
      cfg.n = n;
      cfg.cost = TimeCost(kind, mu);
      const StartingPriceScan scan(cfg, 1);
      for (std::size_t k = 0; k < per_cell; ++k) {
        try {
          const auto r = OptimizeStartingPrice(scan, objectives[k]);
          out[k].s_star = r.s_star;
          out[k].cutoff = r.cutoff;
          out[k].s_tilde = r.threshold.value;
          out[k].ratios = r.vs_dutch;
          out[k].flags = r.flags;
        } catch (const std::exception& e) {
          out[k].ok = false;
          out[k].error = e.what();
        }
      }
    } catch (const std::exception& e) {
      for (std::size_t k = 0; k < per_cell; ++k) {
        out[k].ok = false;
        out[k].error = e.what();
      }
    }
  });
  return rows;
}

}  // namespace ifa
