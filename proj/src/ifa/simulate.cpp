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

#include "ifa/simulate.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "ifa/numerics.hpp"
#include "ifa/parallel.hpp"

namespace ifa {

namespace {

std::uint64_t Mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;
constexpr std::uint64_t kBlock = 4096;

// Picks uniformly among the indices in `tied`.
int BreakTie(const std::vector<int>& tied, DrawRng& rng) {
  if (tied.size() == 1) return tied.front();
  const auto k = static_cast<std::size_t>(rng.Uniform() * tied.size());
  return tied[std::min(k, tied.size() - 1)];
}

struct Sums {
  double x[4] = {0, 0, 0, 0};
  double xx[4] = {0, 0, 0, 0};
  std::uint64_t inefficient = 0;
  std::uint64_t no_sale = 0;

  void Add(const double (&obs)[4]) {
    for (int k = 0; k < 4; ++k) {
      x[k] += obs[k];
      xx[k] += obs[k] * obs[k];
    }
  }
  void Merge(const Sums& o) {
    for (int k = 0; k < 4; ++k) {
      x[k] += o.x[k];
      xx[k] += o.xx[k];
    }
    inefficient += o.inefficient;
    no_sale += o.no_sale;
  }
};

Estimate Summarize(double sum, double sum_sq, std::uint64_t count) {
  Estimate e;
  const double n = static_cast<double>(count);
  e.mean = sum / n;
  if (count > 1) {
    const double var = std::max(0.0, (sum_sq - sum * sum / n) / (n - 1.0));
    e.std_error = std::sqrt(var / n);
  }
  return e;
}

void RequireTick(double tick) {
  if (!(tick > 0.0) || !std::isfinite(tick)) {
    throw ValidationError("clock tick must be positive");
  }
}

}  // namespace

DrawRng DrawRng::ForDraw(std::uint64_t seed, std::uint64_t draw_id) {
  return DrawRng(Mix64(seed) ^ Mix64(draw_id * kGolden + 1));
}

DrawRng::result_type DrawRng::operator()() {
  state_ += kGolden;
  return Mix64(state_);
}

double DrawRng::Uniform() {
  return static_cast<double>((*this)() >> 11) * 0x1.0p-53;
}

std::string_view PhaseName(Phase phase) {
  switch (phase) {
    case Phase::kDutch:
      return "dutch";
    case Phase::kEnglishSolo:
      return "english_solo";
    case Phase::kEnglishContested:
      return "english_contested";
    case Phase::kNoSale:
      return "no_sale";
  }
  return "?";
}

SimulationRecord RunAuction(const MarketConfig& cfg,
                            const EquilibriumProfile& profile,
                            std::span<const double> values, double tick,
                            DrawRng& rng) {
  RequireTick(tick);
  if (values.size() != static_cast<std::size_t>(cfg.n)) {
    throw ValidationError("value vector length must equal the bidder count");
  }
  for (double v : values) {
    if (!(v >= 0.0 && v <= 1.0)) {
      throw ValidationError("bidder values must lie in [0, 1]");
    }
  }
  const double s = profile.s();
  const double p = profile.cutoff();

  SimulationRecord rec;
  rec.values.assign(values.begin(), values.end());
  for (int i = 0; i < cfg.n; ++i) {
    if (values[i] >= p) rec.initial_bidders.push_back(i);
  }
  std::vector<int> tied;

  if (rec.initial_bidders.empty()) {
    // Descending clock: price s - k * tick, floored at 0 on the last tick.
    rec.phase = Phase::kDutch;
    const auto floor_tick = static_cast<long long>(std::ceil(s / tick));
    long long first = floor_tick + 1;
    for (int i = 0; i < cfg.n; ++i) {
      const double b = profile.Bid(values[i]);
      if (b < 0.0) continue;
      const auto k = std::clamp(static_cast<long long>(std::ceil((s - b) / tick)),
                                0LL, floor_tick);
      if (k < first) {
        first = k;
        tied.assign(1, i);
      } else if (k == first) {
        tied.push_back(i);
      }
    }
    if (tied.empty()) {
      rec.phase = Phase::kNoSale;
      rec.price = 0.0;
      rec.duration = s;
      return rec;
    }
    rec.winner = BreakTie(tied, rng);
    rec.price = std::max(0.0, s - static_cast<double>(first) * tick);
    rec.duration = s - rec.price;
    return rec;
  }

  if (rec.initial_bidders.size() == 1) {
    rec.phase = Phase::kEnglishSolo;
    rec.winner = rec.initial_bidders.front();
    rec.price = s;
    rec.duration = 0.0;
    return rec;
  }

  // Ascending clock: bidder i is gone at the first tick whose price exceeds
  // m(v_i, s).
  rec.phase = Phase::kEnglishContested;
  long long last_exit = -1, second_exit = -1;
  for (int i : rec.initial_bidders) {
    const double m = profile.Exit(values[i]);
    const auto k = static_cast<long long>(std::floor((m - s) / tick)) + 1;
    if (k > last_exit) {
      second_exit = last_exit;
      last_exit = k;
      tied.assign(1, i);
    } else if (k == last_exit) {
      second_exit = k;
      tied.push_back(i);
    } else {
      second_exit = std::max(second_exit, k);
    }
  }
  rec.winner = BreakTie(tied, rng);
  rec.price = s + static_cast<double>(second_exit) * tick;
  rec.duration = rec.price - s;
  return rec;
}

SimulationRecord SimulateDraw(const MarketConfig& cfg,
                              const EquilibriumProfile& profile,
                              std::uint64_t seed, std::uint64_t draw_id,
                              double tick) {
  DrawRng rng = DrawRng::ForDraw(seed, draw_id);
  std::vector<double> values(cfg.n);
  for (double& v : values) v = cfg.dist.Quantile(rng.Uniform());
  return RunAuction(cfg, profile, values, tick, rng);
}

MonteCarloResult MonteCarlo(const MarketConfig& cfg,
                            const EquilibriumProfile& profile,
                            std::uint64_t draws, std::uint64_t seed,
                            double tick, int threads) {
  cfg.Validate();
  RequireTick(tick);
  if (draws < 1) throw ValidationError("draws must be at least 1");
  const std::uint64_t blocks = (draws + kBlock - 1) / kBlock;
  std::vector<Sums> partial(blocks);
  const double s = profile.s();

  ParallelFor(blocks, threads, [&](std::size_t block) {
    Sums& acc = partial[block];
    const std::uint64_t begin = block * kBlock;
    const std::uint64_t end = std::min(draws, begin + kBlock);
    for (std::uint64_t d = begin; d < end; ++d) {
      const SimulationRecord rec = SimulateDraw(cfg, profile, seed, d, tick);
      double obs[4] = {0.0, 0.0, 0.0, rec.duration};
      if (rec.winner >= 0) {
        const double v = rec.values[rec.winner];
        const double kept = cfg.cost.ValueExt(rec.duration) * v;
        obs[0] = rec.price;
        obs[1] = (kept - rec.price) / cfg.n;
        obs[2] = kept;
        const auto best =
            std::max_element(rec.values.begin(), rec.values.end());
        if (rec.winner != best - rec.values.begin() && *best != v) {
          ++acc.inefficient;
        }
      } else {
        ++acc.no_sale;
        obs[3] = s;
      }
      acc.Add(obs);
    }
  });

  Sums total;
  for (const Sums& b : partial) total.Merge(b);
  MonteCarloResult out;
  out.draws = draws;
  out.tick = tick;
  out.auctioneer = Summarize(total.x[0], total.xx[0], draws);
  out.bidder = Summarize(total.x[1], total.xx[1], draws);
  out.social = Summarize(total.x[2], total.xx[2], draws);
  out.duration = Summarize(total.x[3], total.xx[3], draws);
  out.inefficient = total.inefficient;
  out.no_sale = total.no_sale;
  return out;
}

void StreamSimulation(
    const MarketConfig& cfg, const EquilibriumProfile& profile,
    std::uint64_t draws, std::uint64_t seed, double tick,
    const std::function<void(std::uint64_t, const SimulationRecord&)>& sink) {
  cfg.Validate();
  RequireTick(tick);
  for (std::uint64_t d = 0; d < draws; ++d) {
    sink(d, SimulateDraw(cfg, profile, seed, d, tick));
  }
}

double DutchClaimUtility(const MarketConfig& cfg,
                         const EquilibriumProfile& profile, double v,
                         double z) {
  const double s = profile.s();
  const double p = profile.cutoff();
  if (!(z >= 0.0 && z <= s)) {
    throw ValidationError("Dutch claim price must lie in [0, s]");
  }
  if (p <= 0.0) return 0.0;
  const auto& curve = profile.dutch_curve();
  // Rivals below `reach` claim later than z (or wait forever if p = 1 and z
  // is above every Dutch bid).
  double reach;
  if (z >= curve.bids.back()) {
    reach = p;
  } else {
    reach = std::min(p, curve.Inverse(z));
  }
  const double win = std::pow(cfg.dist.Cdf(reach), cfg.n - 1);
  return win * (cfg.cost.ValueExt(s - z) * v - z);
}

double EnglishExitUtility(const MarketConfig& cfg,
                          const EquilibriumProfile& profile, double v,
                          double y) {
  const double s = profile.s();
  const double p = profile.cutoff();
  if (!(y >= s && y <= s + 1.0)) {
    throw ValidationError("English exit price must lie in [s, s + 1]");
  }
  const auto& dist = cfg.dist;
  const int n = cfg.n;
  const double solo = std::pow(dist.Cdf(p), n - 1) * (v - s);
  if (p >= 1.0) return solo;
  // A rival with value x leaves at m(x, s); m(x, s) < y iff x < y / c(y - s).
  const double reach = std::clamp(y / cfg.cost.ValueExt(y - s), p, 1.0);
  if (reach <= p) return solo;
  const double contested = numerics::Simpson(
      [&](double x) {
        const double m = profile.Exit(x);
        const double g =
            (n - 1) * dist.Pdf(x) * std::pow(dist.Cdf(x), n - 2);
        return (cfg.cost.ValueExt(m - s) * v - m) * g;
      },
      p, reach, cfg.num.inner_nodes);
  return solo + contested;
}

double EquilibriumUtility(const MarketConfig& cfg,
                          const EquilibriumProfile& profile, double v) {
  if (!(v >= 0.0 && v <= 1.0)) {
    throw ValidationError("bidder value must lie in [0, 1]");
  }
  if (v >= profile.cutoff()) {
    return EnglishExitUtility(cfg, profile, v,
                              std::max(profile.s(), profile.Exit(v)));
  }
  return DutchClaimUtility(cfg, profile, v, profile.Bid(v));
}

double BestResponseGap(const MarketConfig& cfg,
                       const EquilibriumProfile& profile, double v,
                       int grid_size) {
  if (grid_size < 1) throw ValidationError("deviation grid size must be >= 1");
  const double s = profile.s();
  const double eq = EquilibriumUtility(cfg, profile, v);
  double best = -INFINITY;
  for (int k = 0; k <= grid_size; ++k) {
    const double z = s * k / grid_size;
    best = std::max(best, DutchClaimUtility(cfg, profile, v, z));
  }
  const double top = std::max(s, profile.Exit(1.0));
  for (int k = 0; k <= grid_size; ++k) {
    const double y = s + (top - s) * k / grid_size;
    best = std::max(best, EnglishExitUtility(cfg, profile, v, y));
  }
  return best - eq;
}

double BestResponseGap(const MarketConfig& cfg, double s, double v,
                       int grid_size) {
  return BestResponseGap(cfg, SolveProfile(cfg, s), v, grid_size);
}

}  // namespace ifa
