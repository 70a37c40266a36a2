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

#ifndef IFA_SIMULATE_HPP_
#define IFA_SIMULATE_HPP_

#include <cstdint>
#include <functional>
#include <span>
#include <string_view>
#include <vector>

#include "ifa/equilibrium.hpp"
#include "ifa/model.hpp"

namespace ifa {

// SplitMix64 stream. Each simulated draw gets its own stream keyed by
// (seed, draw id), so results do not depend on how draws are scheduled.
class DrawRng {
 public:
  using result_type = std::uint64_t;
  explicit DrawRng(std::uint64_t state) : state_(state) {}
  static DrawRng ForDraw(std::uint64_t seed, std::uint64_t draw_id);

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return ~result_type{0}; }
  result_type operator()();
  // Uniform on [0, 1) with 53 random bits.
  double Uniform();

 private:
  std::uint64_t state_;
};

enum class Phase { kDutch, kEnglishSolo, kEnglishContested, kNoSale };

std::string_view PhaseName(Phase phase);

struct SimulationRecord {
  std::vector<double> values;
  std::vector<int> initial_bidders;
  Phase phase = Phase::kDutch;
  int winner = -1;
  double price = 0.0;
  double duration = 0.0;
};

// Plays one auction on a clock that moves in steps of `tick`. Opening bids
// are instant: bidder i bids iff v_i >= p(s). No bid: the price falls from s
// and the first bidder with b(v_i, s) >= price claims. One bid: sale at s.
// Several: the price rises from s, bidder i leaves once the price exceeds
// m(v_i, s), and the last one standing pays the price at the second-to-last
// exit. Same-tick ties are broken uniformly with `rng`.
SimulationRecord RunAuction(const MarketConfig& cfg,
                            const EquilibriumProfile& profile,
                            std::span<const double> values, double tick,
                            DrawRng& rng);

// Draw `draw_id` of a simulation seeded with `seed`: values by inversion of F,
// then the auction itself.
SimulationRecord SimulateDraw(const MarketConfig& cfg,
                              const EquilibriumProfile& profile,
                              std::uint64_t seed, std::uint64_t draw_id,
                              double tick);

struct Estimate {
  double mean = 0.0;
  double std_error = 0.0;
};

struct MonteCarloResult {
  std::uint64_t draws = 0;
  double tick = 0.0;
  Estimate auctioneer;  // price
  Estimate bidder;      // winner surplus / n
  Estimate social;      // c(duration) * winner value
  Estimate duration;
  std::uint64_t inefficient = 0;  // winner is not the highest-value bidder
  std::uint64_t no_sale = 0;
  double inefficiency_rate() const {
    return draws ? double(inefficient) / double(draws) : 0.0;
  }
};

// Empirical metrics from `draws` simulated auctions. Sums are accumulated in
// fixed blocks and combined in block order, so the output is bit-identical
// for any thread count.
MonteCarloResult MonteCarlo(const MarketConfig& cfg,
                            const EquilibriumProfile& profile,
                            std::uint64_t draws, std::uint64_t seed,
                            double tick, int threads = 0);

// Calls sink(draw_id, record) in draw order.
void StreamSimulation(
    const MarketConfig& cfg, const EquilibriumProfile& profile,
    std::uint64_t draws, std::uint64_t seed, double tick,
    const std::function<void(std::uint64_t, const SimulationRecord&)>& sink);

// Expected utilities of a value-v bidder against rivals playing the profile.
// Wait at the opening and claim the Dutch clock at z in [0, s].
double DutchClaimUtility(const MarketConfig& cfg,
                         const EquilibriumProfile& profile, double v, double z);
// Bid at the opening and leave the English clock at y >= s.
double EnglishExitUtility(const MarketConfig& cfg,
                          const EquilibriumProfile& profile, double v, double y);
// Utility of the equilibrium action itself.
double EquilibriumUtility(const MarketConfig& cfg,
                          const EquilibriumProfile& profile, double v);

// Largest gain over the equilibrium utility among deviations on a grid of
// `grid_size` + 1 Dutch claim prices in [0, s] and English exit prices in
// [s, m(1, s)], covering both opening moves. Positive means a profitable
// deviation was found.
double BestResponseGap(const MarketConfig& cfg,
                       const EquilibriumProfile& profile, double v,
                       int grid_size);
double BestResponseGap(const MarketConfig& cfg, double s, double v,
                       int grid_size);

}  // namespace ifa

#endif  // IFA_SIMULATE_HPP_
