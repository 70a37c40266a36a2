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

#include <algorithm>
#include <cmath>
#include <vector>

#include "doctest.h"
#include "ifa/metrics.hpp"
#include "ifa/simulate.hpp"

using namespace ifa;

namespace {

MarketConfig Linear(int n, double mu) {
  MarketConfig cfg;
  cfg.n = n;
  cfg.cost = TimeCost::Linear(mu);
  return cfg;
}

SimulationRecord Play(const MarketConfig& cfg, const EquilibriumProfile& pr,
                      std::vector<double> values, double tick = 1e-4) {
  DrawRng rng(42);
  return RunAuction(cfg, pr, values, tick, rng);
}

}  // namespace

TEST_SUITE("simulate") {

TEST_CASE("rng is deterministic per draw") {
  auto a = DrawRng::ForDraw(7, 3), b = DrawRng::ForDraw(7, 3), c = DrawRng::ForDraw(7, 4);
  for (int i = 0; i < 5; ++i) {
    const auto x = a();
    CHECK(x == b());
    CHECK(x != c());
  }
  auto u = DrawRng::ForDraw(1, 1);
  for (int i = 0; i < 1000; ++i) {
    const double x = u.Uniform();
    CHECK(x >= 0.0);
    CHECK(x < 1.0);
  }
}

TEST_CASE("single opening bidder buys at the starting price") {
  const auto cfg = Linear(2, 0.5);
  const auto pr = SolveProfile(cfg, 0.462);
  const auto r = Play(cfg, pr, {0.9, 0.3});
  CHECK(r.phase == Phase::kEnglishSolo);
  CHECK(r.winner == 0);
  CHECK(r.price == 0.462);
  CHECK(r.duration == 0.0);
  REQUIRE(r.initial_bidders.size() == 1);
  CHECK(r.initial_bidders[0] == 0);
}

TEST_CASE("no opening bid runs the Dutch clock") {
  const auto cfg = Linear(2, 0.5);
  const auto pr = SolveProfile(cfg, 0.462);
  const double tick = 1e-4;
  const auto r = Play(cfg, pr, {0.5, 0.2}, tick);
  CHECK(r.phase == Phase::kDutch);
  CHECK(r.winner == 0);
  CHECK(r.price <= pr.Bid(0.5) + 1e-12);
  CHECK(r.price > pr.Bid(0.5) - tick - 1e-12);
  CHECK(r.duration == doctest::Approx(0.462 - r.price).epsilon(1e-12));
  CHECK(r.initial_bidders.empty());
}

TEST_CASE("contested English phase ends at the runner-up's exit") {
  const auto cfg = Linear(2, 0.5);
  const auto pr = SolveProfile(cfg, 0.462);
  const double tick = 1e-4;
  const auto r = Play(cfg, pr, {0.9, 0.88}, tick);
  CHECK(r.phase == Phase::kEnglishContested);
  CHECK(r.winner == 0);
  CHECK(std::abs(r.price - pr.Exit(0.88)) <= tick);
  CHECK(r.duration == doctest::Approx(r.price - 0.462).epsilon(1e-12));
}

TEST_CASE("zero values claim at the floor") {
  const auto cfg = Linear(3, 0.5);
  const auto pr = SolveProfile(cfg, 0.4);
  const auto r = Play(cfg, pr, {0.0, 0.0, 0.0});
  CHECK(r.phase == Phase::kDutch);
  CHECK(r.price == 0.0);
  CHECK(r.duration == doctest::Approx(0.4));
  CHECK(r.winner >= 0);
  CHECK(r.winner < 3);
}

TEST_CASE("auction inputs are validated") {
  const auto cfg = Linear(2, 0.5);
  const auto pr = SolveProfile(cfg, 0.462);
  CHECK_THROWS_AS(Play(cfg, pr, {0.5, 0.2}, 0.0), ValidationError);
  CHECK_THROWS_AS(Play(cfg, pr, {0.5, 1.2}), ValidationError);
  CHECK_THROWS_AS(Play(cfg, pr, {0.5}), ValidationError);
  CHECK_THROWS_AS(MonteCarlo(cfg, pr, 0, 1, 1e-4, 1), ValidationError);
}

TEST_CASE("record invariants over random draws") {
  for (const auto& cfg : {Linear(2, 0.5), Linear(5, 0.7)}) {
    for (double s : {0.0, 0.3, 1.0}) {
      const auto pr = SolveProfile(cfg, s);
      for (std::uint64_t id = 0; id < 2000; ++id) {
        const auto r = SimulateDraw(cfg, pr, 99, id, 1e-3);
        CHECK(r.values.size() == static_cast<std::size_t>(cfg.n));
        const auto k = r.initial_bidders.size();
        CHECK((r.phase == Phase::kDutch) == (k == 0));
        CHECK((r.phase == Phase::kEnglishSolo) == (k == 1));
        CHECK(r.phase != Phase::kNoSale);
        if (k > 0) {
          CHECK(std::find(r.initial_bidders.begin(), r.initial_bidders.end(),
                          r.winner) != r.initial_bidders.end());
          CHECK(r.price >= s);
          CHECK(r.duration == doctest::Approx(r.price - s).epsilon(1e-12));
        } else {
          CHECK(r.price <= s);
          CHECK(r.duration == doctest::Approx(s - r.price).epsilon(1e-12));
        }
        if (r.phase == Phase::kEnglishSolo) {
          CHECK(r.price == s);
          CHECK(r.duration == 0.0);
        }
      }
    }
  }
}

TEST_CASE("Monte Carlo is reproducible and schedule independent") {
  const auto cfg = Linear(3, 0.4);
  const auto pr = SolveProfile(cfg, 0.3);
  const auto a = MonteCarlo(cfg, pr, 20000, 5, 1e-4, 1);
  const auto b = MonteCarlo(cfg, pr, 20000, 5, 1e-4, 3);
  CHECK(a.auctioneer.mean == b.auctioneer.mean);
  CHECK(a.auctioneer.std_error == b.auctioneer.std_error);
  CHECK(a.social.mean == b.social.mean);
  CHECK(a.duration.mean == b.duration.mean);
  CHECK(a.inefficient == b.inefficient);

  const auto one = SimulateDraw(cfg, pr, 123, 0, 1e-4);
  const auto again = SimulateDraw(cfg, pr, 123, 0, 1e-4);
  CHECK(one.values == again.values);
  CHECK(one.price == again.price);
  CHECK(one.winner == again.winner);

  std::vector<double> streamed;
  StreamSimulation(cfg, pr, 50, 5, 1e-4, [&](std::uint64_t id, const SimulationRecord& r) {
    CHECK(id == streamed.size());
    streamed.push_back(r.price);
  });
  for (std::uint64_t id = 0; id < 50; ++id) {
    CHECK(streamed[id] == SimulateDraw(cfg, pr, 5, id, 1e-4).price);
  }
}

TEST_CASE("second-price revenue without time cost") {
  MarketConfig cfg;
  const auto pr = SolveProfile(cfg, 0.0);
  const auto mc = MonteCarlo(cfg, pr, 1000000, 2024, 1e-4, 0);
  CHECK(std::abs(mc.auctioneer.mean - 1.0 / 3.0) <= 3 * mc.auctioneer.std_error);
}

TEST_CASE("simulation agrees with quadrature in the illustrative market") {
  const auto cfg = Linear(2, 0.5);
  const auto pr = SolveProfile(cfg, 0.462);
  const auto exact = AuctionMetrics(cfg, pr);
  const auto mc = MonteCarlo(cfg, pr, 200000, 77, 1e-4, 0);
  CHECK(std::abs(mc.auctioneer.mean - exact.eu_auctioneer) <= 3 * mc.auctioneer.std_error);
  CHECK(std::abs(mc.bidder.mean - exact.eu_bidder) <= 3 * mc.bidder.std_error);
  CHECK(std::abs(mc.social.mean - exact.eu_social) <= 3 * mc.social.std_error);
  CHECK(std::abs(mc.duration.mean - exact.expected_duration) <= 3 * mc.duration.std_error);
  CHECK(mc.inefficiency_rate() <= 10 * 1e-4);
  CHECK(mc.no_sale == 0);
}

TEST_CASE("no profitable deviation from the equilibrium") {
  const auto cfg = Linear(2, 0.5);
  const auto pr = SolveProfile(cfg, 0.462);
  CHECK(BestResponseGap(cfg, pr, 0.5, 400) <= 5e-4);
  CHECK(BestResponseGap(cfg, 0.462, 0.95, 400) <= 5e-4);
  CHECK_THROWS_AS(BestResponseGap(cfg, pr, 0.5, 0), ValidationError);
}

TEST_CASE("marginal bidder is indifferent between opening and waiting") {
  const auto cfg = Linear(2, 0.5);
  const auto pr = SolveProfile(cfg, 0.462);
  const double p = pr.cutoff();
  const double wait = DutchClaimUtility(cfg, pr, p, pr.Bid(p));
  const double open = EnglishExitUtility(cfg, pr, p, pr.Exit(p));
  CHECK(std::abs(wait - open) <= 1e-4);
}

TEST_CASE("overbidding loses surplus without time cost") {
  MarketConfig cfg;
  const auto pr = SolveProfile(cfg, 1.0);
  const double eq = EquilibriumUtility(cfg, pr, 0.8);
  CHECK(DutchClaimUtility(cfg, pr, 0.8, 0.4) == doctest::Approx(eq));
  CHECK(DutchClaimUtility(cfg, pr, 0.8, 0.8) - eq < 0.0);
  // Equilibrium surplus for two bidders: G(v) (v - v/2) = v^2 / 2.
  CHECK(eq == doctest::Approx(0.32).epsilon(1e-6));
}

}  // TEST_SUITE
