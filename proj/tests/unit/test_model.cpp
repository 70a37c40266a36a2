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

#include <cmath>
#include <random>

#include "doctest.h"
#include "ifa/model.hpp"
#include "oracles.hpp"

using namespace ifa;

TEST_SUITE("model") {

TEST_CASE("cost values at reference points") {
  CHECK(TimeCost::Linear(0.5).Value(0.0) == 1.0);
  CHECK(TimeCost::Linear(0.5).Value(0.2) == doctest::Approx(0.9).epsilon(1e-15));
  CHECK(TimeCost::None().Value(0.7) == 1.0);
  CHECK(TimeCost::Exponential(0.3).Value(0.5) ==
        doctest::Approx(oracle::ExpSeries(-0.15)).epsilon(1e-14));
  CHECK(TimeCost::Exponential(0.3).Value(0.5) == doctest::Approx(0.860708).epsilon(1e-6));
  CHECK(TimeCost::Hyperbolic(0.7).Value(1.0) == doctest::Approx(1.0 / 1.7));
}

TEST_CASE("c(0) is exactly one for every family") {
  for (double mu : {0.0, 0.1, 0.5, 0.9}) {
    CHECK(TimeCost::Linear(mu).Value(0.0) == 1.0);
    CHECK(TimeCost::Exponential(mu).Value(0.0) == 1.0);
    CHECK(TimeCost::Hyperbolic(mu).Value(0.0) == 1.0);
  }
}

TEST_CASE("cost evaluation rejects bad arguments") {
  CHECK_THROWS_AS(TimeCost::Linear(0.5).Value(-0.1), ValidationError);
  CHECK_THROWS_AS(TimeCost::Linear(0.5).Value(1.1), ValidationError);
  CHECK_THROWS_AS(TimeCost::Linear(1.2).Value(0.5), ValidationError);
  CHECK_THROWS_AS(TimeCost::Hyperbolic(-0.1).Slope(0.5), ValidationError);
  try {
    TimeCost::Linear(1.5).Value(0.1);
    FAIL("expected a validation error");
  } catch (const ValidationError& e) {
    CHECK(std::string(e.what()).find("0 <= mu < 1") != std::string::npos);
  }
}

TEST_CASE("cost parsing round trips") {
  for (const char* text : {"none", "linear:0.5", "exponential:0.25", "hyperbolic:0.7"}) {
    CHECK(TimeCost::Parse(text).ToString() == text);
  }
  CHECK_THROWS_AS(TimeCost::Parse("linear"), ValidationError);
  CHECK_THROWS_AS(TimeCost::Parse("quadratic:0.1"), ValidationError);
  CHECK_THROWS_AS(TimeCost::Parse("linear:abc"), ValidationError);
  CHECK_THROWS_AS(TimeCost::Parse("none:0.2"), ValidationError);
}

TEST_CASE("analytic slope matches central differences") {
  std::mt19937_64 rng(20260101);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const double h = 1e-5;
  for (int i = 0; i < 100; ++i) {
    const double mu = 0.95 * unit(rng);
    const double t = h + (1.0 - 2.0 * h) * unit(rng);
    for (const auto& c : {TimeCost::Linear(mu), TimeCost::Exponential(mu),
                          TimeCost::Hyperbolic(mu)}) {
      const double fd = (c.Value(t + h) - c.Value(t - h)) / (2.0 * h);
      CHECK(std::abs(c.Slope(t) - fd) <= 1e-6);
      const double fd2 = (c.Slope(t + h) - c.Slope(t - h)) / (2.0 * h);
      CHECK(std::abs(c.Curvature(t) - fd2) <= 1e-5);
    }
  }
}

TEST_CASE("hyperbolic curvature has the closed form 2 mu^2 / (1 + mu t)^3") {
  const double mu = 0.7;
  for (double t : {0.0, 0.3, 1.0}) {
    CHECK(TimeCost::Hyperbolic(mu).Curvature(t) ==
          doctest::Approx(2 * mu * mu / std::pow(1 + mu * t, 3)));
  }
}

TEST_CASE("cost validation reports") {
  CHECK(ValidateCost(TimeCost::Linear(0.5)).passed);
  CHECK(ValidateCost(TimeCost::Hyperbolic(0.7)).passed);
  CHECK(ValidateCost(TimeCost::None()).passed);

  const auto bad = ValidateCost(TimeCost::Linear(1.2));
  CHECK_FALSE(bad.passed);
  REQUIRE_FALSE(bad.violations.empty());
  bool names_range = false;
  for (const auto& v : bad.violations) names_range |= v.condition == "mu_range";
  CHECK(names_range);
}

TEST_CASE("validation passes exactly on the admissible mu range") {
  for (double mu : {0.0, 0.1, 0.5, 0.7, 0.9 - 1e-9, 0.999}) {
    CHECK(ValidateCost(TimeCost::Linear(mu)).passed);
    CHECK(ValidateCost(TimeCost::Exponential(mu)).passed);
    CHECK(ValidateCost(TimeCost::Hyperbolic(mu)).passed);
  }
  for (double mu : {1.0, 1.2, -0.1}) {
    CHECK_FALSE(ValidateCost(TimeCost::Linear(mu)).passed);
    CHECK_FALSE(ValidateCost(TimeCost::Exponential(mu)).passed);
    CHECK_FALSE(ValidateCost(TimeCost::Hyperbolic(mu)).passed);
  }
}

TEST_CASE("uniform distribution") {
  const auto u = ValueDistribution::Uniform();
  CHECK(u.Cdf(0.0) == 0.0);
  CHECK(u.Cdf(1.0) == 1.0);
  CHECK(u.Cdf(0.3) == 0.3);
  CHECK(u.Quantile(0.25) == 0.25);
  CHECK(oracle::Simpson([&](double v) { return u.Pdf(v); }, 0, 1, 101) ==
        doctest::Approx(1.0));
  CHECK(u.UpperPartialMean(0.4) ==
        doctest::Approx(oracle::Simpson([&](double v) { return v * u.Pdf(v); },
                                        0.4, 1, 101)));
  CHECK_THROWS_AS(ValueDistribution::Parse("beta"), ValidationError);
}

TEST_CASE("order statistic reference values") {
  MarketConfig two;
  MarketConfig three;
  three.n = 3;
  CHECK(RivalMaxCdf(two, 0.6) == doctest::Approx(0.6));
  CHECK(TopTwoDensity(two, 0.8, 0.3) == doctest::Approx(2.0));
  CHECK(RivalMaxCdf(three, 0.5) == doctest::Approx(0.25));
  CHECK_THROWS_AS(TopTwoDensity(two, 0.3, 0.8), ValidationError);
  CHECK_THROWS_AS(RivalMaxCdf(two, 1.5), ValidationError);
}

TEST_CASE("order statistic densities integrate to one") {
  for (int n : {2, 3, 5, 10}) {
    MarketConfig cfg;
    cfg.n = n;
    const double total =
        oracle::Simpson([&](double v) { return RivalMaxPdf(cfg, v); }, 0, 1, 2001);
    CHECK(std::abs(total - 1.0) <= 1e-8);
    for (double v : {0.2, 0.5, 0.9}) {
      const double partial =
          oracle::Simpson([&](double x) { return RivalMaxPdf(cfg, x); }, 0, v, 2001);
      CHECK(std::abs(partial - RivalMaxCdf(cfg, v)) <= 1e-8);
    }
    const double joint = oracle::Simpson(
        [&](double v) {
          return oracle::Simpson([&](double x) { return TopTwoDensity(cfg, v, x); },
                                 0, v, 801);
        },
        0, 1, 801);
    CHECK(std::abs(joint - 1.0) <= 1e-8);
  }
}

TEST_CASE("hazard g/G agrees with the ratio away from zero") {
  MarketConfig cfg;
  cfg.n = 4;
  for (double v : {0.1, 0.5, 1.0}) {
    CHECK(RivalHazard(cfg, v) ==
          doctest::Approx(RivalMaxPdf(cfg, v) / RivalMaxCdf(cfg, v)));
  }
}

TEST_CASE("market validation") {
  MarketConfig cfg;
  CHECK_NOTHROW(cfg.Validate());
  cfg.n = 1;
  CHECK_THROWS_AS(cfg.Validate(), ValidationError);
  cfg.n = 2;
  cfg.cost = TimeCost::Linear(1.0);
  CHECK_THROWS_AS(cfg.Validate(), ValidationError);
  cfg.cost = TimeCost::Linear(0.5);
  cfg.num.cutoff_tol = 0.0;
  CHECK_THROWS_AS(cfg.Validate(), ValidationError);
  cfg.num.cutoff_tol = 1e-12;
  cfg.num.quad_nodes = 2000;
  CHECK_THROWS_AS(cfg.Validate(), ValidationError);
}

}  // TEST_SUITE
