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

#include "ifa/metrics.hpp"

#include <cmath>
#include <vector>

#include "ifa/numerics.hpp"

namespace ifa {

using numerics::Simpson;

MetricsBundle AuctionMetrics(const MarketConfig& cfg,
                             const EquilibriumProfile& profile) {
  const int n = cfg.n;
  const int nodes = cfg.num.quad_nodes;
  const auto& dist = cfg.dist;
  const auto& cost = cfg.cost;
  const double s = profile.s();
  const double p = profile.cutoff();

  MetricsBundle out;
  out.s = s;

  if (p > 0.0) {
    // Dutch phase: the highest value v < p claims at b(v, s) after s - b.
    std::vector<double> rev(nodes), bid(nodes), soc(nodes), dur(nodes);
    const double h = p / (nodes - 1);
    for (int i = 0; i < nodes; ++i) {
      const double v = (i + 1 == nodes) ? p : i * h;
      const double b = profile.Bid(v);
      const double F = dist.Cdf(v);
      const double rivals = std::pow(F, n - 1);
      const double dFn = n * dist.Pdf(v) * rivals;
      const double discounted = cost.ValueExt(s - b) * v;
      rev[i] = b * dFn;
      soc[i] = discounted * dFn;
      dur[i] = (s - b) * dFn;
      bid[i] = (discounted - b) * rivals * dist.Pdf(v);
    }
    out.eu_auctioneer += numerics::SimpsonSamples(rev, h);
    out.eu_social += numerics::SimpsonSamples(soc, h);
    out.expected_duration += numerics::SimpsonSamples(dur, h);
    out.eu_bidder += numerics::SimpsonSamples(bid, h);
  }

  if (p < 1.0) {
    const double Fp = dist.Cdf(p);
    const double Gp = std::pow(Fp, n - 1);
    // Exactly one opening bidder: sale at s with no clock time.
    out.eu_auctioneer += s * n * Gp * (1.0 - Fp);
    out.eu_social += n * Gp * dist.UpperPartialMean(p);
    out.eu_bidder += Gp * (dist.UpperPartialMean(p) - s * (1.0 - Fp));

    // Contested English phase: second-highest value x >= p sets the price
    // m(x, s) after m - s units of time.
    std::vector<double> rev(nodes), bid(nodes), soc(nodes), dur(nodes);
    const double h = (1.0 - p) / (nodes - 1);
    for (int i = 0; i < nodes; ++i) {
      const double x = (i + 1 == nodes) ? 1.0 : p + i * h;
      const double m = profile.Exit(x);
      const double F = dist.Cdf(x);
      const double g = (n - 1) * dist.Pdf(x) * std::pow(F, n - 2);
      const double survive = 1.0 - F;
      const double upper_mean = dist.UpperPartialMean(x);
      const double c = cost.ValueExt(m - s);
      rev[i] = m * n * g * survive;
      soc[i] = c * n * g * upper_mean;
      dur[i] = (m - s) * n * g * survive;
      bid[i] = g * (c * upper_mean - m * survive);
    }
    out.eu_auctioneer += numerics::SimpsonSamples(rev, h);
    out.eu_social += numerics::SimpsonSamples(soc, h);
    out.expected_duration += numerics::SimpsonSamples(dur, h);
    out.eu_bidder += numerics::SimpsonSamples(bid, h);
  }
  return out;
}

MetricsBundle DutchBenchmark(const MarketConfig& cfg) {
  return AuctionMetrics(cfg, SolveProfile(cfg, 1.0));
}

MetricsBundle EnglishBenchmark(const MarketConfig& cfg) {
  return AuctionMetrics(cfg, SolveProfile(cfg, 0.0));
}

double MyersonBaseline(const MarketConfig& cfg) {
  cfg.Validate();
  const auto& dist = cfg.dist;
  const int nodes = cfg.num.quad_nodes;
  for (int i = 1; i < nodes; ++i) {
    const double v = static_cast<double>(i) / (nodes - 1);
    if (!(dist.Pdf(v) > 0.0)) {
      throw ValidationError(
          "virtual-value integral needs a density that is positive on (0, 1]");
    }
  }
  return Simpson(
      [&](double v) {
        const double f = dist.Pdf(v);
        const double F = dist.Cdf(v);
        return (v - (1.0 - F) / f) * cfg.n * f * std::pow(F, cfg.n - 1);
      },
      0.0, 1.0, nodes);
}

double AuctioneerUtilitySlope(const MarketConfig& cfg, double s, double ds) {
  cfg.Validate();
  const int n = cfg.n;
  const int nodes = cfg.num.quad_nodes;
  const auto& dist = cfg.dist;
  const auto& cost = cfg.cost;
  const EquilibriumProfile profile = SolveProfile(cfg, s);
  const double p = profile.cutoff();

  // English phase: int_p^1 int_p^v dm/ds h dx dv, order swapped.
  double english = 0.0;
  if (p < 1.0) {
    english = Simpson(
        [&](double x) {
          const double F = dist.Cdf(x);
          const double g = (n - 1) * dist.Pdf(x) * std::pow(F, n - 2);
          return EnglishExitSensitivity(cost, x, s) * n * g * (1.0 - F);
        },
        p, 1.0, nodes);
  }
  if (p == 0.0) return english;

  // db/ds on the grid over [0, p] by central differences in s.
  const double s_hi = std::min(1.0, s + ds);
  const double s_lo = s - ds > 0.0 ? s - ds : s;
  const DutchBidCurve up = IntegrateDutchCurve(cfg, s_hi, p);
  const DutchBidCurve down = IntegrateDutchCurve(cfg, s_lo, p);
  const auto dbds = [&](double v) {
    return (up.Eval(v) - down.Eval(v)) / (s_hi - s_lo);
  };
  const double dutch = Simpson(
      [&](double v) {
        return dbds(v) * n * dist.Pdf(v) * std::pow(dist.Cdf(v), n - 1);
      },
      0.0, p, nodes);
  if (p >= 1.0) return dutch;

  // Boundary terms from moving the cutoff. b(p, s) = s gives
  // dp/ds = (1 - db/ds) / db/dv at v = p.
  const double Fp = dist.Cdf(p), fp = dist.Pdf(p);
  const double bp = profile.Bid(p);
  const double dbdv = profile.dutch_curve().slopes.back();
  const double dpds = (1.0 - dbds(p)) / dbdv;
  const double m_p = profile.Exit(p);
  const double boundary_dutch = -dpds * (s - bp) * n * std::pow(Fp, n - 1) * fp;
  const double boundary_english = -dpds * (m_p - s) * n * (n - 1) * (1.0 - Fp) *
                                  std::pow(Fp, n - 2) * fp;
  const double solo = n * (1.0 - Fp) * std::pow(Fp, n - 1);
  return boundary_dutch + boundary_english + solo + english + dutch;
}

}  // namespace ifa
