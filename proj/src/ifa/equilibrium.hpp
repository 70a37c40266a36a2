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

#ifndef IFA_EQUILIBRIUM_HPP_
#define IFA_EQUILIBRIUM_HPP_

#include <vector>

#include "ifa/model.hpp"

namespace ifa {

// Tabulated Dutch-phase bid b(., s) on a uniform grid starting at v = 0.
// Between nodes the curve is a monotone cubic Hermite built from the ODE
// slopes (Fritsch-Carlson limited).
struct DutchBidCurve {
  double s = 0.0;
  double step = 0.0;
  std::vector<double> grid;
  std::vector<double> bids;
  std::vector<double> slopes;
  // Set when integration stopped because the bid would pass s; the crossing
  // lies in [bracket_lo, bracket_hi].
  bool hit_cap = false;
  double bracket_lo = 0.0;
  double bracket_hi = 0.0;

  double v_max() const { return grid.back(); }
  // Requires 0 <= v <= v_max().
  double Eval(double v) const;
  double Derivative(double v) const;
  // Value at which the curve reaches bid level `b`; b in [0, bids.back()].
  double Inverse(double b) const;

 private:
  double Hermite(double v, int order) const;
};

// Integrates the first-order condition
//   b'(v) = g/G * (c(s - b) v - b) / (1 + c'(s - b) v),  b(0) = 0,
// with classical RK4 on cfg.num.ode_steps uniform steps over [0, v_max]. The
// first step uses b ~ a v with a = (n-1) c(s) / n. Stops at the first node
// where b would exceed s. Throws SolverError on a vanishing denominator or a
// non-increasing step.
DutchBidCurve SolveDutchCurve(const MarketConfig& cfg, double s, double v_max);
// Same integration without the stop at b = s; used for sensitivities in s.
DutchBidCurve IntegrateDutchCurve(const MarketConfig& cfg, double s,
                                  double v_max);

// m(v, s): the English-phase exit price solving c(m - s) v = m.
double EnglishExit(const MarketConfig& cfg, double v, double s);
// Root-finder route for any cost family (bisection + Newton polish).
double EnglishExitByRoot(const TimeCost& cost, double v, double s,
                         double tol = 1e-12);
// dm/ds from implicit differentiation of the exit condition.
double EnglishExitSensitivity(const TimeCost& cost, double v, double s);

// p(s): values at or above it bid at the opening price.
double Cutoff(const MarketConfig& cfg, double s);

struct Threshold {
  double value = 1.0;
  // True when there is no time cost; value is then 1 by convention.
  bool degenerate = false;
};

// s~: smallest starting price at which every bidder waits (p(s) = 1).
Threshold ThresholdSTilde(const MarketConfig& cfg);

class EquilibriumProfile {
 public:
  double s() const { return s_; }
  double cutoff() const { return cutoff_; }
  const Threshold& threshold() const { return threshold_; }
  double s_tilde() const { return threshold_.value; }
  const DutchBidCurve& dutch_curve() const { return dutch_; }
  const TimeCost& cost() const { return cost_; }

  // b(v, s) for v in [0, cutoff()].
  double Bid(double v) const { return dutch_.Eval(v); }
  // m(v, s) for any v in [0, 1].
  double Exit(double v) const;

 private:
  friend EquilibriumProfile SolveProfile(const MarketConfig&, double,
                                         const Threshold&);
  double s_ = 0.0;
  double cutoff_ = 0.0;
  Threshold threshold_;
  DutchBidCurve dutch_;
  TimeCost cost_;
  double exit_tol_ = 1e-12;
};

EquilibriumProfile SolveProfile(const MarketConfig& cfg, double s);
// Reuses a threshold already computed for cfg.
EquilibriumProfile SolveProfile(const MarketConfig& cfg, double s,
                                const Threshold& threshold);

// Holds a validated config and its threshold so repeated solves over s do
// not recompute s~.
class EquilibriumSolver {
 public:
  explicit EquilibriumSolver(MarketConfig cfg);

  const MarketConfig& config() const { return cfg_; }
  const Threshold& threshold() const { return threshold_; }
  EquilibriumProfile Solve(double s) const {
    return SolveProfile(cfg_, s, threshold_);
  }

 private:
  MarketConfig cfg_;
  Threshold threshold_;
};

}  // namespace ifa

#endif  // IFA_EQUILIBRIUM_HPP_
