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

#ifndef IFA_MODEL_HPP_
#define IFA_MODEL_HPP_

#include <string>
#include <string_view>
#include <vector>

#include "ifa/error.hpp"

namespace ifa {

enum class CostKind { kNone, kLinear, kExponential, kHyperbolic };

// Multiplicative discount c(t) applied to the winner's value after the clock
// has run for t units. c(0) = 1; mu is the impatience parameter in [0, 1).
class TimeCost {
 public:
  TimeCost() = default;
  TimeCost(CostKind kind, double mu);

  static TimeCost None() { return {}; }
  static TimeCost Linear(double mu) { return {CostKind::kLinear, mu}; }
  static TimeCost Exponential(double mu) {
    return {CostKind::kExponential, mu};
  }
  static TimeCost Hyperbolic(double mu) { return {CostKind::kHyperbolic, mu}; }

  // Parses "<kind>:<mu>" or "none". Throws ValidationError.
  static TimeCost Parse(std::string_view text);
  std::string ToString() const;

  CostKind kind() const { return kind_; }
  double mu() const { return mu_; }
  bool has_time_cost() const { return kind_ != CostKind::kNone && mu_ > 0.0; }

  // Checked entry points: t must lie in [0, 1] and mu in [0, 1).
  double Value(double t) const;
  double Slope(double t) const;
  double Curvature(double t) const;

  // Unchecked evaluation on the analytic continuation, t in [-1, 1]. The
  // equilibrium solvers probe slightly negative durations while bracketing.
  double ValueExt(double t) const;
  double SlopeExt(double t) const;
  double CurvatureExt(double t) const;

 private:
  void RequireValid(double t) const;

  CostKind kind_ = CostKind::kNone;
  double mu_ = 0.0;
};

struct CostViolation {
  std::string condition;
  double t = 0.0;  // NaN when the violation is not tied to a point
  std::string detail;
};

struct CostValidationReport {
  bool passed = true;
  std::vector<CostViolation> violations;
};

// Samples c, c', c'' on a 1001-point grid over [0,1] and checks c(0) = 1,
// strict decrease, -1 < c' <= 0, c'' >= 0 and the mu range.
CostValidationReport ValidateCost(const TimeCost& cost);

enum class DistributionKind { kUniform };

// Private value distribution on [0, 1]. Only Uniform ships; new kinds must
// keep f(0) > 0 because the Dutch ODE start-up divides by it.
class ValueDistribution {
 public:
  ValueDistribution() = default;
  explicit ValueDistribution(DistributionKind kind) : kind_(kind) {}

  static ValueDistribution Uniform() { return ValueDistribution{}; }
  static ValueDistribution Parse(std::string_view text);
  std::string ToString() const;

  DistributionKind kind() const { return kind_; }

  double Cdf(double v) const;
  double Pdf(double v) const;
  double Quantile(double u) const;
  // Integral of x f(x) over [v, 1].
  double UpperPartialMean(double v) const;

 private:
  DistributionKind kind_ = DistributionKind::kUniform;
};

struct NumericalSettings {
  int ode_steps = 2000;
  int quad_nodes = 2001;  // odd; composite Simpson on each outer integral
  int inner_nodes = 201;  // odd; used by test oracles and deviation utilities
  double cutoff_tol = 1e-12;
  double threshold_tol = 1e-6;
  double exit_tol = 1e-12;
  double optimizer_tol = 1e-4;
  int scan_points = 201;
};

struct MarketConfig {
  int n = 2;
  ValueDistribution dist;
  TimeCost cost;
  NumericalSettings num;

  // Throws ValidationError on n < 2, mu outside [0, 1), or bad tolerances.
  void Validate() const;
};

// Order statistics of i.i.d. values.
// G(v) = F^{n-1}(v): CDF of the highest of n - 1 rivals.
double RivalMaxCdf(const MarketConfig& cfg, double v);
// g(v) = G'(v).
double RivalMaxPdf(const MarketConfig& cfg, double v);
// h(v, x) = n(n-1) f(v) f(x) F^{n-2}(x): joint density of the top two of n
// values. Requires 0 <= x <= v <= 1.
double TopTwoDensity(const MarketConfig& cfg, double v, double x);
// g(v) / G(v), evaluated without forming the ratio of two small numbers.
double RivalHazard(const MarketConfig& cfg, double v);

}  // namespace ifa

#endif  // IFA_MODEL_HPP_
