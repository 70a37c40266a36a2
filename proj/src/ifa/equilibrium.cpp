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

#include "ifa/equilibrium.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <utility>

#include "ifa/numerics.hpp"

namespace ifa {

namespace {

constexpr double kDenominatorFloor = 1e-12;

std::string Describe(const char* what, double v, double s) {
  std::ostringstream os;
  os.precision(17);
  os << what << " at v=" << v << ", s=" << s;
  return os.str();
}

// Right-hand side of the Dutch first-order condition plus an RK4 driver that
// sub-divides steps where the hazard g/G makes the problem stiff (near v = 0
// it behaves like (n-1)/v).
class DutchOde {
 public:
  DutchOde(const MarketConfig& cfg, double s) : cfg_(cfg), s_(s) {}

  double StartSlope() const {
    return (cfg_.n - 1) * cfg_.cost.ValueExt(s_) / cfg_.n;
  }

  double Rhs(double v, double b) const {
    const double t = s_ - b;
    const double denom = 1.0 + cfg_.cost.SlopeExt(t) * v;
    if (denom < kDenominatorFloor) {
      throw SolverError(Describe("Dutch ODE denominator 1 + c'(s-b)v vanished", v, s_));
    }
    return RivalHazard(cfg_, v) * (cfg_.cost.ValueExt(t) * v - b) / denom;
  }

  // Advances b from v by dv (v > 0).
  double Advance(double v, double b, double dv) const {
    const int sub = std::max(
        1, static_cast<int>(std::ceil(2.0 * RivalHazard(cfg_, v) * dv)));
    const double h = dv / sub;
    for (int i = 0; i < sub; ++i) {
      const double x = v + i * h;
      const double k1 = Rhs(x, b);
      const double k2 = Rhs(x + 0.5 * h, b + 0.5 * h * k1);
      const double k3 = Rhs(x + 0.5 * h, b + 0.5 * h * k2);
      const double k4 = Rhs(x + h, b + h * k3);
      b += h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    }
    return b;
  }

 private:
  const MarketConfig& cfg_;
  double s_;
};

DutchBidCurve Integrate(const MarketConfig& cfg, double s, double v_max,
                        bool stop_at_cap) {
  const int steps = cfg.num.ode_steps;
  const DutchOde ode(cfg, s);
  DutchBidCurve curve;
  curve.s = s;
  curve.step = v_max / steps;
  curve.grid.reserve(steps + 1);
  curve.bids.reserve(steps + 1);
  curve.slopes.reserve(steps + 1);
  curve.grid.push_back(0.0);
  curve.bids.push_back(0.0);
  curve.slopes.push_back(ode.StartSlope());

  const double h = curve.step;
  for (int k = 0; k < steps; ++k) {
    const double v = k * h;
    const double b = curve.bids.back();
    const double next_v = (k + 1 == steps) ? v_max : (k + 1) * h;
    const double next_b =
        (k == 0) ? ode.StartSlope() * next_v : ode.Advance(v, b, next_v - v);
    if (!std::isfinite(next_b)) {
      throw SolverError(Describe("Dutch ODE produced a non-finite bid", next_v, s));
    }
    if (stop_at_cap && next_b > s) {
      curve.hit_cap = true;
      curve.bracket_lo = v;
      curve.bracket_hi = next_v;
      return curve;
    }
    if (!(next_b > b)) {
      throw SolverError(Describe("Dutch bid curve is not increasing", next_v, s));
    }
    curve.grid.push_back(next_v);
    curve.bids.push_back(next_b);
    curve.slopes.push_back(ode.Rhs(next_v, next_b));
  }
  return curve;
}

// Locates the crossing b(v) = s inside the bracket recorded on `curve`.
double RefineCrossing(const MarketConfig& cfg, const DutchBidCurve& curve) {
  const DutchOde ode(cfg, curve.s);
  const double v0 = curve.bracket_lo;
  const double b0 = curve.bids.back();
  const double s = curve.s;
  if (v0 == 0.0) return s / ode.StartSlope();
  const double dv = numerics::Bisect(
      [&](double d) { return (d == 0.0 ? b0 : ode.Advance(v0, b0, d)) - s; },
      0.0, curve.bracket_hi - v0, cfg.num.cutoff_tol);
  return std::min(1.0, v0 + dv);
}

void RequireStartingPrice(double s) {
  if (!(s >= 0.0 && s <= 1.0)) {
    std::ostringstream os;
    os << "starting price s=" << s << " outside [0, 1]";
    throw ValidationError(os.str());
  }
}

}  // namespace

// Value (order 0) or first derivative (order 1) of the limited cubic Hermite
// interpolant.
double DutchBidCurve::Hermite(double v, int order) const {
  const double top = grid.back();
  if (!(v >= 0.0 && v <= top * (1.0 + 1e-12) + 1e-15)) {
    std::ostringstream os;
    os.precision(17);
    os << "Dutch curve queried at v=" << v << " outside [0, " << top << "]";
    throw SolverError(os.str());
  }
  if (grid.size() == 1) return order == 0 ? bids.front() : slopes.front();
  const std::size_t last = grid.size() - 1;
  if (v >= grid[last]) return order == 0 ? bids[last] : slopes[last];
  const std::size_t i = std::min(last - 1, static_cast<std::size_t>(v / step));
  const double x0 = grid[i], x1 = grid[i + 1];
  const double w = x1 - x0;
  const double y0 = bids[i], y1 = bids[i + 1];
  double m0 = slopes[i], m1 = slopes[i + 1];
  const double delta = (y1 - y0) / w;
  const double a = m0 / delta, b = m1 / delta;
  if (a * a + b * b > 9.0) {
    const double tau = 3.0 / std::sqrt(a * a + b * b);
    m0 = tau * a * delta;
    m1 = tau * b * delta;
  }
  const double t = (v - x0) / w;
  const double t2 = t * t, t3 = t2 * t;
  if (order == 0) {
    return (2 * t3 - 3 * t2 + 1) * y0 + (t3 - 2 * t2 + t) * w * m0 +
           (-2 * t3 + 3 * t2) * y1 + (t3 - t2) * w * m1;
  }
  return ((6 * t2 - 6 * t) * y0 + (-6 * t2 + 6 * t) * y1) / w +
         (3 * t2 - 4 * t + 1) * m0 + (3 * t2 - 2 * t) * m1;
}

double DutchBidCurve::Eval(double v) const { return Hermite(v, 0); }

double DutchBidCurve::Derivative(double v) const { return Hermite(v, 1); }

double DutchBidCurve::Inverse(double b) const {
  if (!(b >= 0.0 && b <= bids.back())) {
    std::ostringstream os;
    os.precision(17);
    os << "bid level " << b << " outside the curve's range [0, " << bids.back()
       << "]";
    throw SolverError(os.str());
  }
  if (b == 0.0) return 0.0;
  const auto it = std::lower_bound(bids.begin(), bids.end(), b);
  const std::size_t hi = static_cast<std::size_t>(it - bids.begin());
  if (bids[hi] == b) return grid[hi];
  return numerics::Bisect([&](double v) { return Eval(v) - b; }, grid[hi - 1],
                          grid[hi], 1e-14);
}

DutchBidCurve SolveDutchCurve(const MarketConfig& cfg, double s,
                              double v_max) {
  if (!(s > 0.0 && s <= 1.0)) {
    throw ValidationError("Dutch curve needs a starting price in (0, 1]");
  }
  if (!(v_max > 0.0 && v_max <= 1.0)) {
    throw ValidationError("Dutch curve needs v_max in (0, 1]");
  }
  return Integrate(cfg, s, v_max, /*stop_at_cap=*/true);
}

DutchBidCurve IntegrateDutchCurve(const MarketConfig& cfg, double s,
                                  double v_max) {
  if (!(s > 0.0 && s <= 1.0 + 1e-6) || !(v_max > 0.0 && v_max <= 1.0)) {
    throw ValidationError("Dutch curve needs s in (0, 1] and v_max in (0, 1]");
  }
  return Integrate(cfg, s, v_max, /*stop_at_cap=*/false);
}

double EnglishExitByRoot(const TimeCost& cost, double v, double s,
                         double tol) {
  const auto residual = [&](double m) { return cost.ValueExt(m - s) * v - m; };
  // The residual is decreasing in m. Its root sits in [s, s + 1] when v >= s
  // (duration in [0, 1]) and in [0, s] otherwise.
  double lo = v >= s ? s : 0.0;
  double hi = v >= s ? s + 1.0 : s;
  for (int it = 0; it < 200 && hi - lo > 1e-15; ++it) {
    const double mid = 0.5 * (lo + hi);
    (residual(mid) > 0.0 ? lo : hi) = mid;
  }
  double m = 0.5 * (lo + hi);
  for (int it = 0; it < 3; ++it) {
    const double d = cost.SlopeExt(m - s) * v - 1.0;
    const double next = m - residual(m) / d;
    if (!(next >= lo - 1e-12 && next <= hi + 1e-12)) break;
    m = next;
  }
  if (std::abs(residual(m)) > tol) {
    throw SolverError(Describe("English exit root did not converge", v, s));
  }
  return m;
}

double EnglishExit(const MarketConfig& cfg, double v, double s) {
  if (!(v >= 0.0 && v <= 1.0)) {
    throw ValidationError("English exit needs v in [0, 1]");
  }
  RequireStartingPrice(s);
  const TimeCost& cost = cfg.cost;
  switch (cost.kind()) {
    case CostKind::kNone:
      return v;
    case CostKind::kLinear: {
      const double mu = cost.mu();
      const double closed = (1.0 + mu * s) * v / (1.0 + mu * v);
      const double root = EnglishExitByRoot(cost, v, s, cfg.num.exit_tol);
      if (std::abs(closed - root) > 1e-10) {
        throw SolverError(Describe("linear exit closed form disagrees with root", v, s));
      }
      return closed;
    }
    default:
      return EnglishExitByRoot(cost, v, s, cfg.num.exit_tol);
  }
}

double EnglishExitSensitivity(const TimeCost& cost, double v, double s) {
  const double m = EnglishExitByRoot(cost, v, s);
  const double k = cost.SlopeExt(m - s) * v;
  return -k / (1.0 - k);
}

double Cutoff(const MarketConfig& cfg, double s) {
  RequireStartingPrice(s);
  if (s == 0.0) return 0.0;
  const DutchBidCurve curve = SolveDutchCurve(cfg, s, 1.0);
  if (!curve.hit_cap) return 1.0;
  return RefineCrossing(cfg, curve);
}

Threshold ThresholdSTilde(const MarketConfig& cfg) {
  cfg.Validate();
  if (!cfg.cost.has_time_cost()) return {1.0, true};
  const auto crosses = [&](double s) {
    return SolveDutchCurve(cfg, s, 1.0).hit_cap;
  };
  double lo = 0.0, hi = 1.0;
  while (hi - lo > cfg.num.threshold_tol) {
    const double mid = 0.5 * (lo + hi);
    (crosses(mid) ? lo : hi) = mid;
  }
  return {hi, false};
}

double EquilibriumProfile::Exit(double v) const {
  if (cost_.kind() == CostKind::kLinear) {
    const double mu = cost_.mu();
    return (1.0 + mu * s_) * v / (1.0 + mu * v);
  }
  if (cost_.kind() == CostKind::kNone) return v;
  return EnglishExitByRoot(cost_, v, s_, exit_tol_);
}

EquilibriumProfile SolveProfile(const MarketConfig& cfg, double s) {
  cfg.Validate();
  return SolveProfile(cfg, s, ThresholdSTilde(cfg));
}

EquilibriumProfile SolveProfile(const MarketConfig& cfg, double s,
                                const Threshold& threshold) {
  cfg.Validate();
  RequireStartingPrice(s);
  EquilibriumProfile profile;
  profile.s_ = s;
  profile.threshold_ = threshold;
  profile.cost_ = cfg.cost;
  profile.exit_tol_ = cfg.num.exit_tol;

  if (s == 0.0) {
    // Everyone bids at the opening: a pure English auction.
    profile.cutoff_ = 0.0;
    profile.dutch_.s = 0.0;
    profile.dutch_.step = 1.0;
    profile.dutch_.grid = {0.0};
    profile.dutch_.bids = {0.0};
    profile.dutch_.slopes = {0.0};
    return profile;
  }

  DutchBidCurve full = SolveDutchCurve(cfg, s, 1.0);
  if (!full.hit_cap) {
    profile.cutoff_ = 1.0;
    profile.dutch_ = std::move(full);
    return profile;
  }
  const double p = RefineCrossing(cfg, full);
  profile.cutoff_ = p;
  // Re-tabulate on [0, p] so the last node sits exactly at the cutoff.
  DutchBidCurve curve = Integrate(cfg, s, p, /*stop_at_cap=*/false);
  for (double& b : curve.bids) b = std::min(b, s);
  profile.dutch_ = std::move(curve);
  return profile;
}

EquilibriumSolver::EquilibriumSolver(MarketConfig cfg) : cfg_(std::move(cfg)) {
  cfg_.Validate();
  threshold_ = ThresholdSTilde(cfg_);
}

}  // namespace ifa
