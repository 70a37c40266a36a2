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

#include "ifa/model.hpp"

#include <charconv>
#include <cmath>
#include <limits>
#include <sstream>

namespace ifa {

namespace {

std::string FormatShortest(double x) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, res.ptr);
}

const char* KindName(CostKind kind) {
  switch (kind) {
    case CostKind::kNone:
      return "none";
    case CostKind::kLinear:
      return "linear";
    case CostKind::kExponential:
      return "exponential";
    case CostKind::kHyperbolic:
      return "hyperbolic";
  }
  return "?";
}

bool MuInRange(double mu) { return mu >= 0.0 && mu < 1.0; }

}  // namespace

TimeCost::TimeCost(CostKind kind, double mu) : kind_(kind), mu_(mu) {
  if (!std::isfinite(mu)) throw ValidationError("time cost mu must be finite");
  if (kind_ == CostKind::kNone) mu_ = 0.0;
}

TimeCost TimeCost::Parse(std::string_view text) {
  const auto colon = text.find(':');
  const std::string_view kind = text.substr(0, colon);
  if (kind == "none") {
    if (colon != std::string_view::npos) {
      throw ValidationError("time cost 'none' takes no parameter");
    }
    return None();
  }
  if (colon == std::string_view::npos) {
    throw ValidationError("time cost must be written <kind>:<mu> or 'none', got '" +
                          std::string(text) + "'");
  }
  const std::string_view mu_text = text.substr(colon + 1);
  double mu = 0.0;
  auto [ptr, ec] =
      std::from_chars(mu_text.data(), mu_text.data() + mu_text.size(), mu);
  if (ec != std::errc() || ptr != mu_text.data() + mu_text.size() ||
      mu_text.empty()) {
    throw ValidationError("cannot parse time cost parameter '" +
                          std::string(mu_text) + "'");
  }
  if (kind == "linear") return Linear(mu);
  if (kind == "exponential") return Exponential(mu);
  if (kind == "hyperbolic") return Hyperbolic(mu);
  throw ValidationError("unknown time cost kind '" + std::string(kind) +
                        "' (expected none, linear, exponential, hyperbolic)");
}

std::string TimeCost::ToString() const {
  if (kind_ == CostKind::kNone) return "none";
  return std::string(KindName(kind_)) + ":" + FormatShortest(mu_);
}

void TimeCost::RequireValid(double t) const {
  if (!(t >= 0.0 && t <= 1.0)) {
    throw ValidationError("time cost argument t=" + FormatShortest(t) +
                          " outside [0, 1]");
  }
  if (!MuInRange(mu_)) {
    throw ValidationError("time cost mu=" + FormatShortest(mu_) +
                          " outside [0, 1); mu must satisfy 0 <= mu < 1");
  }
}

double TimeCost::Value(double t) const {
  RequireValid(t);
  return ValueExt(t);
}

double TimeCost::Slope(double t) const {
  RequireValid(t);
  return SlopeExt(t);
}

double TimeCost::Curvature(double t) const {
  RequireValid(t);
  return CurvatureExt(t);
}

double TimeCost::ValueExt(double t) const {
  switch (kind_) {
    case CostKind::kNone:
      return 1.0;
    case CostKind::kLinear:
      return 1.0 - mu_ * t;
    case CostKind::kExponential:
      return std::exp(-mu_ * t);
    case CostKind::kHyperbolic:
      return 1.0 / (1.0 + mu_ * t);
  }
  return 1.0;
}

double TimeCost::SlopeExt(double t) const {
  switch (kind_) {
    case CostKind::kNone:
      return 0.0;
    case CostKind::kLinear:
      return -mu_;
    case CostKind::kExponential:
      return -mu_ * std::exp(-mu_ * t);
    case CostKind::kHyperbolic: {
      const double d = 1.0 + mu_ * t;
      return -mu_ / (d * d);
    }
  }
  return 0.0;
}

double TimeCost::CurvatureExt(double t) const {
  switch (kind_) {
    case CostKind::kNone:
    case CostKind::kLinear:
      return 0.0;
    case CostKind::kExponential:
      return mu_ * mu_ * std::exp(-mu_ * t);
    case CostKind::kHyperbolic: {
      const double d = 1.0 + mu_ * t;
      return 2.0 * mu_ * mu_ / (d * d * d);
    }
  }
  return 0.0;
}

CostValidationReport ValidateCost(const TimeCost& cost) {
  CostValidationReport report;
  auto fail = [&](std::string condition, double t, std::string detail) {
    report.passed = false;
    report.violations.push_back({std::move(condition), t, std::move(detail)});
  };
  const double nan = std::numeric_limits<double>::quiet_NaN();
  if (!MuInRange(cost.mu())) {
    fail("mu_range", nan,
         "mu=" + FormatShortest(cost.mu()) + " outside [0, 1)");
  }

  constexpr int kGrid = 1001;
  bool seen_origin = false, seen_monotone = false, seen_slope = false,
       seen_convex = false;
  double prev = 0.0;
  for (int i = 0; i < kGrid; ++i) {
    const double t = static_cast<double>(i) / (kGrid - 1);
    const double c = cost.ValueExt(t);
    const double dc = cost.SlopeExt(t);
    const double ddc = cost.CurvatureExt(t);
    if (i == 0 && c != 1.0 && !seen_origin) {
      seen_origin = true;
      fail("c(0)=1", t, "c(0)=" + FormatShortest(c));
    }
    if (i > 0 && !seen_monotone) {
      const bool strict = cost.has_time_cost();
      if ((strict && !(c < prev)) || (!strict && c != prev)) {
        seen_monotone = true;
        fail(strict ? "strictly_decreasing" : "constant", t,
             "c(t)=" + FormatShortest(c) + " vs previous " +
                 FormatShortest(prev));
      }
    }
    if (!(dc > -1.0 && dc <= 0.0) && !seen_slope) {
      seen_slope = true;
      fail("slope_in_(-1,0]", t, "c'(t)=" + FormatShortest(dc));
    }
    if (!(ddc >= 0.0) && !seen_convex) {
      seen_convex = true;
      fail("convex", t, "c''(t)=" + FormatShortest(ddc));
    }
    prev = c;
  }
  return report;
}

ValueDistribution ValueDistribution::Parse(std::string_view text) {
  if (text == "uniform") return Uniform();
  throw ValidationError("unknown value distribution '" + std::string(text) +
                        "' (expected uniform)");
}

std::string ValueDistribution::ToString() const { return "uniform"; }

double ValueDistribution::Cdf(double v) const {
  if (v <= 0.0) return 0.0;
  if (v >= 1.0) return 1.0;
  return v;
}

double ValueDistribution::Pdf(double v) const {
  return (v >= 0.0 && v <= 1.0) ? 1.0 : 0.0;
}

double ValueDistribution::Quantile(double u) const {
  if (u <= 0.0) return 0.0;
  if (u >= 1.0) return 1.0;
  return u;
}

double ValueDistribution::UpperPartialMean(double v) const {
  const double x = Cdf(v);
  return 0.5 * (1.0 - x * x);
}

void MarketConfig::Validate() const {
  if (n < 2) {
    throw ValidationError("bidder count n=" + std::to_string(n) +
                          " must be at least 2");
  }
  if (!MuInRange(cost.mu())) {
    throw ValidationError("time cost mu=" + FormatShortest(cost.mu()) +
                          " outside [0, 1); mu must satisfy 0 <= mu < 1");
  }
  const auto positive = [](double x) { return std::isfinite(x) && x > 0.0; };
  if (num.ode_steps < 4 || num.scan_points < 3) {
    throw ValidationError("ode_steps must be >= 4 and scan_points >= 3");
  }
  if (num.quad_nodes < 3 || num.quad_nodes % 2 == 0 || num.inner_nodes < 3 ||
      num.inner_nodes % 2 == 0) {
    throw ValidationError("quadrature node counts must be odd and >= 3");
  }
  if (!positive(num.cutoff_tol) || !positive(num.threshold_tol) ||
      !positive(num.exit_tol) || !positive(num.optimizer_tol)) {
    throw ValidationError("numerical tolerances must be strictly positive");
  }
}

namespace {

void RequireUnit(double v, const char* name) {
  if (!(v >= 0.0 && v <= 1.0)) {
    std::ostringstream os;
    os << name << "=" << v << " outside [0, 1]";
    throw ValidationError(os.str());
  }
}

}  // namespace

double RivalMaxCdf(const MarketConfig& cfg, double v) {
  RequireUnit(v, "v");
  return std::pow(cfg.dist.Cdf(v), cfg.n - 1);
}

double RivalMaxPdf(const MarketConfig& cfg, double v) {
  RequireUnit(v, "v");
  return (cfg.n - 1) * cfg.dist.Pdf(v) * std::pow(cfg.dist.Cdf(v), cfg.n - 2);
}

double TopTwoDensity(const MarketConfig& cfg, double v, double x) {
  RequireUnit(v, "v");
  RequireUnit(x, "x");
  if (x > v) {
    throw ValidationError("top-two density needs x <= v (second <= highest)");
  }
  const auto& d = cfg.dist;
  return cfg.n * (cfg.n - 1) * d.Pdf(v) * d.Pdf(x) *
         std::pow(d.Cdf(x), cfg.n - 2);
}

double RivalHazard(const MarketConfig& cfg, double v) {
  return (cfg.n - 1) * cfg.dist.Pdf(v) / cfg.dist.Cdf(v);
}

}  // namespace ifa
