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

#include "ifa/reproduce.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <limits>

#include "ifa/error.hpp"
#include "ifa/optimize.hpp"
#include "ifa/serialize.hpp"

namespace ifa {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

ReproCheck Near(std::string name, double target, double computed, double tol) {
  ReproCheck c;
  c.name = std::move(name);
  c.target = target;
  c.computed = computed;
  c.tolerance = tol;
  c.passed = std::abs(computed - target) <= tol;
  return c;
}

ReproCheck Holds(std::string name, double computed, bool ok, std::string note) {
  ReproCheck c;
  c.name = std::move(name);
  c.target = kNaN;
  c.computed = computed;
  c.tolerance = kNaN;
  c.passed = ok;
  c.note = std::move(note);
  return c;
}

MarketConfig LinearMarket(int n, double mu) {
  MarketConfig cfg;
  cfg.n = n;
  cfg.cost = TimeCost::Linear(mu);
  return cfg;
}

double Percent(double ratio) { return 100.0 * (ratio - 1.0); }

void Example(ReproReport& rep, int threads) {
  const auto r = OptimizeStartingPrice(LinearMarket(2, 0.5),
                                       Objective::kAuctioneer, threads);
  auto& c = rep.checks;
  c.push_back(Near("s_star", 0.462, r.s_star, 0.005));
  c.push_back(Near("p(s_star)", 0.847, r.cutoff, 0.005));
  c.push_back(Near("s_tilde", 0.557, r.threshold.value, 0.005));
  c.push_back(Near("EU_A flower", 0.338, r.metrics.eu_auctioneer, 0.003));
  c.push_back(Near("EU_A dutch", 0.227, r.dutch.eu_auctioneer, 0.003));
  c.push_back(Near("EU_A english", 0.269, r.english.eu_auctioneer, 0.003));
  c.push_back(Near("ED flower", 0.138, r.metrics.expected_duration, 0.003));
  c.push_back(Near("EU_A gain vs dutch %", 49.0, Percent(r.vs_dutch.auctioneer), 2.0));
  c.push_back(Near("EU_A gain vs english %", 26.0, Percent(r.vs_english.auctioneer), 2.0));
  c.push_back(Near("EU_B gain vs dutch %", 58.0, Percent(r.vs_dutch.bidder), 3.0));
  c.push_back(Near("EU_S gain vs dutch %", 53.0, Percent(r.vs_dutch.social), 3.0));
  c.push_back(Near("ED change vs dutch %", -82.0, Percent(r.vs_dutch.duration), 3.0));
}

struct Table1Cell {
  int n;
  double mu;
  double auctioneer, buyer, welfare, duration;  // percent of Dutch
};

constexpr Table1Cell kTable1[] = {
    {2, 0.1, 105.75, 107.73, 106.73, 18.87},
    {2, 0.7, 207.74, 231.87, 218.19, 17.21},
    {10, 0.1, 101.38, 168.19, 108.00, 28.85},
    {10, 0.7, 130.11, 385.39, 152.83, 16.64},
};

void Table1(ReproReport& rep, int threads) {
  for (const auto& cell : kTable1) {
    const auto r = OptimizeStartingPrice(LinearMarket(cell.n, cell.mu),
                                         Objective::kAuctioneer, threads);
    char tag[48];
    std::snprintf(tag, sizeof(tag), "n=%d mu=%.1f ", cell.n, cell.mu);
    const std::string t(tag);
    auto& c = rep.checks;
    c.push_back(Near(t + "auctioneer %", cell.auctioneer,
                     100.0 * r.vs_dutch.auctioneer, 0.02 * cell.auctioneer));
    c.push_back(Near(t + "buyer %", cell.buyer, 100.0 * r.vs_dutch.bidder,
                     0.02 * cell.buyer));
    c.push_back(Near(t + "welfare %", cell.welfare, 100.0 * r.vs_dutch.social,
                     0.02 * cell.welfare));
    c.push_back(Near(t + "duration %", cell.duration,
                     100.0 * r.vs_dutch.duration, 1.5));
  }
}

void Fig1(ReproReport& rep, int threads) {
  const StartingPriceScan scan(LinearMarket(2, 0.5), threads);
  const auto& pts = scan.points();
  std::string csv = "x,y,series\n";
  for (const auto& m : pts) {
    csv += FormatDouble(m.s) + "," + FormatDouble(m.eu_auctioneer) + ",flower\n";
  }
  for (const auto& m : pts) {
    csv += FormatDouble(m.s) + "," + FormatDouble(scan.dutch().eu_auctioneer) +
           ",dutch\n";
  }
  for (const auto& m : pts) {
    csv += FormatDouble(m.s) + "," +
           FormatDouble(scan.english().eu_auctioneer) + ",english\n";
  }
  rep.artifact_name = "fig1.csv";
  rep.artifact_csv = std::move(csv);

  const auto best = std::max_element(
      pts.begin(), pts.end(), [](const auto& a, const auto& b) {
        return a.eu_auctioneer < b.eu_auctioneer;
      });
  const double s_tilde = scan.solver().threshold().value;
  rep.checks.push_back(Holds("argmax EU_A in (0, s_tilde)", best->s,
                             best->s > 0.0 && best->s < s_tilde,
                             "s_tilde=" + FormatDouble(s_tilde)));
  rep.checks.push_back(Holds(
      "EU_A(1) < EU_A(0)", scan.dutch().eu_auctioneer - scan.english().eu_auctioneer,
      scan.dutch().eu_auctioneer < scan.english().eu_auctioneer,
      "computed = EU_A(1) - EU_A(0)"));
}

std::vector<double> MuAxis() {
  std::vector<double> mus;
  for (int i = 0; i <= 16; ++i) mus.push_back(0.05 * i);
  return mus;
}

std::string SeriesName(const SweepRow& row, bool by_n) {
  char buf[64];
  if (by_n) {
    std::snprintf(buf, sizeof(buf), "n=%d/%s", row.n,
                  std::string(ObjectiveName(row.objective)).c_str());
  } else {
    std::snprintf(buf, sizeof(buf), "mu=%.2f/%s", row.mu,
                  std::string(ObjectiveName(row.objective)).c_str());
  }
  return buf;
}

// Shared checks for the two comparative figures. `x_of` picks the swept axis
// and `rising` says whether the auctioneer advantage should grow along it.
template <typename XOf>
void FigureChecks(ReproReport& rep, const std::vector<SweepRow>& rows,
                  bool by_n, XOf x_of, bool rising) {
  std::string csv = "x,y,series\n";
  int failures = 0;
  double worst_alt = INFINITY;
  int trivial = 0;
  for (const auto& r : rows) {
    if (!r.ok) {
      ++failures;
      continue;
    }
    csv += FormatDouble(x_of(r)) + "," +
           FormatDouble(Percent(r.ratios.auctioneer)) + "," +
           SeriesName(r, by_n) + "\n";
    if (r.objective != Objective::kAuctioneer) {
      worst_alt = std::min(worst_alt, r.ratios.auctioneer);
    }
    if (r.mu > 0.0 &&
        std::find(r.flags.begin(), r.flags.end(), "trivial") != r.flags.end()) {
      ++trivial;
    }
  }
  rep.artifact_csv = std::move(csv);
  rep.checks.push_back(Holds("all sweep cells solved", failures, failures == 0,
                             "computed = failed cells"));
  rep.checks.push_back(Holds("alt-objective EU_A >= 97% of Dutch", worst_alt,
                             worst_alt >= 0.97, "computed = worst ratio"));
  rep.checks.push_back(Holds("optimal prices non-trivial for mu > 0", trivial,
                             trivial == 0, "computed = trivial cells"));

  // Monotone trend of the auctioneer-objective advantage along each series.
  std::vector<const SweepRow*> series;
  auto flush = [&] {
    if (series.size() < 2) return;
    int breaks = 0;
    for (std::size_t i = 1; i < series.size(); ++i) {
      const double prev = series[i - 1]->ratios.auctioneer;
      const double cur = series[i]->ratios.auctioneer;
      if (rising ? cur < prev - 1e-6 : cur > prev + 1e-6) ++breaks;
    }
    char label[32];
    if (by_n) {
      std::snprintf(label, sizeof(label), "n=%d", series.front()->n);
    } else {
      std::snprintf(label, sizeof(label), "mu=%.2f", series.front()->mu);
    }
    rep.checks.push_back(Holds(
        std::string(label) + " auctioneer advantage " +
            (rising ? "rises" : "falls"),
        breaks, breaks == 0, "computed = monotonicity breaks"));
  };
  // Rows are mu-major then n; regroup by the fixed coordinate.
  std::vector<double> fixed;
  for (const auto& r : rows) {
    const double key = by_n ? r.n : r.mu;
    if (std::find(fixed.begin(), fixed.end(), key) == fixed.end()) {
      fixed.push_back(key);
    }
  }
  for (double key : fixed) {
    series.clear();
    for (const auto& r : rows) {
      if (r.ok && r.objective == Objective::kAuctioneer &&
          (by_n ? r.n : r.mu) == key) {
        series.push_back(&r);
      }
    }
    flush();
  }
}

void Fig2(ReproReport& rep, int threads) {
  const std::vector<double> mus = MuAxis();
  const int ns[] = {2, 10};
  const auto rows = ComparativeSweep(LinearMarket(2, 0.0), mus, ns,
                                     kAllObjectives, threads);
  FigureChecks(rep, rows, /*by_n=*/true, [](const SweepRow& r) { return r.mu; },
               /*rising=*/true);
  rep.artifact_name = "fig2.csv";
}

void Fig3(ReproReport& rep, int threads) {
  const double mus[] = {0.1, 0.7};
  std::vector<int> ns;
  for (int n = 2; n <= 20; ++n) ns.push_back(n);
  const auto rows = ComparativeSweep(LinearMarket(2, 0.1), mus, ns,
                                     kAllObjectives, threads);
  FigureChecks(rep, rows, /*by_n=*/false,
               [](const SweepRow& r) { return double(r.n); },
               /*rising=*/false);
  rep.artifact_name = "fig3.csv";

  double low_max = -INFINITY, high_min = INFINITY;
  for (const auto& r : rows) {
    if (!r.ok || r.objective != Objective::kAuctioneer) continue;
    const double adv = Percent(r.ratios.auctioneer);
    if (r.mu == 0.1) low_max = std::max(low_max, adv);
    if (r.mu == 0.7 && r.n > 10) high_min = std::min(high_min, adv);
  }
  rep.checks.push_back(Holds("mu=0.1 advantage < 10%", low_max, low_max < 10.0,
                             "computed = largest advantage %"));
  rep.checks.push_back(Holds("mu=0.7, n>10 advantage > 15%", high_min,
                             high_min > 15.0, "computed = smallest advantage %"));
}

}  // namespace

ReproReport Reproduce(std::string_view target, int threads) {
  const auto start = std::chrono::steady_clock::now();
  ReproReport rep;
  rep.target = std::string(target);
  if (target == "example") {
    Example(rep, threads);
  } else if (target == "table1") {
    Table1(rep, threads);
  } else if (target == "fig1") {
    Fig1(rep, threads);
  } else if (target == "fig2") {
    Fig2(rep, threads);
  } else if (target == "fig3") {
    Fig3(rep, threads);
  } else {
    throw ValidationError("unknown reproduce target '" + std::string(target) +
                          "' (expected example, table1, fig1, fig2, fig3)");
  }
  rep.passed = std::all_of(rep.checks.begin(), rep.checks.end(),
                           [](const ReproCheck& c) { return c.passed; });
  rep.seconds = std::chrono::duration<double>(
                    std::chrono::steady_clock::now() - start)
                    .count();
  return rep;
}

std::string FormatReport(const ReproReport& report) {
  std::string out;
  char line[256];
  std::snprintf(line, sizeof(line), "%-4s  %-40s %12s %12s %10s\n", "", "check",
                "target", "computed", "tolerance");
  out += line;
  int passed = 0;
  for (const auto& c : report.checks) {
    passed += c.passed;
    if (std::isnan(c.target)) {
      std::snprintf(line, sizeof(line), "%-4s  %-40s %12s %12.6g %10s  %s\n",
                    c.passed ? "PASS" : "FAIL", c.name.c_str(), "-", c.computed,
                    "-", c.note.c_str());
    } else {
      std::snprintf(line, sizeof(line), "%-4s  %-40s %12.6g %12.6g %10.4g\n",
                    c.passed ? "PASS" : "FAIL", c.name.c_str(), c.target,
                    c.computed, c.tolerance);
    }
    out += line;
  }
  std::snprintf(line, sizeof(line), "%s: %d/%zu checks passed in %.1f s\n",
                report.target.c_str(), passed, report.checks.size(),
                report.seconds);
  out += line;
  return out;
}

}  // namespace ifa
