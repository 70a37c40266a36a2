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

#include "ifa/serialize.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "json.hpp"

namespace ifa {

using Json = nlohmann::ordered_json;

std::string FormatDouble(double x) {
  char buf[40];
  const auto res = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, res.ptr);
}

namespace {

void AppendArray(std::string& out, const std::vector<double>& xs) {
  out += '[';
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i) out += ',';
    out += FormatDouble(xs[i]);
  }
  out += ']';
}

Json MetricsJson(const MetricsBundle& m) {
  return Json{{"s", m.s},
              {"eu_a", m.eu_auctioneer},
              {"eu_b", m.eu_bidder},
              {"eu_s", m.eu_social},
              {"ed", m.expected_duration}};
}

Json RatiosJson(const MetricRatios& r) {
  return Json{{"eu_a", r.auctioneer},
              {"eu_b", r.bidder},
              {"eu_s", r.social},
              {"ed", r.duration}};
}

Json EstimateJson(const Estimate& e) {
  return Json{{"mean", e.mean}, {"std_error", e.std_error}};
}

}  // namespace

std::string ProfileToJson(const EquilibriumProfile& profile) {
  std::string out = "{\"s\":" + FormatDouble(profile.s()) +
                    ",\"p\":" + FormatDouble(profile.cutoff()) +
                    ",\"s_tilde\":" + FormatDouble(profile.s_tilde()) +
                    ",\"s_tilde_degenerate\":" +
                    (profile.threshold().degenerate ? "true" : "false") +
                    ",\"grid\":";
  AppendArray(out, profile.dutch_curve().grid);
  out += ",\"bids\":";
  AppendArray(out, profile.dutch_curve().bids);
  out += "}";
  return out;
}

std::string CurveToCsv(const EquilibriumProfile& profile) {
  const auto& c = profile.dutch_curve();
  std::string out = "v,b\n";
  for (std::size_t i = 0; i < c.grid.size(); ++i) {
    out += FormatDouble(c.grid[i]) + "," + FormatDouble(c.bids[i]) + "\n";
  }
  return out;
}

std::string MetricsToJson(const MetricsBundle& m) {
  return MetricsJson(m).dump();
}

std::string MetricsCsvHeader() { return "s,eu_a,eu_b,eu_s,ed"; }

std::string MetricsToCsvRow(const MetricsBundle& m) {
  return FormatDouble(m.s) + "," + FormatDouble(m.eu_auctioneer) + "," +
         FormatDouble(m.eu_bidder) + "," + FormatDouble(m.eu_social) + "," +
         FormatDouble(m.expected_duration);
}

std::string OptimizationToJson(const OptimizationResult& r) {
  Json j{{"objective", std::string(ObjectiveName(r.objective))},
         {"s_star", r.s_star},
         {"p_star", r.cutoff},
         {"s_tilde", r.threshold.value},
         {"s_tilde_degenerate", r.threshold.degenerate},
         {"flat", r.flat},
         {"nontrivial", r.nontrivial},
         {"flags", r.flags},
         {"metrics", MetricsJson(r.metrics)},
         {"dutch", MetricsJson(r.dutch)},
         {"english", MetricsJson(r.english)},
         {"vs_dutch", RatiosJson(r.vs_dutch)},
         {"vs_english", RatiosJson(r.vs_english)}};
  return j.dump(2);
}

std::string SweepCsvHeader() {
  return "mu,n,objective,s_star,p_star,s_tilde,eu_a_ratio,eu_b_ratio,"
         "eu_s_ratio,ed_ratio,flags";
}

std::string SweepRowToCsv(const SweepRow& row) {
  std::string flags;
  for (const auto& f : row.flags) {
    if (!flags.empty()) flags += ';';
    flags += f;
  }
  std::ostringstream os;
  os << FormatDouble(row.mu) << ',' << row.n << ','
     << ObjectiveName(row.objective) << ',';
  if (!row.ok) {
    // Failed cells keep their place; the error text replaces the flags.
    std::string err = row.error;
    for (char& ch : err) {
      if (ch == ',' || ch == '\n' || ch == ';') ch = ' ';
    }
    os << ",,,,,,,error:" << err;
    return os.str();
  }
  os << FormatDouble(row.s_star) << ',' << FormatDouble(row.cutoff) << ','
     << FormatDouble(row.s_tilde) << ',' << FormatDouble(row.ratios.auctioneer)
     << ',' << FormatDouble(row.ratios.bidder) << ','
     << FormatDouble(row.ratios.social) << ','
     << FormatDouble(row.ratios.duration) << ',' << flags;
  return os.str();
}

std::string RecordsCsvHeader() {
  std::string out = "draw_id,phase,winner,price,duration";
  for (int i = 1; i <= kRecordValueColumns; ++i) {
    out += ",v" + std::to_string(i);
  }
  return out;
}

std::string RecordToCsv(std::uint64_t draw_id, const SimulationRecord& rec) {
  if (rec.values.size() > static_cast<std::size_t>(kRecordValueColumns)) {
    throw ValidationError("record CSV holds at most 20 bidder values");
  }
  std::string out = std::to_string(draw_id) + "," +
                    std::string(PhaseName(rec.phase)) + "," +
                    std::to_string(rec.winner) + "," + FormatDouble(rec.price) +
                    "," + FormatDouble(rec.duration);
  for (int i = 0; i < kRecordValueColumns; ++i) {
    out += ',';
    if (static_cast<std::size_t>(i) < rec.values.size()) {
      out += FormatDouble(rec.values[i]);
    }
  }
  return out;
}

std::string MonteCarloToJson(const MonteCarloResult& r) {
  Json j{{"draws", r.draws},
         {"tick", r.tick},
         {"eu_a", EstimateJson(r.auctioneer)},
         {"eu_b", EstimateJson(r.bidder)},
         {"eu_s", EstimateJson(r.social)},
         {"ed", EstimateJson(r.duration)},
         {"inefficient", r.inefficient},
         {"inefficiency_rate", r.inefficiency_rate()},
         {"no_sale", r.no_sale}};
  return j.dump(2);
}

std::string CostReportToJson(const CostValidationReport& report) {
  Json violations = Json::array();
  for (const auto& v : report.violations) {
    Json item{{"condition", v.condition}, {"detail", v.detail}};
    item["t"] = std::isnan(v.t) ? Json(nullptr) : Json(v.t);
    violations.push_back(std::move(item));
  }
  return Json{{"passed", report.passed}, {"violations", violations}}.dump(2);
}

}  // namespace ifa
