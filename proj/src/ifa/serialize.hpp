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

#ifndef IFA_SERIALIZE_HPP_
#define IFA_SERIALIZE_HPP_

#include <cstdint>
#include <span>
#include <string>

#include "ifa/equilibrium.hpp"
#include "ifa/metrics.hpp"
#include "ifa/model.hpp"
#include "ifa/optimize.hpp"
#include "ifa/simulate.hpp"

namespace ifa {

// Shortest decimal form that parses back to the same double.
std::string FormatDouble(double x);

// {"s":..,"p":..,"s_tilde":..,"s_tilde_degenerate":..,"grid":[..],"bids":[..]}
std::string ProfileToJson(const EquilibriumProfile& profile);
// "v,b" header then one row per grid node.
std::string CurveToCsv(const EquilibriumProfile& profile);

std::string MetricsToJson(const MetricsBundle& m);
std::string MetricsCsvHeader();  // s,eu_a,eu_b,eu_s,ed
std::string MetricsToCsvRow(const MetricsBundle& m);

std::string OptimizationToJson(const OptimizationResult& r);

// mu,n,objective,s_star,p_star,s_tilde,eu_a_ratio,eu_b_ratio,eu_s_ratio,
// ed_ratio,flags
std::string SweepCsvHeader();
std::string SweepRowToCsv(const SweepRow& row);

// draw_id,phase,winner,price,duration,v1..v20; unused value columns are empty.
inline constexpr int kRecordValueColumns = 20;
std::string RecordsCsvHeader();
std::string RecordToCsv(std::uint64_t draw_id, const SimulationRecord& rec);

std::string MonteCarloToJson(const MonteCarloResult& r);
std::string CostReportToJson(const CostValidationReport& report);

}  // namespace ifa

#endif  // IFA_SERIALIZE_HPP_
