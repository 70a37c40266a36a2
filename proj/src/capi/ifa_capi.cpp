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

#include "ifa/ifa.h"

#include <cmath>
#include <cstdlib>
#include <cstring>
#include <exception>
#include <memory>
#include <new>
#include <string>
#include <vector>

#include "ifa/equilibrium.hpp"
#include "ifa/error.hpp"
#include "ifa/metrics.hpp"
#include "ifa/model.hpp"
#include "ifa/optimize.hpp"
#include "ifa/reproduce.hpp"
#include "ifa/serialize.hpp"
#include "ifa/simulate.hpp"
#include "json.hpp"

struct ifa_market {
  ifa::EquilibriumSolver solver;
};

struct ifa_profile {
  ifa::EquilibriumProfile profile;
};

struct ifa_sweep {
  std::vector<ifa::SweepRow> rows;
  std::vector<std::string> flags;
};

namespace {

thread_local std::string g_last_error;

ifa_status Fail(ifa_status status, const std::string& message) {
  g_last_error = message;
  return status;
}

// Maps C++ exceptions onto status codes at the API boundary.
template <typename Fn>
ifa_status Guard(Fn&& fn) {
  try {
    g_last_error.clear();
    return fn();
  } catch (const ifa::ValidationError& e) {
    return Fail(IFA_ERR_INVALID, e.what());
  } catch (const ifa::SolverError& e) {
    return Fail(IFA_ERR_SOLVER, e.what());
  } catch (const std::bad_alloc&) {
    return Fail(IFA_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return Fail(IFA_ERR_INTERNAL, e.what());
  } catch (...) {
    return Fail(IFA_ERR_INTERNAL, "unknown error");
  }
}

void Require(bool cond, const char* message) {
  if (!cond) throw ifa::ValidationError(message);
}

char* Dup(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

ifa_metrics ToC(const ifa::MetricsBundle& m) {
  return {m.s, m.eu_auctioneer, m.eu_bidder, m.eu_social, m.expected_duration};
}

ifa::MetricsBundle FromC(const ifa_metrics& m) {
  return {m.s, m.eu_auctioneer, m.eu_bidder, m.eu_social,
          m.expected_duration};
}

ifa_ratios ToC(const ifa::MetricRatios& r) {
  return {r.auctioneer, r.bidder, r.social, r.duration};
}

ifa::Objective FromC(ifa_objective o) {
  switch (o) {
    case IFA_OBJ_AUCTIONEER: return ifa::Objective::kAuctioneer;
    case IFA_OBJ_BIDDER: return ifa::Objective::kBidder;
    case IFA_OBJ_WELFARE: return ifa::Objective::kWelfare;
    case IFA_OBJ_DURATION: return ifa::Objective::kDuration;
  }
  throw ifa::ValidationError("unknown objective code");
}

ifa_objective ToC(ifa::Objective o) {
  switch (o) {
    case ifa::Objective::kAuctioneer: return IFA_OBJ_AUCTIONEER;
    case ifa::Objective::kBidder: return IFA_OBJ_BIDDER;
    case ifa::Objective::kWelfare: return IFA_OBJ_WELFARE;
    case ifa::Objective::kDuration: return IFA_OBJ_DURATION;
  }
  return IFA_OBJ_AUCTIONEER;
}

ifa_phase ToC(ifa::Phase p) {
  switch (p) {
    case ifa::Phase::kDutch: return IFA_PHASE_DUTCH;
    case ifa::Phase::kEnglishSolo: return IFA_PHASE_ENGLISH_SOLO;
    case ifa::Phase::kEnglishContested: return IFA_PHASE_ENGLISH_CONTESTED;
    case ifa::Phase::kNoSale: return IFA_PHASE_NO_SALE;
  }
  return IFA_PHASE_NO_SALE;
}

std::string JoinFlags(const std::vector<std::string>& flags) {
  std::string out;
  for (const auto& f : flags) {
    if (!out.empty()) out += ';';
    out += f;
  }
  return out;
}

}  // namespace

extern "C" {

const char* ifa_version(void) { return IFA_VERSION_STRING; }

const char* ifa_last_error(void) { return g_last_error.c_str(); }

void ifa_free(char* str) { std::free(str); }

void ifa_market_config_init(ifa_market_config* cfg) {
  if (!cfg) return;
  const ifa::NumericalSettings num;
  cfg->n = 2;
  cfg->distribution = "uniform";
  cfg->cost = "none";
  cfg->numerics = {num.ode_steps,     num.quad_nodes,    num.inner_nodes,
                   num.cutoff_tol,    num.threshold_tol, num.exit_tol,
                   num.optimizer_tol, num.scan_points};
}

ifa_status ifa_market_create(const ifa_market_config* cfg, ifa_market** out) {
  return Guard([&] {
    Require(cfg && out, "null argument");
    *out = nullptr;
    ifa::MarketConfig mc;
    mc.n = cfg->n;
    mc.dist = ifa::ValueDistribution::Parse(
        cfg->distribution ? cfg->distribution : "uniform");
    mc.cost = ifa::TimeCost::Parse(cfg->cost ? cfg->cost : "none");
    const auto& nu = cfg->numerics;
    mc.num = {nu.ode_steps,   nu.quad_nodes, nu.inner_nodes,
              nu.cutoff_tol,  nu.threshold_tol, nu.exit_tol,
              nu.optimizer_tol, nu.scan_points};
    *out = new ifa_market{ifa::EquilibriumSolver(mc)};
    return IFA_OK;
  });
}

void ifa_market_destroy(ifa_market* market) { delete market; }

ifa_status ifa_market_json(const ifa_market* market, char** out) {
  return Guard([&] {
    Require(market && out, "null argument");
    const auto& c = market->solver.config();
    nlohmann::ordered_json j;
    j["n"] = c.n;
    j["dist"] = c.dist.ToString();
    j["cost"] = c.cost.ToString();
    *out = Dup(j.dump());
    return IFA_OK;
  });
}

ifa_status ifa_validate_cost(const char* cost, int* passed,
                             char** report_json) {
  return Guard([&] {
    Require(cost && passed, "null argument");
    const auto tc = ifa::TimeCost::Parse(cost);
    const auto report = ifa::ValidateCost(tc);
    *passed = report.passed ? 1 : 0;
    if (report_json) *report_json = Dup(ifa::CostReportToJson(report));
    return IFA_OK;
  });
}

ifa_status ifa_threshold(const ifa_market* market, double* s_tilde,
                         int* degenerate) {
  return Guard([&] {
    Require(market && s_tilde, "null argument");
    *s_tilde = market->solver.threshold().value;
    if (degenerate) *degenerate = market->solver.threshold().degenerate;
    return IFA_OK;
  });
}

ifa_status ifa_profile_solve(const ifa_market* market, double s,
                             ifa_profile** out) {
  return Guard([&] {
    Require(market && out, "null argument");
    *out = nullptr;
    *out = new ifa_profile{market->solver.Solve(s)};
    return IFA_OK;
  });
}

void ifa_profile_destroy(ifa_profile* profile) { delete profile; }

ifa_status ifa_profile_cutoff(const ifa_profile* profile, double* cutoff) {
  return Guard([&] {
    Require(profile && cutoff, "null argument");
    *cutoff = profile->profile.cutoff();
    return IFA_OK;
  });
}

ifa_status ifa_profile_bid(const ifa_profile* profile, double v, double* bid) {
  return Guard([&] {
    Require(profile && bid, "null argument");
    Require(v >= 0.0 && v <= profile->profile.cutoff(),
            "v must lie in [0, p(s)]");
    *bid = profile->profile.Bid(v);
    return IFA_OK;
  });
}

ifa_status ifa_profile_exit(const ifa_profile* profile, double v,
                            double* exit_price) {
  return Guard([&] {
    Require(profile && exit_price, "null argument");
    Require(v >= 0.0 && v <= 1.0, "v must lie in [0, 1]");
    *exit_price = profile->profile.Exit(v);
    return IFA_OK;
  });
}

ifa_status ifa_profile_json(const ifa_profile* profile, char** out) {
  return Guard([&] {
    Require(profile && out, "null argument");
    *out = Dup(ifa::ProfileToJson(profile->profile));
    return IFA_OK;
  });
}

ifa_status ifa_profile_curve_csv(const ifa_profile* profile, char** out) {
  return Guard([&] {
    Require(profile && out, "null argument");
    *out = Dup(ifa::CurveToCsv(profile->profile));
    return IFA_OK;
  });
}

ifa_status ifa_metrics_compute(const ifa_market* market,
                               const ifa_profile* profile, ifa_metrics* out) {
  return Guard([&] {
    Require(market && profile && out, "null argument");
    *out = ToC(ifa::AuctionMetrics(market->solver.config(), profile->profile));
    return IFA_OK;
  });
}

ifa_status ifa_metrics_dutch(const ifa_market* market, ifa_metrics* out) {
  return Guard([&] {
    Require(market && out, "null argument");
    *out = ToC(ifa::DutchBenchmark(market->solver.config()));
    return IFA_OK;
  });
}

ifa_status ifa_metrics_english(const ifa_market* market, ifa_metrics* out) {
  return Guard([&] {
    Require(market && out, "null argument");
    *out = ToC(ifa::EnglishBenchmark(market->solver.config()));
    return IFA_OK;
  });
}

ifa_status ifa_metrics_json(const ifa_metrics* metrics, char** out) {
  return Guard([&] {
    Require(metrics && out, "null argument");
    *out = Dup(ifa::MetricsToJson(FromC(*metrics)));
    return IFA_OK;
  });
}

ifa_status ifa_myerson_baseline(const ifa_market* market, double* out) {
  return Guard([&] {
    Require(market && out, "null argument");
    *out = ifa::MyersonBaseline(market->solver.config());
    return IFA_OK;
  });
}

ifa_status ifa_auctioneer_slope(const ifa_market* market, double s,
                                double* out) {
  return Guard([&] {
    Require(market && out, "null argument");
    *out = ifa::AuctioneerUtilitySlope(market->solver.config(), s);
    return IFA_OK;
  });
}

ifa_status ifa_parse_objective(const char* name, ifa_objective* out) {
  return Guard([&] {
    Require(name && out, "null argument");
    *out = ToC(ifa::ParseObjective(name));
    return IFA_OK;
  });
}

const char* ifa_objective_name(ifa_objective objective) {
  switch (objective) {
    case IFA_OBJ_AUCTIONEER: return "auctioneer";
    case IFA_OBJ_BIDDER: return "bidder";
    case IFA_OBJ_WELFARE: return "welfare";
    case IFA_OBJ_DURATION: return "duration";
  }
  return "";
}

ifa_status ifa_optimize(const ifa_market* market, ifa_objective objective,
                        int threads, ifa_optimum* out, char** json) {
  return Guard([&] {
    Require(market && out, "null argument");
    const auto r = ifa::OptimizeStartingPrice(market->solver.config(),
                                              FromC(objective), threads);
    out->objective = objective;
    out->s_star = r.s_star;
    out->cutoff = r.cutoff;
    out->s_tilde = r.threshold.value;
    out->s_tilde_degenerate = r.threshold.degenerate;
    out->flat = r.flat;
    out->nontrivial = r.nontrivial;
    out->metrics = ToC(r.metrics);
    out->dutch = ToC(r.dutch);
    out->english = ToC(r.english);
    out->vs_dutch = ToC(r.vs_dutch);
    out->vs_english = ToC(r.vs_english);
    if (json) *json = Dup(ifa::OptimizationToJson(r));
    return IFA_OK;
  });
}

ifa_status ifa_sweep_run(const ifa_market* base, const double* mus,
                         size_t mu_count, const int* ns, size_t n_count,
                         const ifa_objective* objectives,
                         size_t objective_count, int threads,
                         ifa_sweep** out) {
  return Guard([&] {
    Require(base && out, "null argument");
    Require(mus && mu_count > 0, "mu grid is empty");
    Require(ns && n_count > 0, "n grid is empty");
    Require(objectives && objective_count > 0, "objective list is empty");
    *out = nullptr;
    std::vector<ifa::Objective> objs;
    for (size_t i = 0; i < objective_count; ++i) {
      objs.push_back(FromC(objectives[i]));
    }
    auto sweep = std::make_unique<ifa_sweep>();
    sweep->rows = ifa::ComparativeSweep(base->solver.config(),
                                        {mus, mu_count}, {ns, n_count}, objs,
                                        threads);
    for (const auto& r : sweep->rows) sweep->flags.push_back(JoinFlags(r.flags));
    *out = sweep.release();
    return IFA_OK;
  });
}

void ifa_sweep_destroy(ifa_sweep* sweep) { delete sweep; }

size_t ifa_sweep_size(const ifa_sweep* sweep) {
  return sweep ? sweep->rows.size() : 0;
}

ifa_status ifa_sweep_row_at(const ifa_sweep* sweep, size_t index,
                            ifa_sweep_row* out) {
  return Guard([&] {
    Require(sweep && out, "null argument");
    Require(index < sweep->rows.size(), "row index out of range");
    const auto& r = sweep->rows[index];
    out->mu = r.mu;
    out->n = r.n;
    out->objective = ToC(r.objective);
    out->ok = r.ok;
    out->s_star = r.s_star;
    out->cutoff = r.cutoff;
    out->s_tilde = r.s_tilde;
    out->vs_dutch = ToC(r.ratios);
    out->flags = sweep->flags[index].c_str();
    out->error = r.error.c_str();
    return IFA_OK;
  });
}

ifa_status ifa_sweep_csv(const ifa_sweep* sweep, char** out) {
  return Guard([&] {
    Require(sweep && out, "null argument");
    std::string csv = ifa::SweepCsvHeader() + "\n";
    for (const auto& r : sweep->rows) csv += ifa::SweepRowToCsv(r) + "\n";
    *out = Dup(csv);
    return IFA_OK;
  });
}

ifa_status ifa_sweep_json(const ifa_sweep* sweep, char** out) {
  return Guard([&] {
    Require(sweep && out, "null argument");
    auto rows = nlohmann::ordered_json::array();
    for (size_t i = 0; i < sweep->rows.size(); ++i) {
      const auto& r = sweep->rows[i];
      nlohmann::ordered_json j;
      j["mu"] = r.mu;
      j["n"] = r.n;
      j["objective"] = std::string(ifa::ObjectiveName(r.objective));
      j["ok"] = r.ok;
      if (r.ok) {
        j["s_star"] = r.s_star;
        j["p_star"] = r.cutoff;
        j["s_tilde"] = r.s_tilde;
        j["eu_a_ratio"] = r.ratios.auctioneer;
        j["eu_b_ratio"] = r.ratios.bidder;
        j["eu_s_ratio"] = r.ratios.social;
        j["ed_ratio"] = r.ratios.duration;
      } else {
        j["error"] = r.error;
      }
      j["flags"] = r.flags;
      rows.push_back(std::move(j));
    }
    nlohmann::ordered_json doc;
    doc["rows"] = std::move(rows);
    *out = Dup(doc.dump(2));
    return IFA_OK;
  });
}

ifa_status ifa_run_auction(const ifa_market* market,
                           const ifa_profile* profile, const double* values,
                           size_t count, double tick, uint64_t seed,
                           ifa_record* out) {
  return Guard([&] {
    Require(market && profile && values && out, "null argument");
    Require(count == static_cast<size_t>(market->solver.config().n),
            "number of values must equal n");
    auto rng = ifa::DrawRng(seed);
    const auto rec = ifa::RunAuction(market->solver.config(), profile->profile,
                                     {values, count}, tick, rng);
    out->phase = ToC(rec.phase);
    out->winner = rec.winner;
    out->price = rec.price;
    out->duration = rec.duration;
    out->initial_bidders = static_cast<int>(rec.initial_bidders.size());
    return IFA_OK;
  });
}

ifa_status ifa_monte_carlo(const ifa_market* market,
                           const ifa_profile* profile, uint64_t draws,
                           uint64_t seed, double tick, int threads,
                           ifa_mc_result* out) {
  return Guard([&] {
    Require(market && profile && out, "null argument");
    const auto r = ifa::MonteCarlo(market->solver.config(), profile->profile,
                                   draws, seed, tick, threads);
    out->draws = r.draws;
    out->tick = r.tick;
    out->auctioneer = {r.auctioneer.mean, r.auctioneer.std_error};
    out->bidder = {r.bidder.mean, r.bidder.std_error};
    out->social = {r.social.mean, r.social.std_error};
    out->duration = {r.duration.mean, r.duration.std_error};
    out->inefficient = r.inefficient;
    out->no_sale = r.no_sale;
    return IFA_OK;
  });
}

ifa_status ifa_mc_result_json(const ifa_mc_result* result, char** out) {
  return Guard([&] {
    Require(result && out, "null argument");
    ifa::MonteCarloResult r;
    r.draws = result->draws;
    r.tick = result->tick;
    r.auctioneer = {result->auctioneer.mean, result->auctioneer.std_error};
    r.bidder = {result->bidder.mean, result->bidder.std_error};
    r.social = {result->social.mean, result->social.std_error};
    r.duration = {result->duration.mean, result->duration.std_error};
    r.inefficient = result->inefficient;
    r.no_sale = result->no_sale;
    *out = Dup(ifa::MonteCarloToJson(r));
    return IFA_OK;
  });
}

ifa_status ifa_simulation_csv(const ifa_market* market,
                              const ifa_profile* profile, uint64_t draws,
                              uint64_t seed, double tick, ifa_write_fn write,
                              void* user) {
  return Guard([&] {
    Require(market && profile && write, "null argument");
    Require(market->solver.config().n <= ifa::kRecordValueColumns,
            "record CSV holds at most 20 bidders");
    std::string buffer = ifa::RecordsCsvHeader() + "\n";
    bool aborted = false;
    auto flush = [&] {
      if (!aborted && !buffer.empty() &&
          write(buffer.data(), buffer.size(), user) != 0) {
        aborted = true;
      }
      buffer.clear();
    };
    ifa::StreamSimulation(
        market->solver.config(), profile->profile, draws, seed, tick,
        [&](std::uint64_t id, const ifa::SimulationRecord& rec) {
          if (aborted) return;
          buffer += ifa::RecordToCsv(id, rec);
          buffer += '\n';
          if (buffer.size() > (1u << 16)) flush();
        });
    flush();
    if (aborted) return Fail(IFA_ERR_INTERNAL, "output sink aborted");
    return IFA_OK;
  });
}

ifa_status ifa_best_response_gap(const ifa_market* market,
                                 const ifa_profile* profile, double v,
                                 int grid_size, double* gap) {
  return Guard([&] {
    Require(market && profile && gap, "null argument");
    *gap = ifa::BestResponseGap(market->solver.config(), profile->profile, v,
                                grid_size);
    return IFA_OK;
  });
}

ifa_status ifa_reproduce(const char* target, int threads, char** report,
                         char** artifact_name, char** artifact_csv) {
  return Guard([&] {
    Require(target, "null argument");
    const auto r = ifa::Reproduce(target, threads);
    if (report) *report = Dup(ifa::FormatReport(r));
    if (artifact_name) *artifact_name = Dup(r.artifact_name);
    if (artifact_csv) *artifact_csv = Dup(r.artifact_csv);
    if (!r.passed) {
      return Fail(IFA_ERR_REPRODUCE,
                  "reproduction target '" + r.target + "' failed");
    }
    return IFA_OK;
  });
}

}  // extern "C"
