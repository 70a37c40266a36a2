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
#include <cstring>
#include <string>

#include "doctest.h"
#include "ifa/ifa.h"
#include "json.hpp"

using Json = nlohmann::json;

namespace {

struct Owned {
  char* p = nullptr;
  ~Owned() { ifa_free(p); }
  std::string str() const { return p ? p : ""; }
};

ifa_market* Market(int n, const char* cost) {
  ifa_market_config cfg;
  ifa_market_config_init(&cfg);
  cfg.n = n;
  cfg.cost = cost;
  ifa_market* m = nullptr;
  REQUIRE(ifa_market_create(&cfg, &m) == IFA_OK);
  return m;
}

}  // namespace

TEST_SUITE("capi") {

TEST_CASE("version and defaults") {
  CHECK(std::strlen(ifa_version()) > 0);
  ifa_market_config cfg;
  ifa_market_config_init(&cfg);
  CHECK(cfg.n == 2);
  CHECK(std::string(cfg.cost) == "none");
  CHECK(cfg.numerics.ode_steps == 2000);
  CHECK(cfg.numerics.quad_nodes == 2001);
  CHECK(cfg.numerics.scan_points == 201);
}

TEST_CASE("invalid markets are reported with messages") {
  ifa_market_config cfg;
  ifa_market_config_init(&cfg);
  ifa_market* m = nullptr;
  cfg.cost = "linear:1.5";
  CHECK(ifa_market_create(&cfg, &m) == IFA_ERR_INVALID);
  CHECK(m == nullptr);
  CHECK(std::string(ifa_last_error()).find("0 <= mu < 1") != std::string::npos);
  cfg.cost = "linear:0.5";
  cfg.n = 1;
  CHECK(ifa_market_create(&cfg, &m) == IFA_ERR_INVALID);
  cfg.n = 2;
  cfg.distribution = "normal";
  CHECK(ifa_market_create(&cfg, &m) == IFA_ERR_INVALID);
  CHECK(ifa_market_create(nullptr, &m) == IFA_ERR_INVALID);
}

TEST_CASE("cost validation report") {
  int passed = -1;
  Owned report;
  CHECK(ifa_validate_cost("linear:0.5", &passed, &report.p) == IFA_OK);
  CHECK(passed == 1);
  Owned bad;
  CHECK(ifa_validate_cost("linear:1.2", &passed, &bad.p) == IFA_OK);
  CHECK(passed == 0);
  CHECK(Json::parse(bad.str()).at("violations").size() >= 1);
  CHECK(ifa_validate_cost("cubic:0.1", &passed, nullptr) == IFA_ERR_INVALID);
}

TEST_CASE("profile, metrics and serializations") {
  ifa_market* m = Market(2, "linear:0.5");
  double s_tilde = 0.0;
  int degenerate = -1;
  CHECK(ifa_threshold(m, &s_tilde, &degenerate) == IFA_OK);
  CHECK(std::abs(s_tilde - 0.557) <= 0.002);
  CHECK(degenerate == 0);

  ifa_profile* pr = nullptr;
  REQUIRE(ifa_profile_solve(m, 0.462, &pr) == IFA_OK);
  double p = 0.0, bid = 0.0, exit_price = 0.0;
  CHECK(ifa_profile_cutoff(pr, &p) == IFA_OK);
  CHECK(std::abs(p - 0.847) <= 0.002);
  CHECK(ifa_profile_bid(pr, 0.5, &bid) == IFA_OK);
  CHECK(bid > 0.0);
  CHECK(bid < 0.462);
  CHECK(ifa_profile_bid(pr, 0.95, &bid) == IFA_ERR_INVALID);
  CHECK(ifa_profile_exit(pr, 0.847, &exit_price) == IFA_OK);
  CHECK(std::abs(exit_price - 0.73246) <= 1e-5);

  ifa_metrics mx;
  CHECK(ifa_metrics_compute(m, pr, &mx) == IFA_OK);
  CHECK(std::abs(mx.eu_auctioneer - 0.338) <= 0.003);
  ifa_metrics d, e;
  CHECK(ifa_metrics_dutch(m, &d) == IFA_OK);
  CHECK(ifa_metrics_english(m, &e) == IFA_OK);
  CHECK(std::abs(d.eu_auctioneer - 0.227) <= 0.003);
  CHECK(std::abs(e.eu_auctioneer - 0.269) <= 0.003);

  Owned pj, curve, mj;
  CHECK(ifa_profile_json(pr, &pj.p) == IFA_OK);
  CHECK(Json::parse(pj.str()).at("p").get<double>() == p);
  CHECK(ifa_profile_curve_csv(pr, &curve.p) == IFA_OK);
  CHECK(curve.str().rfind("v,b\n", 0) == 0);
  CHECK(ifa_metrics_json(&mx, &mj.p) == IFA_OK);
  CHECK(Json::parse(mj.str()).at("eu_a").get<double>() == mx.eu_auctioneer);

  double gap = 1.0;
  CHECK(ifa_best_response_gap(m, pr, 0.5, 400, &gap) == IFA_OK);
  CHECK(gap <= 5e-4);

  double slope = 0.0;
  CHECK(ifa_auctioneer_slope(m, 0.1, &slope) == IFA_OK);
  CHECK(slope > 0.0);

  CHECK(ifa_profile_solve(m, 1.5, &pr) == IFA_ERR_INVALID);
  ifa_profile_destroy(pr);
  ifa_market_destroy(m);
}

TEST_CASE("Myerson baseline through the C interface") {
  ifa_market* m = Market(3, "none");
  double base = 0.0;
  CHECK(ifa_myerson_baseline(m, &base) == IFA_OK);
  CHECK(std::abs(base - 0.5) <= 1e-9);
  ifa_market_destroy(m);
}

TEST_CASE("optimization") {
  ifa_market* m = Market(2, "linear:0.5");
  ifa_optimum r;
  Owned json;
  CHECK(ifa_optimize(m, IFA_OBJ_AUCTIONEER, 1, &r, &json.p) == IFA_OK);
  CHECK(std::abs(r.s_star - 0.462) <= 0.005);
  CHECK(r.nontrivial == 1);
  CHECK(std::abs(r.vs_dutch.auctioneer - 1.49) <= 0.02);
  CHECK(Json::parse(json.str()).at("s_star").get<double>() == r.s_star);
  CHECK(ifa_optimize(m, static_cast<ifa_objective>(17), 1, &r, nullptr) ==
        IFA_ERR_INVALID);

  ifa_objective o;
  CHECK(ifa_parse_objective("duration", &o) == IFA_OK);
  CHECK(o == IFA_OBJ_DURATION);
  CHECK(std::string(ifa_objective_name(o)) == "duration");
  CHECK(ifa_parse_objective("speed", &o) == IFA_ERR_INVALID);
  ifa_market_destroy(m);
}

TEST_CASE("sweep handle") {
  ifa_market* m = Market(2, "none");
  const double mus[] = {0.1, 0.7};
  const int ns[] = {2, 10};
  const ifa_objective objs[] = {IFA_OBJ_AUCTIONEER};
  ifa_sweep* sw = nullptr;
  REQUIRE(ifa_sweep_run(m, mus, 2, ns, 2, objs, 1, 0, &sw) == IFA_OK);
  CHECK(ifa_sweep_size(sw) == 4);
  ifa_sweep_row row;
  CHECK(ifa_sweep_row_at(sw, 0, &row) == IFA_OK);
  CHECK(row.ok == 1);
  CHECK(row.mu == 0.1);
  CHECK(row.n == 2);
  CHECK(std::abs(100 * row.vs_dutch.auctioneer - 105.75) <= 2.115);
  CHECK(std::string(row.error).empty());
  CHECK(ifa_sweep_row_at(sw, 4, &row) == IFA_ERR_INVALID);

  Owned csv, json;
  CHECK(ifa_sweep_csv(sw, &csv.p) == IFA_OK);
  int lines = 0;
  for (char c : csv.str()) lines += c == '\n';
  CHECK(lines == 5);
  CHECK(ifa_sweep_json(sw, &json.p) == IFA_OK);
  CHECK(Json::parse(json.str()).at("rows").size() == 4);
  ifa_sweep_destroy(sw);

  CHECK(ifa_sweep_run(m, mus, 0, ns, 2, objs, 1, 0, &sw) == IFA_ERR_INVALID);
  ifa_market_destroy(m);
}

TEST_CASE("simulation") {
  ifa_market* m = Market(2, "linear:0.5");
  ifa_profile* pr = nullptr;
  REQUIRE(ifa_profile_solve(m, 0.462, &pr) == IFA_OK);

  const double solo[] = {0.9, 0.3};
  ifa_record rec;
  CHECK(ifa_run_auction(m, pr, solo, 2, 1e-4, 1, &rec) == IFA_OK);
  CHECK(rec.phase == IFA_PHASE_ENGLISH_SOLO);
  CHECK(rec.winner == 0);
  CHECK(rec.price == 0.462);
  CHECK(rec.initial_bidders == 1);
  CHECK(ifa_run_auction(m, pr, solo, 1, 1e-4, 1, &rec) == IFA_ERR_INVALID);
  CHECK(ifa_run_auction(m, pr, solo, 2, -1.0, 1, &rec) == IFA_ERR_INVALID);

  ifa_mc_result a, b;
  CHECK(ifa_monte_carlo(m, pr, 10000, 9, 1e-4, 1, &a) == IFA_OK);
  CHECK(ifa_monte_carlo(m, pr, 10000, 9, 1e-4, 4, &b) == IFA_OK);
  CHECK(a.auctioneer.mean == b.auctioneer.mean);
  CHECK(a.draws == 10000);
  Owned mj;
  CHECK(ifa_mc_result_json(&a, &mj.p) == IFA_OK);
  CHECK(Json::parse(mj.str()).is_object());

  std::string out;
  auto sink = [](const char* data, size_t len, void* user) -> int {
    static_cast<std::string*>(user)->append(data, len);
    return 0;
  };
  CHECK(ifa_simulation_csv(m, pr, 100, 3, 1e-4, sink, &out) == IFA_OK);
  int lines = 0;
  for (char c : out) lines += c == '\n';
  CHECK(lines == 101);
  CHECK(out.rfind("draw_id,phase,winner,price,duration,v1,", 0) == 0);

  auto refuse = [](const char*, size_t, void*) -> int { return 1; };
  CHECK(ifa_simulation_csv(m, pr, 100, 3, 1e-4, refuse, nullptr) == IFA_ERR_INTERNAL);

  ifa_profile_destroy(pr);
  ifa_market_destroy(m);
}

TEST_CASE("reproduction targets") {
  Owned report, name, csv;
  CHECK(ifa_reproduce("fig1", 1, &report.p, &name.p, &csv.p) == IFA_OK);
  CHECK(name.str() == "fig1.csv");
  CHECK(report.str().find("PASS") != std::string::npos);
  CHECK(ifa_reproduce("fig7", 1, nullptr, nullptr, nullptr) == IFA_ERR_INVALID);
}

TEST_CASE("null handles are rejected, not dereferenced") {
  double x;
  CHECK(ifa_profile_cutoff(nullptr, &x) == IFA_ERR_INVALID);
  CHECK(ifa_metrics_dutch(nullptr, nullptr) == IFA_ERR_INVALID);
  CHECK(ifa_sweep_size(nullptr) == 0);
  ifa_market_destroy(nullptr);
  ifa_profile_destroy(nullptr);
  ifa_sweep_destroy(nullptr);
  ifa_free(nullptr);
}

}  // TEST_SUITE
