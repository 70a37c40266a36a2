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

/*
 * C interface to the ifa library: equilibrium bidding, expected-utility
 * metrics, starting-price optimization and Monte Carlo simulation for the
 * Istanbul Flower Auction.
 *
 * Objects are opaque handles created and destroyed through this API. Every
 * function returns an ifa_status; on failure ifa_last_error() describes the
 * problem for the calling thread. Strings returned through char** out
 * parameters are owned by the caller and released with ifa_free().
 */
#ifndef IFA_IFA_H_
#define IFA_IFA_H_

#include <stddef.h>
#include <stdint.h>

#if defined(IFA_BUILDING_LIBRARY)
#define IFA_API __attribute__((visibility("default")))
#else
#define IFA_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum ifa_status {
  IFA_OK = 0,
  IFA_ERR_INVALID = 2,    /* bad argument or configuration */
  IFA_ERR_SOLVER = 3,     /* numerical failure */
  IFA_ERR_REPRODUCE = 4,  /* a reproduction check failed */
  IFA_ERR_INTERNAL = 9
} ifa_status;

typedef enum ifa_objective {
  IFA_OBJ_AUCTIONEER = 0,
  IFA_OBJ_BIDDER = 1,
  IFA_OBJ_WELFARE = 2,
  IFA_OBJ_DURATION = 3
} ifa_objective;

typedef enum ifa_phase {
  IFA_PHASE_DUTCH = 0,
  IFA_PHASE_ENGLISH_SOLO = 1,
  IFA_PHASE_ENGLISH_CONTESTED = 2,
  IFA_PHASE_NO_SALE = 3
} ifa_phase;

typedef struct ifa_numerics {
  int ode_steps;
  int quad_nodes;
  int inner_nodes;
  double cutoff_tol;
  double threshold_tol;
  double exit_tol;
  double optimizer_tol;
  int scan_points;
} ifa_numerics;

typedef struct ifa_market_config {
  int n;
  const char* distribution; /* "uniform" */
  const char* cost;         /* "none" or "<linear|exponential|hyperbolic>:<mu>" */
  ifa_numerics numerics;
} ifa_market_config;

typedef struct ifa_market ifa_market;
typedef struct ifa_profile ifa_profile;
typedef struct ifa_sweep ifa_sweep;

typedef struct ifa_metrics {
  double s;
  double eu_auctioneer;
  double eu_bidder; /* per bidder */
  double eu_social;
  double expected_duration;
} ifa_metrics;

typedef struct ifa_ratios {
  double auctioneer;
  double bidder;
  double social;
  double duration;
} ifa_ratios;

typedef struct ifa_optimum {
  ifa_objective objective;
  double s_star;
  double cutoff;
  double s_tilde;
  int s_tilde_degenerate;
  int flat;
  int nontrivial;
  ifa_metrics metrics;
  ifa_metrics dutch;
  ifa_metrics english;
  ifa_ratios vs_dutch;
  ifa_ratios vs_english;
} ifa_optimum;

typedef struct ifa_sweep_row {
  double mu;
  int n;
  ifa_objective objective;
  int ok;
  double s_star;
  double cutoff;
  double s_tilde;
  ifa_ratios vs_dutch;
  const char* flags; /* ';'-separated, owned by the sweep */
  const char* error; /* empty when ok, owned by the sweep */
} ifa_sweep_row;

typedef struct ifa_record {
  ifa_phase phase;
  int winner; /* -1 on no sale */
  double price;
  double duration;
  int initial_bidders;
} ifa_record;

typedef struct ifa_estimate {
  double mean;
  double std_error;
} ifa_estimate;

typedef struct ifa_mc_result {
  uint64_t draws;
  double tick;
  ifa_estimate auctioneer;
  ifa_estimate bidder;
  ifa_estimate social;
  ifa_estimate duration;
  uint64_t inefficient;
  uint64_t no_sale;
} ifa_mc_result;

/* Receives `len` bytes of output. Return nonzero to abort. */
typedef int (*ifa_write_fn)(const char* data, size_t len, void* user);

IFA_API const char* ifa_version(void);
IFA_API const char* ifa_last_error(void);
IFA_API void ifa_free(char* str);

IFA_API void ifa_market_config_init(ifa_market_config* cfg);
IFA_API ifa_status ifa_market_create(const ifa_market_config* cfg,
                                     ifa_market** out);
IFA_API void ifa_market_destroy(ifa_market* market);
/* Resolved configuration as a JSON object. */
IFA_API ifa_status ifa_market_json(const ifa_market* market, char** out);

/* Checks a cost specification; *passed is 0 or 1 and *report_json lists the
   violated conditions. A malformed specification is IFA_ERR_INVALID. */
IFA_API ifa_status ifa_validate_cost(const char* cost, int* passed,
                                     char** report_json);

IFA_API ifa_status ifa_threshold(const ifa_market* market, double* s_tilde,
                                 int* degenerate);

IFA_API ifa_status ifa_profile_solve(const ifa_market* market, double s,
                                     ifa_profile** out);
IFA_API void ifa_profile_destroy(ifa_profile* profile);
IFA_API ifa_status ifa_profile_cutoff(const ifa_profile* profile,
                                      double* cutoff);
/* b(v, s); v must lie in [0, p(s)]. */
IFA_API ifa_status ifa_profile_bid(const ifa_profile* profile, double v,
                                   double* bid);
/* m(v, s) for v in [0, 1]. */
IFA_API ifa_status ifa_profile_exit(const ifa_profile* profile, double v,
                                    double* exit_price);
IFA_API ifa_status ifa_profile_json(const ifa_profile* profile, char** out);
IFA_API ifa_status ifa_profile_curve_csv(const ifa_profile* profile,
                                         char** out);

IFA_API ifa_status ifa_metrics_compute(const ifa_market* market,
                                       const ifa_profile* profile,
                                       ifa_metrics* out);
IFA_API ifa_status ifa_metrics_dutch(const ifa_market* market,
                                     ifa_metrics* out);
IFA_API ifa_status ifa_metrics_english(const ifa_market* market,
                                       ifa_metrics* out);
IFA_API ifa_status ifa_metrics_json(const ifa_metrics* metrics, char** out);
IFA_API ifa_status ifa_myerson_baseline(const ifa_market* market,
                                        double* out);
IFA_API ifa_status ifa_auctioneer_slope(const ifa_market* market, double s,
                                        double* out);

IFA_API ifa_status ifa_parse_objective(const char* name, ifa_objective* out);
IFA_API const char* ifa_objective_name(ifa_objective objective);

/* threads = 0 uses every hardware thread. json may be NULL. */
IFA_API ifa_status ifa_optimize(const ifa_market* market,
                                ifa_objective objective, int threads,
                                ifa_optimum* out, char** json);

/* Rows are ordered mu-major, then n, then objective. The cost family comes
   from the market (linear when it has none). Failing cells are recorded in
   their rows; the call itself fails only on invalid arguments. */
IFA_API ifa_status ifa_sweep_run(const ifa_market* base, const double* mus,
                                 size_t mu_count, const int* ns,
                                 size_t n_count,
                                 const ifa_objective* objectives,
                                 size_t objective_count, int threads,
                                 ifa_sweep** out);
IFA_API void ifa_sweep_destroy(ifa_sweep* sweep);
IFA_API size_t ifa_sweep_size(const ifa_sweep* sweep);
IFA_API ifa_status ifa_sweep_row_at(const ifa_sweep* sweep, size_t index,
                                    ifa_sweep_row* out);
IFA_API ifa_status ifa_sweep_csv(const ifa_sweep* sweep, char** out);
IFA_API ifa_status ifa_sweep_json(const ifa_sweep* sweep, char** out);

/* One auction with the given values (length = market n). */
IFA_API ifa_status ifa_run_auction(const ifa_market* market,
                                   const ifa_profile* profile,
                                   const double* values, size_t count,
                                   double tick, uint64_t seed,
                                   ifa_record* out);
IFA_API ifa_status ifa_monte_carlo(const ifa_market* market,
                                   const ifa_profile* profile, uint64_t draws,
                                   uint64_t seed, double tick, int threads,
                                   ifa_mc_result* out);
IFA_API ifa_status ifa_mc_result_json(const ifa_mc_result* result, char** out);
/* Streams the per-draw CSV (header row first) through `write`. */
IFA_API ifa_status ifa_simulation_csv(const ifa_market* market,
                                      const ifa_profile* profile,
                                      uint64_t draws, uint64_t seed,
                                      double tick, ifa_write_fn write,
                                      void* user);

IFA_API ifa_status ifa_best_response_gap(const ifa_market* market,
                                         const ifa_profile* profile, double v,
                                         int grid_size, double* gap);

/* Runs a reproduction target (example, table1, fig1, fig2, fig3). The
   report table is always returned; artifact_name and artifact_csv are empty
   strings when the target has no plot data. Returns IFA_ERR_REPRODUCE when
   any check fails. */
IFA_API ifa_status ifa_reproduce(const char* target, int threads,
                                 char** report, char** artifact_name,
                                 char** artifact_csv);

#ifdef __cplusplus
}
#endif

#endif /* IFA_IFA_H_ */
