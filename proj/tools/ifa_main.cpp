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

// ifa command-line front end.
//
//   ifa solve     --n 2 --cost linear:0.5 --s 0.462 --out dir/
//   ifa optimize  --objective all --n 2 --cost linear:0.5
//   ifa sweep     --mu 0:0.8:0.05 --n 2:20 --objective auctioneer
//   ifa simulate  --draws 100000 --seed 7 --s 0.462
//   ifa reproduce example|table1|fig1|fig2|fig3
//
// Every output file starts with a header holding the resolved config. CSV
// files carry it as a comment line "# ifa <version> <command> <json>"; JSON
// files as a leading "header" member. Either file can be passed back through
// --config to rerun the command that produced it.
//
// Exit codes: 0 ok, 1 I/O or internal error, 2 invalid input, 3 solver
// failure, 4 reproduction mismatch.

#include <algorithm>
#include <cerrno>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <memory>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "ifa/ifa.h"
#include "json.hpp"

namespace {

using Json = nlohmann::ordered_json;
namespace fs = std::filesystem;

constexpr int kExitIo = 1;
constexpr int kExitInvalid = 2;

// Raised for bad input detected by the front end itself.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Library failure carrying its status code.
struct ApiError : std::runtime_error {
  ApiError(ifa_status s, const std::string& what)
      : std::runtime_error(what), status(s) {}
  ifa_status status;
};

void Check(ifa_status status) {
  if (status != IFA_OK) throw ApiError(status, ifa_last_error());
}

struct CString {
  char* p = nullptr;
  ~CString() { ifa_free(p); }
  std::string str() const { return p ? p : ""; }
};

struct MarketDeleter {
  void operator()(ifa_market* m) const { ifa_market_destroy(m); }
};
struct ProfileDeleter {
  void operator()(ifa_profile* p) const { ifa_profile_destroy(p); }
};
struct SweepDeleter {
  void operator()(ifa_sweep* s) const { ifa_sweep_destroy(s); }
};
using MarketPtr = std::unique_ptr<ifa_market, MarketDeleter>;
using ProfilePtr = std::unique_ptr<ifa_profile, ProfileDeleter>;
using SweepPtr = std::unique_ptr<ifa_sweep, SweepDeleter>;

std::string Num(double x) {
  char buf[40];
  const auto res = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, res.ptr);
}

struct Options {
  std::string config;
  std::string n = "2";
  std::string dist = "uniform";
  std::string cost = "linear:0.5";
  double s = 0.5;
  std::string objective = "auctioneer";
  std::string mu = "0:0.8:0.05";
  std::uint64_t draws = 100000;
  std::uint64_t seed = 1;
  double tick = 1e-4;
  int threads = 0;
  std::string format;  // empty: per-command default
  std::string out = ".";
  std::string target;
};

const char* const kSweepDefaultN = "2:20";

// Keys a --config file may set, per command.
const std::map<std::string, std::vector<std::string>> kConfigKeys = {
    {"solve", {"n", "dist", "cost", "s"}},
    {"optimize", {"n", "dist", "cost", "objective", "format"}},
    {"sweep", {"n", "dist", "cost", "mu", "objective", "format"}},
    {"simulate", {"n", "dist", "cost", "s", "draws", "seed", "tick"}},
    {"reproduce", {"target"}},
};

std::vector<double> ParseMuGrid(const std::string& text) {
  std::vector<double> out;
  auto to_double = [&](const std::string& item) {
    char* end = nullptr;
    errno = 0;
    const double x = std::strtod(item.c_str(), &end);
    if (item.empty() || *end != '\0' || errno != 0 || !std::isfinite(x)) {
      throw UsageError("cannot parse mu value '" + item + "'");
    }
    return x;
  };
  if (text.find(':') != std::string::npos) {
    std::vector<std::string> parts;
    std::stringstream ss(text);
    for (std::string p; std::getline(ss, p, ':');) parts.push_back(p);
    if (parts.size() != 3) throw UsageError("mu range must be a:b:step");
    const double a = to_double(parts[0]);
    const double b = to_double(parts[1]);
    const double step = to_double(parts[2]);
    if (!(step > 0.0) || b < a) throw UsageError("mu range needs a <= b, step > 0");
    const long count = std::lround(std::floor((b - a) / step + 1e-9)) + 1;
    for (long i = 0; i < count; ++i) {
      // Round away binary noise so grid points print as typed.
      out.push_back(std::round((a + double(i) * step) * 1e12) / 1e12);
    }
    return out;
  }
  std::stringstream ss(text);
  for (std::string item; std::getline(ss, item, ',');) out.push_back(to_double(item));
  if (out.empty()) throw UsageError("mu grid is empty");
  return out;
}

// Comma list or inclusive range a:b.
std::vector<int> ParseNList(const std::string& text) {
  auto to_int = [](const std::string& item) {
    char* end = nullptr;
    const long v = std::strtol(item.c_str(), &end, 10);
    if (item.empty() || *end != '\0' || v < 2 || v > 1000000) {
      throw UsageError("n must be an integer >= 2, got '" + item + "'");
    }
    return static_cast<int>(v);
  };
  std::vector<int> out;
  if (const auto colon = text.find(':'); colon != std::string::npos) {
    const int a = to_int(text.substr(0, colon));
    const int b = to_int(text.substr(colon + 1));
    if (b < a) throw UsageError("n range needs a <= b");
    for (int v = a; v <= b; ++v) out.push_back(v);
    return out;
  }
  std::stringstream ss(text);
  for (std::string item; std::getline(ss, item, ',');) out.push_back(to_int(item));
  if (out.empty()) throw UsageError("n list is empty");
  return out;
}

int SingleN(const Options& o) {
  const auto ns = ParseNList(o.n);
  if (ns.size() != 1) throw UsageError("this command takes a single --n");
  return ns.front();
}

// Reads a config object, either plain JSON or the header of a file written by
// this tool.
Json LoadConfig(const std::string& path, const std::string& command) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot open config file '" + path + "'");
  std::string first;
  std::getline(in, first);
  Json cfg;
  try {
    if (first.rfind("# ifa ", 0) == 0) {
      std::istringstream line(first.substr(6));
      std::string version, cmd;
      line >> version >> cmd;
      if (cmd != command) {
        throw UsageError("config file was written by '" + cmd + "', not '" +
                         command + "'");
      }
      std::string rest;
      std::getline(line, rest);
      cfg = Json::parse(rest);
    } else {
      std::stringstream all;
      all << first << '\n' << in.rdbuf();
      Json doc = Json::parse(all.str());
      if (doc.is_object() && doc.contains("header")) {
        const Json& h = doc["header"];
        if (h.value("command", command) != command) {
          throw UsageError("config file was written by '" +
                           h.value("command", std::string()) + "', not '" +
                           command + "'");
        }
        cfg = h.at("config");
      } else {
        cfg = std::move(doc);
      }
    }
  } catch (const Json::exception& e) {
    throw UsageError("malformed config file '" + path + "': " + e.what());
  }
  if (!cfg.is_object()) throw UsageError("config must be a JSON object");
  const auto& allowed = kConfigKeys.at(command);
  for (const auto& [key, value] : cfg.items()) {
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
      throw UsageError("unknown config key '" + key + "' for " + command);
    }
  }
  return cfg;
}

std::string JoinList(const Json& arr) {
  std::string out;
  for (const auto& v : arr) {
    if (!out.empty()) out += ',';
    out += v.is_number_float() ? Num(v.get<double>()) : v.dump();
  }
  return out;
}

// Fills options not given on the command line from the config object.
void MergeConfig(const Json& cfg, Options& o, const CLI::App& sub) {
  auto given = [&](const char* name) {
    return sub.count(std::string("--") + name) > 0;
  };
  try {
    for (const auto& [key, v] : cfg.items()) {
      if (key == "target") {
        if (o.target.empty()) o.target = v.get<std::string>();
        continue;
      }
      if (given(key.c_str())) continue;
      if (key == "n") {
        o.n = v.is_array() ? JoinList(v) : std::to_string(v.get<int>());
      } else if (key == "dist") {
        o.dist = v.get<std::string>();
      } else if (key == "cost") {
        o.cost = v.get<std::string>();
      } else if (key == "s") {
        o.s = v.get<double>();
      } else if (key == "objective") {
        o.objective = v.get<std::string>();
      } else if (key == "mu") {
        o.mu = v.is_array() ? JoinList(v) : v.get<std::string>();
      } else if (key == "draws") {
        o.draws = v.get<std::uint64_t>();
      } else if (key == "seed") {
        o.seed = v.get<std::uint64_t>();
      } else if (key == "tick") {
        o.tick = v.get<double>();
      } else if (key == "format") {
        o.format = v.get<std::string>();
      }
    }
  } catch (const Json::exception& e) {
    throw UsageError(std::string("bad value in config: ") + e.what());
  }
}

std::vector<ifa_objective> ParseObjectives(const std::string& text) {
  if (text == "all") {
    return {IFA_OBJ_AUCTIONEER, IFA_OBJ_BIDDER, IFA_OBJ_WELFARE,
            IFA_OBJ_DURATION};
  }
  ifa_objective o;
  Check(ifa_parse_objective(text.c_str(), &o));
  return {o};
}

// The resolved config echoed into output headers; `threads` and `out` are
// left out because they never change results.
Json ResolvedConfig(const std::string& command, const Options& o) {
  Json j;
  if (command == "reproduce") {
    j["target"] = o.target;
    return j;
  }
  if (command == "sweep") {
    j["n"] = ParseNList(o.n);
  } else {
    j["n"] = SingleN(o);
  }
  j["dist"] = o.dist;
  j["cost"] = o.cost;
  if (command == "solve" || command == "simulate") j["s"] = o.s;
  if (command == "sweep") j["mu"] = ParseMuGrid(o.mu);
  if (command == "optimize" || command == "sweep") {
    j["objective"] = o.objective;
    j["format"] = o.format;
  }
  if (command == "simulate") {
    j["draws"] = o.draws;
    j["seed"] = o.seed;
    j["tick"] = o.tick;
  }
  return j;
}

class Output {
 public:
  Output(std::string command, const Options& o)
      : command_(std::move(command)),
        dir_(o.out),
        config_(ResolvedConfig(command_, o)) {}

  std::string CsvHeader() const {
    return std::string("# ifa ") + ifa_version() + " " + command_ + " " +
           config_.dump() + "\n";
  }

  Json JsonHeader() const {
    Json h;
    h["tool"] = "ifa";
    h["version"] = ifa_version();
    h["command"] = command_;
    h["config"] = config_;
    return h;
  }

  // Prepends the header member to a JSON object.
  std::string WithHeader(const Json& body) const {
    Json doc;
    doc["header"] = JsonHeader();
    for (const auto& [k, v] : body.items()) doc[k] = v;
    return doc.dump(2) + "\n";
  }

  fs::path Path(const std::string& name) const { return fs::path(dir_) / name; }

  std::ofstream Open(const std::string& name) const {
    std::error_code ec;
    fs::create_directories(dir_, ec);
    std::ofstream f(Path(name), std::ios::binary | std::ios::trunc);
    if (!f) throw std::runtime_error("cannot write " + Path(name).string());
    return f;
  }

  void Write(const std::string& name, const std::string& text) const {
    auto f = Open(name);
    f << text;
    if (!f) throw std::runtime_error("write failed: " + Path(name).string());
  }

 private:
  std::string command_;
  std::string dir_;
  Json config_;
};

MarketPtr MakeMarket(int n, const Options& o) {
  ifa_market_config cfg;
  ifa_market_config_init(&cfg);
  cfg.n = n;
  cfg.distribution = o.dist.c_str();
  cfg.cost = o.cost.c_str();
  ifa_market* m = nullptr;
  Check(ifa_market_create(&cfg, &m));
  return MarketPtr(m);
}

ProfilePtr Solve(const ifa_market* market, double s) {
  ifa_profile* p = nullptr;
  Check(ifa_profile_solve(market, s, &p));
  return ProfilePtr(p);
}

Json MetricsJson(const ifa_metrics& m) {
  CString text;
  Check(ifa_metrics_json(&m, &text.p));
  return Json::parse(text.str());
}

int RunSolve(const Options& o) {
  const Output out("solve", o);
  const auto market = MakeMarket(SingleN(o), o);
  const auto profile = Solve(market.get(), o.s);
  ifa_metrics m;
  Check(ifa_metrics_compute(market.get(), profile.get(), &m));

  CString profile_json, curve;
  Check(ifa_profile_json(profile.get(), &profile_json.p));
  Check(ifa_profile_curve_csv(profile.get(), &curve.p));
  out.Write("profile.json", out.WithHeader(Json::parse(profile_json.str())));
  out.Write("curve.csv", out.CsvHeader() + curve.str());
  out.Write("metrics.json", out.WithHeader(MetricsJson(m)));

  double p = 0.0;
  Check(ifa_profile_cutoff(profile.get(), &p));
  std::printf("s=%.6f p=%.6f eu_a=%.6f eu_b=%.6f eu_s=%.6f ed=%.6f\n", m.s, p,
              m.eu_auctioneer, m.eu_bidder, m.eu_social, m.expected_duration);
  return 0;
}

std::string OptimumCsvRow(const ifa_optimum& r) {
  const auto& d = r.vs_dutch;
  const auto& e = r.vs_english;
  std::string row = ifa_objective_name(r.objective);
  for (double x : {r.s_star, r.cutoff, r.s_tilde, r.metrics.eu_auctioneer,
                   r.metrics.eu_bidder, r.metrics.eu_social,
                   r.metrics.expected_duration, d.auctioneer, d.bidder,
                   d.social, d.duration, e.auctioneer, e.bidder, e.social,
                   e.duration}) {
    row += "," + Num(x);
  }
  row += std::string(",") + (r.flat ? "1" : "0") + "," +
         (r.nontrivial ? "1" : "0") + "\n";
  return row;
}

int RunOptimize(Options o) {
  if (o.format.empty()) o.format = "json";
  if (o.format != "json" && o.format != "csv") {
    throw UsageError("--format must be json or csv");
  }
  const Output out("optimize", o);
  const auto market = MakeMarket(SingleN(o), o);
  const auto objectives = ParseObjectives(o.objective);

  Json results = Json::array();
  std::string csv =
      "objective,s_star,p_star,s_tilde,eu_a,eu_b,eu_s,ed,"
      "eu_a_vs_dutch,eu_b_vs_dutch,eu_s_vs_dutch,ed_vs_dutch,"
      "eu_a_vs_english,eu_b_vs_english,eu_s_vs_english,ed_vs_english,"
      "flat,nontrivial\n";
  std::printf("%-11s %9s %9s %9s %10s %10s\n", "objective", "s_star", "p",
              "s_tilde", "A/Dutch", "A/English");
  for (auto obj : objectives) {
    ifa_optimum r;
    CString json;
    Check(ifa_optimize(market.get(), obj, o.threads, &r, &json.p));
    results.push_back(Json::parse(json.str()));
    csv += OptimumCsvRow(r);
    std::printf("%-11s %9.5f %9.5f %9.5f %10.4f %10.4f\n",
                ifa_objective_name(obj), r.s_star, r.cutoff, r.s_tilde,
                r.vs_dutch.auctioneer, r.vs_english.auctioneer);
  }
  if (o.format == "json") {
    Json body;
    body["results"] = std::move(results);
    out.Write("optimize.json", out.WithHeader(body));
  } else {
    out.Write("optimize.csv", out.CsvHeader() + csv);
  }
  return 0;
}

int RunSweep(Options o) {
  if (o.format.empty()) o.format = "csv";
  if (o.format != "json" && o.format != "csv") {
    throw UsageError("--format must be json or csv");
  }
  const Output out("sweep", o);
  const auto mus = ParseMuGrid(o.mu);
  const auto ns = ParseNList(o.n);
  const auto objectives = ParseObjectives(o.objective);
  // The base market carries the cost family; n and mu come from the grids.
  const auto base = MakeMarket(ns.front(), o);

  ifa_sweep* raw = nullptr;
  Check(ifa_sweep_run(base.get(), mus.data(), mus.size(), ns.data(), ns.size(),
                      objectives.data(), objectives.size(), o.threads, &raw));
  const SweepPtr sweep(raw);

  std::size_t failed = 0;
  const std::size_t rows = ifa_sweep_size(sweep.get());
  for (std::size_t i = 0; i < rows; ++i) {
    ifa_sweep_row row;
    Check(ifa_sweep_row_at(sweep.get(), i, &row));
    if (!row.ok) {
      ++failed;
      std::fprintf(stderr, "mu=%g n=%d %s: %s\n", row.mu, row.n,
                   ifa_objective_name(row.objective), row.error);
    }
  }
  CString text;
  if (o.format == "csv") {
    Check(ifa_sweep_csv(sweep.get(), &text.p));
    out.Write("sweep.csv", out.CsvHeader() + text.str());
  } else {
    Check(ifa_sweep_json(sweep.get(), &text.p));
    out.Write("sweep.json", out.WithHeader(Json::parse(text.str())));
  }
  std::printf("%zu rows, %zu failed\n", rows, failed);
  return failed == rows ? IFA_ERR_SOLVER : 0;
}

int RunSimulate(const Options& o) {
  if (!(o.tick > 0.0)) throw UsageError("--tick must be positive");
  const Output out("simulate", o);
  const auto market = MakeMarket(SingleN(o), o);
  const auto profile = Solve(market.get(), o.s);

  {
    auto f = out.Open("simulation.csv");
    f << out.CsvHeader();
    auto sink = [](const char* data, size_t len, void* user) -> int {
      auto& stream = *static_cast<std::ofstream*>(user);
      stream.write(data, static_cast<std::streamsize>(len));
      return stream ? 0 : 1;
    };
    Check(ifa_simulation_csv(market.get(), profile.get(), o.draws, o.seed,
                             o.tick, sink, &f));
    if (!f) throw std::runtime_error("write failed: simulation.csv");
  }

  ifa_mc_result mc;
  Check(ifa_monte_carlo(market.get(), profile.get(), o.draws, o.seed, o.tick,
                        o.threads, &mc));
  ifa_metrics exact;
  Check(ifa_metrics_compute(market.get(), profile.get(), &exact));
  CString mc_json;
  Check(ifa_mc_result_json(&mc, &mc_json.p));
  Json body;
  body["monte_carlo"] = Json::parse(mc_json.str());
  body["quadrature"] = MetricsJson(exact);
  out.Write("summary.json", out.WithHeader(body));

  std::printf("%-10s %12s %12s %12s\n", "metric", "simulated", "std_err",
              "quadrature");
  const struct {
    const char* name;
    ifa_estimate est;
    double exact;
  } rows[] = {{"eu_a", mc.auctioneer, exact.eu_auctioneer},
              {"eu_b", mc.bidder, exact.eu_bidder},
              {"eu_s", mc.social, exact.eu_social},
              {"ed", mc.duration, exact.expected_duration}};
  for (const auto& r : rows) {
    std::printf("%-10s %12.6f %12.6f %12.6f\n", r.name, r.est.mean,
                r.est.std_error, r.exact);
  }
  std::printf("inefficient=%llu no_sale=%llu draws=%llu\n",
              static_cast<unsigned long long>(mc.inefficient),
              static_cast<unsigned long long>(mc.no_sale),
              static_cast<unsigned long long>(mc.draws));
  return 0;
}

int RunReproduce(const Options& o) {
  if (o.target.empty()) throw UsageError("reproduce needs a target");
  const Output out("reproduce", o);
  CString report, name, csv;
  const ifa_status status =
      ifa_reproduce(o.target.c_str(), o.threads, &report.p, &name.p, &csv.p);
  if (status != IFA_OK && status != IFA_ERR_REPRODUCE) {
    throw ApiError(status, ifa_last_error());
  }
  std::fputs(report.str().c_str(), stdout);
  if (!name.str().empty()) {
    out.Write(name.str(), out.CsvHeader() + csv.str());
    std::printf("wrote %s\n", out.Path(name.str()).string().c_str());
  }
  return status == IFA_OK ? 0 : IFA_ERR_REPRODUCE;
}

void AddMarketOptions(CLI::App* sub, Options& o, bool grid_n) {
  auto* n = sub->add_option("--n", o.n,
                            grid_n ? "Bidder counts: a,b,... or a:b" : "Number of bidders");
  if (grid_n) {
    n->default_str(kSweepDefaultN);
  } else {
    n->capture_default_str();
  }
  sub->add_option("--dist", o.dist, "Value distribution (uniform)")
      ->capture_default_str();
  sub->add_option("--cost", o.cost,
                  "Time cost: none or linear|exponential|hyperbolic:<mu>")
      ->capture_default_str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Istanbul Flower Auction equilibrium and design toolkit"};
  app.set_version_flag("--version", std::string(ifa_version()));
  app.require_subcommand(1);
  Options o;

  auto* solve = app.add_subcommand("solve", "Equilibrium profile and metrics at one starting price");
  auto* optimize = app.add_subcommand("optimize", "Optimal starting price per objective");
  auto* sweep = app.add_subcommand("sweep", "Comparative statics over (mu, n) grids");
  auto* simulate = app.add_subcommand("simulate", "Monte Carlo play of the equilibrium");
  auto* reproduce = app.add_subcommand("reproduce", "Check published results");

  for (auto* sub : {solve, optimize, sweep, simulate, reproduce}) {
    sub->add_option("--config", o.config, "JSON config or a previous output file");
    sub->add_option("--out", o.out, "Output directory")->capture_default_str();
    sub->add_option("--threads", o.threads, "Worker threads (0 = all cores)")
        ->capture_default_str();
  }
  for (auto* sub : {solve, optimize, simulate}) AddMarketOptions(sub, o, false);
  AddMarketOptions(sweep, o, true);
  for (auto* sub : {solve, simulate}) {
    sub->add_option("--s", o.s, "Starting price in [0, 1]")->capture_default_str();
  }
  for (auto* sub : {optimize, sweep}) {
    sub->add_option("--objective", o.objective,
                    "auctioneer|bidder|welfare|duration|all")
        ->capture_default_str();
    sub->add_option("--format", o.format, "json or csv");
  }
  sweep->add_option("--mu", o.mu, "Impatience grid: a:b:step or a,b,...")
      ->capture_default_str();
  simulate->add_option("--draws", o.draws, "Number of auctions")->capture_default_str();
  simulate->add_option("--seed", o.seed, "Random seed")->capture_default_str();
  simulate->add_option("--tick", o.tick, "Clock tick")->capture_default_str();
  reproduce->add_option("target", o.target, "example|table1|fig1|fig2|fig3");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitInvalid;
  }

  try {
    CLI::App* sub = app.get_subcommands().front();
    const std::string command = sub->get_name();
    if (command == "sweep" && sub->count("--n") == 0) o.n = kSweepDefaultN;
    if (!o.config.empty()) MergeConfig(LoadConfig(o.config, command), o, *sub);
    if (command == "solve") return RunSolve(o);
    if (command == "optimize") return RunOptimize(o);
    if (command == "sweep") return RunSweep(o);
    if (command == "simulate") return RunSimulate(o);
    return RunReproduce(o);
  } catch (const UsageError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitInvalid;
  } catch (const ApiError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return e.status == IFA_ERR_INTERNAL ? kExitIo : static_cast<int>(e.status);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitIo;
  }
}
