#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "rsp/yard.hpp"

namespace rsp {

struct BenchCase {
  std::string id;
  std::string group;  // aggregation row, e.g. "Mixed"
  Instance inst;
};

// Standard random suite: the first half mixed, ids 1..count. Case k uses seed + k.
std::vector<BenchCase> standard_suite(int count, std::uint64_t seed);
// Gaia suite: the first half mixed, ids 61..60+count.
std::vector<BenchCase> gaia_suite(int count, std::uint64_t seed);

struct BenchOptions {
  std::size_t exact_cap = 5'000'000;
  std::size_t argdp_cap = 1'000'000;
  int delta = 2;
  bool run_exact = true;
  bool check_plans = true;  // replay and MIP feasibility of every plan
  int jobs = 0;             // 0: one per hardware thread
};

struct BenchRecord {
  std::string id, group;
  int K = 0, KD = 0, G = 0, GN = 0;

  std::string exact_status;  // ok | capped | skipped | error
  std::optional<Cost> exact_cost;
  double exact_ms = 0;

  std::string argdp_status;  // ok | heuristic-failure | capped | error
  std::optional<Cost> argdp_cost;
  double argdp_ms = 0;
  Cost pc = 0, path_cost = 0;
  std::size_t v_hat = 0;
  std::string v_full;
  double reduction_pct = 0;

  std::optional<double> gap_pct, time_ratio;
  int horizon_T = -1;
  int exact_moves = -1, argdp_moves = -1;
  bool exceeds_horizon = false;  // some plan needs more periods than the horizon heuristic gives
  bool plans_ok = true;
  std::string error;

  bool failed() const;
};

struct BenchSummary {
  std::string group;
  int n = 0, exact_solved = 0, argdp_solved = 0, compared = 0, failures = 0;
  // Obj./time/ratio/gap means cover the instances both solvers completed; maxima cover each solver's own.
  double exact_obj = 0, exact_sec = 0, time_ratio = 0, exact_max_sec = 0;
  double argdp_obj = 0, argdp_sec = 0, pct_opt = 0, gap = 0, max_gap = 0, argdp_max_sec = 0;
  double v_full = 0, v_hat = 0, reduction = 0;
};

struct BenchReport {
  std::vector<BenchRecord> records;
  std::vector<BenchSummary> groups;  // one per group, then "Average" over everything
  int failures = 0;
};

BenchRecord run_case(const BenchCase& c, const BenchOptions& opt);
BenchReport run_bench(const std::vector<BenchCase>& cases, const BenchOptions& opt);
std::vector<BenchSummary> summarize(const std::vector<BenchRecord>& records);

std::string to_csv(const BenchReport& r);
std::string to_table(const BenchReport& r);
std::string to_json(const BenchReport& r);

}  // namespace rsp
