#include "rsp/bench.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdio>
#include <map>
#include <sstream>
#include <thread>

#include "json.hpp"
#include "rsp/argdp.hpp"
#include "rsp/exact.hpp"
#include "rsp/generator.hpp"
#include "rsp/horizon.hpp"
#include "rsp/mip.hpp"

namespace rsp {

namespace {

// Timer floor so that an instant heuristic run still gives a finite ratio.
constexpr double kMinMillis = 0.01;

std::string check_plan(const Instance& inst, const Plan& plan, int T) {
  std::string why;
  if (!plan_is_valid(inst, plan, &why)) return "illegal plan: " + why;
  const MipModel m = build_mip(inst, T);
  const auto rep = check_feasibility(m, plan_to_assignment(inst, plan, T, m), inst);
  if (!rep.feasible) return "MIP check failed at " + rep.violations.front().where;
  if (rep.objective != plan.total_cost) return "MIP objective differs from plan cost";
  return {};
}

std::string fmt(double v, int prec = 2) {
  char b[64];
  std::snprintf(b, sizeof b, "%.*f", prec, v);
  return b;
}

}  // namespace

bool BenchRecord::failed() const { return argdp_status != "ok" || exact_status == "error" || !plans_ok; }

std::vector<BenchCase> standard_suite(int count, std::uint64_t seed) {
  std::vector<BenchCase> out;
  for (int k = 0; k < count; ++k) {
    GeneratorParams p;
    p.mixed = k < count / 2;
    out.push_back({std::to_string(k + 1), p.mixed ? "Mixed" : "Non-Mixed", generate(p, seed + k)});
  }
  return out;
}

std::vector<BenchCase> gaia_suite(int count, std::uint64_t seed) {
  std::vector<BenchCase> out;
  for (int k = 0; k < count; ++k) {
    const bool mixed = k < count / 2;
    out.push_back({std::to_string(61 + k), mixed ? "Gaia-Mixed" : "Gaia-Non-Mixed", gaia(mixed, seed + k)});
  }
  return out;
}

BenchRecord run_case(const BenchCase& c, const BenchOptions& opt) {
  BenchRecord r;
  r.id = c.id;
  r.group = c.group;
  const Instance& inst = c.inst;
  r.K = inst.num_tracks();
  r.KD = static_cast<int>(inst.departure_tracks().size());
  r.G = inst.num_groups();
  r.GN = inst.mixed_count();

  std::optional<Plan> exact_plan, argdp_plan;
  if (opt.run_exact) {
    ExactOptions eo;
    eo.max_states = opt.exact_cap;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      auto res = solve_exact(inst, eo);
      r.exact_status = "ok";
      r.exact_cost = res.plan.total_cost;
      r.exact_moves = static_cast<int>(res.plan.moves.size());
      exact_plan = std::move(res.plan);
    } catch (const ResourceLimit&) {
      r.exact_status = "capped";
    } catch (const std::exception& e) {
      r.exact_status = "error";
      r.error = e.what();
    }
    r.exact_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  } else {
    r.exact_status = "skipped";
  }

  ArgdpOptions ao;
  ao.delta = opt.delta;
  ao.max_states = opt.argdp_cap;
  const auto t0 = std::chrono::steady_clock::now();
  try {
    auto res = solve_argdp(inst, ao);
    r.argdp_status = "ok";
    r.argdp_cost = res.stats.total;
    r.pc = res.stats.pc;
    r.path_cost = res.stats.path_cost;
    r.v_hat = res.stats.v_hat;
    r.v_full = res.stats.v_full;
    r.reduction_pct = res.stats.reduction_pct;
    r.argdp_moves = static_cast<int>(res.plan.moves.size());
    argdp_plan = std::move(res.plan);
  } catch (const HeuristicFailure& e) {
    r.argdp_status = "heuristic-failure";
    r.error = e.what();
  } catch (const ResourceLimit& e) {
    r.argdp_status = "capped";
    r.error = e.what();
  } catch (const std::exception& e) {
    r.argdp_status = "error";
    r.error = e.what();
  }
  r.argdp_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();

  if (r.exact_cost && r.argdp_cost) {
    r.gap_pct = *r.exact_cost == 0 ? 0.0 : 100.0 * static_cast<double>(*r.argdp_cost - *r.exact_cost) / *r.exact_cost;
    r.time_ratio = r.exact_ms / std::max(r.argdp_ms, kMinMillis);
  }

  if (opt.check_plans) {
    try {
      const AutoHorizon h = auto_horizon(inst);
      r.horizon_T = h.horizon;
      for (const auto* plan : {exact_plan ? &*exact_plan : nullptr, argdp_plan ? &*argdp_plan : nullptr}) {
        if (!plan) continue;
        const AutoHorizon ph = auto_horizon(inst, plan);
        r.exceeds_horizon = r.exceeds_horizon || ph.plan_exceeds;
        const std::string why = check_plan(inst, *plan, ph.T);
        if (!why.empty()) {
          r.plans_ok = false;
          r.error = why;
        }
      }
    } catch (const std::exception& e) {
      r.plans_ok = false;
      r.error = e.what();
    }
  }
  return r;
}

BenchReport run_bench(const std::vector<BenchCase>& cases, const BenchOptions& opt) {
  BenchReport rep;
  rep.records.resize(cases.size());
  int jobs = opt.jobs > 0 ? opt.jobs : static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  jobs = std::min<int>(jobs, static_cast<int>(std::max<std::size_t>(cases.size(), 1)));
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t k; (k = next++) < cases.size();) rep.records[k] = run_case(cases[k], opt);
  };
  if (jobs <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int j = 0; j < jobs; ++j) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  rep.groups = summarize(rep.records);
  for (const auto& r : rep.records) rep.failures += r.failed();
  return rep;
}

std::vector<BenchSummary> summarize(const std::vector<BenchRecord>& records) {
  std::vector<std::string> order;
  std::map<std::string, std::vector<const BenchRecord*>> by;
  for (const auto& r : records) {
    if (!by.count(r.group)) order.push_back(r.group);
    by[r.group].push_back(&r);
  }
  auto make = [](const std::string& name, const std::vector<const BenchRecord*>& rs) {
    BenchSummary s;
    s.group = name;
    s.n = static_cast<int>(rs.size());
    int ratios = 0, optimal = 0, reductions = 0;
    for (const auto* r : rs) {
      s.failures += r->failed();
      if (r->exact_cost) {
        ++s.exact_solved;
        s.exact_max_sec = std::max(s.exact_max_sec, r->exact_ms / 1000);
      }
      if (r->argdp_cost) {
        ++s.argdp_solved;
        s.argdp_max_sec = std::max(s.argdp_max_sec, r->argdp_ms / 1000);
        s.v_full += std::stod(r->v_full);
        s.v_hat += static_cast<double>(r->v_hat);
        s.reduction += r->reduction_pct;
        ++reductions;
      }
      if (r->gap_pct) {
        ++s.compared;
        s.exact_obj += static_cast<double>(*r->exact_cost);
        s.exact_sec += r->exact_ms / 1000;
        s.argdp_obj += static_cast<double>(*r->argdp_cost);
        s.argdp_sec += r->argdp_ms / 1000;
        s.gap += *r->gap_pct;
        s.max_gap = std::max(s.max_gap, *r->gap_pct);
        optimal += *r->gap_pct == 0.0;
      }
      if (r->time_ratio) {
        s.time_ratio += *r->time_ratio;
        ++ratios;
      }
    }
    auto mean = [](double& v, int n) { v = n ? v / n : 0.0; };
    mean(s.exact_obj, s.compared);
    mean(s.exact_sec, s.compared);
    mean(s.argdp_obj, s.compared);
    mean(s.argdp_sec, s.compared);
    mean(s.gap, s.compared);
    mean(s.time_ratio, ratios);
    mean(s.v_full, reductions);
    mean(s.v_hat, reductions);
    mean(s.reduction, reductions);
    s.pct_opt = s.compared ? 100.0 * optimal / s.compared : 0.0;
    return s;
  };
  std::vector<BenchSummary> out;
  std::vector<const BenchRecord*> all;
  for (const auto& name : order) {
    out.push_back(make(name, by[name]));
    all.insert(all.end(), by[name].begin(), by[name].end());
  }
  out.push_back(make("Average", all));
  return out;
}

std::string to_csv(const BenchReport& rep) {
  std::ostringstream o;
  o << "id,group,K,K_D,G,G_N,exact_status,exact_cost,exact_ms,argdp_status,argdp_cost,argdp_ms,pc,path_cost,"
       "v_hat,v_full,reduction_pct,gap_pct,time_ratio_exact_over_argdp,horizon_T,exact_moves,argdp_moves,"
       "exceeds_horizon,plans_ok,error\n";
  for (const auto& r : rep.records) {
    std::string err = r.error;
    std::replace(err.begin(), err.end(), '"', '\'');
    o << r.id << ',' << r.group << ',' << r.K << ',' << r.KD << ',' << r.G << ',' << r.GN << ',' << r.exact_status << ','
      << (r.exact_cost ? std::to_string(*r.exact_cost) : "") << ',' << fmt(r.exact_ms, 3) << ',' << r.argdp_status << ','
      << (r.argdp_cost ? std::to_string(*r.argdp_cost) : "") << ',' << fmt(r.argdp_ms, 3) << ',' << r.pc << ','
      << r.path_cost << ',' << r.v_hat << ',' << r.v_full << ',' << fmt(r.reduction_pct, 4) << ','
      << (r.gap_pct ? fmt(*r.gap_pct) : "") << ',' << (r.time_ratio ? fmt(*r.time_ratio) : "") << ',' << r.horizon_T
      << ',' << r.exact_moves << ',' << r.argdp_moves << ',' << r.exceeds_horizon << ',' << r.plans_ok << ",\"" << err
      << "\"\n";
  }
  return o.str();
}

std::string to_table(const BenchReport& rep) {
  std::ostringstream o;
  char line[512];
  o << "Time ratio = exact DP time / ARG-DP time (no MIP solver is embedded).\n"
       "Obj., Time, TimeRatio, %Opt. and Gap average over instances both solvers completed.\n\n";
  std::snprintf(line, sizeof line, "%-16s | %-40s | %-60s\n", "", "Exact DP", "ARG-DP");
  o << line;
  std::snprintf(line, sizeof line, "%-16s | %8s %9s %9s %10s | %8s %9s %8s %9s %9s %10s\n", "Instances", "Obj.",
                "Time(s)", "TimeRatio", "MaxTime(s)", "Obj.", "Time(s)", "%Opt.", "Gap(%)", "MaxGap(%)", "MaxTime(s)");
  o << line << std::string(130, '-') << '\n';
  for (const auto& s : rep.groups) {
    const bool avg = s.group == "Average";
    std::snprintf(line, sizeof line, "%-16s | %8s %9s %9s %10s | %8s %9s %8s %9s %9s %10s\n", s.group.c_str(),
                  fmt(s.exact_obj).c_str(), fmt(s.exact_sec).c_str(), fmt(s.time_ratio).c_str(),
                  avg ? "" : fmt(s.exact_max_sec).c_str(), fmt(s.argdp_obj).c_str(), fmt(s.argdp_sec).c_str(),
                  fmt(s.pct_opt).c_str(), fmt(s.gap).c_str(), avg ? "" : fmt(s.max_gap).c_str(),
                  avg ? "" : fmt(s.argdp_max_sec).c_str());
    o << line;
  }
  o << '\n';
  std::snprintf(line, sizeof line, "%-16s | %22s %12s %18s | %6s %8s %8s %8s\n", "Instances", "|V|", "|V^|",
                "State Reduction(%)", "n", "exact", "argdp", "failed");
  o << line << std::string(110, '-') << '\n';
  for (const auto& s : rep.groups) {
    std::snprintf(line, sizeof line, "%-16s | %22s %12s %18s | %6d %8d %8d %8d\n", s.group.c_str(),
                  fmt(s.v_full).c_str(), fmt(s.v_hat).c_str(), fmt(s.reduction).c_str(), s.n, s.exact_solved,
                  s.argdp_solved, s.failures);
    o << line;
  }
  o << '\n';
  std::snprintf(line, sizeof line, "%-6s %-16s | %8s %10s %10s | %8s %10s %10s | %8s %10s  %s\n", "ID", "Group", "Obj.",
                "Time(s)", "TimeRatio", "Obj.", "Time(s)", "Gap(%)", "|V^|", "Red.(%)", "status");
  o << line << std::string(120, '-') << '\n';
  for (const auto& r : rep.records) {
    const std::string status = r.failed() ? (r.plans_ok ? r.argdp_status : "plan-check-failed")
                                          : (r.exact_status == "ok" ? "" : "exact " + r.exact_status);
    std::snprintf(line, sizeof line, "%-6s %-16s | %8s %10s %10s | %8s %10s %10s | %8zu %10s  %s\n", r.id.c_str(),
                  r.group.c_str(), r.exact_cost ? std::to_string(*r.exact_cost).c_str() : "-",
                  fmt(r.exact_ms / 1000).c_str(), r.time_ratio ? fmt(*r.time_ratio).c_str() : "-",
                  r.argdp_cost ? std::to_string(*r.argdp_cost).c_str() : "-", fmt(r.argdp_ms / 1000).c_str(),
                  r.gap_pct ? fmt(*r.gap_pct).c_str() : "-", r.v_hat, fmt(r.reduction_pct).c_str(), status.c_str());
    o << line;
  }
  return o.str();
}

std::string to_json(const BenchReport& rep) {
  using nlohmann::json;
  json j;
  j["time_ratio"] = "exact DP time / ARG-DP time";
  j["failures"] = rep.failures;
  auto opt = [](const auto& v) { return v ? json(*v) : json(nullptr); };
  for (const auto& r : rep.records) {
    j["records"].push_back({{"id", r.id},
                            {"group", r.group},
                            {"K", r.K},
                            {"K_D", r.KD},
                            {"G", r.G},
                            {"G_N", r.GN},
                            {"exact_status", r.exact_status},
                            {"exact_cost", opt(r.exact_cost)},
                            {"exact_ms", r.exact_ms},
                            {"argdp_status", r.argdp_status},
                            {"argdp_cost", opt(r.argdp_cost)},
                            {"argdp_ms", r.argdp_ms},
                            {"pc", r.pc},
                            {"path_cost", r.path_cost},
                            {"v_hat", r.v_hat},
                            {"v_full", r.v_full},
                            {"reduction_pct", r.reduction_pct},
                            {"gap_pct", opt(r.gap_pct)},
                            {"time_ratio", opt(r.time_ratio)},
                            {"horizon_T", r.horizon_T},
                            {"exact_moves", r.exact_moves},
                            {"argdp_moves", r.argdp_moves},
                            {"exceeds_horizon", r.exceeds_horizon},
                            {"plans_ok", r.plans_ok},
                            {"error", r.error}});
  }
  for (const auto& s : rep.groups) {
    j["summary"].push_back({{"group", s.group},
                            {"n", s.n},
                            {"exact_solved", s.exact_solved},
                            {"argdp_solved", s.argdp_solved},
                            {"compared", s.compared},
                            {"failures", s.failures},
                            {"exact_obj", s.exact_obj},
                            {"exact_sec", s.exact_sec},
                            {"time_ratio", s.time_ratio},
                            {"exact_max_sec", s.exact_max_sec},
                            {"argdp_obj", s.argdp_obj},
                            {"argdp_sec", s.argdp_sec},
                            {"pct_opt", s.pct_opt},
                            {"gap_pct", s.gap},
                            {"max_gap_pct", s.max_gap},
                            {"argdp_max_sec", s.argdp_max_sec},
                            {"v_full", s.v_full},
                            {"v_hat", s.v_hat},
                            {"reduction_pct", s.reduction}});
  }
  return j.dump(2) + "\n";
}

}  // namespace rsp
