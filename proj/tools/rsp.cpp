#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "rsp/argdp.hpp"
#include "rsp/bench.hpp"
#include "rsp/complexity.hpp"
#include "rsp/counting.hpp"
#include "rsp/exact.hpp"
#include "rsp/generator.hpp"
#include "rsp/horizon.hpp"
#include "rsp/io.hpp"
#include "rsp/mip.hpp"

using namespace rsp;
using nlohmann::json;

namespace {

constexpr int kFailures = 2;

// Shared flags.
struct Common {
  std::uint64_t seed = 1;
  std::string out;
  std::string format = "table";
};

void emit(const Common& c, const std::string& text) {
  if (c.out.empty())
    std::cout << text;
  else
    write_file(c.out, text);
}

std::vector<int> parse_seq(const std::string& s) {
  std::istringstream in(s);
  std::vector<int> v;
  for (int x; in >> x;) v.push_back(x);
  if (!in.eof()) throw std::invalid_argument("sequence must be whitespace-separated integers: " + s);
  return v;
}

std::string seq_str(const std::vector<int>& v) {
  std::string s;
  for (int x : v) s += (s.empty() ? "" : " ") + std::to_string(x);
  return s;
}

std::string plan_text(const Plan& plan, const Instance& inst, const Common& c) {
  if (c.format == "json") return plan_to_json(plan) + "\n";
  std::ostringstream o;
  if (c.format == "csv") {
    o << "step,src,dst,count,cost\n";
    for (std::size_t k = 0; k < plan.moves.size(); ++k) {
      const auto& m = plan.moves[k];
      o << k + 1 << ',' << m.src << ',' << m.dst << ',' << m.count << ',' << inst.c(m.src, m.dst) << '\n';
    }
    return o.str();
  }
  State s = inst.initial;
  o << "initial  " << format_state(s, inst) << '\n';
  for (std::size_t k = 0; k < plan.moves.size(); ++k) {
    s = apply_move(s, plan.moves[k], inst);
    o << "move " << k + 1 << ": " << to_string(plan.moves[k]) << "  -> " << format_state(s, inst) << '\n';
  }
  o << "cost " << plan.total_cost << "  moves " << plan.moves.size() << '\n';
  return o.str();
}

int resolve_T(const std::string& spec, const Instance& inst, const Plan* plan) {
  if (spec != "auto") return std::stoi(spec);
  const AutoHorizon h = auto_horizon(inst, plan);
  if (h.plan_exceeds)
    std::cerr << "note: plan needs " << plan->moves.size() << " periods, horizon heuristic gives " << h.horizon
              << "; using T=" << h.T << '\n';
  return h.T;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Railcar shunting toolkit"};
  app.require_subcommand(1);
  app.fallthrough();  // global flags may follow the subcommand
  Common c;
  app.add_option("--seed", c.seed, "Random seed")->capture_default_str();
  app.add_option("--out,-o", c.out, "Output file (default stdout)");
  app.add_option("--format", c.format, "Output format")
      ->check(CLI::IsMember({"csv", "table", "json"}))
      ->capture_default_str();

  // gen / gaia
  bool gen_mixed = false;
  GeneratorParams gp;
  auto* gen = app.add_subcommand("gen", "Random instance with the benchmark parameter ranges");
  gen->add_flag("--mixed", gen_mixed, "Draw destination-free groups");
  gen->add_option("--groups-min", gp.groups_min);
  gen->add_option("--groups-max", gp.groups_max);
  gen->add_option("--tracks-min", gp.tracks_min);
  gen->add_option("--tracks-max", gp.tracks_max);
  bool gaia_mixed = false;
  auto* gaia_cmd = app.add_subcommand("gaia", "Random instance on the 14-track flat yard");
  gaia_cmd->add_flag("--mixed", gaia_mixed, "Draw destination-free groups");

  // solve
  std::string inst_path, plan_path;
  bool use_exact = false, use_argdp = false, stats = false;
  std::size_t max_states = 0;
  std::string emit_graph;
  int delta = 2;
  auto* solve = app.add_subcommand("solve", "Solve an instance");
  solve->add_option("instance", inst_path, "Instance JSON")->required()->check(CLI::ExistingFile);
  auto* fe = solve->add_flag("--exact", use_exact, "Optimal dynamic program");
  auto* fa = solve->add_flag("--argdp", use_argdp, "ARG-DP heuristic");
  fe->excludes(fa);
  solve->add_option("--max-states", max_states, "State cap (0 keeps the solver default)");
  solve->add_option("--emit-graph", emit_graph, "Dump the full state graph")->check(CLI::IsMember({"dot"}));
  solve->add_flag("--stats", stats, "Print ARG-DP statistics as JSON on stderr");
  solve->add_option("--delta", delta, "Preprocessing split threshold")->capture_default_str();

  // horizon
  auto* hor = app.add_subcommand("horizon", "Constructive horizon plan and its length T");
  hor->add_option("instance", inst_path)->required()->check(CLI::ExistingFile);
  hor->add_option("--delta", delta)->capture_default_str();

  // mip
  std::string T_spec = "auto", model_name = "RSP";
  auto* mip = app.add_subcommand("mip", "MIP model export and plan checking");
  mip->require_subcommand(1);
  auto* mexp = mip->add_subcommand("export", "Write the model in MPS format");
  mexp->add_option("instance", inst_path)->required()->check(CLI::ExistingFile);
  mexp->add_option("--T", T_spec, "Horizon: auto or a period count")->capture_default_str();
  mexp->add_option("--name", model_name)->capture_default_str();
  auto* mchk = mip->add_subcommand("check", "Check a plan against every model constraint");
  mchk->add_option("instance", inst_path)->required()->check(CLI::ExistingFile);
  mchk->add_option("plan", plan_path)->required()->check(CLI::ExistingFile);
  mchk->add_option("--T", T_spec, "Horizon: auto or a period count")->capture_default_str();

  // complexity lab
  std::string seq_text, flavor = "zsss";
  auto* conf = app.add_subcommand("conflicts", "Conflict graph of a permutation");
  conf->add_option("sequence", seq_text, "e.g. \"2 4 3 6 1 8 7 5\"")->required();
  conf->add_option("--flavor", flavor)->check(CLI::IsMember({"zsss", "rspsc"}))->capture_default_str();
  auto* trans = app.add_subcommand("transform", "Map a ZSSS sequence to an RSP-sc sequence");
  trans->add_option("sequence", seq_text)->required();
  int sc_k = 2;
  Cost sc_cbar = 100, sc_R = 1;
  bool sc_transform = false;
  auto* scgen = app.add_subcommand("rspsc-gen", "Special-case instance for a sequence");
  scgen->add_option("sequence", seq_text)->required();
  scgen->add_option("--k", sc_k, "Number of sorting tracks")->capture_default_str();
  scgen->add_option("--cbar", sc_cbar, "Cost of every other move")->capture_default_str();
  scgen->add_option("--R", sc_R, "Departure cost")->capture_default_str();
  scgen->add_flag("--transform", sc_transform, "Transform the sequence first");

  // count-states
  StateCountParams sp;
  std::string per_dest;
  auto* cnt = app.add_subcommand("count-states", "Closed-form vertex count of the state graph");
  cnt->add_option("instance", inst_path, "Take the parameters from an instance")->check(CLI::ExistingFile);
  cnt->add_option("--groups", sp.groups);
  cnt->add_option("--mixed", sp.mixed);
  cnt->add_option("--tracks", sp.tracks);
  cnt->add_option("--classification", sp.classification);
  cnt->add_option("--per-dest", per_dest, "Groups per departure track, e.g. \"2 1\"");

  // bench
  std::string suite = "standard";
  int count = 60;
  BenchOptions bo;
  bool no_exact = false, no_check = false;
  auto* bench = app.add_subcommand("bench", "Run a benchmark suite");
  bench->add_option("--suite", suite)->check(CLI::IsMember({"standard", "gaia"}))->capture_default_str();
  bench->add_option("--count", count, "Instances (first half mixed)")->capture_default_str();
  bench->add_option("--exact-cap", bo.exact_cap)->capture_default_str();
  bench->add_option("--argdp-cap", bo.argdp_cap)->capture_default_str();
  bench->add_option("--jobs", bo.jobs, "Worker threads, 0 for one per core")->capture_default_str();
  bench->add_flag("--no-exact", no_exact, "Skip the exact solver");
  bench->add_flag("--no-check", no_check, "Skip plan replay and MIP checks");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*gen) {
      gp.mixed = gen_mixed;
      emit(c, instance_to_json(generate(gp, c.seed)) + "\n");
    } else if (*gaia_cmd) {
      emit(c, instance_to_json(gaia(gaia_mixed, c.seed)) + "\n");
    } else if (*solve) {
      const Instance inst = load_instance(inst_path);
      if (!use_exact && !use_argdp) use_exact = true;
      if (!emit_graph.empty()) {
        const StateGraph g = max_states ? build_state_graph(inst, max_states) : build_state_graph(inst);
        std::cout << to_dot(g, inst);
        return 0;
      }
      Plan plan;
      try {
        if (use_exact) {
          ExactOptions eo;
          if (max_states) eo.max_states = max_states;
          plan = solve_exact(inst, eo).plan;
        } else {
          ArgdpOptions ao;
          ao.delta = delta;
          if (max_states) ao.max_states = max_states;
          auto res = solve_argdp(inst, ao);
          plan = std::move(res.plan);
          if (stats) {
            const auto& s = res.stats;
            std::cerr << json{{"pc", s.pc},           {"path_cost", s.path_cost},         {"total", s.total},
                              {"v_hat", s.v_hat},     {"v_full", s.v_full},               {"reduction_pct", s.reduction_pct},
                              {"millis", s.millis}}
                             .dump()
                      << '\n';
          }
        }
      } catch (const ResourceLimit& e) {
        std::cerr << "resource limit: " << e.what() << '\n';
        return kFailures;
      } catch (const Unsolvable& e) {
        std::cerr << "unsolvable: " << e.what() << '\n';
        return kFailures;
      } catch (const HeuristicFailure& e) {
        std::cerr << "heuristic failure: " << e.what() << '\n';
        return kFailures;
      }
      emit(c, plan_text(plan, inst, c));
    } else if (*hor) {
      const Instance inst = load_instance(inst_path);
      const HorizonResult h = compute_horizon(inst, delta);
      if (c.format == "json") {
        json j = json::parse(plan_to_json(h.plan));
        j["T"] = h.T;
        j["phases"] = {{"merges", h.merges}, {"upward", h.upward}, {"clearing", h.clearing}, {"dropoff", h.dropoff}};
        emit(c, j.dump(2) + "\n");
      } else {
        std::ostringstream o;
        o << "T " << h.T << "  (merges " << h.merges << ", upward " << h.upward << ", clearing " << h.clearing
          << ", drop-off " << h.dropoff << ")\n";
        Plan p = h.plan;
        p.total_cost = plan_cost(p, inst);
        o << plan_text(p, inst, c);
        emit(c, o.str());
      }
    } else if (*mexp) {
      const Instance inst = load_instance(inst_path);
      const int T = resolve_T(T_spec, inst, nullptr);
      const MipModel m = build_mip(inst, T);
      std::cerr << "T=" << T << "  columns " << m.vars.size() << "  rows " << m.rows.size() << '\n';
      emit(c, export_mps(m, model_name));
    } else if (*mchk) {
      const Instance inst = load_instance(inst_path);
      const Plan plan = load_plan(plan_path);
      const int T = resolve_T(T_spec, inst, &plan);
      const MipModel m = build_mip(inst, T);
      const auto rep = check_feasibility(m, plan_to_assignment(inst, plan, T, m), inst);
      std::ostringstream o;
      if (c.format == "json") {
        json j{{"feasible", rep.feasible}, {"objective", rep.objective}, {"T", T}, {"violations", json::array()}};
        for (const auto& v : rep.violations)
          j["violations"].push_back({{"row", v.row}, {"eq", v.eq}, {"where", v.where}, {"lhs", v.lhs}, {"rhs", v.rhs}});
        o << j.dump(2) << '\n';
      } else {
        o << (rep.feasible ? "feasible" : "infeasible") << "  objective " << rep.objective << "  T " << T << '\n';
        for (const auto& v : rep.violations)
          o << "  row " << v.row << " (eq " << v.eq << ") " << v.where << ": lhs " << v.lhs << " rhs " << v.rhs << '\n';
      }
      emit(c, o.str());
      return rep.feasible ? 0 : kFailures;
    } else if (*conf) {
      const auto seq = parse_seq(seq_text);
      const ConflictGraph g = flavor == "zsss" ? zsss_conflicts(seq) : rspsc_conflicts(seq);
      const auto edges = g.value_edges();
      std::ostringstream o;
      if (c.format == "json") {
        json j{{"flavor", flavor}, {"sequence", seq}, {"edges", json::array()}};
        for (const auto& [a, b] : edges) j["edges"].push_back({a, b});
        o << j.dump(2) << '\n';
      } else if (c.format == "csv") {
        o << "a,b\n";
        for (const auto& [a, b] : edges) o << a << ',' << b << '\n';
      } else {
        o << edges.size() << " edges\n";
        for (const auto& [a, b] : edges) o << "  (" << a << ", " << b << ")\n";
      }
      emit(c, o.str());
    } else if (*trans) {
      const auto sigma = parse_seq(seq_text);
      const Transformed t = transform_zsss_to_rspsc(sigma);
      auto kind = [](ItemKind k) { return k == ItemKind::Original ? "original" : k == ItemKind::SetV ? "set-v" : "dummy"; };
      std::ostringstream o;
      if (c.format == "json") {
        json j{{"input", sigma}, {"output", t.values()}, {"dummies", t.dummies}, {"set_v", t.set_v},
               {"repaired", t.repaired}, {"correspond", conflicts_correspond(sigma, t)}, {"items", json::array()}};
        for (const auto& it : t.items) j["items"].push_back({{"value", it.value}, {"kind", kind(it.kind)}, {"origin", it.origin}});
        o << j.dump(2) << '\n';
      } else if (c.format == "csv") {
        o << "position,value,kind,origin\n";
        for (std::size_t p = 0; p < t.items.size(); ++p)
          o << p << ',' << t.items[p].value << ',' << kind(t.items[p].kind) << ',' << t.items[p].origin << '\n';
      } else {
        o << seq_str(t.values()) << '\n';
        for (const auto& it : t.items) {
          o << "  " << it.value << "  " << kind(it.kind);
          if (it.kind == ItemKind::Original) o << " (input " << sigma[it.origin] << ")";
          o << '\n';
        }
        o << "set-v " << t.set_v << "  dummies " << t.dummies << "  conflicts correspond "
          << (conflicts_correspond(sigma, t) ? "yes" : "no") << '\n';
      }
      emit(c, o.str());
    } else if (*scgen) {
      auto seq = parse_seq(seq_text);
      if (sc_transform) seq = transform_zsss_to_rspsc(seq).values();
      emit(c, instance_to_json(build_rspsc_instance(seq, sc_k, sc_cbar, sc_R)) + "\n");
    } else if (*cnt) {
      if (!inst_path.empty()) {
        const Instance inst = load_instance(inst_path);
        sp.groups = inst.num_groups();
        sp.mixed = inst.mixed_count();
        sp.tracks = inst.num_tracks();
        sp.classification = static_cast<int>(inst.classification_tracks().size());
        sp.per_dest.assign(inst.departure_tracks().size(), 0);
        for (const auto& g : inst.groups)
          if (!g.dest.any) ++sp.per_dest[g.dest.track];
      } else {
        sp.per_dest = parse_seq(per_dest);
      }
      const BigInt n = count_states(sp);
      if (c.format == "json")
        emit(c, json{{"states", n.str()}}.dump() + "\n");
      else
        emit(c, n.str() + "\n");
    } else if (*bench) {
      bo.run_exact = !no_exact;
      bo.check_plans = !no_check;
      const auto cases = suite == "gaia" ? gaia_suite(count, c.seed) : standard_suite(count, c.seed);
      const BenchReport rep = run_bench(cases, bo);
      emit(c, c.format == "csv" ? to_csv(rep) : c.format == "json" ? to_json(rep) : to_table(rep));
      return rep.failures ? kFailures : 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
