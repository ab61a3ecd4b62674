#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "rsp/argdp.hpp"
#include "rsp/bench.hpp"
#include "rsp/complexity.hpp"
#include "rsp/counting.hpp"
#include "rsp/exact.hpp"
#include "rsp/generator.hpp"
#include "rsp/horizon.hpp"
#include "rsp/io.hpp"
#include "rsp/mip.hpp"

namespace py = pybind11;
using namespace rsp;

namespace {

py::int_ to_py(const BigInt& v) { return py::int_(py::str(v.str())); }

std::vector<std::tuple<int, int, int>> move_tuples(const Plan& p) {
  std::vector<std::tuple<int, int, int>> out;
  for (const auto& m : p.moves) out.emplace_back(m.src, m.dst, m.count);
  return out;
}

Plan plan_from(const std::vector<std::tuple<int, int, int>>& moves, const Instance& inst) {
  Plan p;
  for (const auto& [s, d, c] : moves) p.moves.push_back({s, d, c});
  p.total_cost = plan_cost(p, inst);
  return p;
}

int pick_T(const Instance& inst, const Plan* plan, int T) { return T > 0 ? T : auto_horizon(inst, plan).T; }

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Railcar shunting toolkit";
  m.attr("__version__") = "0.1.0";

  py::register_exception<ResourceLimit>(m, "ResourceLimit");
  py::register_exception<HeuristicFailure>(m, "HeuristicFailure");
  py::register_exception<Unsolvable>(m, "Unsolvable");
  py::register_exception<InvalidInstance>(m, "InvalidInstance");
  py::register_exception<IllegalMove>(m, "IllegalMove");
  py::register_exception<FormatError>(m, "FormatError");
  py::register_exception<PreconditionError>(m, "PreconditionError", PyExc_ValueError);
  py::register_exception<InvalidCosts>(m, "InvalidCosts", PyExc_ValueError);

  py::class_<Plan>(m, "Plan")
      .def_property_readonly("moves", &move_tuples, "List of (src, dst, count)")
      .def_readonly("total_cost", &Plan::total_cost)
      .def("to_json", [](const Plan& p) { return plan_to_json(p); })
      .def_static("from_json", &plan_from_json)
      .def("__len__", [](const Plan& p) { return p.moves.size(); })
      .def("__repr__", [](const Plan& p) {
        return "<Plan moves=" + std::to_string(p.moves.size()) + " cost=" + std::to_string(p.total_cost) + ">";
      });

  py::class_<Instance>(m, "Instance")
      .def_static("from_json", &instance_from_json)
      .def_static("load", &load_instance)
      .def("to_json", [](const Instance& i, int indent) { return instance_to_json(i, indent); }, py::arg("indent") = 2)
      .def("save", [](const Instance& i, const std::string& path) { save_instance(i, path); })
      .def_property_readonly("num_tracks", &Instance::num_tracks)
      .def_property_readonly("num_groups", &Instance::num_groups)
      .def_property_readonly("mixed_count", &Instance::mixed_count)
      .def_property_readonly("departure_tracks", &Instance::departure_tracks)
      .def_property_readonly("classification_tracks", &Instance::classification_tracks)
      .def_property_readonly("initial", [](const Instance& i) { return i.initial.tracks; })
      .def("validate", &Instance::validate)
      .def("is_final", [](const Instance& i) { return is_final(i.initial, i); })
      .def("plan", &plan_from, py::arg("moves"), "Build a plan from (src, dst, count) tuples")
      .def("is_valid_plan", [](const Instance& i, const Plan& p) { return plan_is_valid(i, p); })
      .def("__repr__", [](const Instance& i) {
        return "<Instance K=" + std::to_string(i.num_tracks()) + " G=" + std::to_string(i.num_groups()) + ">";
      });

  m.def("make_yard", &make_yard, py::arg("departures"), py::arg("classification"), py::arg("capacity"));
  m.def(
      "add_group",
      [](Instance& inst, int track, std::optional<int> dest, std::int64_t length) {
        return add_group(inst, track, dest ? Destination::fixed(*dest) : Destination::any_classification(), length);
      },
      py::arg("inst"), py::arg("track"), py::arg("dest"), py::arg("length") = 1,
      "dest=None means any classification track");
  m.def(
      "generate",
      [](bool mixed, std::uint64_t seed) {
        GeneratorParams p;
        p.mixed = mixed;
        return generate(p, seed);
      },
      py::arg("mixed"), py::arg("seed"));
  m.def("gaia", &gaia, py::arg("mixed"), py::arg("seed"));

  m.def(
      "solve_exact",
      [](const Instance& inst, std::size_t max_states) {
        ExactOptions o;
        o.max_states = max_states;
        py::gil_scoped_release nogil;
        return solve_exact(inst, o).plan;
      },
      py::arg("inst"), py::arg("max_states") = ExactOptions{}.max_states);
  m.def(
      "solve_argdp",
      [](const Instance& inst, std::size_t max_states, int delta) {
        ArgdpOptions o;
        o.max_states = max_states;
        o.delta = delta;
        ArgdpResult r;
        {
          py::gil_scoped_release nogil;
          r = solve_argdp(inst, o);
        }
        py::dict stats;
        stats["pc"] = r.stats.pc;
        stats["path_cost"] = r.stats.path_cost;
        stats["total"] = r.stats.total;
        stats["v_hat"] = r.stats.v_hat;
        stats["v_full"] = py::int_(py::str(r.stats.v_full));
        stats["reduction_pct"] = r.stats.reduction_pct;
        stats["millis"] = r.stats.millis;
        return py::make_tuple(r.plan, stats);
      },
      py::arg("inst"), py::arg("max_states") = ArgdpOptions{}.max_states, py::arg("delta") = 2,
      "Returns (plan, stats)");
  m.def(
      "horizon",
      [](const Instance& inst, int delta) {
        auto h = compute_horizon(inst, delta);
        h.plan.total_cost = plan_cost(h.plan, inst);
        return py::make_tuple(h.T, h.plan);
      },
      py::arg("inst"), py::arg("delta") = 2, "Returns (T, plan)");

  m.def(
      "export_mps",
      [](const Instance& inst, int T, const std::string& name) {
        return export_mps(build_mip(inst, pick_T(inst, nullptr, T)), name);
      },
      py::arg("inst"), py::arg("T") = 0, py::arg("name") = "RSP", "T=0 picks the horizon heuristic");
  m.def(
      "check_plan",
      [](const Instance& inst, const Plan& plan, int T) {
        T = pick_T(inst, &plan, T);
        const MipModel mm = build_mip(inst, T);
        const auto rep = check_feasibility(mm, plan_to_assignment(inst, plan, T, mm), inst);
        py::list viol;
        for (const auto& v : rep.violations) viol.append(py::make_tuple(v.eq, v.where, v.lhs, v.rhs));
        py::dict out;
        out["feasible"] = rep.feasible;
        out["objective"] = rep.objective;
        out["T"] = T;
        out["violations"] = viol;
        return out;
      },
      py::arg("inst"), py::arg("plan"), py::arg("T") = 0, "MIP feasibility of a plan; T=0 picks the horizon");

  m.def(
      "count_states",
      [](int groups, int mixed, int tracks, int classification, const std::vector<int>& per_dest) {
        return to_py(count_states({groups, mixed, tracks, classification, per_dest}));
      },
      py::arg("groups"), py::arg("mixed"), py::arg("tracks"), py::arg("classification"), py::arg("per_dest"));
  m.def(
      "state_reduction",
      [](int groups, int mixed, int tracks, int classification, const std::vector<int>& per_dest,
         const std::vector<int>& q, int p, int r) {
        const auto red = state_reduction({groups, mixed, tracks, classification, per_dest}, q, p, r);
        return py::make_tuple(to_py(red.before), to_py(red.after), red.percent_decrease);
      },
      py::arg("groups"), py::arg("mixed"), py::arg("tracks"), py::arg("classification"), py::arg("per_dest"),
      py::arg("q") = std::vector<int>{}, py::arg("p") = 0, py::arg("r") = 0, "Returns (before, after, percent)");

  m.def(
      "conflicts",
      [](const std::vector<int>& seq, const std::string& flavor) {
        if (flavor != "zsss" && flavor != "rspsc") throw py::value_error("flavor must be zsss or rspsc");
        return (flavor == "zsss" ? zsss_conflicts(seq) : rspsc_conflicts(seq)).value_edges();
      },
      py::arg("seq"), py::arg("flavor") = "zsss", "Conflict edges as value pairs");
  m.def(
      "transform",
      [](const std::vector<int>& sigma) {
        const auto t = transform_zsss_to_rspsc(sigma);
        py::list kinds;
        for (const auto& it : t.items)
          kinds.append(it.kind == ItemKind::Original ? "original" : it.kind == ItemKind::SetV ? "set-v" : "dummy");
        py::dict out;
        out["values"] = t.values();
        out["kinds"] = kinds;
        out["dummies"] = t.dummies;
        out["set_v"] = t.set_v;
        out["correspond"] = conflicts_correspond(sigma, t);
        return out;
      },
      py::arg("sigma"));
  m.def("build_rspsc_instance", &build_rspsc_instance, py::arg("sigma"), py::arg("k"), py::arg("cbar"), py::arg("R"));

  m.def(
      "bench",
      [](const std::string& suite, int count, std::uint64_t seed, bool run_exact, std::size_t exact_cap,
         std::size_t argdp_cap, const std::string& format) {
        if (suite != "standard" && suite != "gaia") throw py::value_error("suite must be standard or gaia");
        BenchOptions o;
        o.run_exact = run_exact;
        o.exact_cap = exact_cap;
        o.argdp_cap = argdp_cap;
        BenchReport rep;
        {
          py::gil_scoped_release nogil;
          rep = run_bench(suite == "gaia" ? gaia_suite(count, seed) : standard_suite(count, seed), o);
        }
        return py::make_tuple(format == "csv" ? to_csv(rep) : format == "json" ? to_json(rep) : to_table(rep),
                              rep.failures);
      },
      py::arg("suite") = "standard", py::arg("count") = 60, py::arg("seed") = 1, py::arg("run_exact") = true,
      py::arg("exact_cap") = BenchOptions{}.exact_cap, py::arg("argdp_cap") = BenchOptions{}.argdp_cap,
      py::arg("format") = "json", "Returns (report text, failure count)");
}
