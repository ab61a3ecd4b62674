#include <fstream>
#include <random>
#include <sstream>

#include "doctest.h"
#include "mps_reader.hpp"
#include "rsp/argdp.hpp"
#include "rsp/exact.hpp"
#include "rsp/generator.hpp"
#include "rsp/horizon.hpp"
#include "rsp/io.hpp"
#include "rsp/mip.hpp"

using namespace rsp;

namespace {

Instance tiny() {
  Instance inst = make_yard(1, 1, 1);
  add_group(inst, 1, Destination::fixed(0));
  return inst;
}

bool indicator_off(const MipModel& m, const MipRow& r, const MipAssignment& a, const Instance& inst) {
  if (r.eq == 13 || r.eq == 14) return a.values[m.y(r.g, r.i, r.j, r.t)] == 0;
  const std::int64_t xp = r.t == 1 ? (std::find(inst.initial.tracks[r.i].begin(), inst.initial.tracks[r.i].end(), r.g) !=
                                      inst.initial.tracks[r.i].end())
                                   : a.values[m.x(r.g, r.i, r.t - 1)];
  return xp + a.values[m.v(r.i, r.j, r.t)] < 2;
}

// Feasible with the plan's cost, unit movement indicators, and big-M rows slack whenever switched off.
void check_round_trip(const Instance& inst, const Plan& plan) {
  const int T = auto_horizon(inst, &plan).T;
  const MipModel m = build_mip(inst, T);
  const MipAssignment a = plan_to_assignment(inst, plan, T, m);
  const auto rep = check_feasibility(m, a, inst);
  if (!rep.feasible) {
    for (const auto& v : rep.violations) MESSAGE(v.where << " lhs=" << v.lhs << " rhs=" << v.rhs);
  }
  REQUIRE(rep.feasible);
  CHECK(rep.objective == plan.total_cost);
  for (int t = 1; t <= T; ++t)
    for (int g = 0; g < m.G; ++g) {
      std::int64_t z = 0;
      for (int i = 0; i < m.K; ++i)
        for (int j = 0; j < m.K; ++j)
          if (i != j) z += a.values[m.y(g, i, j, t)];
      CHECK(z <= 1);
    }
  for (const auto& r : m.rows) {
    if (r.eq < 13 || r.eq > 17 || r.eq == 15) continue;
    if (!indicator_off(m, r, a, inst)) continue;
    std::int64_t lhs = 0;
    for (auto [c, v] : r.coef) lhs += v * a.values[c];
    const std::int64_t slack = r.sense == 'G' ? lhs - r.rhs : r.rhs - lhs;
    // M2 = G leaves no slack in (16) when every group leaves track i in one move to another track.
    if (r.eq == 16 && a.values[m.n_minus(r.i, r.t)] == m.G) CHECK(slack >= 0);
    else CHECK_MESSAGE(slack >= 1, "eq " << r.eq << " g=" << r.g << " i=" << r.i << " j=" << r.j << " t=" << r.t);
  }
}

}  // namespace

TEST_CASE("model dimensions and objective") {
  Instance inst = make_yard(2, 2, 10);
  for (int k = 0; k < 3; ++k) add_group(inst, 2 + k % 2, Destination::fixed(k % 2));
  const MipModel m = build_mip(inst, 6);
  CHECK(m.count(VarKind::Y) == 216);
  CHECK(m.count(VarKind::X) == 3 * 4 * 6);
  CHECK(m.count(VarKind::V) == 4 * 3 * 6);
  CHECK(m.M1 == 6);
  CHECK(m.M2 == 3);
  REQUIRE(m.objective.size() == m.count(VarKind::V));
  for (auto [col, c] : m.objective) {
    const auto& v = m.vars[col];
    REQUIRE(v.kind == VarKind::V);
    CHECK(c == inst.c(v.i, v.j));
  }
  CHECK_THROWS(build_mip(inst, 0));
}

TEST_CASE("tiny model has one solution up to the split of the position change") {
  const Instance inst = tiny();
  const MipModel m = build_mip(inst, 1);
  REQUIRE(m.vars.size() == 17);
  CHECK(m.count(VarKind::V) == 2);
  // Binaries are the first eight columns and the last two; the rest are integers up to 2.
  std::vector<int> ints, bins;
  for (std::size_t c = 0; c < m.vars.size(); ++c) (m.vars[c].binary ? bins : ints).push_back(static_cast<int>(c));
  MipAssignment a;
  a.values.assign(m.vars.size(), 0);
  int feasible = 0, canonical = 0;
  const long total_int = 19683;  // 3^9
  for (int bm = 0; bm < (1 << bins.size()); ++bm) {
    for (std::size_t k = 0; k < bins.size(); ++k) a.values[bins[k]] = (bm >> k) & 1;
    for (long im = 0; im < total_int; ++im) {
      long r = im;
      for (int c : ints) {
        a.values[c] = r % 3;
        r /= 3;
      }
      const auto rep = check_feasibility(m, a, inst);
      if (!rep.feasible) continue;
      ++feasible;
      CHECK(a.values[m.v(1, 0, 1)] == 1);
      CHECK(rep.objective == 1);
      if (a.values[m.delta_plus(0, 1)] * a.values[m.delta_minus(0, 1)] == 0) ++canonical;
    }
  }
  CHECK(feasible == 2);
  CHECK(canonical == 1);
}

TEST_CASE("plan_to_assignment variable semantics") {
  SUBCASE("empty plan on a final state") {
    Instance inst = make_yard(1, 2, 4);
    add_group(inst, 0, Destination::fixed(0));
    const MipModel m = build_mip(inst, 3);
    const auto a = plan_to_assignment(inst, {}, 3, m);
    for (int t = 1; t <= 3; ++t) CHECK(a.values[m.w(t)] == 1);
    CHECK(a.values[m.u(1)] == 1);
    CHECK(a.values[m.u(2)] == 0);
    CHECK(check_feasibility(m, a, inst).feasible);
  }
  SUBCASE("single move") {
    const Instance inst = tiny();
    const MipModel m = build_mip(inst, 2);
    Plan plan{{{1, 0, 1}}, 1};
    const auto a = plan_to_assignment(inst, plan, 2, m);
    CHECK(a.values[m.v(1, 0, 1)] == 1);
    CHECK(a.values[m.y(0, 1, 0, 1)] == 1);
    CHECK(a.values[m.n_minus(1, 1)] == 1);
    CHECK(a.values[m.n_plus(0, 1)] == 1);
    CHECK(a.values[m.u(1)] == 1);
    CHECK(a.objective == 1);
  }
  SUBCASE("position change of a moved block") {
    // Three groups on track 1, two on track 2; move the top two from 1 to 2.
    Instance inst = make_yard(1, 2, 10);
    for (int k = 0; k < 3; ++k) add_group(inst, 1, Destination::fixed(0));
    for (int k = 0; k < 2; ++k) add_group(inst, 2, Destination::fixed(0));
    const MipModel m = build_mip(inst, 1);
    Plan plan{{{1, 2, 2}}, 1};
    const auto a = plan_to_assignment(inst, plan, 1, m);
    // Delta = N_j - N_i + N-_i = 2 - 3 + 2 = 1.
    for (int g : {1, 2}) {
      CHECK(a.values[m.delta_plus(g, 1)] == 1);
      CHECK(a.values[m.delta_minus(g, 1)] == 0);
    }
    CHECK(a.values[m.p(1, 1)] == 3);
    CHECK(a.values[m.p(2, 1)] == 4);
    // The yard is not final after this move, so only the termination row can fail.
    const auto rep = check_feasibility(m, a, inst);
    REQUIRE(rep.violations.size() == 1);
    CHECK(rep.violations[0].eq == 25);
  }
  SUBCASE("plan longer than the horizon") {
    const Instance inst = tiny();
    const MipModel m = build_mip(inst, 1);
    Plan plan{{{1, 0, 1}, {0, 1, 1}, {1, 0, 1}}, 3};
    CHECK_THROWS_AS(plan_to_assignment(inst, plan, 1, m), PlanTooLong);
  }
}

TEST_CASE("checker reports broken assignments") {
  Instance inst = make_yard(1, 2, 10);
  add_group(inst, 1, Destination::fixed(0));
  add_group(inst, 2, Destination::fixed(0));
  const MipModel m = build_mip(inst, 2);
  Plan plan{{{1, 0, 1}, {2, 0, 1}}, 3};
  const auto good = plan_to_assignment(inst, plan, 2, m);
  REQUIRE(check_feasibility(m, good, inst).feasible);

  auto has = [&](const FeasibilityReport& r, std::initializer_list<int> eqs) {
    for (const auto& v : r.violations)
      for (int e : eqs)
        if (v.eq == e) return true;
    return false;
  };
  auto two_moves = good;
  two_moves.values[m.v(2, 1, 1)] = 1;
  CHECK(has(check_feasibility(m, two_moves, inst), {4}));

  auto frozen = good;
  frozen.values[m.delta_plus(1, 2)] = 0;
  frozen.values[m.delta_minus(1, 2)] = 0;
  frozen.values[m.p(1, 2)] = 1;
  CHECK(has(check_feasibility(m, frozen, inst), {13, 14}));

  auto negative = good;
  negative.values[m.n(0, 1)] = -1;
  CHECK(has(check_feasibility(m, negative, inst), {28}));
}

TEST_CASE("plans from every solver check out") {
  std::mt19937_64 rng(404);
  for (int k = 0; k < 40; ++k) {
    GeneratorParams p;
    p.tracks_max = 5;
    p.groups_max = 5;
    p.mixed = k % 2;
    const Instance inst = generate(p, rng());
    check_round_trip(inst, solve_exact(inst).plan);
    try {
      check_round_trip(inst, solve_argdp(inst).plan);
    } catch (const HeuristicFailure&) {
    }
    if (inst.classification_tracks().size() >= 2) check_round_trip(inst, compute_horizon(inst).plan);
  }
}

TEST_CASE("MPS export") {
  SUBCASE("golden file") {
    const std::string text = export_mps(build_mip(tiny(), 1), "TINY");
    std::ifstream f(RSP_TEST_DATA "/tiny.mps");
    REQUIRE(f.good());
    std::stringstream ss;
    ss << f.rdbuf();
    CHECK(text == ss.str());
  }
  SUBCASE("sections and objective row") {
    const std::string text = export_mps(build_mip(tiny(), 1));
    for (const char* s : {"NAME", "ROWS", "COLUMNS", "RHS", "BOUNDS", "ENDATA"})
      CHECK((text.rfind(s, 0) == 0 || text.find(std::string("\n") + s) != std::string::npos));
    const auto d = oracle::read_mps(text);
    CHECK(d.objective_rows == 1);
    CHECK(d.objective == "SHUNTCOST");
  }
  SUBCASE("round trip through an independent reader") {
    std::mt19937_64 rng(8);
    for (int k = 0; k < 6; ++k) {
      GeneratorParams p;
      p.tracks_max = 5;
      p.groups_max = 4;
      p.mixed = k % 2;
      const Instance inst = generate(p, rng());
      const MipModel m = build_mip(inst, 1 + k % 3);
      const auto d = oracle::read_mps(export_mps(m));
      REQUIRE(d.rows.size() == m.rows.size());
      REQUIRE(d.columns.size() == m.vars.size());
      CHECK(d.integer.size() == m.vars.size());
      auto cname = [](int c) {
        char b[16];
        std::snprintf(b, sizeof b, "C%07d", c + 1);
        return std::string(b);
      };
      auto rname = [](int r) {
        char b[16];
        std::snprintf(b, sizeof b, "R%07d", r + 1);
        return std::string(b);
      };
      for (std::size_t r = 0; r < m.rows.size(); ++r) {
        const auto& row = m.rows[r];
        CHECK(d.rows.at(rname(r)) == row.sense);
        const double rhs = d.rhs.count(rname(r)) ? d.rhs.at(rname(r)) : 0.0;
        CHECK(rhs == static_cast<double>(row.rhs));
        for (auto [c, v] : row.coef) CHECK(d.columns.at(cname(c)).at(rname(r)) == static_cast<double>(v));
      }
      for (auto [c, v] : m.objective) CHECK(d.columns.at(cname(c)).at("SHUNTCOST") == static_cast<double>(v));
      for (std::size_t c = 0; c < m.vars.size(); ++c) {
        if (m.vars[c].binary) CHECK(d.upper.at(cname(c)) == 1.0);
        else CHECK(d.free_upper.count(cname(c)) == 1);
      }
    }
  }
}

TEST_CASE("auto horizon") {
  const Instance inst = tiny();
  CHECK(auto_horizon(inst).T == 1);
  Instance two = make_yard(1, 2, 4);
  add_group(two, 1, Destination::fixed(0));
  add_group(two, 2, Destination::fixed(0));
  const auto h = auto_horizon(two);
  CHECK(h.horizon == compute_horizon(two).T);
  Plan longer{{{1, 2, 1}, {2, 1, 2}, {1, 0, 2}}, 0};
  const auto h2 = auto_horizon(two, &longer);
  CHECK(h2.T == std::max(3, h.horizon));
  CHECK(h2.plan_exceeds == (3 > h.horizon));
}
