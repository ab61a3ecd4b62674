#include <map>

#include "doctest.h"
#include "rsp/bench.hpp"
#include "rsp/generator.hpp"
#include "rsp/io.hpp"

using namespace rsp;

TEST_CASE("generate is deterministic per seed") {
  GeneratorParams p;
  p.mixed = true;
  CHECK(instance_to_json(generate(p, 42)) == instance_to_json(generate(p, 42)));
  CHECK(instance_to_json(generate(p, 42)) != instance_to_json(generate(p, 43)));
}

TEST_CASE("generate draws |K| uniformly on 4..10") {
  GeneratorParams p;
  std::map<int, int> hist;
  const int n = 1000;
  for (int s = 0; s < n; ++s) ++hist[generate(p, 9000 + s).num_tracks()];
  REQUIRE(hist.size() == 7);
  double chi2 = 0;
  for (const auto& [k, c] : hist) {
    CHECK(k >= 4);
    CHECK(k <= 10);
    const double e = n / 7.0;
    chi2 += (c - e) * (c - e) / e;
  }
  CHECK(chi2 < 22.46);  // 99.9% quantile, 6 degrees of freedom
}

TEST_CASE("generated instances respect the parameter table") {
  for (int s = 0; s < 300; ++s) {
    GeneratorParams p;
    p.mixed = s % 2;
    const Instance inst = generate(p, s);
    inst.validate();
    const int K = inst.num_tracks(), KD = static_cast<int>(inst.departure_tracks().size());
    CHECK(KD >= 2);
    CHECK(KD <= std::min(K - 1, 4));
    CHECK(inst.num_groups() >= 2);
    CHECK(inst.num_groups() <= 9);
    if (p.mixed) {
      CHECK(inst.mixed_count() >= 1);
      CHECK(inst.mixed_count() <= 3);
    } else {
      CHECK(inst.mixed_count() == 0);
    }
    for (const auto& t : inst.tracks) CHECK(t.capacity == inst.num_groups());
    for (int g = 0; g < inst.num_groups(); ++g) {
      CHECK(inst.groups[g].length == 1);
      if (!inst.groups[g].dest.any) CHECK(inst.is_departure(inst.groups[g].dest.track));
    }
    for (int t : inst.departure_tracks()) CHECK(inst.initial.tracks[t].empty());
  }
}

TEST_CASE("gaia layout") {
  for (int s = 0; s < 20; ++s) {
    const Instance m = gaia(true, s), nm = gaia(false, s);
    for (const auto* inst : {&m, &nm}) {
      CHECK(inst->num_tracks() == 14);
      CHECK(inst->departure_tracks() == std::vector<int>{0, 1, 2, 3});
    }
    CHECK(nm.mixed_count() == 0);
    CHECK(m.mixed_count() >= 1);
    CHECK(m.mixed_count() <= 3);
  }
}

TEST_CASE("bench on already-final instances") {
  std::vector<BenchCase> cases;
  for (int k = 0; k < 4; ++k) {
    Instance inst = make_yard(2, 2, 5);
    add_group(inst, 0, Destination::fixed(0));
    add_group(inst, 1, Destination::fixed(1));
    if (k % 2) add_group(inst, 2, Destination::any_classification());
    cases.push_back({std::to_string(k + 1), k % 2 ? "Mixed" : "Non-Mixed", inst});
  }
  const auto rep = run_bench(cases, {});
  CHECK(rep.failures == 0);
  for (const auto& r : rep.records) {
    REQUIRE(r.exact_cost);
    REQUIRE(r.argdp_cost);
    CHECK(*r.exact_cost == 0);
    CHECK(*r.argdp_cost == 0);
    CHECK(*r.gap_pct == 0.0);
    CHECK(r.plans_ok);
  }
  REQUIRE(rep.groups.size() == 3);
  CHECK(rep.groups.back().group == "Average");
  CHECK(rep.groups.back().pct_opt == 100.0);
}

TEST_CASE("bench records are reproducible apart from timings") {
  BenchOptions opt;
  opt.jobs = 2;
  auto strip = [](BenchReport r) {
    for (auto& x : r.records) x.exact_ms = x.argdp_ms = 0, x.time_ratio.reset();
    return to_csv(r);
  };
  const auto a = run_bench(standard_suite(6, 500), opt);
  const auto b = run_bench(standard_suite(6, 500), opt);
  CHECK(strip(a) == strip(b));
  CHECK(a.records[0].group == "Mixed");
  CHECK(a.records[5].group == "Non-Mixed");
  CHECK(to_table(a).find("Time ratio = exact DP time / ARG-DP time") != std::string::npos);
  const std::string csv = to_csv(a);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 7);
}
