#include <random>

#include "doctest.h"
#include "rsp/generator.hpp"
#include "rsp/io.hpp"
#include "rsp/yard.hpp"

using namespace rsp;

namespace {

// Two classification tracks (0, 1) plus one departure track (2); group names a..d.
Instance two_track(std::vector<std::vector<int>> init, int ngroups) {
  Instance inst;
  inst.tracks = {{0, TrackKind::Classification, 100}, {1, TrackKind::Classification, 100},
                 {2, TrackKind::Departure, 100}};
  for (int g = 0; g < ngroups; ++g) inst.groups.push_back({std::string(1, char('a' + g)), 1, Destination::fixed(2)});
  init.resize(3);
  inst.initial.tracks = init;
  inst.cost = {{0, 1, 2}, {1, 0, 1}, {2, 1, 0}};
  return inst;
}

}  // namespace

TEST_CASE("apply_move moves the switch-end block and keeps its order") {
  auto inst = two_track({{0}, {}}, 1);
  State s = apply_move(inst.initial, {0, 1, 1}, inst);
  CHECK(s.tracks[0].empty());
  CHECK(s.tracks[1] == std::vector<int>{0});

  inst = two_track({{0, 1, 2}, {3}}, 4);
  s = apply_move(inst.initial, {0, 1, 2}, inst);
  CHECK(s.tracks[0] == std::vector<int>{0});
  CHECK(s.tracks[1] == std::vector<int>{3, 1, 2});
  // Moved groups shift by N_dst - N_src + m = 1 - 3 + 2 = 0 positions.
  CHECK(s.tracks[1][1] == 1);
  CHECK(s.tracks[1][2] == 2);
}

TEST_CASE("apply_move errors") {
  auto inst = two_track({{0}, {}}, 1);
  auto reason = [&](Move m) {
    try {
      apply_move(inst.initial, m, inst);
    } catch (const IllegalMove& e) {
      return e.reason;
    }
    FAIL("move was accepted");
    return IllegalMove::Reason::BadTrack;
  };
  CHECK(reason({0, 0, 1}) == IllegalMove::Reason::SelfMove);
  CHECK(reason({1, 0, 1}) == IllegalMove::Reason::EmptySource);
  CHECK(reason({0, 1, 2}) == IllegalMove::Reason::CountExceedsSource);
  inst.tracks[1].capacity = 0;
  CHECK(reason({0, 1, 1}) == IllegalMove::Reason::CapacityExceeded);
  CHECK_NOTHROW(apply_move(inst.initial, {0, 1, 1}, inst, false));
}

TEST_CASE("legal_moves enumerates in (src, dst, count) order") {
  Instance inst = make_yard(0, 2, 10);
  CHECK(legal_moves(inst.initial, inst).empty());
  add_group(inst, 0, Destination::any_classification());
  CHECK(legal_moves(inst.initial, inst) == std::vector<Move>{{0, 1, 1}});
  add_group(inst, 0, Destination::any_classification());
  CHECK(legal_moves(inst.initial, inst) == std::vector<Move>{{0, 1, 1}, {0, 1, 2}});
  inst.tracks[1].capacity = 1;
  CHECK(legal_moves(inst.initial, inst) == std::vector<Move>{{0, 1, 1}});
}

TEST_CASE("is_final") {
  Instance inst = make_yard(2, 2, 10);
  add_group(inst, 2, Destination::any_classification());
  add_group(inst, 3, Destination::any_classification());
  CHECK(is_final(inst.initial, inst));
  Instance d = make_yard(2, 1, 10);
  int g1 = add_group(d, 2, Destination::fixed(0));
  int g2 = add_group(d, 2, Destination::fixed(1));
  CHECK_FALSE(is_final(d.initial, d));
  State s = d.initial;
  s.tracks[2].clear();
  s.tracks[0] = {g1};
  s.tracks[1] = {g2};
  CHECK(is_final(s, d));
  s.tracks[0] = {g2};
  s.tracks[1] = {g1};
  CHECK_FALSE(is_final(s, d));
}

TEST_CASE("plan_cost ignores the number of groups moved") {
  Instance inst = make_yard(1, 3, 10);
  CHECK(plan_cost(Plan{}, inst) == 0);
  CHECK(plan_cost(std::vector<Move>{{0, 1, 1}, {1, 0, 1}}, inst) == 2);
  CHECK(plan_cost(std::vector<Move>{{0, 3, 1}, {3, 1, 1}}, inst) == 5);
  CHECK(plan_cost(std::vector<Move>{{0, 3, 7}}, inst) == 3);
}

TEST_CASE("randomized move properties") {
  std::mt19937_64 rng(7);
  for (int round = 0; round < 300; ++round) {
    GeneratorParams p;
    p.mixed = round % 2;
    Instance inst = generate(p, rng());
    State s = inst.initial;
    for (int step = 0; step < 12; ++step) {
      auto moves = legal_moves(s, inst);
      if (moves.empty()) break;
      const Move mv = moves[rng() % moves.size()];
      const auto& src = s.tracks[mv.src];
      const auto& dst = s.tracks[mv.dst];
      std::vector<int> spliced = dst;
      spliced.insert(spliced.end(), src.end() - mv.count, src.end());
      State n = apply_move(s, mv, inst);
      REQUIRE(n.tracks[mv.dst] == spliced);
      REQUIRE(n.tracks[mv.src].size() == src.size() - mv.count);
      REQUIRE(n.group_count() == s.group_count());
      // Position change of every moved group: N_dst - N_src + m.
      const int delta = static_cast<int>(dst.size()) - static_cast<int>(src.size()) + mv.count;
      for (int k = 0; k < mv.count; ++k) {
        const int g = src[src.size() - mv.count + k];
        const int before = static_cast<int>(src.size()) - mv.count + k + 1;
        int after = 0;
        for (std::size_t q = 0; q < n.tracks[mv.dst].size(); ++q)
          if (n.tracks[mv.dst][q] == g) after = static_cast<int>(q) + 1;
        REQUIRE(after - before == delta);
      }
      State back = apply_move(n, {mv.dst, mv.src, mv.count}, inst, false);
      REQUIRE(back == s);
      s = n;
    }
  }
}

TEST_CASE("finality is not absorbing") {
  Instance inst = make_yard(1, 2, 10);
  add_group(inst, 1, Destination::fixed(0));
  State s = apply_move(inst.initial, {1, 0, 1}, inst);
  CHECK(is_final(s, inst));
  CHECK_FALSE(is_final(apply_move(s, {0, 2, 1}, inst), inst));
}

TEST_CASE("instance and plan JSON round trip") {
  for (std::uint64_t seed = 1; seed < 20; ++seed) {
    GeneratorParams p;
    p.mixed = seed % 2;
    Instance inst = generate(p, seed);
    const std::string text = instance_to_json(inst);
    Instance back = instance_from_json(text);
    CHECK(instance_to_json(back) == text);
    CHECK(back.initial == inst.initial);
    CHECK(back.cost == inst.cost);
  }
  Plan plan{{{0, 1, 2}, {3, 0, 1}}, 4};
  Plan back = plan_from_json(plan_to_json(plan));
  CHECK(back.moves == plan.moves);
  CHECK(back.total_cost == 4);
}

TEST_CASE("instance validation") {
  Instance inst = make_yard(1, 2, 1);
  add_group(inst, 1, Destination::fixed(0));
  CHECK_NOTHROW(inst.validate());
  Instance bad = inst;
  bad.groups[0].dest = Destination::fixed(2);
  CHECK_THROWS_AS(bad.validate(), InvalidInstance);
  bad = inst;
  bad.initial.tracks[1].clear();
  bad.initial.tracks[0].push_back(0);
  CHECK_THROWS_AS(bad.validate(), InvalidInstance);
  bad = inst;
  add_group(bad, 1, Destination::fixed(0));
  CHECK_THROWS_AS(bad.validate(), InvalidInstance);
  CHECK_THROWS_AS(instance_from_json("{\"tracks\": 3}"), FormatError);
}
