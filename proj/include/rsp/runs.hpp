#pragma once

#include <vector>

#include "rsp/yard.hpp"

namespace rsp {

// A maximal stretch of adjacent groups on one track with equal destinations.
struct Run {
  int start = 0;  // index of the dead-end-most member
  int len = 0;
  Destination dest;
  bool free() const { return dest.any; }
};

std::vector<Run> runs_of(const std::vector<int>& seq, const Instance& inst);

// Number of groups in the switch-end / dead-end run (0 on an empty track).
int switch_run_len(const std::vector<int>& seq, const Instance& inst);
int dead_run_len(const std::vector<int>& seq, const Instance& inst);

// Length of the dead-end run if it consists of destination-free groups, else 0.
int parked_free_len(const std::vector<int>& seq, const Instance& inst);

// Classification tracks that hold at least one fixed-destination group, ascending.
std::vector<int> tracks_with_fixed(const State& s, const Instance& inst);

}  // namespace rsp
