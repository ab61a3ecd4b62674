#pragma once

#include <stdexcept>

#include "rsp/yard.hpp"

namespace rsp {

class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct HorizonResult {
  int T = 0;
  Plan plan;
  // Moves per phase: merges, upward consolidation, clearing destination-free groups, drop-off.
  int merges = 0, upward = 0, clearing = 0, dropoff = 0;
};

// Constructive move-count heuristic used as the MIP horizon. Capacity is ignored.
HorizonResult compute_horizon(const Instance& inst, int delta = 2);

}  // namespace rsp
