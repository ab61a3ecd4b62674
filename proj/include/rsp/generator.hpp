#pragma once

#include <cstdint>

#include "rsp/yard.hpp"

namespace rsp {

// Ranges are inclusive integer bounds of discrete uniform draws.
struct GeneratorParams {
  int tracks_min = 4, tracks_max = 10;
  int departures_min = 2, departures_max = 4;  // upper bound further capped at |K|-1
  int groups_min = 2, groups_max = 9;
  bool mixed = false;
  int mixed_min = 1, mixed_max = 3;  // capped at |G|-1 so G_M stays nonempty
  std::int64_t group_length = 1;
  // Track capacity; 0 means "|G| times the group length".
  std::int64_t capacity = 0;
};

// Empty yard: departure tracks 0..departures-1, classification tracks after them, c = |i-j|.
Instance make_yard(int departures, int classification, std::int64_t capacity);

// Adds a group at the switch end of `track`. Returns its index.
int add_group(Instance& inst, int track, Destination dest, std::int64_t length = 1);

Instance generate(const GeneratorParams& p, std::uint64_t seed);

// Gaia flat yard: tracks 0-3 departure, 4-13 classification; other draws as in `generate`.
Instance gaia(bool mixed, std::uint64_t seed);

}  // namespace rsp
