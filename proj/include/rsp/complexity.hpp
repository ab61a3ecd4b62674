#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "rsp/yard.hpp"

namespace rsp {

class InvalidCosts : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

enum class Flavor { Zsss, RspSc };

struct ConflictGraph {
  Flavor flavor = Flavor::Zsss;
  std::vector<int> seq;
  std::vector<std::pair<int, int>> edges;  // position pairs (i, j), i < j, sorted

  // The same edges as value pairs in position order.
  std::vector<std::pair<int, int>> value_edges() const;
};

// Throws std::invalid_argument unless seq is a permutation of 1..n.
void require_permutation(const std::vector<int>& seq);

ConflictGraph zsss_conflicts(const std::vector<int>& seq);
ConflictGraph rspsc_conflicts(const std::vector<int>& seq);

// Maximal runs that drop by exactly one, with strictly increasing run leaders.
bool cds_chain(const std::vector<int>& seq);

enum class ItemKind { Original, SetV, Dummy };

struct Item {
  int value = 0;
  ItemKind kind = ItemKind::Original;
  int origin = -1;  // index into the input sequence for original items
};

struct Transformed {
  std::vector<Item> items;
  std::vector<int> position_of;  // input index -> position in items
  int dummies = 0, set_v = 0;
  // Dummies that needed a value other than the next lambda to avoid creating conflicts.
  int repaired = 0;

  std::vector<int> values() const;
};

Transformed transform_zsss_to_rspsc(const std::vector<int>& sigma);

// True when the conflict edges of sigma map one-to-one onto the transformed conflicts among original
// items, and no set-V or dummy item has an edge.
bool conflicts_correspond(const std::vector<int>& sigma, const Transformed& t);

// Yard for the special-case problem: departure tracks n'..1' are tracks 0..n-1, then classification
// tracks 0..k+1 as tracks n..n+k+1. sigma[0] sits at the switch end of classification track 0.
Instance build_rspsc_instance(const std::vector<int>& sigma, int k, Cost cbar, Cost R);

}  // namespace rsp
