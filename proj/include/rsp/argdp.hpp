#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "rsp/exact.hpp"
#include "rsp/yard.hpp"

namespace rsp {

class HeuristicFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A merged group: a maximal run of same-destination groups treated as one unit.
struct Block {
  std::vector<int> members;  // group indices, sorted
  Destination dest;
  std::int64_t length = 0;

  bool operator==(const Block& o) const { return members == o.members && dest == o.dest; }
};

struct BlockState {
  std::vector<std::vector<Block>> tracks;  // dead end first
  bool operator==(const BlockState&) const = default;
};

std::string block_id(const Block& b, const Instance& inst);

BlockState merge_canonical(const State& s, const Instance& inst);
BlockState merge_canonical(const BlockState& s);

enum class BlockingClass { None, LB, MB, SAMB };

// Classification of every run on the track, indexed like runs_of().
std::vector<BlockingClass> blocking_classes(const std::vector<int>& seq, const Instance& inst);

struct Preprocessed {
  State state;                // physical state after preprocessing
  std::vector<Move> moves;    // preprocessing moves, physical counts
  Cost cost = 0;              // P_c
  std::vector<char> active;   // per track: usable by the graph search
  std::vector<int> parked;    // per track: destination-free groups fixed at the dead end
};

Preprocessed preprocess_nonmixed(const Instance& inst, int delta = 2);
Preprocessed preprocess_mixed(const Instance& inst);

struct ReducedGraph {
  std::vector<BlockState> vertices;  // vertex 0 is the root
  struct Edge {
    int from, to;
    Move move;  // count is in blocks
    Cost cost;
  };
  std::vector<Edge> edges;
  std::vector<double> theta;  // average distance-to-go per vertex
  int sink = -1;
};

struct ArgdpOptions {
  int delta = 2;
  std::size_t max_states = 1'000'000;
};

// Average distance-to-go of a block state over the active tracks.
double average_distance_to_go(const BlockState& s, const Instance& inst, const std::vector<char>& active);

ReducedGraph build_reduced_graph(const Instance& inst, const Preprocessed& pre, const ArgdpOptions& opt = {});

struct ArgdpStats {
  Cost pc = 0;
  Cost path_cost = 0;
  Cost total = 0;
  std::size_t v_hat = 0;
  std::string v_full;  // decimal, may exceed 64 bits
  double reduction_pct = 0;
  double millis = 0;
};

struct ArgdpResult {
  Plan plan;
  ArgdpStats stats;
};

ArgdpResult solve_argdp(const Instance& inst, const ArgdpOptions& opt = {});

}  // namespace rsp
