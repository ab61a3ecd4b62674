#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "rsp/yard.hpp"

namespace rsp {

class Unsolvable : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ResourceLimit : public std::runtime_error {
 public:
  ResourceLimit(std::size_t states, const std::string& what) : std::runtime_error(what), states(states) {}
  std::size_t states;
};

struct ExactOptions {
  std::size_t max_states = 5'000'000;
};

struct ExactResult {
  Plan plan;
  std::size_t states_generated = 0;  // distinct non-final states plus the sink
  std::size_t states_expanded = 0;
  double millis = 0;
};

// Minimum-cost plan. Ties: fewest moves, then lexicographically smallest move list.
ExactResult solve_exact(const Instance& inst, const ExactOptions& opt = {});

// Layered label-correcting construction of the full state graph, all finals collapsed into
// one sink vertex. Meant for small instances, DOT dumps, and cross-checking solve_exact.
struct GraphVertex {
  State state;  // empty for the sink
  Cost label = 0;
  int pred = -1;
  Move pred_move{};
  int layer = 0;
  bool sink = false;
};

struct GraphEdge {
  int from = 0;
  int to = 0;
  Move move{};
  Cost cost = 0;
};

struct StateGraph {
  std::vector<GraphVertex> vertices;
  std::vector<GraphEdge> edges;
  int root = 0;
  int sink = -1;
};

StateGraph build_state_graph(const Instance& inst, std::size_t max_states = 200'000);

// Plan along the predecessor chain from the root to the sink. Throws Unsolvable without a sink.
Plan graph_plan(const StateGraph& g);

std::string to_dot(const StateGraph& g, const Instance& inst, const std::string& name = "states");

}  // namespace rsp
