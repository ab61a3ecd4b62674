#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "rsp/yard.hpp"

namespace rsp {

class PlanTooLong : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

enum class VarKind { X, Y, V, N, NPlus, NMinus, DeltaPlus, DeltaMinus, P, W, U };

struct MipVar {
  VarKind kind;
  int g = -1, i = -1, j = -1, t = 0;
  bool binary = false;
};

struct MipRow {
  int eq = 0;  // constraint family, numbered 2..26
  int g = -1, i = -1, j = -1, t = -1;
  char sense = 'E';  // 'L' (<=), 'G' (>=), 'E' (=)
  std::vector<std::pair<int, std::int64_t>> coef;
  std::int64_t rhs = 0;
};

struct MipModel {
  int G = 0, K = 0, T = 0;
  std::int64_t M1 = 0, M2 = 0;
  std::vector<MipVar> vars;
  std::vector<MipRow> rows;
  std::vector<std::pair<int, std::int64_t>> objective;

  // Column index lookups; t runs 1..T.
  int x(int g, int i, int t) const;
  int y(int g, int i, int j, int t) const;
  int v(int i, int j, int t) const;
  int n(int i, int t) const;
  int n_plus(int i, int t) const;
  int n_minus(int i, int t) const;
  int delta_plus(int g, int t) const;
  int delta_minus(int g, int t) const;
  int p(int g, int t) const;
  int w(int t) const;
  int u(int t) const;

  std::size_t count(VarKind k) const;
  std::string var_name(int col, const Instance& inst) const;
  std::string row_name(int row) const;

  int base[11] = {};
};

MipModel build_mip(const Instance& inst, int T);

struct MipAssignment {
  std::vector<std::int64_t> values;
  std::int64_t objective = 0;
};

MipAssignment plan_to_assignment(const Instance& inst, const Plan& plan, int T, const MipModel& model);

struct Violation {
  int row = -1;  // -1 for a bound or integrality violation
  int eq = 0;
  std::string where;
  std::int64_t lhs = 0, rhs = 0;
};

struct FeasibilityReport {
  bool feasible = true;
  std::vector<Violation> violations;
  std::int64_t objective = 0;
};

FeasibilityReport check_feasibility(const MipModel& model, const MipAssignment& a, const Instance& inst);

std::string export_mps(const MipModel& model, const std::string& name = "RSP");

struct AutoHorizon {
  int T = 1;
  int horizon = -1;          // heuristic move count, -1 when it does not apply
  bool plan_exceeds = false;  // the plan needs more periods than the heuristic horizon
};

// T = max(|moves|, heuristic horizon, 1).
AutoHorizon auto_horizon(const Instance& inst, const Plan* plan = nullptr);

}  // namespace rsp
