#include "rsp/mip.hpp"

#include <algorithm>
#include <cstdio>
#include <map>

#include "rsp/horizon.hpp"

namespace rsp {

namespace {

constexpr int kKinds = 11;

int pair_index(int i, int j, int K) { return i * (K - 1) + (j < i ? j : j - 1); }

}  // namespace

int MipModel::x(int g, int i, int t) const { return base[0] + ((t - 1) * G + g) * K + i; }
int MipModel::y(int g, int i, int j, int t) const {
  return base[1] + ((t - 1) * G + g) * K * (K - 1) + pair_index(i, j, K);
}
int MipModel::v(int i, int j, int t) const { return base[2] + (t - 1) * K * (K - 1) + pair_index(i, j, K); }
int MipModel::n(int i, int t) const { return base[3] + (t - 1) * K + i; }
int MipModel::n_plus(int i, int t) const { return base[4] + (t - 1) * K + i; }
int MipModel::n_minus(int i, int t) const { return base[5] + (t - 1) * K + i; }
int MipModel::delta_plus(int g, int t) const { return base[6] + (t - 1) * G + g; }
int MipModel::delta_minus(int g, int t) const { return base[7] + (t - 1) * G + g; }
int MipModel::p(int g, int t) const { return base[8] + (t - 1) * G + g; }
int MipModel::w(int t) const { return base[9] + t - 1; }
int MipModel::u(int t) const { return base[10] + t - 1; }

std::size_t MipModel::count(VarKind k) const {
  const int idx = static_cast<int>(k);
  const int end = idx + 1 < kKinds ? base[idx + 1] : static_cast<int>(vars.size());
  return static_cast<std::size_t>(end - base[idx]);
}

std::string MipModel::var_name(int col, const Instance& inst) const {
  static const char* names[] = {"x", "y", "v", "N", "Nplus", "Nminus", "Dplus", "Dminus", "P", "w", "u"};
  const MipVar& mv = vars[col];
  std::string s = names[static_cast<int>(mv.kind)];
  s += '[';
  if (mv.g >= 0) s += inst.groups[mv.g].id + ",";
  if (mv.i >= 0) s += std::to_string(mv.i) + ",";
  if (mv.j >= 0) s += std::to_string(mv.j) + ",";
  s += std::to_string(mv.t) + "]";
  return s;
}

std::string MipModel::row_name(int row) const {
  const MipRow& r = rows[row];
  std::string s = "(" + std::to_string(r.eq) + ")";
  auto add = [&](const char* k, int v) {
    if (v >= 0) s += std::string(" ") + k + "=" + std::to_string(v);
  };
  add("g", r.g);
  add("i", r.i);
  add("j", r.j);
  add("t", r.t);
  return s;
}

MipModel build_mip(const Instance& inst, int T) {
  if (T < 1) throw std::invalid_argument("the horizon must be at least 1");
  MipModel m;
  const int G = m.G = inst.num_groups();
  const int K = m.K = inst.num_tracks();
  m.T = T;
  m.M1 = 2 * G;
  m.M2 = G;
  const std::int64_t GG = G;

  auto push = [&](VarKind k, int g, int i, int j, int t, bool bin) { m.vars.push_back({k, g, i, j, t, bin}); };
  m.base[0] = 0;
  for (int t = 1; t <= T; ++t)
    for (int g = 0; g < G; ++g)
      for (int i = 0; i < K; ++i) push(VarKind::X, g, i, -1, t, true);
  m.base[1] = static_cast<int>(m.vars.size());
  for (int t = 1; t <= T; ++t)
    for (int g = 0; g < G; ++g)
      for (int i = 0; i < K; ++i)
        for (int j = 0; j < K; ++j)
          if (i != j) push(VarKind::Y, g, i, j, t, true);
  m.base[2] = static_cast<int>(m.vars.size());
  for (int t = 1; t <= T; ++t)
    for (int i = 0; i < K; ++i)
      for (int j = 0; j < K; ++j)
        if (i != j) push(VarKind::V, -1, i, j, t, true);
  const VarKind per_track[] = {VarKind::N, VarKind::NPlus, VarKind::NMinus};
  for (int k = 0; k < 3; ++k) {
    m.base[3 + k] = static_cast<int>(m.vars.size());
    for (int t = 1; t <= T; ++t)
      for (int i = 0; i < K; ++i) push(per_track[k], -1, i, -1, t, false);
  }
  const VarKind per_group[] = {VarKind::DeltaPlus, VarKind::DeltaMinus, VarKind::P};
  for (int k = 0; k < 3; ++k) {
    m.base[6 + k] = static_cast<int>(m.vars.size());
    for (int t = 1; t <= T; ++t)
      for (int g = 0; g < G; ++g) push(per_group[k], g, -1, -1, t, false);
  }
  m.base[9] = static_cast<int>(m.vars.size());
  for (int t = 1; t <= T; ++t) push(VarKind::W, -1, -1, -1, t, true);
  m.base[10] = static_cast<int>(m.vars.size());
  for (int t = 1; t <= T; ++t) push(VarKind::U, -1, -1, -1, t, true);

  // Period-0 data.
  std::vector<int> where(G, -1), pos0(G, 0), n0(K, 0);
  for (int i = 0; i < K; ++i) {
    const auto& seq = inst.initial.tracks[i];
    n0[i] = static_cast<int>(seq.size());
    for (int k = 0; k < n0[i]; ++k) {
      where[seq[k]] = i;
      pos0[seq[k]] = k + 1;
    }
  }

  // Row under construction: terms that refer to period 0 fold into the right-hand side.
  struct Builder {
    MipRow r;
    void add(int col, std::int64_t c) {
      if (c != 0) r.coef.push_back({col, c});
    }
    void constant(std::int64_t c) { r.rhs -= c; }
  };
  auto start = [](int eq, char sense, int g, int i, int j, int t) {
    Builder b;
    b.r.eq = eq;
    b.r.sense = sense;
    b.r.g = g;
    b.r.i = i;
    b.r.j = j;
    b.r.t = t;
    return b;
  };
  auto emit = [&](Builder& b) {
    std::sort(b.r.coef.begin(), b.r.coef.end());
    m.rows.push_back(std::move(b.r));
  };
  auto x_prev = [&](Builder& b, int g, int i, int t, std::int64_t c) {
    if (t == 1) b.constant(c * (where[g] == i ? 1 : 0));
    else b.add(m.x(g, i, t - 1), c);
  };
  auto n_prev = [&](Builder& b, int i, int t, std::int64_t c) {
    if (t == 1) b.constant(c * n0[i]);
    else b.add(m.n(i, t - 1), c);
  };
  auto p_prev = [&](Builder& b, int g, int t, std::int64_t c) {
    if (t == 1) b.constant(c * pos0[g]);
    else b.add(m.p(g, t - 1), c);
  };
  const auto classification = inst.classification_tracks();

  for (int t = 1; t <= T; ++t)
    for (int i = 0; i < K; ++i)
      for (int j = 0; j < K; ++j)
        if (i != j) m.objective.push_back({m.v(i, j, t), inst.c(i, j)});

  for (int t = 1; t <= T; ++t) {
    for (int g = 0; g < G; ++g) {
      auto b = start(2, 'E', g, -1, -1, t);
      for (int i = 0; i < K; ++i) b.add(m.x(g, i, t), 1);
      b.r.rhs = 1;
      emit(b);
    }
    for (int i = 0; i < K; ++i) {
      auto b = start(3, 'L', -1, i, -1, t);
      for (int g = 0; g < G; ++g) b.add(m.x(g, i, t), inst.groups[g].length);
      b.r.rhs = inst.tracks[i].capacity;
      emit(b);
    }
    {
      auto b = start(4, 'L', -1, -1, -1, t);
      for (int i = 0; i < K; ++i)
        for (int j = 0; j < K; ++j)
          if (i != j) b.add(m.v(i, j, t), 1);
      b.r.rhs = 1;
      emit(b);
    }
    for (int g = 0; g < G; ++g)
      for (int i = 0; i < K; ++i)
        for (int j = 0; j < K; ++j) {
          if (i == j) continue;
          auto b5 = start(5, 'L', g, i, j, t);
          b5.add(m.y(g, i, j, t), 1);
          b5.add(m.v(i, j, t), -1);
          emit(b5);
          auto b6 = start(6, 'L', g, i, j, t);
          b6.add(m.y(g, i, j, t), 1);
          x_prev(b6, g, i, t, -1);
          emit(b6);
        }
    for (int i = 0; i < K; ++i) {
      auto b7 = start(7, 'E', -1, i, -1, t);
      b7.add(m.n(i, t), 1);
      n_prev(b7, i, t, -1);
      b7.add(m.n_minus(i, t), 1);
      b7.add(m.n_plus(i, t), -1);
      emit(b7);
      auto b8 = start(8, 'E', -1, i, -1, t);
      b8.add(m.n_minus(i, t), 1);
      auto b9 = start(9, 'E', -1, i, -1, t);
      b9.add(m.n_plus(i, t), 1);
      for (int g = 0; g < G; ++g)
        for (int j = 0; j < K; ++j) {
          if (j == i) continue;
          b8.add(m.y(g, i, j, t), -1);
          b9.add(m.y(g, j, i, t), -1);
        }
      emit(b8);
      emit(b9);
    }
    {
      auto b = start(10, 'E', -1, -1, -1, t);
      for (int i = 0; i < K; ++i) {
        b.add(m.n_plus(i, t), 1);
        b.add(m.n_minus(i, t), -1);
      }
      emit(b);
    }
    for (int g = 0; g < G; ++g) {
      for (int eq : {11, 12}) {
        auto b = start(eq, 'L', g, -1, -1, t);
        b.add(eq == 11 ? m.delta_plus(g, t) : m.delta_minus(g, t), 1);
        for (int i = 0; i < K; ++i)
          for (int j = 0; j < K; ++j)
            if (i != j) b.add(m.y(g, i, j, t), -GG);
        emit(b);
      }
      for (int i = 0; i < K; ++i)
        for (int j = 0; j < K; ++j) {
          if (i == j) continue;
          // Delta+ - Delta- - N_{j,t-1} + N_{i,t-1} - N-_{it} -/+ M1 y  >=/<=  -/+ M1
          for (int eq : {13, 14}) {
            const std::int64_t s = eq == 13 ? 1 : -1;
            auto b = start(eq, eq == 13 ? 'G' : 'L', g, i, j, t);
            b.add(m.delta_plus(g, t), 1);
            b.add(m.delta_minus(g, t), -1);
            n_prev(b, j, t, -1);
            n_prev(b, i, t, 1);
            b.add(m.n_minus(i, t), -1);
            b.add(m.y(g, i, j, t), -s * m.M1);
            b.r.rhs += -s * m.M1;
            emit(b);
          }
        }
      auto b15 = start(15, 'E', g, -1, -1, t);
      b15.add(m.p(g, t), 1);
      p_prev(b15, g, t, -1);
      b15.add(m.delta_plus(g, t), -1);
      b15.add(m.delta_minus(g, t), 1);
      emit(b15);
      for (int i = 0; i < K; ++i)
        for (int j = 0; j < K; ++j) {
          if (i == j) continue;
          // G y - P_{g,t-1} + N_{i,t-1} - N-_{it} - M2 x_{gi,t-1} - M2 v_{ijt} >= -2 M2
          auto b16 = start(16, 'G', g, i, j, t);
          b16.add(m.y(g, i, j, t), GG);
          p_prev(b16, g, t, -1);
          n_prev(b16, i, t, 1);
          b16.add(m.n_minus(i, t), -1);
          x_prev(b16, g, i, t, -m.M2);
          b16.add(m.v(i, j, t), -m.M2);
          b16.r.rhs += -2 * m.M2;
          emit(b16);
          // -G y - N_{i,t-1} + N-_{it} + P_{g,t-1} - M2 x_{gi,t-1} - M2 v_{ijt} >= 1 - 2 M2 - G
          auto b17 = start(17, 'G', g, i, j, t);
          b17.add(m.y(g, i, j, t), -GG);
          n_prev(b17, i, t, -1);
          b17.add(m.n_minus(i, t), 1);
          p_prev(b17, g, t, 1);
          x_prev(b17, g, i, t, -m.M2);
          b17.add(m.v(i, j, t), -m.M2);
          b17.r.rhs += 1 - 2 * m.M2 - GG;
          emit(b17);
        }
      for (int i = 0; i < K; ++i) {
        auto b18 = start(18, 'L', g, i, -1, t);
        auto b19 = start(19, 'G', g, i, -1, t);
        auto b20 = start(20, 'L', g, i, -1, t);
        auto b21 = start(21, 'G', g, i, -1, t);
        for (Builder* b : {&b18, &b19, &b20, &b21}) {
          b->add(m.x(g, i, t), 1);
          x_prev(*b, g, i, t, -1);
        }
        for (int j = 0; j < K; ++j) {
          if (j == i) continue;
          b18.add(m.y(g, j, i, t), -1);
          b19.add(m.y(g, j, i, t), -2);
          b20.add(m.y(g, i, j, t), 1);
          b20.add(m.y(g, j, i, t), -1);
          b21.add(m.y(g, i, j, t), 1);
        }
        b19.r.rhs += -1;
        emit(b18);
        emit(b19);
        emit(b20);
        emit(b21);
      }
      auto b = start(inst.groups[g].dest.any ? 23 : 22, 'L', g, -1, -1, t);
      b.add(m.w(t), 1);
      if (inst.groups[g].dest.any)
        for (int k : classification) b.add(m.x(g, k, t), -1);
      else
        b.add(m.x(g, inst.groups[g].dest.track, t), -1);
      emit(b);
    }
    {
      auto b = start(24, 'L', -1, -1, -1, t);
      b.add(m.u(t), 1);
      b.add(m.w(t), -1);
      if (t > 1) b.add(m.w(t - 1), 1);
      emit(b);
    }
  }
  {
    auto b = start(25, 'E', -1, -1, -1, -1);
    for (int t = 1; t <= T; ++t) b.add(m.u(t), 1);
    b.r.rhs = 1;
    emit(b);
  }
  for (int t = 1; t < T; ++t) {
    auto b = start(26, 'G', -1, -1, -1, t);
    for (int i = 0; i < K; ++i)
      for (int j = 0; j < K; ++j)
        if (i != j) {
          b.add(m.v(i, j, t), 1);
          b.add(m.v(i, j, t + 1), -1);
        }
    emit(b);
  }
  return m;
}

MipAssignment plan_to_assignment(const Instance& inst, const Plan& plan, int T, const MipModel& m) {
  if (static_cast<int>(plan.moves.size()) > T)
    throw PlanTooLong("plan has " + std::to_string(plan.moves.size()) + " moves but the horizon is " + std::to_string(T));
  MipAssignment a;
  a.values.assign(m.vars.size(), 0);
  const int G = inst.num_groups(), K = inst.num_tracks();

  auto positions = [&](const State& s, std::vector<int>& track, std::vector<int>& pos) {
    track.assign(G, -1);
    pos.assign(G, 0);
    for (int i = 0; i < K; ++i)
      for (std::size_t k = 0; k < s.tracks[i].size(); ++k) {
        track[s.tracks[i][k]] = i;
        pos[s.tracks[i][k]] = static_cast<int>(k) + 1;
      }
  };

  State s = inst.initial;
  std::vector<int> trk, pos;
  positions(s, trk, pos);
  bool seen_final = false;
  for (int t = 1; t <= T; ++t) {
    std::vector<int> prev_trk = trk, prev_pos = pos;
    if (t <= static_cast<int>(plan.moves.size())) {
      const Move& mv = plan.moves[t - 1];
      s = apply_move(s, mv, inst);
      a.values[m.v(mv.src, mv.dst, t)] = 1;
      a.values[m.n_minus(mv.src, t)] = mv.count;
      a.values[m.n_plus(mv.dst, t)] = mv.count;
      a.objective += inst.c(mv.src, mv.dst);
      const auto& seq = s.tracks[mv.dst];
      for (std::size_t k = seq.size() - mv.count; k < seq.size(); ++k) a.values[m.y(seq[k], mv.src, mv.dst, t)] = 1;
    }
    positions(s, trk, pos);
    for (int g = 0; g < G; ++g) {
      a.values[m.x(g, trk[g], t)] = 1;
      a.values[m.p(g, t)] = pos[g];
      const int d = pos[g] - prev_pos[g];
      if (trk[g] != prev_trk[g]) {
        a.values[m.delta_plus(g, t)] = std::max(d, 0);
        a.values[m.delta_minus(g, t)] = std::max(-d, 0);
      }
    }
    for (int i = 0; i < K; ++i) a.values[m.n(i, t)] = static_cast<std::int64_t>(s.tracks[i].size());
    const bool fin = is_final(s, inst);
    a.values[m.w(t)] = fin;
    if (fin && !seen_final) {
      a.values[m.u(t)] = 1;
      seen_final = true;
    }
  }
  return a;
}

FeasibilityReport check_feasibility(const MipModel& m, const MipAssignment& a, const Instance& inst) {
  FeasibilityReport rep;
  if (a.values.size() != m.vars.size()) throw std::invalid_argument("assignment size does not match the model");
  for (std::size_t c = 0; c < m.vars.size(); ++c) {
    const auto v = a.values[c];
    if (v < 0 || (m.vars[c].binary && v > 1)) {
      rep.violations.push_back({-1, 27 + !m.vars[c].binary, m.var_name(static_cast<int>(c), inst), v, m.vars[c].binary ? 1 : 0});
    }
  }
  for (std::size_t r = 0; r < m.rows.size(); ++r) {
    const MipRow& row = m.rows[r];
    std::int64_t lhs = 0;
    for (auto [col, c] : row.coef) lhs += c * a.values[col];
    const bool ok = row.sense == 'E' ? lhs == row.rhs : row.sense == 'L' ? lhs <= row.rhs : lhs >= row.rhs;
    if (!ok) rep.violations.push_back({static_cast<int>(r), row.eq, m.row_name(static_cast<int>(r)), lhs, row.rhs});
  }
  for (auto [col, c] : m.objective) rep.objective += c * a.values[col];
  rep.feasible = rep.violations.empty();
  return rep;
}

std::string export_mps(const MipModel& m, const std::string& name) {
  std::string out;
  char buf[128];
  auto col = [](int c) {
    char b[16];
    std::snprintf(b, sizeof b, "C%07d", c + 1);
    return std::string(b);
  };
  auto row = [](int r) {
    char b[16];
    std::snprintf(b, sizeof b, "R%07d", r + 1);
    return std::string(b);
  };
  out += "NAME          " + name + "\n";
  out += "ROWS\n";
  out += " N  SHUNTCOST\n";
  for (std::size_t r = 0; r < m.rows.size(); ++r) out += std::string(" ") + m.rows[r].sense + "  " + row(static_cast<int>(r)) + "\n";

  std::vector<std::vector<std::pair<int, std::int64_t>>> by_col(m.vars.size());
  for (auto [c, v] : m.objective) by_col[c].push_back({-1, v});
  for (std::size_t r = 0; r < m.rows.size(); ++r)
    for (auto [c, v] : m.rows[r].coef) by_col[c].push_back({static_cast<int>(r), v});

  out += "COLUMNS\n";
  out += "    MARKER                 'MARKER'                 'INTORG'\n";
  for (std::size_t c = 0; c < m.vars.size(); ++c) {
    const std::string cn = col(static_cast<int>(c));
    if (by_col[c].empty()) {
      // Keep every column declared, even one that appears nowhere.
      std::snprintf(buf, sizeof buf, "    %-8s  %-9s %12d\n", cn.c_str(), "SHUNTCOST", 0);
      out += buf;
    }
    for (auto [r, v] : by_col[c]) {
      const std::string rn = r < 0 ? std::string("SHUNTCOST") : row(r);
      std::snprintf(buf, sizeof buf, "    %-8s  %-9s %12lld\n", cn.c_str(), rn.c_str(), static_cast<long long>(v));
      out += buf;
    }
  }
  out += "    MARKER                 'MARKER'                 'INTEND'\n";
  out += "RHS\n";
  for (std::size_t r = 0; r < m.rows.size(); ++r)
    if (m.rows[r].rhs != 0) {
      std::snprintf(buf, sizeof buf, "    RHS       %-9s %12lld\n", row(static_cast<int>(r)).c_str(),
                    static_cast<long long>(m.rows[r].rhs));
      out += buf;
    }
  out += "BOUNDS\n";
  for (std::size_t c = 0; c < m.vars.size(); ++c) {
    if (m.vars[c].binary)
      std::snprintf(buf, sizeof buf, " UP BND       %-8s  %12d\n", col(static_cast<int>(c)).c_str(), 1);
    else
      std::snprintf(buf, sizeof buf, " PL BND       %-8s\n", col(static_cast<int>(c)).c_str());
    out += buf;
  }
  out += "ENDATA\n";
  return out;
}

AutoHorizon auto_horizon(const Instance& inst, const Plan* plan) {
  AutoHorizon h;
  try {
    h.horizon = compute_horizon(inst).T;
  } catch (const PreconditionError&) {
    h.horizon = -1;
  }
  const int moves = plan ? static_cast<int>(plan->moves.size()) : 0;
  h.T = std::max({moves, h.horizon, 1});
  h.plan_exceeds = plan && h.horizon >= 0 && moves > h.horizon;
  return h;
}

}  // namespace rsp
