#include "rsp/yard.hpp"

#include <algorithm>
#include <sstream>

namespace rsp {

std::size_t State::group_count() const {
  std::size_t n = 0;
  for (const auto& t : tracks) n += t.size();
  return n;
}

std::vector<int> Instance::classification_tracks() const {
  std::vector<int> out;
  for (const auto& t : tracks)
    if (t.kind == TrackKind::Classification) out.push_back(t.id);
  return out;
}

std::vector<int> Instance::departure_tracks() const {
  std::vector<int> out;
  for (const auto& t : tracks)
    if (t.kind == TrackKind::Departure) out.push_back(t.id);
  return out;
}

int Instance::mixed_count() const {
  return static_cast<int>(std::count_if(groups.begin(), groups.end(),
                                        [](const Group& g) { return g.dest.any; }));
}

bool Instance::satisfied(int g, int t) const {
  const auto& d = groups[g].dest;
  return d.any ? is_classification(t) : d.track == t;
}

void Instance::validate() const {
  const int K = num_tracks();
  for (int i = 0; i < K; ++i) {
    if (tracks[i].id != i) throw InvalidInstance("track ids must be 0..K-1 in order");
    if (tracks[i].capacity < 0) throw InvalidInstance("negative capacity on track " + std::to_string(i));
  }
  for (const auto& g : groups) {
    if (g.length <= 0) throw InvalidInstance("group " + g.id + " has nonpositive length");
    if (!g.dest.any) {
      if (g.dest.track < 0 || g.dest.track >= K || !is_departure(g.dest.track))
        throw InvalidInstance("group " + g.id + " has a fixed destination that is not a departure track");
    }
  }
  if (static_cast<int>(initial.tracks.size()) != K)
    throw InvalidInstance("initial state must list every track");
  std::vector<int> seen(groups.size(), 0);
  for (int t = 0; t < K; ++t) {
    for (int g : initial.tracks[t]) {
      if (g < 0 || g >= num_groups()) throw InvalidInstance("unknown group in initial state");
      if (seen[g]++) throw InvalidInstance("group " + groups[g].id + " placed twice");
      if (!is_classification(t)) throw InvalidInstance("group " + groups[g].id + " starts on a departure track");
    }
    if (track_load(initial, *this, t) > tracks[t].capacity)
      throw InvalidInstance("initial load exceeds capacity on track " + std::to_string(t));
  }
  for (std::size_t g = 0; g < seen.size(); ++g)
    if (!seen[g]) throw InvalidInstance("group " + groups[g].id + " missing from initial state");
  if (static_cast<int>(cost.size()) != K) throw InvalidInstance("cost matrix must be K x K");
  for (int i = 0; i < K; ++i) {
    if (static_cast<int>(cost[i].size()) != K) throw InvalidInstance("cost matrix must be K x K");
    for (int j = 0; j < K; ++j)
      if (i != j && cost[i][j] < 0) throw InvalidInstance("negative move cost");
  }
}

const char* to_string(IllegalMove::Reason r) {
  switch (r) {
    case IllegalMove::Reason::EmptySource: return "EmptySource";
    case IllegalMove::Reason::CountExceedsSource: return "CountExceedsSource";
    case IllegalMove::Reason::CapacityExceeded: return "CapacityExceeded";
    case IllegalMove::Reason::SelfMove: return "SelfMove";
    case IllegalMove::Reason::BadTrack: return "BadTrack";
  }
  return "?";
}

std::int64_t track_load(const State& s, const Instance& inst, int track) {
  std::int64_t sum = 0;
  for (int g : s.tracks[track]) sum += inst.groups[g].length;
  return sum;
}

State apply_move(const State& s, const Move& mv, const Instance& inst, bool enforce_capacity) {
  const int K = static_cast<int>(s.tracks.size());
  if (mv.src < 0 || mv.src >= K || mv.dst < 0 || mv.dst >= K)
    throw IllegalMove(IllegalMove::Reason::BadTrack, "track out of range in " + to_string(mv));
  if (mv.src == mv.dst) throw IllegalMove(IllegalMove::Reason::SelfMove, "self move " + to_string(mv));
  const auto& src = s.tracks[mv.src];
  if (src.empty()) throw IllegalMove(IllegalMove::Reason::EmptySource, "empty source in " + to_string(mv));
  if (mv.count < 1 || mv.count > static_cast<int>(src.size()))
    throw IllegalMove(IllegalMove::Reason::CountExceedsSource, "bad count in " + to_string(mv));
  if (enforce_capacity) {
    std::int64_t moved = 0;
    for (auto it = src.end() - mv.count; it != src.end(); ++it) moved += inst.groups[*it].length;
    if (track_load(s, inst, mv.dst) + moved > inst.tracks[mv.dst].capacity)
      throw IllegalMove(IllegalMove::Reason::CapacityExceeded, "capacity exceeded in " + to_string(mv));
  }
  State out = s;
  auto& from = out.tracks[mv.src];
  auto& to = out.tracks[mv.dst];
  to.insert(to.end(), from.end() - mv.count, from.end());
  from.resize(from.size() - mv.count);
  return out;
}

std::vector<Move> legal_moves(const State& s, const Instance& inst) {
  const int K = static_cast<int>(s.tracks.size());
  std::vector<std::int64_t> load(K), room(K);
  for (int t = 0; t < K; ++t) {
    load[t] = track_load(s, inst, t);
    room[t] = inst.tracks[t].capacity - load[t];
  }
  std::vector<Move> out;
  for (int i = 0; i < K; ++i) {
    const auto& src = s.tracks[i];
    for (int j = 0; j < K; ++j) {
      if (j == i) continue;
      std::int64_t moved = 0;
      for (int m = 1; m <= static_cast<int>(src.size()); ++m) {
        moved += inst.groups[src[src.size() - m]].length;
        if (moved > room[j]) break;
        out.push_back({i, j, m});
      }
    }
  }
  return out;
}

bool is_final(const State& s, const Instance& inst) {
  for (int t = 0; t < static_cast<int>(s.tracks.size()); ++t)
    for (int g : s.tracks[t])
      if (!inst.satisfied(g, t)) return false;
  return true;
}

Cost plan_cost(const std::vector<Move>& moves, const Instance& inst) {
  Cost c = 0;
  for (const auto& m : moves) c += inst.c(m.src, m.dst);
  return c;
}

Cost plan_cost(const Plan& plan, const Instance& inst) { return plan_cost(plan.moves, inst); }

State replay(const Instance& inst, const std::vector<Move>& moves, bool enforce_capacity) {
  State s = inst.initial;
  for (const auto& m : moves) s = apply_move(s, m, inst, enforce_capacity);
  return s;
}

bool plan_is_valid(const Instance& inst, const Plan& plan, std::string* why) {
  try {
    State s = replay(inst, plan.moves);
    if (!is_final(s, inst)) {
      if (why) *why = "plan does not end in a final state";
      return false;
    }
    if (plan_cost(plan, inst) != plan.total_cost) {
      if (why) *why = "total_cost does not match the moves";
      return false;
    }
  } catch (const IllegalMove& e) {
    if (why) *why = e.what();
    return false;
  }
  return true;
}

std::string to_string(const Move& m) {
  std::ostringstream os;
  os << m.src << "->" << m.dst << " x" << m.count;
  return os.str();
}

}  // namespace rsp
