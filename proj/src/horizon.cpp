#include "rsp/horizon.hpp"

#include <algorithm>
#include <cstdlib>

#include "rsp/runs.hpp"

namespace rsp {

namespace {

struct Runner {
  const Instance& inst;
  State s;
  Plan plan;

  void move(int src, int dst, int count) {
    const Move m{src, dst, count};
    s = apply_move(s, m, inst, false);
    plan.moves.push_back(m);
    plan.total_cost += inst.c(src, dst);
  }

  const Destination& top_dest(int t) const { return inst.groups[s.tracks[t].back()].dest; }
};

// Track used to hold destination-free groups pulled off `h`.
int clearing_target(const Instance& inst, int h) {
  if (h + 1 < inst.num_tracks() && inst.is_classification(h + 1)) return h + 1;
  if (h - 1 >= 0 && inst.is_classification(h - 1)) return h - 1;
  int best = -1;
  for (int t : inst.classification_tracks())
    if (t != h && (best < 0 || std::abs(t - h) < std::abs(best - h))) best = t;
  return best;
}

}  // namespace

HorizonResult compute_horizon(const Instance& inst, int delta) {
  if (inst.classification_tracks().size() < 2)
    throw PreconditionError("the horizon heuristic needs at least two classification tracks");
  HorizonResult out;
  Runner r{inst, inst.initial, {}};

  // Merge switch-end runs with equal fixed destinations on nearby tracks.
  const auto snapshot = tracks_with_fixed(r.s, inst);
  for (auto it = snapshot.rbegin(); it != snapshot.rend(); ++it) {
    const int j = *it;
    const auto H = tracks_with_fixed(r.s, inst);
    if (std::find(H.begin(), H.end(), j) == H.end()) continue;
    const Destination& dj = r.top_dest(j);
    if (dj.any) continue;
    int i = -1;
    for (int k : H)
      if (k < j && j - k <= delta && r.top_dest(k) == dj) i = k;
    if (i < 0) continue;
    r.move(j, i, switch_run_len(r.s.tracks[j], inst));
    ++out.merges;
  }

  // Consolidate everything except parked destination-free runs onto h_1.
  const auto H = tracks_with_fixed(r.s, inst);
  for (int w = static_cast<int>(H.size()) - 1; w >= 1; --w) {
    const auto& seq = r.s.tracks[H[w]];
    const int count = static_cast<int>(seq.size()) - parked_free_len(seq, inst);
    r.move(H[w], H[w - 1], count);
    ++out.upward;
  }

  if (!H.empty()) {
    const int h1 = H.front();
    const int target = clearing_target(inst, h1);
    const auto& train = r.s.tracks[h1];
    if (inst.groups[train.back()].dest.any) {
      r.move(h1, target, switch_run_len(train, inst));
      ++out.clearing;
    }
    // Middle destination-free runs, switch end first: pull through the run, return the rest.
    for (;;) {
      const auto runs = runs_of(r.s.tracks[h1], inst);
      int pick = -1;
      for (int k = static_cast<int>(runs.size()) - 2; k >= 1; --k)
        if (runs[k].free()) {
          pick = k;
          break;
        }
      if (pick < 0) break;
      const int size = static_cast<int>(r.s.tracks[h1].size());
      const int above = size - (runs[pick].start + runs[pick].len);
      r.move(h1, target, size - runs[pick].start);
      r.move(target, h1, above);
      out.clearing += 2;
    }

    // Drop-off: carry the train along, leaving its dead-end run at each destination.
    int at = h1;
    int left = static_cast<int>(r.s.tracks[h1].size()) - parked_free_len(r.s.tracks[h1], inst);
    while (left > 0) {
      const auto& seq = r.s.tracks[at];
      const int base = static_cast<int>(seq.size()) - left;
      const int dest = inst.groups[seq[base]].dest.track;
      int run = 1;
      while (run < left && inst.groups[seq[base + run]].dest == inst.groups[seq[base]].dest) ++run;
      if (dest != at) {
        r.move(at, dest, left);
        ++out.dropoff;
        at = dest;
      }
      left -= run;
    }
  }

  out.plan = r.plan;
  out.T = static_cast<int>(out.plan.moves.size());
  return out;
}

}  // namespace rsp
