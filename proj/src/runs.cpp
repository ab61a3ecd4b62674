#include "rsp/runs.hpp"

namespace rsp {

std::vector<Run> runs_of(const std::vector<int>& seq, const Instance& inst) {
  std::vector<Run> out;
  for (int k = 0; k < static_cast<int>(seq.size()); ++k) {
    const Destination& d = inst.groups[seq[k]].dest;
    if (!out.empty() && out.back().dest == d) ++out.back().len;
    else out.push_back({k, 1, d});
  }
  return out;
}

int switch_run_len(const std::vector<int>& seq, const Instance& inst) {
  if (seq.empty()) return 0;
  int n = 1;
  const Destination& d = inst.groups[seq.back()].dest;
  while (n < static_cast<int>(seq.size()) && inst.groups[seq[seq.size() - 1 - n]].dest == d) ++n;
  return n;
}

int dead_run_len(const std::vector<int>& seq, const Instance& inst) {
  if (seq.empty()) return 0;
  int n = 1;
  const Destination& d = inst.groups[seq.front()].dest;
  while (n < static_cast<int>(seq.size()) && inst.groups[seq[n]].dest == d) ++n;
  return n;
}

int parked_free_len(const std::vector<int>& seq, const Instance& inst) {
  if (seq.empty() || !inst.groups[seq.front()].dest.any) return 0;
  return dead_run_len(seq, inst);
}

std::vector<int> tracks_with_fixed(const State& s, const Instance& inst) {
  std::vector<int> out;
  for (int t = 0; t < static_cast<int>(s.tracks.size()); ++t) {
    if (!inst.is_classification(t)) continue;
    for (int g : s.tracks[t])
      if (!inst.groups[g].dest.any) {
        out.push_back(t);
        break;
      }
  }
  return out;
}

}  // namespace rsp
