#include "rsp/argdp.hpp"

#include <algorithm>
#include <chrono>
#include <deque>
#include <limits>
#include <queue>
#include <unordered_map>

#include <boost/multiprecision/cpp_bin_float.hpp>

#include "rsp/counting.hpp"
#include "rsp/runs.hpp"

namespace rsp {

std::string block_id(const Block& b, const Instance& inst) {
  std::string id;
  for (std::size_t k = 0; k < b.members.size(); ++k) {
    if (k) id += '+';
    id += inst.groups[b.members[k]].id;
  }
  return id;
}

namespace {

Block block_from(const std::vector<int>& seq, int start, int len, const Instance& inst) {
  Block b;
  b.members.assign(seq.begin() + start, seq.begin() + start + len);
  std::sort(b.members.begin(), b.members.end());
  b.dest = inst.groups[seq[start]].dest;
  for (int g : b.members) b.length += inst.groups[g].length;
  return b;
}

void absorb(Block& into, const Block& b) {
  into.members.insert(into.members.end(), b.members.begin(), b.members.end());
  std::sort(into.members.begin(), into.members.end());
  into.length += b.length;
}

// Physical state plus bookkeeping shared by both preprocessing variants.
struct Runner {
  const Instance& inst;
  Preprocessed out;

  explicit Runner(const Instance& i) : inst(i) {
    out.state = i.initial;
    out.active.assign(i.num_tracks(), 1);
    out.parked.assign(i.num_tracks(), 0);
  }

  std::vector<int>& seq(int t) { return out.state.tracks[t]; }
  int size(int t) const { return static_cast<int>(out.state.tracks[t].size()); }

  // Preprocessing moves that would break capacity are skipped.
  bool move(int src, int dst, int count) {
    if (count <= 0) return false;
    try {
      out.state = apply_move(out.state, {src, dst, count}, inst);
    } catch (const IllegalMove&) {
      return false;
    }
    out.moves.push_back({src, dst, count});
    out.cost += inst.c(src, dst);
    return true;
  }

  const Destination& top_dest(int t) const { return inst.groups[out.state.tracks[t].back()].dest; }
  const Destination& bottom_dest(int t) const { return inst.groups[out.state.tracks[t].front()].dest; }

  // Tracks with nothing on them, or only destination-free groups.
  bool empty_ish(int t) const {
    for (int g : out.state.tracks[t])
      if (!inst.groups[g].dest.any) return false;
    return true;
  }
};

void merge_pairs(Runner& r, int delta) {
  const auto snapshot = tracks_with_fixed(r.out.state, r.inst);
  for (auto it = snapshot.rbegin(); it != snapshot.rend(); ++it) {
    const int j = *it;
    const auto H = tracks_with_fixed(r.out.state, r.inst);
    if (std::find(H.begin(), H.end(), j) == H.end()) continue;
    const Destination dj = r.top_dest(j);
    if (dj.any) continue;
    int i = -1;
    for (int k : H)
      if (k < j && j - k <= delta && r.top_dest(k) == dj) i = k;
    if (i >= 0) r.move(j, i, switch_run_len(r.seq(j), r.inst));
  }
}

int find_class(const std::vector<int>& seq, const Instance& inst, BlockingClass want) {
  const auto cls = blocking_classes(seq, inst);
  for (int k = 0; k < static_cast<int>(cls.size()); ++k)
    if (cls[k] == want) return k;
  return -1;
}

// Dead-end index of the SA-MB run on the track, or -1.
int samb_start(const std::vector<int>& seq, const Instance& inst) {
  const int k = find_class(seq, inst, BlockingClass::SAMB);
  return k < 0 ? -1 : runs_of(seq, inst)[k].start;
}

bool has_lb(const std::vector<int>& seq, const Instance& inst) {
  return find_class(seq, inst, BlockingClass::LB) >= 0;
}

int neighbor_track(const Runner& r, int i) {
  const Instance& inst = r.inst;
  const int K = inst.num_tracks();
  const bool up = i - 1 >= 0 && inst.is_classification(i - 1);
  const bool down = i + 1 < K && inst.is_classification(i + 1);
  if (down && r.empty_ish(i + 1) && (!up || !r.empty_ish(i - 1))) return i + 1;
  if (up) return i - 1;
  if (down) return i + 1;
  return -1;
}

}  // namespace

BlockState merge_canonical(const State& s, const Instance& inst) {
  BlockState out;
  out.tracks.resize(s.tracks.size());
  for (std::size_t t = 0; t < s.tracks.size(); ++t)
    for (const Run& r : runs_of(s.tracks[t], inst)) out.tracks[t].push_back(block_from(s.tracks[t], r.start, r.len, inst));
  return out;
}

BlockState merge_canonical(const BlockState& s) {
  BlockState out;
  out.tracks.resize(s.tracks.size());
  for (std::size_t t = 0; t < s.tracks.size(); ++t)
    for (const Block& b : s.tracks[t]) {
      if (!out.tracks[t].empty() && out.tracks[t].back().dest == b.dest) absorb(out.tracks[t].back(), b);
      else out.tracks[t].push_back(b);
    }
  return out;
}

std::vector<BlockingClass> blocking_classes(const std::vector<int>& seq, const Instance& inst) {
  const auto runs = runs_of(seq, inst);
  const int n = static_cast<int>(runs.size());
  std::vector<BlockingClass> cls(n, BlockingClass::None);
  int highest_mb = -1;
  for (int k = 0; k < n; ++k) {
    if (!runs[k].free()) continue;
    // Runs are maximal, so any neighbouring run of a free run holds fixed-destination groups.
    if (k == n - 1 && k >= 1) cls[k] = BlockingClass::LB;
    else if (k >= 1 && k <= n - 2) {
      cls[k] = BlockingClass::MB;
      highest_mb = k;
    }
  }
  if (highest_mb >= 0) cls[highest_mb] = BlockingClass::SAMB;
  return cls;
}

Preprocessed preprocess_nonmixed(const Instance& inst, int delta) {
  Runner r(inst);
  merge_pairs(r, delta);

  if (r.out.cost == 0) {
    const auto H = tracks_with_fixed(r.out.state, inst);
    for (std::size_t w = 0; w + 1 < H.size(); ++w) {
      const int i = H[w];
      const auto cur = tracks_with_fixed(r.out.state, inst);
      const bool both = std::find(cur.begin(), cur.end(), i) != cur.end() &&
                        std::find(cur.begin(), cur.end(), i + 1) != cur.end();
      if (both && r.bottom_dest(i) == r.top_dest(i + 1) && !(r.top_dest(i) == r.bottom_dest(i + 1)))
        r.move(i, i + 1, r.size(i));
    }
  }

  const auto H = tracks_with_fixed(r.out.state, inst);
  for (int w = static_cast<int>(H.size()) - 1; w >= 1; --w) r.move(H[w], H[w - 1], r.size(H[w]));
  const auto cls = inst.classification_tracks();
  if (!H.empty() && !cls.empty()) {
    const int top = cls.front();
    if (H.front() != top) r.move(H.front(), top, r.size(H.front()));
    for (int t : cls)
      if (t > top + 1 && r.size(t) == 0) r.out.active[t] = 0;
  }
  return r.out;
}

Preprocessed preprocess_mixed(const Instance& inst) {
  Runner r(inst);
  const auto H = tracks_with_fixed(r.out.state, inst);

  if (H.size() == 1) {
    const int h = H.front();
    const int n = neighbor_track(r, h);
    if (n >= 0) {
      if (has_lb(r.seq(h), inst)) r.move(h, n, switch_run_len(r.seq(h), inst));
      const int s = samb_start(r.seq(h), inst);
      if (s >= 0) r.move(h, n, r.size(h) - s);
    }
  } else if (H.size() > 1) {
    for (int w = static_cast<int>(H.size()) - 1; w >= 1; --w) {
      const int h = H[w];
      const bool lb = has_lb(r.seq(h), inst);
      const int s = samb_start(r.seq(h), inst);
      if (!lb && s < 0) continue;
      const int n = neighbor_track(r, h);
      if (n < 0) continue;
      std::vector<int> lb_members, samb_members;
      if (lb) {
        const int len = switch_run_len(r.seq(h), inst);
        lb_members.assign(r.seq(h).end() - len, r.seq(h).end());
      }
      if (s >= 0) samb_members.push_back(r.seq(h)[s]);
      if (!r.move(h, n, r.size(h) - parked_free_len(r.seq(h), inst))) continue;
      if (lb) {
        const auto& ns = r.seq(n);
        if (!ns.empty() && ns.back() == lb_members.back()) r.move(n, h, static_cast<int>(lb_members.size()));
      }
      if (s >= 0) {
        const auto& ns = r.seq(n);
        auto it = std::find(ns.begin(), ns.end(), samb_members.front());
        // The SA-MB run may have shifted; pull from its dead-end-most member.
        if (it != ns.end()) {
          int at = static_cast<int>(it - ns.begin());
          while (at > 0 && inst.groups[ns[at - 1]].dest.any) --at;
          r.move(n, h, static_cast<int>(ns.size()) - at);
        }
      }
    }

    const int h1 = H.front();
    const int below = h1 + 1;
    if ((has_lb(r.seq(h1), inst) || samb_start(r.seq(h1), inst) >= 0) && below < inst.num_tracks() &&
        inst.is_classification(below)) {
      if (r.empty_ish(below)) {
        if (has_lb(r.seq(h1), inst)) r.move(h1, below, switch_run_len(r.seq(h1), inst));
        const int s = samb_start(r.seq(h1), inst);
        if (s >= 0) r.move(h1, below, r.size(h1) - s);
      } else if (r.out.cost == 0) {
        r.move(below, h1, r.size(below) - parked_free_len(r.seq(below), inst));
        const int s = samb_start(r.seq(h1), inst);
        if (s >= 0) r.move(h1, below, r.size(h1) - s);
      }
    }
  }

  for (int t = 0; t < inst.num_tracks(); ++t)
    if (inst.is_classification(t)) r.out.parked[t] = parked_free_len(r.seq(t), inst);
  return r.out;
}

namespace {

struct ThetaSum {
  Cost sum = 0;
  std::int64_t blocks = 0;
  // Strict comparison of averages without rounding.
  bool less_than(const ThetaSum& o) const {
    return static_cast<__int128>(sum) * o.blocks < static_cast<__int128>(o.sum) * blocks;
  }
  double value() const { return blocks ? static_cast<double>(sum) / blocks : 0.0; }
};

struct Scorer {
  const Instance& inst;
  std::vector<Cost> free_cost;  // distance-to-go of a destination-free block per track

  Scorer(const Instance& i, const std::vector<char>& active) : inst(i), free_cost(i.num_tracks(), 0) {
    for (int t = 0; t < i.num_tracks(); ++t) {
      if (i.is_classification(t)) continue;
      Cost best = std::numeric_limits<Cost>::max();
      for (int k : i.classification_tracks())
        if (active[k]) best = std::min(best, i.c(t, k));
      free_cost[t] = best == std::numeric_limits<Cost>::max() ? 0 : best;
    }
  }

  Cost block(const Block& b, int t) const {
    if (b.dest.any) return free_cost[t];
    return b.dest.track == t ? 0 : inst.c(t, b.dest.track);
  }

  ThetaSum state(const BlockState& s) const {
    ThetaSum th;
    for (int t = 0; t < static_cast<int>(s.tracks.size()); ++t)
      for (const Block& b : s.tracks[t]) {
        th.sum += block(b, t);
        ++th.blocks;
      }
    return th;
  }
};

bool block_final(const BlockState& s, const Instance& inst) {
  for (int t = 0; t < static_cast<int>(s.tracks.size()); ++t)
    for (const Block& b : s.tracks[t])
      if (b.dest.any ? !inst.is_classification(t) : b.dest.track != t) return false;
  return true;
}

std::string key_of(const BlockState& s) {
  std::string k;
  for (const auto& tr : s.tracks) {
    for (const Block& b : tr) {
      for (int g : b.members) k.push_back(static_cast<char>(g + 1));
      k.push_back('\xfe');
    }
    k.push_back('\xff');
  }
  return k;
}

BlockState strip_parked(const Preprocessed& pre, const Instance& inst) {
  State s = pre.state;
  for (int t = 0; t < inst.num_tracks(); ++t) s.tracks[t].erase(s.tracks[t].begin(), s.tracks[t].begin() + pre.parked[t]);
  return merge_canonical(s, inst);
}

BlockState apply_block_move(const BlockState& s, const Move& m) {
  BlockState out = s;
  auto& from = out.tracks[m.src];
  auto& to = out.tracks[m.dst];
  const std::size_t first = from.size() - m.count;
  for (std::size_t k = first; k < from.size(); ++k) {
    if (!to.empty() && to.back().dest == from[k].dest) absorb(to.back(), from[k]);
    else to.push_back(from[k]);
  }
  from.resize(first);
  return out;
}

}  // namespace

double average_distance_to_go(const BlockState& s, const Instance& inst, const std::vector<char>& active) {
  return Scorer(inst, active).state(s).value();
}

ReducedGraph build_reduced_graph(const Instance& inst, const Preprocessed& pre, const ArgdpOptions& opt) {
  const int K = inst.num_tracks();
  Scorer scorer(inst, pre.active);
  std::vector<std::int64_t> parked_load(K, 0);
  for (int t = 0; t < K; ++t)
    for (int k = 0; k < pre.parked[t]; ++k) parked_load[t] += inst.groups[pre.state.tracks[t][k]].length;

  ReducedGraph g;
  std::vector<ThetaSum> theta;
  std::unordered_map<std::string, int> index;
  auto add = [&](BlockState s, const ThetaSum& th) {
    if (g.vertices.size() >= opt.max_states)
      throw ResourceLimit(g.vertices.size(), "reduced graph exceeded " + std::to_string(opt.max_states) + " vertices");
    index.emplace(key_of(s), static_cast<int>(g.vertices.size()));
    g.vertices.push_back(std::move(s));
    theta.push_back(th);
    g.theta.push_back(th.value());
    return static_cast<int>(g.vertices.size()) - 1;
  };

  BlockState root = strip_parked(pre, inst);
  const bool root_final = block_final(root, inst);
  add(root, scorer.state(root));
  if (root_final) {
    g.sink = 0;
    return g;
  }

  std::deque<int> queue{0};
  while (!queue.empty()) {
    const int v = queue.front();
    queue.pop_front();
    const BlockState s = g.vertices[v];
    const ThetaSum parent = theta[v];
    std::vector<std::int64_t> load(K, 0);
    for (int t = 0; t < K; ++t) {
      load[t] = parked_load[t];
      for (const Block& b : s.tracks[t]) load[t] += b.length;
    }
    for (int i = 0; i < K; ++i) {
      if (!pre.active[i] || s.tracks[i].empty()) continue;
      const int nb = static_cast<int>(s.tracks[i].size());
      for (int j = 0; j < K; ++j) {
        if (j == i || !pre.active[j]) continue;
        std::int64_t moved = 0;
        for (int m = 1; m <= nb; ++m) {
          moved += s.tracks[i][nb - m].length;
          if (load[j] + moved > inst.tracks[j].capacity) break;
          const Move mv{i, j, m};
          BlockState child = apply_block_move(s, mv);
          const bool fin = block_final(child, inst);
          int target = -1;
          if (fin && g.sink >= 0) {
            target = g.sink;
          } else if (!fin) {
            auto it = index.find(key_of(child));
            if (it != index.end()) target = it->second;
          }
          if (target < 0) {
            const ThetaSum th = scorer.state(child);
            if (!th.less_than(parent)) continue;
            target = add(std::move(child), th);
            if (fin) g.sink = target;
            else queue.push_back(target);
          }
          if (target != v) g.edges.push_back({v, target, mv, inst.c(i, j)});
        }
      }
    }
  }
  return g;
}

ArgdpResult solve_argdp(const Instance& inst, const ArgdpOptions& opt) {
  const auto t0 = std::chrono::steady_clock::now();
  ArgdpResult res;
  StateCountParams params;
  params.groups = inst.num_groups();
  params.mixed = inst.mixed_count();
  params.tracks = inst.num_tracks();
  params.classification = static_cast<int>(inst.classification_tracks().size());
  for (int d : inst.departure_tracks()) {
    int n = 0;
    for (const auto& gr : inst.groups) n += !gr.dest.any && gr.dest.track == d;
    params.per_dest.push_back(n);
  }
  const BigInt full = count_states(params);
  res.stats.v_full = full.str();

  auto finish = [&](std::size_t vhat) {
    res.stats.v_hat = vhat;
    res.stats.total = res.plan.total_cost;
    if (full > 0) {
      using boost::multiprecision::cpp_bin_float_50;
      res.stats.reduction_pct =
          ((cpp_bin_float_50(full) - vhat) / cpp_bin_float_50(full) * 100).convert_to<double>();
    }
    res.stats.millis = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  };

  if (is_final(inst.initial, inst)) {
    finish(1);
    return res;
  }

  const bool mixed = inst.mixed_count() > 0;
  const Preprocessed pre = mixed ? preprocess_mixed(inst) : preprocess_nonmixed(inst, opt.delta);
  const ReducedGraph g = build_reduced_graph(inst, pre, opt);
  if (g.sink < 0) throw HeuristicFailure("the final state was pruned from the reduced graph");

  // Dijkstra from the root over the retained edges.
  const int n = static_cast<int>(g.vertices.size());
  std::vector<std::vector<int>> out(n);
  for (int e = 0; e < static_cast<int>(g.edges.size()); ++e) out[g.edges[e].from].push_back(e);
  std::vector<Cost> dist(n, std::numeric_limits<Cost>::max());
  std::vector<int> via(n, -1);
  using Item = std::pair<Cost, int>;
  std::priority_queue<Item, std::vector<Item>, std::greater<Item>> pq;
  dist[0] = 0;
  pq.push({0, 0});
  while (!pq.empty()) {
    auto [d, v] = pq.top();
    pq.pop();
    if (d != dist[v]) continue;
    for (int e : out[v]) {
      const auto& ed = g.edges[e];
      if (d + ed.cost < dist[ed.to]) {
        dist[ed.to] = d + ed.cost;
        via[ed.to] = e;
        pq.push({dist[ed.to], ed.to});
      }
    }
  }
  if (dist[g.sink] == std::numeric_limits<Cost>::max())
    throw HeuristicFailure("the final state is not reachable inside the reduced graph");

  std::vector<Move> block_moves;
  for (int v = g.sink; v != 0; v = g.edges[via[v]].from) block_moves.push_back(g.edges[via[v]].move);
  std::reverse(block_moves.begin(), block_moves.end());

  res.plan.moves = pre.moves;
  BlockState bs = g.vertices[0];
  for (const Move& m : block_moves) {
    int count = 0;
    const auto& src = bs.tracks[m.src];
    for (std::size_t k = src.size() - m.count; k < src.size(); ++k) count += static_cast<int>(src[k].members.size());
    res.plan.moves.push_back({m.src, m.dst, count});
    bs = apply_block_move(bs, m);
  }
  res.plan.total_cost = plan_cost(res.plan, inst);
  res.stats.pc = pre.cost;
  res.stats.path_cost = dist[g.sink];
  finish(g.vertices.size());
  return res;
}

}  // namespace rsp
