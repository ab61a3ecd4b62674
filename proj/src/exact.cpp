#include "rsp/exact.hpp"

#include <algorithm>
#include <chrono>
#include <limits>
#include <map>
#include <queue>
#include <sstream>
#include <string>

namespace rsp {

namespace {

// State keys are the concatenation of the track sequences with a separator between tracks.
// Small instances pack one symbol per nibble into 128 bits; larger ones use a u16 string.
struct PackedKeys {
  using Key = unsigned __int128;
  static constexpr int kSep = 15;
  int nsym = 0;

  static void push(Key& k, int sym) { k = (k << 4) | static_cast<unsigned>(sym); }
  void decode(const Key& k, std::vector<int>& out) const {
    out.resize(nsym);
    for (int i = 0; i < nsym; ++i) out[i] = static_cast<int>((k >> (4 * (nsym - 1 - i))) & 15);
  }
  static std::size_t hash(const Key& k) {
    std::uint64_t lo = static_cast<std::uint64_t>(k), hi = static_cast<std::uint64_t>(k >> 64);
    std::uint64_t h = lo * 0x9E3779B97F4A7C15ULL ^ (hi + 0x632BE59BD9B4E019ULL + (lo << 6) + (lo >> 2));
    h ^= h >> 31;
    h *= 0xBF58476D1CE4E5B9ULL;
    h ^= h >> 29;
    return static_cast<std::size_t>(h);
  }
};

struct WideKeys {
  using Key = std::u16string;
  static constexpr int kSep = 0xFFFF;
  int nsym = 0;

  static void push(Key& k, int sym) { k.push_back(static_cast<char16_t>(sym)); }
  void decode(const Key& k, std::vector<int>& out) const {
    out.resize(k.size());
    for (std::size_t i = 0; i < k.size(); ++i) out[i] = k[i];
  }
  static std::size_t hash(const Key& k) { return std::hash<std::u16string>{}(k); }
};

constexpr std::uint32_t kNone = std::numeric_limits<std::uint32_t>::max();
constexpr std::uint32_t kSink = kNone - 1;

struct PackedMove {
  std::int16_t src = 0, dst = 0, count = 0;
  Move get() const { return {src, dst, count}; }
};

template <class Keys>
class Dijkstra {
 public:
  using Key = typename Keys::Key;

  Dijkstra(const Instance& inst, const ExactOptions& opt) : inst_(inst), opt_(opt) {
    K_ = inst.num_tracks();
    G_ = inst.num_groups();
    keys_.nsym = G_ + K_ - 1;
    sat_.assign(static_cast<std::size_t>(G_) * K_, 0);
    for (int g = 0; g < G_; ++g)
      for (int t = 0; t < K_; ++t) sat_[g * K_ + t] = inst.satisfied(g, t);
    len_.resize(G_);
    for (int g = 0; g < G_; ++g) len_[g] = inst.groups[g].length;
  }

  ExactResult run() {
    ExactResult res;
    if (is_final(inst_.initial, inst_)) {
      res.states_generated = 1;
      return res;
    }
    slots_.assign(1 << 12, kNone);
    Key root = encode(inst_.initial);
    insert(root);
    heap_.push({0, 0, 0});
    std::vector<int> syms;
    std::vector<int> start(K_), size(K_);
    std::vector<std::int64_t> load(K_);
    while (!heap_.empty()) {
      const Entry e = heap_.top();
      heap_.pop();
      if (e.idx == kSink) break;
      Node& n = nodes_[e.idx];
      if (n.closed || n.cost != e.cost || n.nmoves != e.nmoves) continue;
      n.closed = true;
      ++res.states_expanded;
      const Key key = n.key;
      keys_.decode(key, syms);
      int t = 0, unsat = 0;
      start[0] = 0;
      for (int k = 0; k < static_cast<int>(syms.size()); ++k) {
        if (syms[k] == Keys::kSep) {
          size[t] = k - start[t];
          start[++t] = k + 1;
        }
      }
      size[t] = static_cast<int>(syms.size()) - start[t];
      for (t = 0; t < K_; ++t) {
        load[t] = 0;
        for (int k = start[t]; k < start[t] + size[t]; ++k) {
          load[t] += len_[syms[k]];
          unsat += !sat_[syms[k] * K_ + t];
        }
      }
      expand(e.idx, syms, start, size, load, unsat);
    }
    if (!sink_.reached) throw Unsolvable("no final state is reachable from the initial state");
    std::vector<Move> rev;
    rev.push_back(sink_.move.get());
    for (std::uint32_t v = sink_.pred; v != 0; v = nodes_[v].pred) rev.push_back(nodes_[v].move.get());
    res.plan.moves.assign(rev.rbegin(), rev.rend());
    res.plan.total_cost = sink_.cost;
    res.states_generated = nodes_.size() + 1;
    return res;
  }

 private:
  struct Node {
    Key key{};
    Cost cost = 0;
    std::uint32_t pred = kNone;
    std::uint32_t nmoves = 0;
    PackedMove move{};
    bool closed = false;
  };
  struct SinkNode {
    bool reached = false;
    Cost cost = 0;
    std::uint32_t pred = kNone;
    std::uint32_t nmoves = 0;
    PackedMove move{};
  };
  struct Entry {
    Cost cost;
    std::uint32_t nmoves;
    std::uint32_t idx;
    bool operator>(const Entry& o) const {
      return cost != o.cost ? cost > o.cost : nmoves > o.nmoves;
    }
  };

  Key encode(const State& s) const {
    Key k{};
    for (int t = 0; t < K_; ++t) {
      if (t) Keys::push(k, Keys::kSep);
      for (int g : s.tracks[t]) Keys::push(k, g);
    }
    return k;
  }

  // Returns the node index and whether it was created.
  std::pair<std::uint32_t, bool> insert(const Key& k) {
    if ((nodes_.size() + 1) * 2 > slots_.size()) rehash();
    std::size_t mask = slots_.size() - 1, h = Keys::hash(k) & mask;
    while (slots_[h] != kNone) {
      if (nodes_[slots_[h]].key == k) return {slots_[h], false};
      h = (h + 1) & mask;
    }
    if (nodes_.size() >= opt_.max_states)
      throw ResourceLimit(nodes_.size(), "exact solver exceeded the state cap of " + std::to_string(opt_.max_states));
    slots_[h] = static_cast<std::uint32_t>(nodes_.size());
    nodes_.push_back(Node{k});
    return {slots_[h], true};
  }

  void rehash() {
    std::vector<std::uint32_t> s(slots_.size() * 2, kNone);
    std::size_t mask = s.size() - 1;
    for (std::uint32_t i = 0; i < nodes_.size(); ++i) {
      std::size_t h = Keys::hash(nodes_[i].key) & mask;
      while (s[h] != kNone) h = (h + 1) & mask;
      s[h] = i;
    }
    slots_.swap(s);
  }

  std::vector<Move> path_to(std::uint32_t v) const {
    std::vector<Move> rev;
    for (; v != 0; v = nodes_[v].pred) rev.push_back(nodes_[v].move.get());
    return {rev.rbegin(), rev.rend()};
  }

  // True when path(parent)+mv precedes the path currently recorded as (pred, move).
  bool lex_better(std::uint32_t parent, Move mv, std::uint32_t pred, Move cur) const {
    auto a = path_to(parent), b = path_to(pred);
    a.push_back(mv);
    b.push_back(cur);
    return a < b;
  }

  template <class N>
  bool improve(N& target, Cost cost, std::uint32_t nm, std::uint32_t parent, Move mv) {
    if (cost < target.cost || (cost == target.cost && nm < target.nmoves) ||
        (cost == target.cost && nm == target.nmoves && lex_better(parent, mv, target.pred, target.move.get()))) {
      const bool key_changed = cost != target.cost || nm != target.nmoves;
      target.cost = cost;
      target.nmoves = nm;
      target.pred = parent;
      target.move = {static_cast<std::int16_t>(mv.src), static_cast<std::int16_t>(mv.dst),
                     static_cast<std::int16_t>(mv.count)};
      return key_changed;
    }
    return false;
  }

  void expand(std::uint32_t idx, const std::vector<int>& syms, const std::vector<int>& start,
              const std::vector<int>& size, const std::vector<std::int64_t>& load, int unsat) {
    const Cost base = nodes_[idx].cost;
    const std::uint32_t nm = nodes_[idx].nmoves + 1;
    for (int i = 0; i < K_; ++i) {
      if (size[i] == 0) continue;
      for (int j = 0; j < K_; ++j) {
        if (j == i) continue;
        const Cost cost = base + inst_.c(i, j);
        std::int64_t moved = 0;
        int du = 0;
        for (int m = 1; m <= size[i]; ++m) {
          const int g = syms[start[i] + size[i] - m];
          moved += len_[g];
          if (load[j] + moved > inst_.tracks[j].capacity) break;
          du += sat_[g * K_ + i] - sat_[g * K_ + j];
          const Move mv{i, j, m};
          if (unsat + du == 0) {
            if (!sink_.reached) {
              sink_.reached = true;
              sink_.cost = cost;
              sink_.nmoves = nm;
              sink_.pred = idx;
              sink_.move = {static_cast<std::int16_t>(i), static_cast<std::int16_t>(j), static_cast<std::int16_t>(m)};
              heap_.push({cost, nm, kSink});
            } else if (improve(sink_, cost, nm, idx, mv)) {
              heap_.push({cost, nm, kSink});
            }
            continue;
          }
          Key k{};
          for (int t = 0; t < K_; ++t) {
            if (t) Keys::push(k, Keys::kSep);
            const int keep = t == i ? size[t] - m : size[t];
            for (int q = start[t]; q < start[t] + keep; ++q) Keys::push(k, syms[q]);
            if (t == j)
              for (int q = start[i] + size[i] - m; q < start[i] + size[i]; ++q) Keys::push(k, syms[q]);
          }
          auto [c, created] = insert(k);
          Node& child = nodes_[c];
          if (created) {
            child.cost = cost;
            child.nmoves = nm;
            child.pred = idx;
            child.move = {static_cast<std::int16_t>(i), static_cast<std::int16_t>(j), static_cast<std::int16_t>(m)};
            heap_.push({cost, nm, c});
          } else if (!child.closed && improve(child, cost, nm, idx, mv)) {
            heap_.push({cost, nm, c});
          }
        }
      }
    }
  }

  const Instance& inst_;
  ExactOptions opt_;
  Keys keys_;
  int K_ = 0, G_ = 0;
  std::vector<char> sat_;
  std::vector<std::int64_t> len_;
  std::vector<Node> nodes_;
  std::vector<std::uint32_t> slots_;
  SinkNode sink_;
  std::priority_queue<Entry, std::vector<Entry>, std::greater<Entry>> heap_;
};

}  // namespace

ExactResult solve_exact(const Instance& inst, const ExactOptions& opt) {
  const auto t0 = std::chrono::steady_clock::now();
  ExactResult r;
  if (inst.num_groups() <= 15 && inst.num_groups() + inst.num_tracks() - 1 <= 32)
    r = Dijkstra<PackedKeys>(inst, opt).run();
  else
    r = Dijkstra<WideKeys>(inst, opt).run();
  r.millis = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

StateGraph build_state_graph(const Instance& inst, std::size_t max_states) {
  StateGraph g;
  std::map<std::vector<std::vector<int>>, int> index;
  std::vector<std::vector<int>> out;  // outgoing edge ids per vertex
  std::vector<char> expanded;

  auto add_vertex = [&](GraphVertex v) {
    if (g.vertices.size() >= max_states)
      throw ResourceLimit(g.vertices.size(), "state graph exceeded " + std::to_string(max_states) + " vertices");
    g.vertices.push_back(std::move(v));
    out.emplace_back();
    expanded.push_back(0);
    return static_cast<int>(g.vertices.size()) - 1;
  };

  // Push an improved label through edges that already exist.
  auto propagate = [&](int from) {
    std::queue<int> work;
    work.push(from);
    while (!work.empty()) {
      int v = work.front();
      work.pop();
      for (int e : out[v]) {
        auto& ed = g.edges[e];
        auto& w = g.vertices[ed.to];
        if (g.vertices[v].label + ed.cost < w.label) {
          w.label = g.vertices[v].label + ed.cost;
          w.pred = v;
          w.pred_move = ed.move;
          work.push(ed.to);
        }
      }
    }
  };

  const bool root_final = is_final(inst.initial, inst);
  g.root = add_vertex(GraphVertex{inst.initial, 0, -1, {}, 0, root_final});
  if (root_final) {
    g.sink = g.root;
    return g;
  }
  index[inst.initial.tracks] = g.root;
  std::vector<int> layer{g.root};
  for (int tau = 0; !layer.empty(); ++tau) {
    std::vector<int> next;
    for (int v : layer) {
      expanded[v] = 1;
      const State s = g.vertices[v].state;
      for (const Move& mv : legal_moves(s, inst)) {
        State child = apply_move(s, mv, inst);
        const Cost c = inst.c(mv.src, mv.dst);
        const Cost label = g.vertices[v].label + c;
        int target;
        bool fresh = false;
        if (is_final(child, inst)) {
          if (g.sink < 0) {
            g.sink = add_vertex(GraphVertex{{}, label, v, mv, tau + 1, true});
            fresh = true;
          }
          target = g.sink;
        } else {
          auto it = index.find(child.tracks);
          if (it == index.end()) {
            target = add_vertex(GraphVertex{std::move(child), label, v, mv, tau + 1, false});
            index.emplace(g.vertices[target].state.tracks, target);
            next.push_back(target);
            fresh = true;
          } else {
            target = it->second;
          }
        }
        g.edges.push_back({v, target, mv, c});
        out[v].push_back(static_cast<int>(g.edges.size()) - 1);
        if (!fresh && label < g.vertices[target].label) {
          g.vertices[target].label = label;
          g.vertices[target].pred = v;
          g.vertices[target].pred_move = mv;
          if (expanded[target]) propagate(target);
        }
      }
    }
    layer.swap(next);
  }
  return g;
}

Plan graph_plan(const StateGraph& g) {
  if (g.sink < 0) throw Unsolvable("state graph has no final vertex");
  Plan p;
  p.total_cost = g.vertices[g.sink].label;
  for (int v = g.sink; v != g.root; v = g.vertices[v].pred) p.moves.push_back(g.vertices[v].pred_move);
  std::reverse(p.moves.begin(), p.moves.end());
  return p;
}

namespace {

std::string state_label(const State& s, const Instance& inst) {
  std::ostringstream os;
  for (std::size_t t = 0; t < s.tracks.size(); ++t) {
    if (t) os << "|";
    for (std::size_t k = 0; k < s.tracks[t].size(); ++k) os << (k ? "," : "") << inst.groups[s.tracks[t][k]].id;
  }
  return os.str();
}

}  // namespace

std::string to_dot(const StateGraph& g, const Instance& inst, const std::string& name) {
  std::ostringstream os;
  os << "digraph " << name << " {\n  rankdir=LR;\n";
  for (std::size_t v = 0; v < g.vertices.size(); ++v) {
    const auto& x = g.vertices[v];
    os << "  s" << v << " [label=\"" << (x.sink ? std::string("FINAL") : state_label(x.state, inst))
       << "\\nlabel=" << x.label << " layer=" << x.layer << "\"";
    if (x.sink) os << ", shape=doublecircle";
    if (static_cast<int>(v) == g.root) os << ", shape=box";
    os << "];\n";
  }
  for (const auto& e : g.edges) {
    const bool tree = g.vertices[e.to].pred == e.from && g.vertices[e.to].pred_move == e.move;
    os << "  s" << e.from << " -> s" << e.to << " [label=\"" << to_string(e.move) << " c=" << e.cost << "\"";
    if (tree) os << ", penwidth=2";
    os << "];\n";
  }
  os << "}\n";
  return os.str();
}

}  // namespace rsp
