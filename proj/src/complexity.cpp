#include "rsp/complexity.hpp"

#include <algorithm>
#include <set>

#include "rsp/generator.hpp"

namespace rsp {

namespace {

// Run-leading values of maximal runs, where a run continues while `next(prev, cur)` holds.
template <class Cont>
bool increasing_leaders(std::size_t n, Cont cont, const std::vector<int>& value) {
  int last_leader = 0;
  bool first = true;
  for (std::size_t k = 0; k < n; ++k) {
    if (k > 0 && cont(k)) continue;
    if (!first && value[k] <= last_leader) return false;
    last_leader = value[k];
    first = false;
  }
  return true;
}

std::vector<int> positions(const std::vector<int>& seq) {
  std::vector<int> pos(seq.size() + 2, -1);
  for (std::size_t k = 0; k < seq.size(); ++k) pos[seq[k]] = static_cast<int>(k);
  return pos;
}

// For each value a, the last position holding a value smaller than a (-1 if none).
std::vector<int> last_smaller(const std::vector<int>& seq, const std::vector<int>& pos) {
  const int n = static_cast<int>(seq.size());
  std::vector<int> out(n + 2, -1);
  for (int a = 2; a <= n + 1; ++a) out[a] = std::max(out[a - 1], pos[a - 1]);
  return out;
}

}  // namespace

std::vector<std::pair<int, int>> ConflictGraph::value_edges() const {
  std::vector<std::pair<int, int>> out;
  for (auto [i, j] : edges) out.push_back({seq[i], seq[j]});
  return out;
}

void require_permutation(const std::vector<int>& seq) {
  std::vector<int> s = seq;
  std::sort(s.begin(), s.end());
  for (std::size_t k = 0; k < s.size(); ++k)
    if (s[k] != static_cast<int>(k) + 1) throw std::invalid_argument("sequence is not a permutation of 1..n");
}

bool cds_chain(const std::vector<int>& seq) {
  if (seq.empty()) throw std::invalid_argument("cds_chain needs a nonempty sequence");
  return increasing_leaders(seq.size(), [&](std::size_t k) { return seq[k] == seq[k - 1] - 1; }, seq);
}

namespace {

// Works on any sequence of distinct values.
std::vector<std::pair<int, int>> zsss_edges(const std::vector<int>& seq) {
  const int n = static_cast<int>(seq.size());
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i < n; ++i) {
    int last = -1;
    for (int k = 0; k < n; ++k)
      if (seq[k] < seq[i]) last = k;
    for (int j = i + 1; j <= last; ++j)
      if (seq[j] > seq[i]) edges.push_back({i, j});
  }
  return edges;
}

}  // namespace

ConflictGraph zsss_conflicts(const std::vector<int>& seq) {
  require_permutation(seq);
  return {Flavor::Zsss, seq, zsss_edges(seq)};
}

ConflictGraph rspsc_conflicts(const std::vector<int>& seq) {
  require_permutation(seq);
  ConflictGraph g{Flavor::RspSc, seq, {}};
  const auto pos = positions(seq);
  const auto small = last_smaller(seq, pos);
  const int n = static_cast<int>(seq.size());
  for (int i = 0; i < n; ++i) {
    const int a = seq[i];
    for (int j = i + 2; j < n; ++j) {
      const int b = seq[j];
      if (!(a < b - 1) || small[a] < j) continue;
      const std::vector<int> span(seq.begin() + i, seq.begin() + j + 1);
      if (cds_chain(span)) continue;
      // Values a..b in sequence order; a run also needs adjacent positions.
      std::vector<int> vals;
      for (int v = a; v <= b; ++v) vals.push_back(v);
      std::sort(vals.begin(), vals.end(), [&](int x, int y) { return pos[x] < pos[y]; });
      const bool chain = increasing_leaders(
          vals.size(), [&](std::size_t k) { return vals[k] == vals[k - 1] - 1 && pos[vals[k]] == pos[vals[k - 1]] + 1; },
          vals);
      if (chain) continue;
      g.edges.push_back({i, j});
    }
  }
  return g;
}

std::vector<int> Transformed::values() const {
  std::vector<int> v;
  for (const Item& it : items) v.push_back(it.value);
  return v;
}

namespace {

void reindex(Transformed& t) {
  for (std::size_t k = 0; k < t.items.size(); ++k)
    if (t.items[k].kind == ItemKind::Original) t.position_of[t.items[k].origin] = static_cast<int>(k);
}

void shift_from(std::vector<Item>& items, int v) {
  for (Item& it : items)
    if (it.value >= v) ++it.value;
}

struct Mismatch {
  std::vector<std::pair<int, int>> missing;  // input index pairs without a transformed edge
  int extra = 0;                             // transformed edges with no input counterpart
};

Mismatch compare(const std::vector<std::pair<int, int>>& want, const Transformed& t) {
  std::set<std::pair<int, int>> want_pos;
  for (auto [a, b] : want) want_pos.insert({t.position_of[a], t.position_of[b]});
  const auto have = rspsc_conflicts(t.values()).edges;
  Mismatch m;
  for (const auto& e : have)
    if (!want_pos.count(e)) ++m.extra;
  std::set<std::pair<int, int>> have_set(have.begin(), have.end());
  for (auto [a, b] : want)
    if (!have_set.count({t.position_of[a], t.position_of[b]})) m.missing.push_back({a, b});
  return m;
}

Transformed with_dummy(const Transformed& t, int value, int before) {
  Transformed out = t;
  shift_from(out.items, value);
  out.items.insert(out.items.begin() + before, Item{value, ItemKind::Dummy, -1});
  ++out.dummies;
  reindex(out);
  return out;
}

}  // namespace

Transformed transform_zsss_to_rspsc(const std::vector<int>& sigma) {
  require_permutation(sigma);
  const int n = static_cast<int>(sigma.size());
  Transformed t;
  t.position_of.assign(n, -1);
  for (int k = 0; k < n; ++k) t.items.push_back({sigma[k], ItemKind::Original, k});

  // Separate every conflicting consecutive-value pair (j, j+1) by opening a gap at j+1.
  std::vector<int> set_v;
  for (;;) {
    const auto vals = t.values();
    const int top = *std::max_element(vals.begin(), vals.end());
    std::vector<int> pos(top + 2, -1);
    for (std::size_t k = 0; k < vals.size(); ++k) pos[vals[k]] = static_cast<int>(k);
    const auto g = zsss_edges(vals);
    const std::set<std::pair<int, int>> edges(g.begin(), g.end());
    int found = -1;
    for (int j = 1; j < top; ++j)
      if (pos[j] >= 0 && pos[j + 1] >= 0 && edges.count({pos[j], pos[j + 1]})) {
        found = j;
        break;
      }
    if (found < 0) break;
    shift_from(t.items, found + 1);
    for (int& x : set_v)
      if (x >= found + 1) ++x;
    set_v.push_back(found + 1);
  }
  std::sort(set_v.begin(), set_v.end());
  for (int x : set_v) {
    int last = -1;
    for (int k = 0; k < static_cast<int>(t.items.size()); ++k)
      if (t.items[k].value <= x) last = k;
    t.items.insert(t.items.begin() + last + 1, Item{x, ItemKind::SetV, -1});
  }
  t.set_v = static_cast<int>(set_v.size());
  reindex(t);

  // Give every input conflict a witness by inserting dummies in front of the later item.
  auto want = zsss_conflicts(sigma).edges;
  std::sort(want.begin(), want.end());
  int lambda = 0;
  const int guard = 4 * n + 8;
  for (int round = 0; round < guard; ++round) {
    Mismatch mm = compare(want, t);
    if (mm.missing.empty()) break;
    if (mm.extra > 0) break;  // cannot happen: every accepted step keeps extra at zero
    const auto [a, b] = mm.missing.front();
    ++lambda;
    const int before = t.position_of[b];
    Transformed next = with_dummy(t, lambda, before);
    Mismatch after = compare(want, next);
    if (after.extra > 0 || after.missing.size() >= mm.missing.size()) {
      bool ok = false;
      for (int v = 1; v <= static_cast<int>(t.items.size()) + 1; ++v) {
        Transformed cand = with_dummy(t, v, before);
        Mismatch cm = compare(want, cand);
        if (cm.extra == 0 && cm.missing.size() < mm.missing.size()) {
          next = std::move(cand);
          ok = true;
          break;
        }
      }
      if (!ok) break;
      ++next.repaired;
    }
    t = std::move(next);
  }

  // Number dummies left to right, unless that disturbs the conflict structure.
  Transformed renum = t;
  std::vector<int> dv;
  for (const Item& it : renum.items)
    if (it.kind == ItemKind::Dummy) dv.push_back(it.value);
  std::sort(dv.begin(), dv.end());
  std::size_t k = 0;
  for (Item& it : renum.items)
    if (it.kind == ItemKind::Dummy) it.value = dv[k++];
  if (conflicts_correspond(sigma, renum)) return renum;
  return t;
}

bool conflicts_correspond(const std::vector<int>& sigma, const Transformed& t) {
  auto want = zsss_conflicts(sigma).edges;
  std::set<std::pair<int, int>> mapped;
  for (auto [a, b] : want) mapped.insert({t.position_of[a], t.position_of[b]});
  const auto have = rspsc_conflicts(t.values()).edges;
  return std::set<std::pair<int, int>>(have.begin(), have.end()) == mapped;
}

Instance build_rspsc_instance(const std::vector<int>& sigma, int k, Cost cbar, Cost R) {
  require_permutation(sigma);
  if (k < 1) throw std::invalid_argument("need at least one sorting track");
  const int n = static_cast<int>(sigma.size());
  if (R <= 0 || cbar <= 0) throw InvalidCosts("costs must be positive");
  if (static_cast<Cost>(n) * R >= cbar) throw InvalidCosts("n*R must be below c-bar");

  Instance inst = make_yard(n, k + 2, n);
  auto dep = [n](int m) { return n - m; };  // departure track m'
  auto cls = [n](int c) { return n + c; };  // classification track c
  const int K = inst.num_tracks();
  for (int i = 0; i < K; ++i)
    for (int j = 0; j < K; ++j) inst.cost[i][j] = i == j ? 0 : cbar;
  for (int j = 1; j <= k; ++j) inst.cost[cls(0)][cls(j)] = 0;
  for (int i = 1; i <= k; ++i) inst.cost[cls(i)][cls(k + 1)] = 0;
  inst.cost[cls(k + 1)][dep(1)] = R;
  for (int m = 1; m < n; ++m) {
    inst.cost[dep(m)][dep(m + 1)] = R;
    inst.cost[dep(m + 1)][dep(m)] = R;
  }
  for (auto it = sigma.rbegin(); it != sigma.rend(); ++it) {
    const int g = add_group(inst, cls(0), Destination::fixed(dep(*it)));
    inst.groups[g].id = std::to_string(*it);
  }
  return inst;
}

}  // namespace rsp
