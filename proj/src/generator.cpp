#include "rsp/generator.hpp"

#include <algorithm>
#include <cstdlib>
#include <random>

namespace rsp {

Instance make_yard(int departures, int classification, std::int64_t capacity) {
  Instance inst;
  const int K = departures + classification;
  for (int t = 0; t < K; ++t)
    inst.tracks.push_back({t, t < departures ? TrackKind::Departure : TrackKind::Classification, capacity});
  inst.initial.tracks.assign(K, {});
  inst.cost.assign(K, std::vector<Cost>(K, 0));
  for (int i = 0; i < K; ++i)
    for (int j = 0; j < K; ++j) inst.cost[i][j] = std::abs(i - j);
  return inst;
}

int add_group(Instance& inst, int track, Destination dest, std::int64_t length) {
  const int g = inst.num_groups();
  inst.groups.push_back({"g" + std::to_string(g + 1), length, dest});
  inst.initial.tracks[track].push_back(g);
  return g;
}

namespace {

int draw(std::mt19937_64& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

Instance populate(int K, int KD, const GeneratorParams& p, std::mt19937_64& rng) {
  const int G = draw(rng, p.groups_min, p.groups_max);
  int GN = 0;
  if (p.mixed) GN = std::min(draw(rng, p.mixed_min, p.mixed_max), G - 1);
  const std::int64_t cap = p.capacity > 0 ? p.capacity : G * p.group_length;
  Instance inst = make_yard(KD, K - KD, cap);

  // Which groups are destination-free is itself random.
  std::vector<char> free_flag(G, 0);
  std::fill(free_flag.begin(), free_flag.begin() + GN, 1);
  std::shuffle(free_flag.begin(), free_flag.end(), rng);

  for (int g = 0; g < G; ++g) {
    const Destination dest = free_flag[g] ? Destination::any_classification()
                                          : Destination::fixed(draw(rng, 0, KD - 1));
    const int track = draw(rng, KD, K - 1);
    auto& seq = inst.initial.tracks[track];
    const int at = draw(rng, 0, static_cast<int>(seq.size()));
    inst.groups.push_back({"g" + std::to_string(g + 1), p.group_length, dest});
    seq.insert(seq.begin() + at, g);
  }
  return inst;
}

}  // namespace

Instance generate(const GeneratorParams& p, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const int K = draw(rng, p.tracks_min, p.tracks_max);
  const int KD = draw(rng, p.departures_min, std::min(K - 1, p.departures_max));
  Instance inst = populate(K, KD, p, rng);
  inst.validate();
  return inst;
}

Instance gaia(bool mixed, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  GeneratorParams p;
  p.mixed = mixed;
  Instance inst = populate(14, 4, p, rng);
  inst.validate();
  return inst;
}

}  // namespace rsp
