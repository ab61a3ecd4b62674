#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace rsp {

using Cost = std::int64_t;

enum class TrackKind { Classification, Departure };

struct Track {
  int id = 0;
  TrackKind kind = TrackKind::Classification;
  std::int64_t capacity = 0;
};

// Either a fixed departure track or "any classification track".
struct Destination {
  bool any = false;
  int track = -1;

  static Destination fixed(int t) { return {false, t}; }
  static Destination any_classification() { return {true, -1}; }
  bool operator==(const Destination&) const = default;
};

struct Group {
  std::string id;
  std::int64_t length = 1;
  Destination dest;
};

// Each track holds group indices, dead end first.
struct State {
  std::vector<std::vector<int>> tracks;

  bool operator==(const State&) const = default;
  std::size_t group_count() const;
};

struct Move {
  int src = 0;
  int dst = 0;
  int count = 1;

  bool operator==(const Move&) const = default;
  auto operator<=>(const Move&) const = default;
};

struct Plan {
  std::vector<Move> moves;
  Cost total_cost = 0;
};

struct Instance {
  std::vector<Track> tracks;
  std::vector<Group> groups;
  State initial;
  std::vector<std::vector<Cost>> cost;

  int num_tracks() const { return static_cast<int>(tracks.size()); }
  int num_groups() const { return static_cast<int>(groups.size()); }
  bool is_classification(int t) const { return tracks[t].kind == TrackKind::Classification; }
  bool is_departure(int t) const { return tracks[t].kind == TrackKind::Departure; }
  Cost c(int i, int j) const { return cost[i][j]; }

  std::vector<int> classification_tracks() const;
  std::vector<int> departure_tracks() const;
  int mixed_count() const;  // |G_N|
  bool is_mixed() const { return mixed_count() > 0; }

  // Group g satisfies its destination while sitting on track t.
  bool satisfied(int g, int t) const;

  // Throws InvalidInstance describing the first violated invariant.
  void validate() const;
};

class InvalidInstance : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class IllegalMove : public std::runtime_error {
 public:
  enum class Reason { EmptySource, CountExceedsSource, CapacityExceeded, SelfMove, BadTrack };
  IllegalMove(Reason r, const std::string& what) : std::runtime_error(what), reason(r) {}
  Reason reason;
};

const char* to_string(IllegalMove::Reason r);

std::int64_t track_load(const State& s, const Instance& inst, int track);

State apply_move(const State& s, const Move& mv, const Instance& inst, bool enforce_capacity = true);
std::vector<Move> legal_moves(const State& s, const Instance& inst);
bool is_final(const State& s, const Instance& inst);
Cost plan_cost(const Plan& plan, const Instance& inst);
Cost plan_cost(const std::vector<Move>& moves, const Instance& inst);

// Replays the moves from the initial state, returning the end state.
State replay(const Instance& inst, const std::vector<Move>& moves, bool enforce_capacity = true);

// True when replay succeeds and ends in a final state.
bool plan_is_valid(const Instance& inst, const Plan& plan, std::string* why = nullptr);

std::string to_string(const Move& m);

}  // namespace rsp
