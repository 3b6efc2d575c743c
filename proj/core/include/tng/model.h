// Copyright 2026 The TNG Solver Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Timed networks and timed network congestion games: vertices carrying
// load-dependent weight functions, edges guarded by finite unions of integer
// date intervals, and per-player (source, target) objectives.

#ifndef TNG_MODEL_H_
#define TNG_MODEL_H_

#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace tng {

using Date = int64_t;
// Index into the declaration order of the network's vertices.
using VertexId = int32_t;

inline constexpr Date kUnbounded = std::numeric_limits<Date>::max();

// Thrown by the game-file parser; carries the 1-based offending line.
class ParseError : public std::runtime_error {
 public:
  ParseError(int line, const std::string& message)
      : std::runtime_error("line " + std::to_string(line) + ": " + message),
        line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

struct Interval {
  Date lo = 0;
  Date hi = kUnbounded;  // inclusive; kUnbounded encodes +infinity

  friend bool operator==(const Interval&, const Interval&) = default;
};

// A finite union of integer intervals, kept sorted, disjoint and
// non-adjacent (consecutive intervals are separated by a gap of at least 2).
class Guard {
 public:
  Guard() = default;

  // Merges overlapping or adjacent intervals. Throws std::invalid_argument if
  // the result would be empty or an interval has lo > hi or a negative bound.
  static Guard Normalize(std::vector<Interval> intervals);
  static Guard Always() { return Normalize({Interval{0, kUnbounded}}); }

  bool Contains(Date d) const;
  // Earliest date strictly greater than `d` satisfying the guard.
  std::optional<Date> NextAfter(Date d) const;
  // Largest finite constant appearing in the guard, if any.
  std::optional<Date> MaxConstant() const;
  bool IsUnbounded() const {
    return !intervals_.empty() && intervals_.back().hi == kUnbounded;
  }

  const std::vector<Interval>& intervals() const { return intervals_; }

  friend bool operator==(const Guard&, const Guard&) = default;

 private:
  std::vector<Interval> intervals_;
};

// Non-decreasing per-time-unit cost as a function of the load of a vertex.
class WeightFn {
 public:
  enum class Kind { kAffine, kTable };

  static WeightFn Affine(int64_t a, int64_t b);
  static WeightFn Table(std::vector<int64_t> entries);

  // Throws std::domain_error for load 0 or a load past the table end.
  int64_t Eval(int64_t load) const;

  Kind kind() const { return kind_; }
  int64_t a() const { return a_; }
  int64_t b() const { return b_; }
  const std::vector<int64_t>& entries() const { return entries_; }

  friend bool operator==(const WeightFn&, const WeightFn&) = default;

 private:
  Kind kind_ = Kind::kAffine;
  int64_t a_ = 0;
  int64_t b_ = 1;
  std::vector<int64_t> entries_;
};

inline int64_t EvalWeight(const WeightFn& w, int64_t load) {
  return w.Eval(load);
}

inline bool GuardContains(const Guard& g, Date d) { return g.Contains(d); }

struct Edge {
  VertexId from = 0;
  VertexId to = 0;
  Guard guard;

  friend bool operator==(const Edge&, const Edge&) = default;
};

class TimedNetwork {
 public:
  // Throws std::invalid_argument on a duplicate name.
  VertexId AddVertex(std::string name, WeightFn weight);
  // Adds an edge, or unions the guard into an existing edge between the same
  // ordered pair. Returns the edge index.
  int AddEdge(VertexId from, VertexId to, const Guard& guard);

  int vertex_count() const { return static_cast<int>(names_.size()); }
  const std::string& name(VertexId v) const { return names_.at(v); }
  const WeightFn& weight(VertexId v) const { return weights_.at(v); }
  std::optional<VertexId> Find(std::string_view name) const;

  const std::vector<Edge>& edges() const { return edges_; }
  // Outgoing edge indices of `v`, in declaration order.
  const std::vector<int>& out_edges(VertexId v) const { return out_.at(v); }
  std::optional<int> FindEdge(VertexId from, VertexId to) const;

  friend bool operator==(const TimedNetwork& a, const TimedNetwork& b) {
    return a.names_ == b.names_ && a.weights_ == b.weights_ &&
           a.edges_ == b.edges_;
  }

 private:
  std::vector<std::string> names_;
  std::vector<WeightFn> weights_;
  std::vector<Edge> edges_;
  std::vector<std::vector<int>> out_;
  std::map<std::string, VertexId, std::less<>> by_name_;
  std::map<std::pair<VertexId, VertexId>, int> edge_index_;
};

// One `objective` line of a game file: `count` players share (src, tgt).
struct ObjectiveGroup {
  VertexId src = 0;
  VertexId tgt = 0;
  int64_t count = 0;

  friend bool operator==(const ObjectiveGroup&, const ObjectiveGroup&) =
      default;
};

class Game {
 public:
  // Symmetric game: all `n` players go from `src` to `tgt`.
  static Game Symmetric(TimedNetwork network, int n, VertexId src,
                        VertexId tgt);
  // Asymmetric game; players are numbered group by group in the given order.
  // Throws std::invalid_argument if the counts do not sum to `n`.
  static Game Asymmetric(TimedNetwork network, int n,
                         std::vector<ObjectiveGroup> groups);

  const TimedNetwork& network() const { return network_; }
  int player_count() const { return n_; }
  bool symmetric() const { return symmetric_; }
  const std::vector<ObjectiveGroup>& groups() const { return groups_; }

  VertexId src(int player) const { return src_.at(player); }
  VertexId tgt(int player) const { return tgt_.at(player); }

  friend bool operator==(const Game&, const Game&) = default;

 private:
  TimedNetwork network_;
  int n_ = 0;
  bool symmetric_ = true;
  std::vector<ObjectiveGroup> groups_;
  std::vector<VertexId> src_;
  std::vector<VertexId> tgt_;
};

struct GameBounds {
  Date max_int = 0;      // largest finite guard constant (0 if none)
  int64_t max_cost = 0;  // max over vertices of wgt(v)(n)
  Date max_time = 0;     // max_cost * (max_int + |V|)
};

GameBounds ComputeBounds(const Game& game);

// Parses the line-oriented game format:
//   players <n>
//   vertex <name> affine <a> <b> | vertex <name> table <w1> ... <wk>
//   edge <from> <to> <lo>..<hi|inf> [<lo>..<hi|inf> ...]
//   objective all <src> <tgt> | objective count <src> <tgt> <m>
// '#' starts a comment. Throws ParseError.
Game ParseGame(std::string_view text);
Game LoadGameFile(const std::string& path);
// Canonical rendering; ParseGame(RenderGame(g)) == g.
std::string RenderGame(const Game& game);

struct Violation {
  enum class Kind { kUnreachableTarget, kBlocking, kWeight };
  Kind kind;
  VertexId vertex = 0;
  Date date = 0;
  int player = -1;
  std::string message;
};

// Checks target reachability for every player, the non-blocking condition for
// every (vertex, date <= MaxTime + 1), and weight positivity. An empty result
// means the game is valid.
std::vector<Violation> Validate(const Game& game);

}  // namespace tng

#endif  // TNG_MODEL_H_
