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

// Concurrent-game semantics of a timed network game truncated at a horizon H.
// From a timed configuration every player proposes a dated move; the players
// proposing the earliest date move, and everybody pays elapsed time times the
// weight of the vertex they were standing on at its current load. Dates past
// H are collapsed into a single absorbing date H+1 that costs nothing.

#ifndef TNG_SEMANTICS_H_
#define TNG_SEMANTICS_H_

#include <compare>
#include <string>
#include <string_view>
#include <vector>

#include "tng/cost.h"
#include "tng/model.h"

namespace tng {

inline constexpr VertexId kBottom = -1;

struct Action {
  VertexId vertex = kBottom;
  Date date = 0;

  friend auto operator<=>(const Action&, const Action&) = default;
};

struct TimedConfiguration {
  std::vector<VertexId> positions;
  Date date = 0;

  friend auto operator<=>(const TimedConfiguration&,
                          const TimedConfiguration&) = default;
};

struct Transition {
  TimedConfiguration from;
  std::vector<Action> actions;
  TimedConfiguration to;
  std::vector<int> select;  // players proposing the minimal date
  std::vector<Cost> step_costs;
  bool clamp = false;  // the minimal date was H+1; nobody moved
};

// A finite prefix of a play. The play continues with an implicit self-loop
// once `terminal` is reached.
struct Play {
  TimedConfiguration initial;
  std::vector<Transition> transitions;

  const TimedConfiguration& terminal() const {
    return transitions.empty() ? initial : transitions.back().to;
  }
};

struct TrajectoryStep {
  VertexId vertex = 0;
  Date date = 0;

  friend auto operator<=>(const TrajectoryStep&,
                          const TrajectoryStep&) = default;
};
using Trajectory = std::vector<TrajectoryStep>;

struct CostProfile {
  std::vector<Cost> costs;
  Cost sw;
};

struct UpdateResult {
  TimedConfiguration to;
  std::vector<int> select;
  bool clamp = false;
};

// A game together with its analysis horizon. Holds a reference to the game,
// which must outlive this object.
class FiniteGame {
 public:
  // Horizon defaults to MaxTime. Throws std::invalid_argument if horizon < 1.
  explicit FiniteGame(const Game& game);
  FiniteGame(const Game& game, Date horizon);

  const Game& game() const { return *game_; }
  const TimedNetwork& network() const { return game_->network(); }
  const GameBounds& bounds() const { return bounds_; }
  Date horizon() const { return horizon_; }
  int player_count() const { return game_->player_count(); }

  TimedConfiguration Initial() const;

  // Actions available to whoever stands on `v` at date `d`: for d < H the
  // guard-consistent (v', d') with d < d' <= H+1 in edge declaration order,
  // then by date; {(bottom, H+1)} when d >= H or nothing else is available.
  std::vector<Action> AllowedAt(VertexId v, Date d) const;
  std::vector<Action> Allowed(const TimedConfiguration& s, int player) const;
  bool IsAllowedAt(VertexId v, Date d, const Action& a) const;
  // Latest date among AllowedAt(v, d). A player may stay put during a step
  // to date m iff this exceeds m.
  Date LatestProposal(VertexId v, Date d) const;

  int64_t Load(const TimedConfiguration& s, VertexId v) const;

  // Throws std::invalid_argument naming the first player whose action is not
  // allowed.
  UpdateResult Update(const TimedConfiguration& s,
                      const std::vector<Action>& actions) const;
  std::vector<Cost> StepCost(const TimedConfiguration& from,
                             const TimedConfiguration& to) const;
  Transition MakeTransition(const TimedConfiguration& s,
                            const std::vector<Action>& actions) const;

  // The fixed behaviour of a player who has already visited their target:
  // the self-loop one date later when available, otherwise the first declared
  // edge at its earliest date, otherwise bottom.
  Action CanonicalProposal(VertexId v, Date d) const;
  // Appends canonical steps after the last step while they stay <= H.
  Trajectory CanonicalExtension(Trajectory prefix) const;

  // Throws std::invalid_argument unless `t` starts at (src_i, 0), follows
  // edges with satisfied guards at strictly increasing dates <= H and visits
  // tgt_i.
  void CheckWinningTrajectory(int player, const Trajectory& t) const;
  // `t` cut right after its first visit of tgt_i.
  Trajectory TruncateAtTarget(int player, const Trajectory& t) const;

  // The unique play produced when every player follows their trajectory
  // (truncated at the first target visit, then extended canonically).
  // Stops once every player has visited their target or at the clamp.
  Play OutcomeOfBlind(const std::vector<Trajectory>& trajs) const;

  // Throws std::invalid_argument if `p` is not a play of this game.
  void CheckPlay(const Play& p) const;

 private:
  const Game* game_;
  GameBounds bounds_;
  Date horizon_;
};

// Per-player cost up to and including the first visit of tgt_i (infinite if
// never visited), and their sum.
CostProfile PlayCost(const Game& game, const Play& p);
// Dated sequence of the player's realized moves, starting at (src_i, 0).
Trajectory ProjectTrajectory(const Game& game, const Play& p, int player);
// Index of the first state of `p` (0 = initial) where the player stands on
// their target, or -1.
int FirstVisit(const Game& game, const Play& p, int player);

// Trajectory profile files: `traj <i> (<v>,<d>) ...`, one line per player,
// players numbered from 1. Throws ParseError.
std::vector<Trajectory> ParseTrajectoryProfile(const Game& game,
                                               std::string_view text);
std::vector<Trajectory> LoadTrajectoryFile(const Game& game,
                                           const std::string& path);
std::string FormatTrajectory(const Game& game, const Trajectory& t);
std::string FormatAction(const Game& game, const Action& a);
std::string FormatConfiguration(const Game& game,
                                const TimedConfiguration& s);

}  // namespace tng

#endif  // TNG_SEMANTICS_H_
