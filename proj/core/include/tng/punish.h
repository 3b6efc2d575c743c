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

// Punishment values: the largest cost the coalition of all other players can
// force on a deviating player who knows the coalition's strategy.
//
// The coalition is tracked by head counts per vertex. Only the earliest
// proposals of a joint action matter, so a coalition move is summarized by
// its date and the multiset of (from, to) moves made at that date.

#ifndef TNG_PUNISH_H_
#define TNG_PUNISH_H_

#include <compare>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <utility>
#include <vector>

#include "tng/cost.h"
#include "tng/semantics.h"

namespace tng {

struct PunishState {
  VertexId my_vertex = 0;
  std::vector<int64_t> others;  // coalition head count per vertex
  Date date = 0;

  friend auto operator<=>(const PunishState&, const PunishState&) = default;
};

struct CoalitionMove {
  // Earliest coalition proposal; kUnbounded for an empty coalition and H+1
  // when every member proposes H+1.
  Date date = kUnbounded;
  std::vector<std::pair<VertexId, VertexId>> moves;  // sorted (from, to)

  friend auto operator<=>(const CoalitionMove&, const CoalitionMove&) =
      default;
};

// A full joint proposal of the coalition: one (from, action) per member,
// sorted.
struct CoalitionProposal {
  std::vector<std::pair<VertexId, Action>> proposals;

  friend auto operator<=>(const CoalitionProposal&,
                          const CoalitionProposal&) = default;
};

struct PunishOptions {
  // Deviator actions failing the filter are removed.
  std::function<bool(const PunishState&, const Action&)> deviator_filter;
  // Coalition moves failing the filter are removed; at least one move must
  // remain in every state.
  std::function<bool(const PunishState&, const CoalitionMove&)>
      coalition_filter;
};

struct PunishStep {
  PunishState next;
  Cost cost;  // the deviator's step cost
  bool clamp = false;
};

// Backward-induction solver for one deviating player. Values are memoized;
// the solver is not safe for concurrent use, but distinct solvers are
// independent.
class LowValSolver {
 public:
  LowValSolver(const FiniteGame& fg, int player, PunishOptions options = {});

  int player() const { return player_; }
  const FiniteGame& game() const { return *fg_; }

  PunishState Abstract(const TimedConfiguration& s) const;
  Cost Value(const PunishState& s);
  Cost Value(const TimedConfiguration& s) { return Value(Abstract(s)); }

  // Coalition moves available in `s`, dates ascending.
  std::vector<CoalitionMove> CoalitionMoves(const PunishState& s) const;
  std::vector<Action> DeviatorActions(const PunishState& s) const;
  PunishStep Step(const PunishState& s, const CoalitionMove& b,
                  const Action& a) const;

  // min over deviator actions of step cost plus value of the successor.
  Cost Respond(const PunishState& s, const CoalitionMove& b);
  // First deviator action attaining Respond.
  Action BestDeviatorAction(const PunishState& s, const CoalitionMove& b);
  // First coalition move attaining Value.
  CoalitionMove PunishingMove(const PunishState& s);

  // Memoized entries in increasing state order.
  std::vector<std::pair<PunishState, Cost>> Table() const;

 private:
  struct Cache;

  const FiniteGame* fg_;
  int player_;
  PunishOptions options_;
  std::shared_ptr<Cache> cache_;
};

// Every joint proposal of the coalition in `s`: for each vertex holding k
// members, all multisets of k allowed actions.
std::vector<CoalitionProposal> EnumerateCoalitionMoves(const FiniteGame& fg,
                                                       const PunishState& s);
CoalitionMove EffectiveMove(const FiniteGame& fg,
                            const CoalitionProposal& proposal);
// Coalition move made by the players other than `deviator` in an action
// vector.
CoalitionMove EffectiveMove(const FiniteGame& fg, const TimedConfiguration& s,
                            const std::vector<Action>& actions, int deviator);
// Concrete actions realizing `b` for every player but `deviator` (whose slot
// is left as a default Action). Members are assigned to moves in index order;
// the rest propose their first allowed action later than the move date.
std::vector<Action> ConcretizeCoalitionMove(const FiniteGame& fg,
                                            const TimedConfiguration& s,
                                            int deviator,
                                            const CoalitionMove& b);

}  // namespace tng

#endif  // TNG_PUNISH_H_
