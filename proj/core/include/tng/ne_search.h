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

// Nash-equilibrium outcomes of the finite game.
//
// A play is an equilibrium outcome iff, at every step and for every player
// still heading to their target, no single-step deviation followed by the
// coalition's punishment beats what the player gets along the play. The
// constrained search explores plays depth-first and keeps, per player, the
// tightest such bound seen so far.

#ifndef TNG_NE_SEARCH_H_
#define TNG_NE_SEARCH_H_

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "tng/cost.h"
#include "tng/punish.h"
#include "tng/semantics.h"

namespace tng {

enum class Relation { kLe, kGe, kEq, kLt, kGt };

struct LinearConstraint {
  std::vector<int64_t> coefficients;  // one per player
  Relation relation = Relation::kLe;
  int64_t bound = 0;

  bool Holds(const std::vector<int64_t>& costs) const;
};

// Parses "<c1>,<c2>,...:<rel>:<bound>" with rel one of <=, >=, =, <, > (or
// le, ge, eq, lt, gt). Throws std::invalid_argument.
LinearConstraint ParseConstraint(std::string_view text, int player_count);
std::string FormatConstraint(const LinearConstraint& c);
// sum_i c_i <= x (or >= x).
LinearConstraint SwAtMost(int player_count, int64_t x);
LinearConstraint SwAtLeast(int player_count, int64_t x);

struct NeViolation {
  int step = 0;
  int player = 0;
  Action deviation;
  Cost remaining;  // cost of the player along the play from the step on
  Cost bound;      // deviation step cost plus punishment value
};

struct NeCheck {
  bool ok = true;
  std::optional<NeViolation> violation;  // the first one, if any
};

struct NeWitness {
  Play play;
  std::vector<int64_t> costs;
  int64_t sw = 0;
};

struct Ratio {
  int64_t num = 0;
  int64_t den = 1;

  std::string ToString() const;
  friend bool operator==(const Ratio&, const Ratio&) = default;
};
Ratio MakeRatio(int64_t num, int64_t den);
// a/b <= c/d for positive denominators.
bool RatioLessEq(const Ratio& a, const Ratio& b);

class NeSolver {
 public:
  explicit NeSolver(const FiniteGame& fg);
  ~NeSolver();
  NeSolver(const NeSolver&) = delete;
  NeSolver& operator=(const NeSolver&) = delete;

  const FiniteGame& game() const { return *fg_; }
  LowValSolver& lowval(int player) { return *lowval_.at(player); }

  // Fills the punishment tables of all players from the initial state using
  // up to `jobs` threads. Results do not depend on `jobs`.
  void Precompute(int jobs);

  // Throws std::invalid_argument if `p` is not a complete play (it must end
  // with every player on their target or in the H+1 clamp).
  NeCheck CheckOutcome(const Play& p);

  // First equilibrium outcome, in search order, with finite costs satisfying
  // every constraint.
  std::optional<NeWitness> ConstrainedNe(
      const std::vector<LinearConstraint>& constraints);

  std::optional<int64_t> BestSw();
  std::optional<int64_t> WorstSw();
  // Upper end of the binary searches: n * max(MaxTime, H * MaxCost).
  int64_t SwUpperBound() const;

  int64_t nodes_explored() const { return nodes_; }

 private:
  struct Search;

  // Tightest bound on player i's remaining cost imposed at state s when the
  // other players' effective move is b.
  Cost Bound(int player, const PunishState& ps, const CoalitionMove& b);
  // Unique mover: the other players' proposals are free; returns the best
  // bound over their effective moves later than m, and that move.
  std::pair<Cost, CoalitionMove> LooseBound(int player, const PunishState& ps,
                                            Date m);

  const FiniteGame* fg_;
  std::vector<std::unique_ptr<LowValSolver>> lowval_;
  std::vector<std::vector<Cost>> lower_;  // [player][date * |V| + v]
  std::map<std::vector<int64_t>, Cost> bound_cache_;
  std::map<std::vector<int64_t>, std::pair<Cost, CoalitionMove>> loose_cache_;
  int64_t nodes_ = 0;
};

std::optional<Ratio> PriceOfAnarchy(NeSolver& solver, Cost social_optimum);
std::optional<Ratio> PriceOfStability(NeSolver& solver, Cost social_optimum);

}  // namespace tng

#endif  // TNG_NE_SEARCH_H_
