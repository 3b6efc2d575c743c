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

// Brute-force reference solvers for tiny games. They work on concrete
// configurations and full action vectors only, sharing nothing with the
// abstractions used by the main solvers.

#ifndef TNG_ORACLE_H_
#define TNG_ORACLE_H_

#include <cstdint>
#include <random>
#include <stdexcept>
#include <vector>

#include "tng/cost.h"
#include "tng/equilibria.h"
#include "tng/semantics.h"

namespace tng {

struct EnumerationBudget {
  Date max_horizon = 12;
  int64_t max_nodes = 20'000'000;
};

// Thrown when an oracle would exceed its budget. No partial answer is given.
class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Minimum social welfare over all plays.
Cost BruteSocialOptimum(const FiniteGame& fg, const EnumerationBudget& budget);

// Max over the other players' joint actions of the min over the player's own
// actions, recursively, from `s`.
Cost BruteLowVal(const FiniteGame& fg, int player, const TimedConfiguration& s,
                 const EnumerationBudget& budget);

struct BlindEquilibrium {
  BlindProfile profile;
  std::vector<Cost> costs;
  Cost sw;
};

// Every profile of winning trajectories (arriving by `time_cap`, no self-loop
// waiting) from which no player gains by switching to another such
// trajectory. Costs are those of the resulting plays.
std::vector<BlindEquilibrium> BruteBlindEquilibria(
    const FiniteGame& fg, Date time_cap, const EnumerationBudget& budget);

// Uniformly random allowed action per player at each step until every player
// has visited their target or the clamp.
Play RandomPlay(const FiniteGame& fg, std::mt19937_64& rng);

}  // namespace tng

#endif  // TNG_ORACLE_H_
