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

// Blind strategies, the congestion potential and best-response dynamics.
//
// A blind strategy is a trajectory. Profiles are stored truncated at each
// player's first target visit; afterwards every player follows the canonical
// continuation of FiniteGame::CanonicalProposal.

#ifndef TNG_EQUILIBRIA_H_
#define TNG_EQUILIBRIA_H_

#include <cstdint>
#include <vector>

#include "tng/cost.h"
#include "tng/semantics.h"

namespace tng {

using BlindProfile = std::vector<Trajectory>;

// Per (vertex, date) head counts of a blind profile over dates [0, H).
// `active` counts players that have not reached their target yet.
struct Occupancy {
  int vertex_count = 0;
  Date horizon = 0;
  std::vector<int64_t> load;    // [t * vertex_count + v]
  std::vector<int64_t> active;  // [t * vertex_count + v]
  // position[i][t]: vertex of player i during [t, t+1).
  std::vector<std::vector<VertexId>> position;
  std::vector<Date> arrival;  // first target visit date per player

  int64_t Load(VertexId v, Date t) const { return load[t * vertex_count + v]; }
  int64_t Active(VertexId v, Date t) const {
    return active[t * vertex_count + v];
  }
};

struct TrajectoryEnumeration {
  // Drop self-loop steps. Waiting by a self-loop and waiting by not moving
  // yield the same occupancy, hence the same costs.
  bool skip_waiting = false;
};

// All trajectories from (src_i, 0) whose first target visit happens at a date
// <= time_cap, truncated there, in depth-first order (edges in declaration
// order, then dates ascending).
std::vector<Trajectory> EnumerateWinningTrajectories(
    const FiniteGame& fg, int player, Date time_cap,
    TrajectoryEnumeration options = {});
// First trajectory of EnumerateWinningTrajectories, without enumerating.
// Throws std::runtime_error if there is none.
Trajectory FirstWinningTrajectory(const FiniteGame& fg, int player,
                                  Date time_cap);
// min(MaxInt + |V|, H).
Date DefaultTrajectoryCap(const FiniteGame& fg);

// Throws std::invalid_argument if some trajectory is not winning.
Occupancy ComputeOccupancy(const FiniteGame& fg, const BlindProfile& profile);
std::vector<Cost> BlindCosts(const FiniteGame& fg, const BlindProfile& profile);

// Sum over (v, t), t < H, of wgt(v)(p + 1) + ... + wgt(v)(p + a), where a and
// p are the numbers of active and arrived players on v during [t, t+1).
int64_t Potential(const FiniteGame& fg, const BlindProfile& profile);

struct BestResponse {
  Trajectory trajectory;
  Cost cost = Cost::Infinite();
};

// Cheapest trajectory for `player` arriving by `arrival_cap` against the
// occupancy of the other players' trajectories; the first such trajectory in
// enumeration order.
BestResponse ComputeBestResponse(const FiniteGame& fg,
                                 const BlindProfile& profile, int player,
                                 Date arrival_cap);

struct DynamicsResult {
  BlindProfile profile;
  std::vector<Cost> costs;
  Cost sw;
  std::vector<int64_t> potential_trace;  // initial value, then one per switch
  int rounds = 0;
  bool potential_decreasing = true;
};

// Round-robin best-response dynamics from each player's first winning
// trajectory; a player switches only on a strict improvement. Throws
// std::runtime_error if a profile repeats.
DynamicsResult BestResponseDynamics(const FiniteGame& fg, Date arrival_cap);

}  // namespace tng

#endif  // TNG_EQUILIBRIA_H_
