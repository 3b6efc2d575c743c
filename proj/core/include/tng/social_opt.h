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

// Social optimum: least total cost over all plays of the finite game.
//
// The asymmetric search runs uniform-cost search over (positions, date,
// players done). The symmetric search runs over the count abstraction
// (active players per vertex, players already done per vertex, date), whose
// edge weight only depends on the source node and the elapsed time.

#ifndef TNG_SOCIAL_OPT_H_
#define TNG_SOCIAL_OPT_H_

#include <cstdint>
#include <vector>

#include "tng/cost.h"
#include "tng/semantics.h"

namespace tng {

struct SocialOptimum {
  Cost value = Cost::Infinite();
  Play witness;        // empty when value is infinite
  Date date_cap = 0;   // dates explored: min(bound, horizon)
  int64_t expanded = 0;
};

struct AbstractNode {
  std::vector<int64_t> active;   // P_A, indexed by vertex
  std::vector<int64_t> winning;  // P_W, indexed by vertex
  Date date = 0;

  friend auto operator<=>(const AbstractNode&, const AbstractNode&) = default;
};

struct AbstractEdge {
  AbstractNode from;
  AbstractNode to;
  std::vector<int64_t> flow_active;   // b_A, indexed by edge
  std::vector<int64_t> flow_winning;  // b_W, indexed by edge
  int64_t weight = 0;
};

struct SymmetricOptimum {
  Cost value = Cost::Infinite();
  std::vector<AbstractEdge> path;
  Play witness;  // the abstract path lifted to a concrete play
  Date date_cap = 0;
  int64_t expanded = 0;
};

// Minimum social welfare over plays whose social welfare is at most `bound`
// (infinite if there is none).
SocialOptimum SocialOptimumAsymmetric(const FiniteGame& fg, Cost bound);
// Same value via the count abstraction. Throws std::invalid_argument if the
// game is not symmetric.
SymmetricOptimum SocialOptimumSymmetric(const FiniteGame& fg, Cost bound);

// Abstract successor edges of `node` (for a symmetric game) in the search's
// enumeration order, one per distinct successor node. Dates are capped at
// `date_cap`.
std::vector<AbstractEdge> AbstractSuccessors(const FiniteGame& fg,
                                             const AbstractNode& node,
                                             Date date_cap);
// Concrete play realizing an abstract path; players are assigned to flows in
// index order.
Play LiftAbstractPath(const FiniteGame& fg,
                      const std::vector<AbstractEdge>& path);

// True iff some play has social welfare at most x.
bool ConstrainedSw(const FiniteGame& fg, int64_t x);

// Dispatches to the symmetric search for symmetric games.
Cost SocialOptimumValue(const FiniteGame& fg);

}  // namespace tng

#endif  // TNG_SOCIAL_OPT_H_
