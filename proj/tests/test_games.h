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

// Shared helpers for the test binaries: fixture paths and a generator of
// small random games.

#ifndef TNG_TESTS_TEST_GAMES_H_
#define TNG_TESTS_TEST_GAMES_H_

#include <algorithm>
#include <random>
#include <string>
#include <vector>

#include "tng/model.h"
#include "tng/semantics.h"

namespace tng::testing {

inline std::string FixturePath(const std::string& name) {
  return std::string(TNG_FIXTURE_DIR) + "/" + name;
}

struct RandomGameOptions {
  int max_players = 3;
  int max_vertices = 4;
  Date horizon = 5;
  bool symmetric_only = false;
};

// Targets are absorbing (a single always-open self-loop) and every source
// has a direct edge to its target open at some date in [1, horizon], so every
// player has a winning trajectory within the horizon.
inline Game RandomGame(std::mt19937_64& rng, const RandomGameOptions& o) {
  auto uniform = [&](int64_t lo, int64_t hi) {
    return std::uniform_int_distribution<int64_t>(lo, hi)(rng);
  };
  const int n = static_cast<int>(uniform(1, o.max_players));
  const int nv = static_cast<int>(uniform(2, o.max_vertices));
  TimedNetwork net;
  for (int v = 0; v < nv; ++v) {
    if (uniform(0, 4) == 0) {
      std::vector<int64_t> table;
      for (int k = 0; k < n; ++k) table.push_back(uniform(1, 5));
      std::sort(table.begin(), table.end());
      net.AddVertex("v" + std::to_string(v), WeightFn::Table(table));
    } else {
      net.AddVertex("v" + std::to_string(v),
                    WeightFn::Affine(uniform(0, 3), uniform(1, 3)));
    }
  }
  const bool symmetric = o.symmetric_only || nv < 3 || uniform(0, 1) == 0;
  std::vector<VertexId> targets{static_cast<VertexId>(nv - 1)};
  if (!symmetric) targets.push_back(static_cast<VertexId>(nv - 2));
  auto is_target = [&](VertexId v) {
    for (VertexId t : targets) {
      if (t == v) return true;
    }
    return false;
  };
  auto random_guard = [&]() {
    std::vector<Interval> parts;
    const int k = static_cast<int>(uniform(1, 2));
    for (int j = 0; j < k; ++j) {
      const Date lo = uniform(0, o.horizon);
      if (uniform(0, 5) == 0) {
        parts.push_back({lo, kUnbounded});
      } else {
        parts.push_back({lo, lo + uniform(0, 2)});
      }
    }
    return Guard::Normalize(parts);
  };
  std::vector<ObjectiveGroup> groups;
  if (symmetric) {
    groups.push_back({0, targets[0], n});
  } else {
    for (int i = 0; i < n; ++i) {
      const VertexId src = static_cast<VertexId>(uniform(0, nv - 3));
      const VertexId tgt = targets[uniform(0, 1)];
      groups.push_back({src, tgt, 1});
    }
  }
  for (VertexId u = 0; u < nv; ++u) {
    if (is_target(u)) continue;
    for (VertexId w = 0; w < nv; ++w) {
      if (uniform(0, 2) == 0) net.AddEdge(u, w, random_guard());
    }
  }
  for (const ObjectiveGroup& g : groups) {
    const Date d = uniform(1, o.horizon);
    net.AddEdge(g.src, g.tgt, Guard::Normalize({{d, d + uniform(0, 1)}}));
  }
  for (VertexId t : targets) net.AddEdge(t, t, Guard::Always());
  if (symmetric) return Game::Symmetric(std::move(net), n, 0, targets[0]);
  return Game::Asymmetric(std::move(net), n, groups);
}

}  // namespace tng::testing

#endif  // TNG_TESTS_TEST_GAMES_H_
