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

#include "tng/equilibria.h"

#include <algorithm>
#include <functional>
#include <set>
#include <stdexcept>

namespace tng {
namespace {

// reach[v][d]: the target of `player` is reachable from (v, d) by date cap.
std::vector<std::vector<char>> Reachability(const FiniteGame& fg, int player,
                                            Date cap) {
  const TimedNetwork& net = fg.network();
  const VertexId tgt = fg.game().tgt(player);
  std::vector<std::vector<char>> reach(net.vertex_count(),
                                       std::vector<char>(cap + 1, 0));
  for (Date d = cap; d >= 0; --d) {
    for (VertexId v = 0; v < net.vertex_count(); ++v) {
      if (v == tgt) {
        reach[v][d] = 1;
        continue;
      }
      for (int ei : net.out_edges(v)) {
        const Edge& e = net.edges()[ei];
        for (Date d2 = d + 1; d2 <= cap && !reach[v][d]; ++d2) {
          if (e.guard.Contains(d2) && reach[e.to][d2]) reach[v][d] = 1;
        }
        if (reach[v][d]) break;
      }
    }
  }
  return reach;
}

}  // namespace

Date DefaultTrajectoryCap(const FiniteGame& fg) {
  return std::min<Date>(
      fg.bounds().max_int + fg.network().vertex_count(), fg.horizon());
}

std::vector<Trajectory> EnumerateWinningTrajectories(
    const FiniteGame& fg, int player, Date time_cap,
    TrajectoryEnumeration options) {
  time_cap = std::min(time_cap, fg.horizon());
  const TimedNetwork& net = fg.network();
  const VertexId tgt = fg.game().tgt(player);
  std::vector<Trajectory> out;
  if (time_cap < 0) return out;
  const auto reach = Reachability(fg, player, time_cap);
  Trajectory cur{{fg.game().src(player), 0}};
  std::function<void()> rec = [&]() {
    const auto [v, d] = cur.back();
    if (v == tgt) {
      out.push_back(cur);
      return;
    }
    for (int ei : net.out_edges(v)) {
      const Edge& e = net.edges()[ei];
      if (options.skip_waiting && e.to == v) continue;
      for (Date d2 = d + 1; d2 <= time_cap; ++d2) {
        if (!e.guard.Contains(d2) || !reach[e.to][d2]) continue;
        cur.push_back({e.to, d2});
        rec();
        cur.pop_back();
      }
    }
  };
  if (reach[cur[0].vertex][0]) rec();
  return out;
}

Trajectory FirstWinningTrajectory(const FiniteGame& fg, int player,
                                  Date time_cap) {
  time_cap = std::min(time_cap, fg.horizon());
  const TimedNetwork& net = fg.network();
  const VertexId tgt = fg.game().tgt(player);
  const auto reach = Reachability(fg, player, std::max<Date>(time_cap, 0));
  Trajectory t{{fg.game().src(player), 0}};
  if (time_cap < 0 || !reach[t[0].vertex][0]) {
    throw std::runtime_error("player " + std::to_string(player + 1) +
                             " has no winning trajectory by date " +
                             std::to_string(time_cap));
  }
  while (t.back().vertex != tgt) {
    const auto [v, d] = t.back();
    bool stepped = false;
    for (int ei : net.out_edges(v)) {
      const Edge& e = net.edges()[ei];
      for (Date d2 = d + 1; d2 <= time_cap && !stepped; ++d2) {
        if (e.guard.Contains(d2) && reach[e.to][d2]) {
          t.push_back({e.to, d2});
          stepped = true;
        }
      }
      if (stepped) break;
    }
  }
  return t;
}

Occupancy ComputeOccupancy(const FiniteGame& fg, const BlindProfile& profile) {
  const int n = fg.player_count();
  const Date h = fg.horizon();
  Occupancy occ;
  occ.vertex_count = fg.network().vertex_count();
  occ.horizon = h;
  occ.load.assign(h * occ.vertex_count, 0);
  occ.active.assign(h * occ.vertex_count, 0);
  occ.position.assign(n, std::vector<VertexId>(h, 0));
  occ.arrival.assign(n, 0);
  if (static_cast<int>(profile.size()) != n) {
    throw std::invalid_argument("one trajectory per player is required");
  }
  for (int i = 0; i < n; ++i) {
    fg.CheckWinningTrajectory(i, profile[i]);
    const Trajectory cut = fg.TruncateAtTarget(i, profile[i]);
    occ.arrival[i] = cut.back().date;
    const Trajectory full = fg.CanonicalExtension(cut);
    size_t k = 0;
    for (Date t = 0; t < h; ++t) {
      while (k + 1 < full.size() && full[k + 1].date <= t) ++k;
      const VertexId v = full[k].vertex;
      occ.position[i][t] = v;
      ++occ.load[t * occ.vertex_count + v];
      if (t < occ.arrival[i]) ++occ.active[t * occ.vertex_count + v];
    }
  }
  return occ;
}

std::vector<Cost> BlindCosts(const FiniteGame& fg, const BlindProfile& profile) {
  const Occupancy occ = ComputeOccupancy(fg, profile);
  const TimedNetwork& net = fg.network();
  std::vector<Cost> out;
  for (int i = 0; i < fg.player_count(); ++i) {
    int64_t c = 0;
    for (Date t = 0; t < occ.arrival[i]; ++t) {
      const VertexId v = occ.position[i][t];
      c += net.weight(v).Eval(occ.Load(v, t));
    }
    out.push_back(Cost(c));
  }
  return out;
}

int64_t Potential(const FiniteGame& fg, const BlindProfile& profile) {
  const Occupancy occ = ComputeOccupancy(fg, profile);
  const TimedNetwork& net = fg.network();
  int64_t psi = 0;
  for (Date t = 0; t < occ.horizon; ++t) {
    for (VertexId v = 0; v < occ.vertex_count; ++v) {
      const int64_t a = occ.Active(v, t);
      const int64_t p = occ.Load(v, t) - a;
      for (int64_t k = 1; k <= a; ++k) psi += net.weight(v).Eval(p + k);
    }
  }
  return psi;
}

BestResponse ComputeBestResponse(const FiniteGame& fg,
                                 const BlindProfile& profile, int player,
                                 Date arrival_cap) {
  const TimedNetwork& net = fg.network();
  const int nv = net.vertex_count();
  const Date h = fg.horizon();
  const Date cap = std::min(arrival_cap, h);
  const VertexId src = fg.game().src(player), tgt = fg.game().tgt(player);
  BestResponse best;
  if (src == tgt) {
    best.trajectory = {{src, 0}};
    best.cost = Cost(0);
    return best;
  }
  const Occupancy occ = ComputeOccupancy(fg, profile);
  // prefix[v][t] = sum over u < t of wgt(v)(others on v during [u,u+1) + 1).
  std::vector<std::vector<int64_t>> prefix(nv, std::vector<int64_t>(h + 1, 0));
  for (VertexId v = 0; v < nv; ++v) {
    for (Date t = 0; t < h; ++t) {
      const int64_t others =
          occ.Load(v, t) - (occ.position[player][t] == v ? 1 : 0);
      prefix[v][t + 1] = prefix[v][t] + net.weight(v).Eval(others + 1);
    }
  }
  std::vector<std::vector<Cost>> value(nv,
                                       std::vector<Cost>(cap + 1, Cost::Infinite()));
  for (Date d = cap; d >= 0; --d) {
    for (VertexId v = 0; v < nv; ++v) {
      if (v == tgt) {
        value[v][d] = Cost(0);
        continue;
      }
      Cost b = Cost::Infinite();
      for (int ei : net.out_edges(v)) {
        const Edge& e = net.edges()[ei];
        for (Date d2 = d + 1; d2 <= cap; ++d2) {
          if (!e.guard.Contains(d2) || value[e.to][d2].IsInfinite()) continue;
          b = std::min(b, Cost(prefix[v][d2] - prefix[v][d]) + value[e.to][d2]);
        }
      }
      value[v][d] = b;
    }
  }
  best.cost = value[src][0];
  if (best.cost.IsInfinite()) return best;
  best.trajectory = {{src, 0}};
  while (best.trajectory.back().vertex != tgt) {
    const auto [v, d] = best.trajectory.back();
    bool stepped = false;
    for (int ei : net.out_edges(v)) {
      const Edge& e = net.edges()[ei];
      for (Date d2 = d + 1; d2 <= cap && !stepped; ++d2) {
        if (!e.guard.Contains(d2) || value[e.to][d2].IsInfinite()) continue;
        if (Cost(prefix[v][d2] - prefix[v][d]) + value[e.to][d2] ==
            value[v][d]) {
          best.trajectory.push_back({e.to, d2});
          stepped = true;
        }
      }
      if (stepped) break;
    }
  }
  return best;
}

DynamicsResult BestResponseDynamics(const FiniteGame& fg, Date arrival_cap) {
  const int n = fg.player_count();
  DynamicsResult r;
  for (int i = 0; i < n; ++i) {
    r.profile.push_back(FirstWinningTrajectory(fg, i, arrival_cap));
  }
  r.potential_trace.push_back(Potential(fg, r.profile));
  std::set<BlindProfile> seen{r.profile};
  for (bool improved = true; improved;) {
    improved = false;
    ++r.rounds;
    for (int i = 0; i < n; ++i) {
      const Cost current = BlindCosts(fg, r.profile)[i];
      BestResponse br = ComputeBestResponse(fg, r.profile, i, arrival_cap);
      if (!(br.cost < current)) continue;
      r.profile[i] = std::move(br.trajectory);
      improved = true;
      const int64_t psi = Potential(fg, r.profile);
      if (psi >= r.potential_trace.back()) r.potential_decreasing = false;
      r.potential_trace.push_back(psi);
      if (!seen.insert(r.profile).second) {
        throw std::runtime_error("best-response dynamics revisited a profile");
      }
    }
  }
  r.costs = BlindCosts(fg, r.profile);
  r.sw = Cost(0);
  for (Cost c : r.costs) r.sw += c;
  return r;
}

}  // namespace tng
