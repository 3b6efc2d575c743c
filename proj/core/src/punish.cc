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

#include "tng/punish.h"

#include <algorithm>
#include <functional>
#include <stdexcept>
#include <unordered_map>

namespace tng {
namespace {

using Key = std::vector<int64_t>;

struct KeyHash {
  size_t operator()(const Key& k) const {
    uint64_t h = 1469598103934665603ULL;
    for (int64_t x : k) {
      h ^= static_cast<uint64_t>(x) + 0x9e3779b97f4a7c15ULL + (h << 6) +
           (h >> 2);
    }
    return static_cast<size_t>(h);
  }
};

Key Encode(const PunishState& s) {
  Key k;
  k.reserve(s.others.size() + 2);
  k.push_back(s.my_vertex);
  k.push_back(s.date);
  k.insert(k.end(), s.others.begin(), s.others.end());
  return k;
}

PunishState Decode(const Key& k) {
  PunishState s;
  s.my_vertex = static_cast<VertexId>(k[0]);
  s.date = k[1];
  s.others.assign(k.begin() + 2, k.end());
  return s;
}

void Compositions(int64_t total, int k, std::vector<std::vector<int64_t>>& out) {
  std::vector<int64_t> cur(k, 0);
  std::function<void(int, int64_t)> rec = [&](int idx, int64_t left) {
    if (idx == k - 1) {
      cur[idx] = left;
      out.push_back(cur);
      return;
    }
    for (int64_t x = left; x >= 0; --x) {
      cur[idx] = x;
      rec(idx + 1, left - x);
    }
  };
  if (k > 0) rec(0, total);
}

}  // namespace

struct LowValSolver::Cache {
  std::unordered_map<Key, Cost, KeyHash> values;
};

LowValSolver::LowValSolver(const FiniteGame& fg, int player,
                           PunishOptions options)
    : fg_(&fg),
      player_(player),
      options_(std::move(options)),
      cache_(std::make_shared<Cache>()) {
  if (player < 0 || player >= fg.player_count()) {
    throw std::invalid_argument("player index out of range");
  }
}

PunishState LowValSolver::Abstract(const TimedConfiguration& s) const {
  PunishState ps;
  ps.my_vertex = s.positions.at(player_);
  ps.date = s.date;
  ps.others.assign(fg_->network().vertex_count(), 0);
  for (int j = 0; j < static_cast<int>(s.positions.size()); ++j) {
    if (j != player_) ++ps.others[s.positions[j]];
  }
  return ps;
}

std::vector<CoalitionMove> LowValSolver::CoalitionMoves(
    const PunishState& s) const {
  const TimedNetwork& net = fg_->network();
  const Date h = fg_->horizon();
  std::vector<CoalitionMove> out;
  int64_t members = 0;
  for (int64_t c : s.others) members += c;
  if (members == 0) {
    out.push_back(CoalitionMove{kUnbounded, {}});
  } else if (s.date >= h) {
    out.push_back(CoalitionMove{h + 1, {}});
  } else {
    const Date d = s.date;
    Date limit = kUnbounded;
    for (VertexId v = 0; v < net.vertex_count(); ++v) {
      if (s.others[v] > 0) limit = std::min(limit, fg_->LatestProposal(v, d));
    }
    for (Date m = d + 1; m <= std::min(h, limit); ++m) {
      std::vector<std::vector<std::pair<VertexId, VertexId>>> partial(1);
      bool feasible = true;
      for (VertexId v = 0; v < net.vertex_count() && feasible; ++v) {
        if (s.others[v] == 0) continue;
        std::vector<VertexId> dests;
        for (int ei : net.out_edges(v)) {
          const Edge& e = net.edges()[ei];
          if (e.guard.Contains(m)) dests.push_back(e.to);
        }
        const bool can_stay = fg_->LatestProposal(v, d) > m;
        const int k = static_cast<int>(dests.size()) + (can_stay ? 1 : 0);
        if (k == 0) {
          feasible = false;
          break;
        }
        std::vector<std::vector<int64_t>> splits;
        Compositions(s.others[v], k, splits);
        std::vector<std::vector<std::pair<VertexId, VertexId>>> next;
        for (const auto& p : partial) {
          for (const auto& sp : splits) {
            auto q = p;
            for (size_t c = 0; c < dests.size(); ++c) {
              for (int64_t x = 0; x < sp[c]; ++x) q.emplace_back(v, dests[c]);
            }
            next.push_back(std::move(q));
          }
        }
        partial = std::move(next);
      }
      if (!feasible) continue;
      for (auto& mv : partial) {
        if (mv.empty()) continue;
        std::sort(mv.begin(), mv.end());
        out.push_back(CoalitionMove{m, std::move(mv)});
      }
    }
    if (limit == h + 1) out.push_back(CoalitionMove{h + 1, {}});
  }
  if (options_.coalition_filter) {
    std::vector<CoalitionMove> kept;
    for (auto& b : out) {
      if (options_.coalition_filter(s, b)) kept.push_back(std::move(b));
    }
    if (kept.empty()) {
      throw std::logic_error("coalition filter removed every move");
    }
    out = std::move(kept);
  }
  return out;
}

std::vector<Action> LowValSolver::DeviatorActions(const PunishState& s) const {
  std::vector<Action> acts = fg_->AllowedAt(s.my_vertex, s.date);
  if (options_.deviator_filter) {
    std::vector<Action> kept;
    for (const Action& a : acts) {
      if (options_.deviator_filter(s, a)) kept.push_back(a);
    }
    acts = std::move(kept);
  }
  return acts;
}

PunishStep LowValSolver::Step(const PunishState& s, const CoalitionMove& b,
                              const Action& a) const {
  const Date h = fg_->horizon();
  const Date m = std::min(a.date, b.date);
  PunishStep st;
  st.next = s;
  if (m > h) {
    st.next.date = h + 1;
    st.cost = Cost(0);
    st.clamp = true;
    return st;
  }
  const int64_t load = s.others[s.my_vertex] + 1;
  st.cost = Cost((m - s.date) * fg_->network().weight(s.my_vertex).Eval(load));
  st.next.date = m;
  if (a.date == m) st.next.my_vertex = a.vertex;
  if (b.date == m) {
    for (const auto& [from, to] : b.moves) {
      --st.next.others[from];
      ++st.next.others[to];
    }
  }
  return st;
}

Cost LowValSolver::Respond(const PunishState& s, const CoalitionMove& b) {
  Cost best = Cost::Infinite();
  for (const Action& a : DeviatorActions(s)) {
    PunishStep st = Step(s, b, a);
    best = std::min(best, st.cost + Value(st.next));
  }
  return best;
}

Action LowValSolver::BestDeviatorAction(const PunishState& s,
                                        const CoalitionMove& b) {
  const Cost target = Respond(s, b);
  for (const Action& a : DeviatorActions(s)) {
    PunishStep st = Step(s, b, a);
    if (st.cost + Value(st.next) == target) return a;
  }
  throw std::logic_error("deviator has no action");
}

CoalitionMove LowValSolver::PunishingMove(const PunishState& s) {
  const Cost target = Value(s);
  for (const CoalitionMove& b : CoalitionMoves(s)) {
    if (Respond(s, b) == target) return b;
  }
  throw std::logic_error("coalition has no move");
}

Cost LowValSolver::Value(const PunishState& s) {
  if (s.my_vertex == fg_->game().tgt(player_)) return Cost(0);
  const Date h = fg_->horizon();
  if (s.date >= h) return Cost::Infinite();
  Key key = Encode(s);
  if (auto it = cache_->values.find(key); it != cache_->values.end()) {
    return it->second;
  }
  const std::vector<Action> acts = DeviatorActions(s);
  const int64_t load = s.others[s.my_vertex] + 1;
  const int64_t rate = fg_->network().weight(s.my_vertex).Eval(load);

  // Deviator moving strictly before the coalition: independent of the move.
  std::vector<std::pair<Date, Cost>> alone;
  Date latest = -1;
  for (const Action& a : acts) {
    latest = std::max(latest, a.date);
    Cost c = Cost::Infinite();
    if (a.date <= h) {
      PunishState next = s;
      next.my_vertex = a.vertex;
      next.date = a.date;
      c = Cost((a.date - s.date) * rate) + Value(next);
    }
    alone.emplace_back(a.date, c);
  }
  std::sort(alone.begin(), alone.end());
  std::vector<Cost> prefix_min(alone.size() + 1, Cost::Infinite());
  for (size_t k = 0; k < alone.size(); ++k) {
    prefix_min[k + 1] = std::min(prefix_min[k], alone[k].second);
  }

  std::optional<Cost> best;
  for (const CoalitionMove& b : CoalitionMoves(s)) {
    const Date m = b.date;
    const size_t before =
        std::lower_bound(alone.begin(), alone.end(),
                         std::make_pair(m, Cost(0))) -
        alone.begin();
    Cost r = prefix_min[before];
    if (m <= h) {
      PunishState moved = s;
      moved.date = m;
      for (const auto& [from, to] : b.moves) {
        --moved.others[from];
        ++moved.others[to];
      }
      const Cost step = Cost((m - s.date) * rate);
      for (const Action& a : acts) {
        if (a.date != m) continue;
        PunishState next = moved;
        next.my_vertex = a.vertex;
        r = std::min(r, step + Value(next));
      }
      if (latest > m) r = std::min(r, step + Value(moved));
    }
    if (!best || r > *best) best = r;
  }
  cache_->values.emplace(std::move(key), *best);
  return *best;
}

std::vector<std::pair<PunishState, Cost>> LowValSolver::Table() const {
  std::vector<std::pair<PunishState, Cost>> out;
  out.reserve(cache_->values.size());
  for (const auto& [k, v] : cache_->values) out.emplace_back(Decode(k), v);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<CoalitionProposal> EnumerateCoalitionMoves(const FiniteGame& fg,
                                                       const PunishState& s) {
  std::vector<CoalitionProposal> out(1);
  for (VertexId v = 0; v < static_cast<VertexId>(s.others.size()); ++v) {
    const int64_t k = s.others[v];
    if (k == 0) continue;
    const std::vector<Action> acts = fg.AllowedAt(v, s.date);
    std::vector<std::vector<size_t>> multisets;
    std::vector<size_t> cur;
    std::function<void(size_t)> rec = [&](size_t from) {
      if (static_cast<int64_t>(cur.size()) == k) {
        multisets.push_back(cur);
        return;
      }
      for (size_t j = from; j < acts.size(); ++j) {
        cur.push_back(j);
        rec(j);
        cur.pop_back();
      }
    };
    rec(0);
    std::vector<CoalitionProposal> next;
    for (const CoalitionProposal& p : out) {
      for (const auto& ms : multisets) {
        CoalitionProposal q = p;
        for (size_t j : ms) q.proposals.emplace_back(v, acts[j]);
        next.push_back(std::move(q));
      }
    }
    out = std::move(next);
  }
  for (CoalitionProposal& p : out) {
    std::sort(p.proposals.begin(), p.proposals.end());
  }
  return out;
}

CoalitionMove EffectiveMove(const FiniteGame& fg,
                            const CoalitionProposal& proposal) {
  CoalitionMove b;
  if (proposal.proposals.empty()) return b;
  b.date = kUnbounded;
  for (const auto& [from, a] : proposal.proposals) b.date = std::min(b.date, a.date);
  if (b.date > fg.horizon()) return b;
  for (const auto& [from, a] : proposal.proposals) {
    if (a.date == b.date) b.moves.emplace_back(from, a.vertex);
  }
  std::sort(b.moves.begin(), b.moves.end());
  return b;
}

CoalitionMove EffectiveMove(const FiniteGame& fg, const TimedConfiguration& s,
                            const std::vector<Action>& actions, int deviator) {
  CoalitionProposal p;
  for (int j = 0; j < static_cast<int>(actions.size()); ++j) {
    if (j != deviator) p.proposals.emplace_back(s.positions[j], actions[j]);
  }
  std::sort(p.proposals.begin(), p.proposals.end());
  return EffectiveMove(fg, p);
}

std::vector<Action> ConcretizeCoalitionMove(const FiniteGame& fg,
                                            const TimedConfiguration& s,
                                            int deviator,
                                            const CoalitionMove& b) {
  const int n = fg.player_count();
  std::vector<Action> out(n);
  std::vector<char> assigned(n, 0);
  assigned[deviator] = 1;
  for (const auto& [from, to] : b.moves) {
    bool placed = false;
    for (int j = 0; j < n && !placed; ++j) {
      if (assigned[j] || s.positions[j] != from) continue;
      out[j] = Action{to, b.date};
      assigned[j] = 1;
      placed = true;
    }
    if (!placed) throw std::invalid_argument("coalition move does not fit");
  }
  for (int j = 0; j < n; ++j) {
    if (assigned[j]) continue;
    bool placed = false;
    for (const Action& a : fg.AllowedAt(s.positions[j], s.date)) {
      const bool ok = b.date > fg.horizon() ? a.date == fg.horizon() + 1
                                            : a.date > b.date;
      if (ok) {
        out[j] = a;
        placed = true;
        break;
      }
    }
    if (!placed) throw std::invalid_argument("coalition member cannot wait");
  }
  return out;
}

}  // namespace tng
