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

#include "tng/social_opt.h"

#include <algorithm>
#include <functional>
#include <map>
#include <queue>
#include <stdexcept>
#include <tuple>

namespace tng {
namespace {

Date DateCap(const FiniteGame& fg, Cost bound) {
  if (bound.IsInfinite()) return fg.horizon();
  return std::min<Date>(bound.value(), fg.horizon());
}

// First allowed action strictly later than `m`: what a player proposes when
// it should not move in a step to date m.
Action WaitingProposal(const FiniteGame& fg, VertexId v, Date d, Date m) {
  for (const Action& a : fg.AllowedAt(v, d)) {
    if (a.date > m) return a;
  }
  throw std::logic_error("no proposal later than the step date");
}

using Key = std::vector<int64_t>;

struct Parent {
  Key prev;
  std::vector<Action> actions;
};

using QueueEntry = std::tuple<int64_t, Date, Key>;
using MinQueue = std::priority_queue<QueueEntry, std::vector<QueueEntry>,
                                     std::greater<QueueEntry>>;

}  // namespace

SocialOptimum SocialOptimumAsymmetric(const FiniteGame& fg, Cost bound) {
  const Game& game = fg.game();
  const TimedNetwork& net = fg.network();
  const int n = fg.player_count();
  if (n > 62) {
    throw std::invalid_argument("asymmetric search supports at most 62 players");
  }
  SocialOptimum result;
  result.date_cap = DateCap(fg, bound);
  const uint64_t all = (uint64_t{1} << n) - 1;

  auto done_mask = [&](const std::vector<VertexId>& pos, uint64_t mask) {
    for (int i = 0; i < n; ++i) {
      if (pos[i] == game.tgt(i)) mask |= uint64_t{1} << i;
    }
    return mask;
  };
  auto make_key = [](const std::vector<VertexId>& pos, Date d, uint64_t mask) {
    Key k;
    k.reserve(pos.size() + 2);
    k.push_back(d);
    k.push_back(static_cast<int64_t>(mask));
    for (VertexId v : pos) k.push_back(v);
    return k;
  };

  const TimedConfiguration init = fg.Initial();
  const uint64_t init_mask = done_mask(init.positions, 0);
  result.witness.initial = init;
  if (init_mask == all) {
    result.value = Cost(0);
    return result;
  }
  if (bound.IsFinite() && bound.value() < 0) return result;

  std::map<Key, int64_t> best;
  std::map<Key, Parent> parent;
  MinQueue queue;
  const Key start = make_key(init.positions, 0, init_mask);
  best[start] = 0;
  queue.emplace(0, 0, start);
  std::optional<Key> goal;

  while (!queue.empty()) {
    auto [g, d, key] = queue.top();
    queue.pop();
    if (best[key] < g) continue;
    ++result.expanded;
    const uint64_t mask = static_cast<uint64_t>(key[1]);
    if (mask == all) {
      goal = key;
      result.value = Cost(g);
      break;
    }
    std::vector<VertexId> pos(key.begin() + 2, key.end());
    std::vector<int64_t> load(net.vertex_count(), 0);
    for (VertexId v : pos) ++load[v];
    int64_t rate = 0;
    Date limit = kUnbounded;
    for (int i = 0; i < n; ++i) {
      if (!(mask >> i & 1)) rate += net.weight(pos[i]).Eval(load[pos[i]]);
      limit = std::min(limit, fg.LatestProposal(pos[i], d));
    }
    const Date last = std::min(result.date_cap, limit);
    for (Date m = d + 1; m <= last; ++m) {
      const int64_t g2 = g + (m - d) * rate;
      if (bound.IsFinite() && g2 > bound.value()) break;
      // Per-player options: destinations in edge order, then staying (-1).
      std::vector<std::vector<VertexId>> options(n);
      bool feasible = true;
      for (int i = 0; i < n; ++i) {
        for (int ei : net.out_edges(pos[i])) {
          const Edge& e = net.edges()[ei];
          if (e.guard.Contains(m)) options[i].push_back(e.to);
        }
        if (fg.LatestProposal(pos[i], d) > m) options[i].push_back(-1);
        if (options[i].empty()) feasible = false;
      }
      if (!feasible) continue;
      std::vector<size_t> pick(n, 0);
      for (;;) {
        bool any_move = false;
        std::vector<VertexId> next = pos;
        std::vector<Action> actions(n);
        for (int i = 0; i < n; ++i) {
          const VertexId to = options[i][pick[i]];
          if (to >= 0) {
            any_move = true;
            next[i] = to;
            actions[i] = Action{to, m};
          } else {
            actions[i] = WaitingProposal(fg, pos[i], d, m);
          }
        }
        if (any_move) {
          Key k2 = make_key(next, m, done_mask(next, mask));
          auto it = best.find(k2);
          if (it == best.end() || g2 < it->second) {
            best[k2] = g2;
            parent[k2] = Parent{key, std::move(actions)};
            queue.emplace(g2, m, std::move(k2));
          }
        }
        int j = n - 1;
        while (j >= 0 && ++pick[j] == options[j].size()) pick[j--] = 0;
        if (j < 0) break;
      }
    }
  }

  if (!goal) return result;
  std::vector<std::vector<Action>> steps;
  for (Key k = *goal; k != start; k = parent.at(k).prev) {
    steps.push_back(parent.at(k).actions);
  }
  std::reverse(steps.begin(), steps.end());
  TimedConfiguration s = init;
  for (const auto& a : steps) {
    Transition t = fg.MakeTransition(s, a);
    s = t.to;
    result.witness.transitions.push_back(std::move(t));
  }
  if (PlayCost(game, result.witness).sw != result.value) {
    throw std::logic_error("social optimum witness does not match its value");
  }
  return result;
}

namespace {

// All ways to split `total` players over `k` choices, in lexicographically
// decreasing order of the split (earlier choices filled first).
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
  if (k == 0) {
    if (total == 0) out.emplace_back();
    return;
  }
  rec(0, total);
}

}  // namespace

std::vector<AbstractEdge> AbstractSuccessors(const FiniteGame& fg,
                                             const AbstractNode& node,
                                             Date date_cap) {
  const TimedNetwork& net = fg.network();
  const int nv = net.vertex_count();
  const VertexId tgt = fg.game().tgt(0);
  const Date d = node.date;
  std::vector<AbstractEdge> out;

  int64_t rate = 0;
  Date limit = kUnbounded;
  for (VertexId v = 0; v < nv; ++v) {
    const int64_t here = node.active[v] + node.winning[v];
    if (here == 0) continue;
    if (node.active[v] > 0) rate += node.active[v] * net.weight(v).Eval(here);
    limit = std::min(limit, fg.LatestProposal(v, d));
  }
  const Date last = std::min(date_cap, limit);
  const int ne = static_cast<int>(net.edges().size());

  struct Partial {
    std::vector<int64_t> active, winning, fa, fw;
    int64_t moved = 0;
  };

  for (Date m = d + 1; m <= last; ++m) {
    std::vector<Partial> partials(1);
    partials[0].active.assign(nv, 0);
    partials[0].winning.assign(nv, 0);
    partials[0].fa.assign(ne, 0);
    partials[0].fw.assign(ne, 0);
    bool feasible = true;
    for (VertexId v = 0; v < nv && feasible; ++v) {
      const int64_t a = node.active[v], w = node.winning[v];
      if (a + w == 0) continue;
      std::vector<int> moves;
      for (int ei : net.out_edges(v)) {
        if (net.edges()[ei].guard.Contains(m)) moves.push_back(ei);
      }
      const bool can_stay = fg.LatestProposal(v, d) > m;
      const int k = static_cast<int>(moves.size()) + (can_stay ? 1 : 0);
      if (k == 0) {
        feasible = false;
        break;
      }
      std::vector<std::vector<int64_t>> split_a, split_w;
      Compositions(a, k, split_a);
      Compositions(w, k, split_w);
      std::vector<Partial> next;
      std::map<std::tuple<std::vector<int64_t>, std::vector<int64_t>, bool>,
               bool>
          seen;
      for (const Partial& p : partials) {
        for (const auto& sa : split_a) {
          for (const auto& sw : split_w) {
            Partial q = p;
            for (size_t c = 0; c < moves.size(); ++c) {
              const Edge& e = net.edges()[moves[c]];
              q.fa[moves[c]] += sa[c];
              q.fw[moves[c]] += sw[c];
              q.moved += sa[c] + sw[c];
              if (e.to == tgt) {
                q.winning[e.to] += sa[c] + sw[c];
              } else {
                q.active[e.to] += sa[c];
                q.winning[e.to] += sw[c];
              }
            }
            if (can_stay) {
              q.active[v] += sa[k - 1];
              q.winning[v] += sw[k - 1];
            }
            auto key = std::make_tuple(q.active, q.winning, q.moved > 0);
            if (seen.emplace(key, true).second) next.push_back(std::move(q));
          }
        }
      }
      partials = std::move(next);
    }
    if (!feasible) continue;
    for (Partial& p : partials) {
      if (p.moved == 0) continue;
      AbstractEdge e;
      e.from = node;
      e.to.active = std::move(p.active);
      e.to.winning = std::move(p.winning);
      e.to.date = m;
      e.flow_active = std::move(p.fa);
      e.flow_winning = std::move(p.fw);
      e.weight = rate * (m - d);
      out.push_back(std::move(e));
    }
  }
  return out;
}

Play LiftAbstractPath(const FiniteGame& fg,
                      const std::vector<AbstractEdge>& path) {
  const Game& game = fg.game();
  const TimedNetwork& net = fg.network();
  const int n = fg.player_count();
  Play play;
  play.initial = fg.Initial();
  TimedConfiguration s = play.initial;
  std::vector<char> done(n, 0);
  for (int i = 0; i < n; ++i) done[i] = s.positions[i] == game.tgt(i);
  for (const AbstractEdge& step : path) {
    const Date m = step.to.date;
    std::vector<Action> actions(n);
    std::vector<char> assigned(n, 0);
    std::vector<int64_t> fa = step.flow_active, fw = step.flow_winning;
    for (int i = 0; i < n; ++i) {
      for (int ei : net.out_edges(s.positions[i])) {
        auto& flow = done[i] ? fw : fa;
        if (flow[ei] > 0) {
          --flow[ei];
          actions[i] = Action{net.edges()[ei].to, m};
          assigned[i] = 1;
          break;
        }
      }
      if (!assigned[i]) {
        actions[i] = WaitingProposal(fg, s.positions[i], s.date, m);
      }
    }
    Transition t = fg.MakeTransition(s, actions);
    s = t.to;
    for (int i = 0; i < n; ++i) {
      if (s.positions[i] == game.tgt(i)) done[i] = 1;
    }
    play.transitions.push_back(std::move(t));
  }
  return play;
}

SymmetricOptimum SocialOptimumSymmetric(const FiniteGame& fg, Cost bound) {
  const Game& game = fg.game();
  if (!game.symmetric()) {
    throw std::invalid_argument("symmetric search requires a symmetric game");
  }
  const int nv = fg.network().vertex_count();
  SymmetricOptimum result;
  result.date_cap = DateCap(fg, bound);
  result.witness.initial = fg.Initial();
  const VertexId src = game.src(0), tgt = game.tgt(0);
  if (src == tgt) {
    result.value = Cost(0);
    return result;
  }
  if (bound.IsFinite() && bound.value() < 0) return result;

  auto encode = [](const AbstractNode& a) {
    Key k;
    k.push_back(a.date);
    k.insert(k.end(), a.active.begin(), a.active.end());
    k.insert(k.end(), a.winning.begin(), a.winning.end());
    return k;
  };
  auto decode = [nv](const Key& k) {
    AbstractNode a;
    a.date = k[0];
    a.active.assign(k.begin() + 1, k.begin() + 1 + nv);
    a.winning.assign(k.begin() + 1 + nv, k.end());
    return a;
  };

  AbstractNode init;
  init.active.assign(nv, 0);
  init.winning.assign(nv, 0);
  init.active[src] = fg.player_count();
  const Key start = encode(init);

  std::map<Key, int64_t> best;
  std::map<Key, AbstractEdge> parent;
  MinQueue queue;
  best[start] = 0;
  queue.emplace(0, 0, start);
  std::optional<Key> goal;
  while (!queue.empty()) {
    auto [g, d, key] = queue.top();
    queue.pop();
    if (best[key] < g) continue;
    ++result.expanded;
    AbstractNode node = decode(key);
    if (std::all_of(node.active.begin(), node.active.end(),
                    [](int64_t c) { return c == 0; })) {
      goal = key;
      result.value = Cost(g);
      break;
    }
    for (AbstractEdge& e : AbstractSuccessors(fg, node, result.date_cap)) {
      const int64_t g2 = g + e.weight;
      if (bound.IsFinite() && g2 > bound.value()) continue;
      Key k2 = encode(e.to);
      auto it = best.find(k2);
      if (it == best.end() || g2 < it->second) {
        best[k2] = g2;
        parent[k2] = std::move(e);
        queue.emplace(g2, k2[0], std::move(k2));
      }
    }
  }
  if (!goal) return result;
  for (Key k = *goal; k != start; k = encode(parent.at(k).from)) {
    result.path.push_back(parent.at(k));
  }
  std::reverse(result.path.begin(), result.path.end());
  result.witness = LiftAbstractPath(fg, result.path);
  if (PlayCost(game, result.witness).sw != result.value) {
    throw std::logic_error("lifted abstract path does not match its value");
  }
  return result;
}

bool ConstrainedSw(const FiniteGame& fg, int64_t x) {
  if (x < 0) return false;
  const Cost value = fg.game().symmetric()
                         ? SocialOptimumSymmetric(fg, Cost(x)).value
                         : SocialOptimumAsymmetric(fg, Cost(x)).value;
  return value.IsFinite() && value.value() <= x;
}

Cost SocialOptimumValue(const FiniteGame& fg) {
  return fg.game().symmetric()
             ? SocialOptimumSymmetric(fg, Cost::Infinite()).value
             : SocialOptimumAsymmetric(fg, Cost::Infinite()).value;
}

}  // namespace tng
