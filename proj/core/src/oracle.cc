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

#include "tng/oracle.h"

#include <algorithm>
#include <functional>
#include <map>
#include <optional>

namespace tng {
namespace {

void CheckHorizon(const FiniteGame& fg, const EnumerationBudget& budget) {
  if (fg.horizon() > budget.max_horizon) {
    throw BudgetExceeded("horizon " + std::to_string(fg.horizon()) +
                         " exceeds the oracle limit " +
                         std::to_string(budget.max_horizon));
  }
}

// Calls f on every element of the product of `choices`, last index fastest.
template <typename T, typename F>
void ForEachProduct(const std::vector<std::vector<T>>& choices, F&& f) {
  const size_t n = choices.size();
  for (const auto& c : choices) {
    if (c.empty()) return;
  }
  std::vector<size_t> idx(n, 0);
  std::vector<T> cur(n);
  while (true) {
    for (size_t j = 0; j < n; ++j) cur[j] = choices[j][idx[j]];
    f(cur);
    size_t j = n;
    while (j > 0 && ++idx[j - 1] == choices[j - 1].size()) idx[--j] = 0;
    if (j == 0) return;
  }
}

}  // namespace

Cost BruteSocialOptimum(const FiniteGame& fg, const EnumerationBudget& budget) {
  CheckHorizon(fg, budget);
  const Game& game = fg.game();
  const int n = fg.player_count();
  const Date h = fg.horizon();
  int64_t nodes = 0;
  std::map<std::pair<TimedConfiguration, std::vector<char>>, Cost> memo;
  std::function<Cost(const TimedConfiguration&, const std::vector<char>&)>
      value = [&](const TimedConfiguration& s,
                  const std::vector<char>& done) -> Cost {
    if (std::all_of(done.begin(), done.end(), [](char c) { return c; })) {
      return Cost(0);
    }
    if (s.date > h) return Cost::Infinite();
    auto key = std::make_pair(s, done);
    if (auto it = memo.find(key); it != memo.end()) return it->second;
    if (++nodes > budget.max_nodes) {
      throw BudgetExceeded("social optimum oracle exceeded its node budget");
    }
    std::vector<std::vector<Action>> choices(n);
    for (int i = 0; i < n; ++i) choices[i] = fg.Allowed(s, i);
    Cost best = Cost::Infinite();
    ForEachProduct(choices, [&](const std::vector<Action>& acts) {
      const UpdateResult u = fg.Update(s, acts);
      if (u.clamp) return;
      const std::vector<Cost> step = fg.StepCost(s, u.to);
      std::vector<char> next_done = done;
      Cost c(0);
      for (int i = 0; i < n; ++i) {
        if (done[i]) continue;
        c += step[i];
        if (u.to.positions[i] == game.tgt(i)) next_done[i] = 1;
      }
      best = std::min(best, c + value(u.to, next_done));
    });
    memo.emplace(std::move(key), best);
    return best;
  };
  const TimedConfiguration init = fg.Initial();
  std::vector<char> done(n);
  for (int i = 0; i < n; ++i) done[i] = init.positions[i] == game.tgt(i);
  return value(init, done);
}

Cost BruteLowVal(const FiniteGame& fg, int player, const TimedConfiguration& s,
                 const EnumerationBudget& budget) {
  CheckHorizon(fg, budget);
  const int n = fg.player_count();
  const VertexId tgt = fg.game().tgt(player);
  int64_t nodes = 0;
  std::map<TimedConfiguration, Cost> memo;
  std::function<Cost(const TimedConfiguration&)> value =
      [&](const TimedConfiguration& x) -> Cost {
    if (x.positions[player] == tgt) return Cost(0);
    if (x.date > fg.horizon()) return Cost::Infinite();
    if (auto it = memo.find(x); it != memo.end()) return it->second;
    if (++nodes > budget.max_nodes) {
      throw BudgetExceeded("punishment oracle exceeded its node budget");
    }
    std::vector<std::vector<Action>> others(n);
    for (int j = 0; j < n; ++j) {
      others[j] = j == player ? std::vector<Action>{Action{}} : fg.Allowed(x, j);
    }
    const std::vector<Action> mine = fg.Allowed(x, player);
    std::optional<Cost> worst;
    ForEachProduct(others, [&](std::vector<Action> acts) {
      Cost best = Cost::Infinite();
      for (const Action& a : mine) {
        acts[player] = a;
        const UpdateResult u = fg.Update(x, acts);
        best = std::min(best, fg.StepCost(x, u.to)[player] + value(u.to));
      }
      if (!worst || best > *worst) worst = best;
    });
    memo.emplace(x, *worst);
    return *worst;
  };
  return value(s);
}

std::vector<BlindEquilibrium> BruteBlindEquilibria(
    const FiniteGame& fg, Date time_cap, const EnumerationBudget& budget) {
  CheckHorizon(fg, budget);
  const int n = fg.player_count();
  std::vector<std::vector<Trajectory>> options(n);
  int64_t profiles = 1;
  for (int i = 0; i < n; ++i) {
    options[i] = EnumerateWinningTrajectories(fg, i, time_cap,
                                              {.skip_waiting = true});
    if (options[i].empty()) return {};
    profiles *= static_cast<int64_t>(options[i].size());
    if (profiles > budget.max_nodes) {
      throw BudgetExceeded("blind equilibrium oracle exceeded its budget");
    }
  }
  std::vector<std::vector<size_t>> index(n);
  for (int i = 0; i < n; ++i) {
    for (size_t k = 0; k < options[i].size(); ++k) index[i].push_back(k);
  }
  std::map<std::vector<size_t>, std::vector<Cost>> costs;
  ForEachProduct(index, [&](const std::vector<size_t>& pick) {
    BlindProfile p(n);
    for (int i = 0; i < n; ++i) p[i] = options[i][pick[i]];
    costs.emplace(pick, PlayCost(fg.game(), fg.OutcomeOfBlind(p)).costs);
  });
  std::vector<BlindEquilibrium> out;
  for (const auto& [pick, c] : costs) {
    bool stable = true;
    for (int i = 0; i < n && stable; ++i) {
      std::vector<size_t> alt = pick;
      for (size_t k = 0; k < options[i].size() && stable; ++k) {
        alt[i] = k;
        if (costs.at(alt)[i] < c[i]) stable = false;
      }
    }
    if (!stable) continue;
    BlindEquilibrium e;
    for (int i = 0; i < n; ++i) e.profile.push_back(options[i][pick[i]]);
    e.costs = c;
    e.sw = Cost(0);
    for (const Cost& x : c) e.sw += x;
    out.push_back(std::move(e));
  }
  return out;
}

Play RandomPlay(const FiniteGame& fg, std::mt19937_64& rng) {
  const Game& game = fg.game();
  const int n = fg.player_count();
  Play p;
  p.initial = fg.Initial();
  TimedConfiguration s = p.initial;
  std::vector<char> done(n);
  for (int i = 0; i < n; ++i) done[i] = s.positions[i] == game.tgt(i);
  while (!std::all_of(done.begin(), done.end(), [](char c) { return c; }) &&
         s.date <= fg.horizon()) {
    std::vector<Action> acts(n);
    for (int i = 0; i < n; ++i) {
      const std::vector<Action> allowed = fg.Allowed(s, i);
      std::uniform_int_distribution<size_t> pick(0, allowed.size() - 1);
      acts[i] = allowed[pick(rng)];
    }
    p.transitions.push_back(fg.MakeTransition(s, acts));
    s = p.transitions.back().to;
    for (int i = 0; i < n; ++i) {
      if (s.positions[i] == game.tgt(i)) done[i] = 1;
    }
  }
  return p;
}

}  // namespace tng
