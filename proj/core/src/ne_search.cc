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

#include "tng/ne_search.h"

#include <algorithm>
#include <exception>
#include <functional>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace tng {
namespace {

__extension__ using Wide = __int128;

std::vector<std::string> Split(std::string_view s, char sep) {
  std::vector<std::string> out;
  size_t start = 0;
  while (true) {
    const size_t pos = s.find(sep, start);
    out.emplace_back(s.substr(start, pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

int64_t ParseInteger(const std::string& s, std::string_view what) {
  size_t used = 0;
  int64_t v = 0;
  try {
    v = std::stoll(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (s.empty() || used != s.size()) {
    throw std::invalid_argument("bad " + std::string(what) + " '" + s + "'");
  }
  return v;
}

bool Compare(Wide lhs, Relation r, Wide rhs) {
  switch (r) {
    case Relation::kLe: return lhs <= rhs;
    case Relation::kGe: return lhs >= rhs;
    case Relation::kEq: return lhs == rhs;
    case Relation::kLt: return lhs < rhs;
    case Relation::kGt: return lhs > rhs;
  }
  return false;
}

// Whether some x with lo <= x <= hi (hi infinite allowed) can satisfy c.
bool Satisfiable(const LinearConstraint& c, const std::vector<Cost>& lo,
                 const std::vector<Cost>& hi) {
  Wide min = 0, max = 0;
  bool min_unbounded = false, max_unbounded = false;
  for (size_t i = 0; i < c.coefficients.size(); ++i) {
    const Wide k = c.coefficients[i];
    if (k == 0) continue;
    const Cost& small = k > 0 ? lo[i] : hi[i];
    const Cost& large = k > 0 ? hi[i] : lo[i];
    if (small.IsInfinite()) min_unbounded = true;
    else min += k * small.value();
    if (large.IsInfinite()) max_unbounded = true;
    else max += k * large.value();
  }
  const Wide b = c.bound;
  switch (c.relation) {
    case Relation::kLe: return min_unbounded || min <= b;
    case Relation::kLt: return min_unbounded || min < b;
    case Relation::kGe: return max_unbounded || max >= b;
    case Relation::kGt: return max_unbounded || max > b;
    case Relation::kEq:
      return (min_unbounded || min <= b) && (max_unbounded || max >= b);
  }
  return false;
}

bool Dominates(const std::vector<Cost>& a, const std::vector<Cost>& b) {
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i] < b[i]) return false;
  }
  return true;
}

}  // namespace

bool LinearConstraint::Holds(const std::vector<int64_t>& costs) const {
  Wide lhs = 0;
  for (size_t i = 0; i < coefficients.size(); ++i) {
    lhs += static_cast<Wide>(coefficients[i]) * costs.at(i);
  }
  return Compare(lhs, relation, bound);
}

LinearConstraint ParseConstraint(std::string_view text, int player_count) {
  const std::vector<std::string> parts = Split(text, ':');
  if (parts.size() != 3) {
    throw std::invalid_argument(
        "constraint must look like <c1>,...,<cn>:<rel>:<bound>");
  }
  LinearConstraint c;
  for (const std::string& s : Split(parts[0], ',')) {
    c.coefficients.push_back(ParseInteger(s, "coefficient"));
  }
  if (static_cast<int>(c.coefficients.size()) != player_count) {
    throw std::invalid_argument("constraint needs " +
                                std::to_string(player_count) +
                                " coefficients, got " +
                                std::to_string(c.coefficients.size()));
  }
  const std::string& r = parts[1];
  if (r == "<=" || r == "le") c.relation = Relation::kLe;
  else if (r == ">=" || r == "ge") c.relation = Relation::kGe;
  else if (r == "=" || r == "==" || r == "eq") c.relation = Relation::kEq;
  else if (r == "<" || r == "lt") c.relation = Relation::kLt;
  else if (r == ">" || r == "gt") c.relation = Relation::kGt;
  else throw std::invalid_argument("unknown relation '" + r + "'");
  c.bound = ParseInteger(parts[2], "bound");
  return c;
}

std::string FormatConstraint(const LinearConstraint& c) {
  std::ostringstream os;
  for (size_t i = 0; i < c.coefficients.size(); ++i) {
    os << (i ? "," : "") << c.coefficients[i];
  }
  static const char* kNames[] = {"<=", ">=", "=", "<", ">"};
  os << ':' << kNames[static_cast<int>(c.relation)] << ':' << c.bound;
  return os.str();
}

LinearConstraint SwAtMost(int player_count, int64_t x) {
  return {std::vector<int64_t>(player_count, 1), Relation::kLe, x};
}

LinearConstraint SwAtLeast(int player_count, int64_t x) {
  return {std::vector<int64_t>(player_count, 1), Relation::kGe, x};
}

std::string Ratio::ToString() const {
  if (den == 1) return std::to_string(num);
  return std::to_string(num) + "/" + std::to_string(den);
}

Ratio MakeRatio(int64_t num, int64_t den) {
  if (den == 0) throw std::invalid_argument("zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  const int64_t g = std::gcd(num, den);
  return {num / g, den / g};
}

bool RatioLessEq(const Ratio& a, const Ratio& b) {
  return static_cast<Wide>(a.num) * b.den <= static_cast<Wide>(b.num) * a.den;
}

NeSolver::NeSolver(const FiniteGame& fg) : fg_(&fg) {
  const int n = fg.player_count();
  const TimedNetwork& net = fg.network();
  const int nv = net.vertex_count();
  const Date h = fg.horizon();
  for (int i = 0; i < n; ++i) {
    lowval_.push_back(std::make_unique<LowValSolver>(fg, i));
  }
  // Cheapest rate on each vertex over all loads: a lower bound on any
  // player's remaining cost.
  std::vector<int64_t> rate(nv);
  for (VertexId v = 0; v < nv; ++v) {
    int64_t r = net.weight(v).Eval(1);
    for (int64_t k = 2; k <= n; ++k) r = std::min(r, net.weight(v).Eval(k));
    rate[v] = r;
  }
  lower_.assign(n, {});
  for (int i = 0; i < n; ++i) {
    const VertexId tgt = fg.game().tgt(i);
    std::vector<Cost>& lb = lower_[i];
    lb.assign((h + 1) * nv, Cost::Infinite());
    for (Date d = h; d >= 0; --d) {
      for (VertexId v = 0; v < nv; ++v) {
        if (v == tgt) {
          lb[d * nv + v] = Cost(0);
          continue;
        }
        Cost best = Cost::Infinite();
        for (int ei : net.out_edges(v)) {
          const Edge& e = net.edges()[ei];
          for (Date d2 = d + 1; d2 <= h; ++d2) {
            if (!e.guard.Contains(d2)) continue;
            best = std::min(best,
                            Cost((d2 - d) * rate[v]) + lb[d2 * nv + e.to]);
          }
        }
        lb[d * nv + v] = best;
      }
    }
  }
}

NeSolver::~NeSolver() = default;

void NeSolver::Precompute(int jobs) {
  const int n = fg_->player_count();
  jobs = std::max(1, std::min(jobs, n));
  const TimedConfiguration init = fg_->Initial();
  auto work = [&](int first) {
    for (int i = first; i < n; i += jobs) {
      lowval_[i]->Value(lowval_[i]->Abstract(init));
    }
  };
  if (jobs == 1) {
    work(0);
    return;
  }
  std::vector<std::exception_ptr> errors(jobs);
  std::vector<std::thread> threads;
  for (int t = 0; t < jobs; ++t) {
    threads.emplace_back([&, t] {
      try {
        work(t);
      } catch (...) {
        errors[t] = std::current_exception();
      }
    });
  }
  for (std::thread& th : threads) th.join();
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

NeCheck NeSolver::CheckOutcome(const Play& p) {
  fg_->CheckPlay(p);
  const Game& game = fg_->game();
  const int n = fg_->player_count();
  const int steps = static_cast<int>(p.transitions.size());
  std::vector<int> first(n);
  bool complete = true;
  for (int i = 0; i < n; ++i) {
    first[i] = FirstVisit(game, p, i);
    if (first[i] < 0) complete = false;
  }
  if (!complete && p.terminal().date <= fg_->horizon()) {
    throw std::invalid_argument(
        "play stops before every player reached their target");
  }
  NeCheck out;
  for (int k = 0; k < steps; ++k) {
    const Transition& tr = p.transitions[k];
    for (int i = 0; i < n; ++i) {
      if (first[i] >= 0 && first[i] <= k) continue;
      Cost remaining = Cost::Infinite();
      if (first[i] > k) {
        remaining = Cost(0);
        for (int j = k; j < first[i]; ++j) {
          remaining += p.transitions[j].step_costs[i];
        }
      }
      for (const Action& b : fg_->Allowed(tr.from, i)) {
        std::vector<Action> acts = tr.actions;
        acts[i] = b;
        const UpdateResult u = fg_->Update(tr.from, acts);
        const Cost step = fg_->StepCost(tr.from, u.to)[i];
        const Cost bound = step + lowval_[i]->Value(u.to);
        if (remaining > bound) {
          out.ok = false;
          out.violation = NeViolation{k, i, b, remaining, bound};
          return out;
        }
      }
    }
  }
  return out;
}

Cost NeSolver::Bound(int player, const PunishState& ps,
                     const CoalitionMove& b) {
  std::vector<int64_t> key{player, ps.my_vertex, ps.date};
  key.insert(key.end(), ps.others.begin(), ps.others.end());
  key.push_back(b.date);
  for (const auto& [from, to] : b.moves) {
    key.push_back(from);
    key.push_back(to);
  }
  if (auto it = bound_cache_.find(key); it != bound_cache_.end()) {
    return it->second;
  }
  const Cost c = lowval_[player]->Respond(ps, b);
  bound_cache_.emplace(std::move(key), c);
  return c;
}

std::pair<Cost, CoalitionMove> NeSolver::LooseBound(int player,
                                                    const PunishState& ps,
                                                    Date m) {
  std::vector<int64_t> key{player, ps.my_vertex, ps.date, m};
  key.insert(key.end(), ps.others.begin(), ps.others.end());
  if (auto it = loose_cache_.find(key); it != loose_cache_.end()) {
    return it->second;
  }
  std::optional<std::pair<Cost, CoalitionMove>> best;
  for (const CoalitionMove& b : lowval_[player]->CoalitionMoves(ps)) {
    if (b.date <= m) continue;
    const Cost c = Bound(player, ps, b);
    if (!best || c > best->first) best = std::make_pair(c, b);
  }
  if (!best) throw std::logic_error("idle players have no move");
  loose_cache_.emplace(std::move(key), *best);
  return *best;
}

std::optional<NeWitness> NeSolver::ConstrainedNe(
    const std::vector<LinearConstraint>& constraints) {
  const FiniteGame& fg = *fg_;
  const Game& game = fg.game();
  const TimedNetwork& net = fg.network();
  const int n = fg.player_count();
  const int nv = net.vertex_count();
  const Date h = fg.horizon();
  for (const LinearConstraint& c : constraints) {
    if (static_cast<int>(c.coefficients.size()) != n) {
      throw std::invalid_argument("constraint arity does not match players");
    }
  }

  struct Node {
    TimedConfiguration s;
    std::vector<char> visited;
    std::vector<Cost> prefix;
    std::vector<Cost> cap;
  };
  struct Child {
    Node node;
    Transition transition;
  };

  std::map<std::vector<int64_t>, std::vector<std::vector<Cost>>> failed;
  std::vector<Transition> path;

  auto feasible = [&](const Node& x) {
    std::vector<Cost> lo(n), hi(n);
    for (int i = 0; i < n; ++i) {
      if (x.visited[i]) {
        lo[i] = hi[i] = x.prefix[i];
      } else {
        lo[i] = x.prefix[i] + lower_[i][x.s.date * nv + x.s.positions[i]];
        hi[i] = x.cap[i];
        if (lo[i] > hi[i]) return false;
      }
    }
    for (const LinearConstraint& c : constraints) {
      if (!Satisfiable(c, lo, hi)) return false;
    }
    return true;
  };

  auto waiting = [&](VertexId v, Date d, Date m) {
    for (const Action& a : fg.AllowedAt(v, d)) {
      if (a.date > m) return a;
    }
    throw std::logic_error("player cannot wait");
  };

  auto children = [&](const Node& x) {
    std::vector<std::vector<Child>> groups;
    std::map<TimedConfiguration, size_t> group_of;
    const TimedConfiguration& s = x.s;
    const Date d = s.date;
    Date limit = kUnbounded;
    std::vector<Date> latest(n);
    for (int j = 0; j < n; ++j) {
      latest[j] = fg.LatestProposal(s.positions[j], d);
      limit = std::min(limit, latest[j]);
    }
    std::vector<PunishState> abstract(n);
    for (int i = 0; i < n; ++i) {
      if (!x.visited[i]) abstract[i] = lowval_[i]->Abstract(s);
    }
    for (Date m = d + 1; m <= std::min(h, limit); ++m) {
      // options[j]: destinations at m in edge order, then -1 for staying.
      std::vector<std::vector<VertexId>> options(n);
      bool blocked = false;
      for (int j = 0; j < n && !blocked; ++j) {
        for (int ei : net.out_edges(s.positions[j])) {
          const Edge& e = net.edges()[ei];
          if (e.guard.Contains(m)) options[j].push_back(e.to);
        }
        if (latest[j] > m) options[j].push_back(-1);
        if (options[j].empty()) blocked = true;
      }
      if (blocked) continue;
      std::vector<size_t> pick(n, 0);
      while (true) {
        std::vector<int> movers;
        for (int j = 0; j < n; ++j) {
          if (options[j][pick[j]] >= 0) movers.push_back(j);
        }
        if (!movers.empty()) {
          std::vector<Action> acts(n);
          std::vector<Cost> bound(n, Cost::Infinite());
          const int solo = movers.size() == 1 ? movers[0] : -1;
          if (solo >= 0 && !x.visited[solo]) {
            auto [c, b] = LooseBound(solo, abstract[solo], m);
            bound[solo] = c;
            acts = ConcretizeCoalitionMove(fg, s, solo, b);
          } else {
            for (int j = 0; j < n; ++j) {
              if (options[j][pick[j]] < 0) {
                acts[j] = waiting(s.positions[j], d, m);
              }
            }
          }
          for (int j : movers) acts[j] = Action{options[j][pick[j]], m};
          Transition tr = fg.MakeTransition(s, acts);
          Node y{tr.to, x.visited, x.prefix, x.cap};
          bool ok = true;
          for (int i = 0; i < n && ok; ++i) {
            if (x.visited[i]) {
              y.cap[i] = Cost::Infinite();
              continue;
            }
            if (i != solo) {
              bound[i] = Bound(i, abstract[i], EffectiveMove(fg, s, acts, i));
            }
            y.cap[i] = std::min(x.cap[i], x.prefix[i] + bound[i]);
            y.prefix[i] = x.prefix[i] + tr.step_costs[i];
            if (tr.to.positions[i] == game.tgt(i)) {
              y.visited[i] = 1;
              if (y.prefix[i] > y.cap[i]) ok = false;
              y.cap[i] = Cost::Infinite();
            }
          }
          if (ok && feasible(y)) {
            auto [it, fresh] = group_of.emplace(tr.to, groups.size());
            if (fresh) groups.emplace_back();
            std::vector<Child>& g = groups[it->second];
            bool dominated = false;
            for (const Child& c : g) {
              if (Dominates(c.node.cap, y.cap)) dominated = true;
            }
            if (!dominated) {
              std::erase_if(g, [&](const Child& c) {
                return Dominates(y.cap, c.node.cap);
              });
              g.push_back(Child{std::move(y), std::move(tr)});
            }
          }
        }
        int j = n - 1;
        while (j >= 0 && ++pick[j] == options[j].size()) pick[j--] = 0;
        if (j < 0) break;
      }
    }
    std::vector<Child> out;
    for (auto& g : groups) {
      for (Child& c : g) out.push_back(std::move(c));
    }
    return out;
  };

  auto memo_key = [&](const Node& x) {
    std::vector<int64_t> key(x.s.positions.begin(), x.s.positions.end());
    key.push_back(x.s.date);
    for (int i = 0; i < n; ++i) {
      key.push_back(x.visited[i]);
      key.push_back(x.prefix[i].value());
    }
    return key;
  };

  std::function<bool(const Node&)> dfs = [&](const Node& x) -> bool {
    ++nodes_;
    if (std::all_of(x.visited.begin(), x.visited.end(),
                    [](char c) { return c != 0; })) {
      std::vector<int64_t> costs(n);
      for (int i = 0; i < n; ++i) costs[i] = x.prefix[i].value();
      for (const LinearConstraint& c : constraints) {
        if (!c.Holds(costs)) return false;
      }
      return true;
    }
    if (x.s.date >= h) return false;
    const std::vector<int64_t> key = memo_key(x);
    auto& seen = failed[key];
    for (const auto& f : seen) {
      if (Dominates(f, x.cap)) return false;
    }
    for (Child& c : children(x)) {
      path.push_back(std::move(c.transition));
      if (dfs(c.node)) return true;
      path.pop_back();
    }
    failed[key].push_back(x.cap);
    return false;
  };

  Node root;
  root.s = fg.Initial();
  root.visited.assign(n, 0);
  root.prefix.assign(n, Cost(0));
  root.cap.assign(n, Cost::Infinite());
  for (int i = 0; i < n; ++i) {
    if (root.s.positions[i] == game.tgt(i)) root.visited[i] = 1;
  }
  if (!feasible(root) || !dfs(root)) return std::nullopt;

  NeWitness w;
  w.play.initial = root.s;
  w.play.transitions = std::move(path);
  const CostProfile cp = PlayCost(game, w.play);
  for (const Cost& c : cp.costs) w.costs.push_back(c.value());
  w.sw = cp.sw.value();
  return w;
}

int64_t NeSolver::SwUpperBound() const {
  const GameBounds& b = fg_->bounds();
  return fg_->player_count() *
         std::max(b.max_time, fg_->horizon() * b.max_cost);
}

std::optional<int64_t> NeSolver::BestSw() {
  const int n = fg_->player_count();
  auto any = ConstrainedNe({SwAtMost(n, SwUpperBound())});
  if (!any) return std::nullopt;
  int64_t lo = 0, hi = any->sw;
  while (lo < hi) {
    const int64_t mid = lo + (hi - lo) / 2;
    if (auto w = ConstrainedNe({SwAtMost(n, mid)})) {
      hi = w->sw;
    } else {
      lo = mid + 1;
    }
  }
  return hi;
}

std::optional<int64_t> NeSolver::WorstSw() {
  const int n = fg_->player_count();
  const int64_t top = SwUpperBound();
  auto any = ConstrainedNe({SwAtMost(n, top)});
  if (!any) return std::nullopt;
  int64_t lo = any->sw, hi = top;
  while (lo < hi) {
    const int64_t mid = lo + (hi - lo + 1) / 2;
    if (auto w = ConstrainedNe({SwAtLeast(n, mid), SwAtMost(n, top)})) {
      lo = w->sw;
    } else {
      hi = mid - 1;
    }
  }
  return lo;
}

std::optional<Ratio> PriceOfAnarchy(NeSolver& solver, Cost social_optimum) {
  if (social_optimum.IsInfinite() || social_optimum.value() == 0) {
    return std::nullopt;
  }
  const auto worst = solver.WorstSw();
  if (!worst) return std::nullopt;
  return MakeRatio(*worst, social_optimum.value());
}

std::optional<Ratio> PriceOfStability(NeSolver& solver, Cost social_optimum) {
  if (social_optimum.IsInfinite() || social_optimum.value() == 0) {
    return std::nullopt;
  }
  const auto best = solver.BestSw();
  if (!best) return std::nullopt;
  return MakeRatio(*best, social_optimum.value());
}

}  // namespace tng
