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

#include "tng/semantics.h"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>

namespace tng {

FiniteGame::FiniteGame(const Game& game)
    : game_(&game), bounds_(ComputeBounds(game)), horizon_(bounds_.max_time) {
  if (horizon_ < 1) horizon_ = 1;
}

FiniteGame::FiniteGame(const Game& game, Date horizon)
    : game_(&game), bounds_(ComputeBounds(game)), horizon_(horizon) {
  if (horizon < 1) throw std::invalid_argument("horizon must be >= 1");
}

TimedConfiguration FiniteGame::Initial() const {
  TimedConfiguration s;
  s.date = 0;
  for (int i = 0; i < player_count(); ++i) s.positions.push_back(game_->src(i));
  return s;
}

std::vector<Action> FiniteGame::AllowedAt(VertexId v, Date d) const {
  std::vector<Action> out;
  if (d < horizon_) {
    const TimedNetwork& net = network();
    for (int ei : net.out_edges(v)) {
      const Edge& e = net.edges()[ei];
      for (const Interval& iv : e.guard.intervals()) {
        const Date lo = std::max(iv.lo, d + 1);
        const Date hi = std::min(iv.hi, horizon_ + 1);
        for (Date d2 = lo; d2 <= hi; ++d2) out.push_back(Action{e.to, d2});
      }
    }
  }
  if (out.empty()) out.push_back(Action{kBottom, horizon_ + 1});
  return out;
}

std::vector<Action> FiniteGame::Allowed(const TimedConfiguration& s,
                                        int player) const {
  return AllowedAt(s.positions.at(player), s.date);
}

bool FiniteGame::IsAllowedAt(VertexId v, Date d, const Action& a) const {
  if (a.vertex == kBottom) {
    if (a.date != horizon_ + 1) return false;
    if (d >= horizon_) return true;
    return AllowedAt(v, d).front().vertex == kBottom;
  }
  if (d >= horizon_ || a.date <= d || a.date > horizon_ + 1) return false;
  auto e = network().FindEdge(v, a.vertex);
  return e && network().edges()[*e].guard.Contains(a.date);
}

Date FiniteGame::LatestProposal(VertexId v, Date d) const {
  if (d >= horizon_) return horizon_ + 1;
  const TimedNetwork& net = network();
  Date best = -1;
  for (int ei : net.out_edges(v)) {
    for (const Interval& iv : net.edges()[ei].guard.intervals()) {
      const Date hi = std::min(iv.hi, horizon_ + 1);
      if (hi > d && hi >= iv.lo) best = std::max(best, hi);
    }
  }
  return best < 0 ? horizon_ + 1 : best;
}

int64_t FiniteGame::Load(const TimedConfiguration& s, VertexId v) const {
  return std::count(s.positions.begin(), s.positions.end(), v);
}

UpdateResult FiniteGame::Update(const TimedConfiguration& s,
                                const std::vector<Action>& actions) const {
  const int n = player_count();
  if (static_cast<int>(actions.size()) != n ||
      static_cast<int>(s.positions.size()) != n) {
    throw std::invalid_argument("action vector length differs from players");
  }
  Date m = kUnbounded;
  for (int i = 0; i < n; ++i) {
    if (!IsAllowedAt(s.positions[i], s.date, actions[i])) {
      throw std::invalid_argument(
          "action " + FormatAction(*game_, actions[i]) + " of player " +
          std::to_string(i + 1) + " is not allowed at " +
          FormatConfiguration(*game_, s));
    }
    m = std::min(m, actions[i].date);
  }
  UpdateResult r;
  r.to = s;
  r.to.date = m;
  for (int i = 0; i < n; ++i) {
    if (actions[i].date == m) r.select.push_back(i);
  }
  r.clamp = m == horizon_ + 1;
  if (!r.clamp) {
    for (int i : r.select) r.to.positions[i] = actions[i].vertex;
  }
  return r;
}

std::vector<Cost> FiniteGame::StepCost(const TimedConfiguration& from,
                                       const TimedConfiguration& to) const {
  const int n = player_count();
  std::vector<Cost> out(n, Cost(0));
  if (to.date > horizon_) return out;
  const TimedNetwork& net = network();
  for (int i = 0; i < n; ++i) {
    const VertexId v = from.positions[i];
    out[i] = Cost((to.date - from.date) * net.weight(v).Eval(Load(from, v)));
  }
  return out;
}

Transition FiniteGame::MakeTransition(
    const TimedConfiguration& s, const std::vector<Action>& actions) const {
  UpdateResult r = Update(s, actions);
  Transition t;
  t.from = s;
  t.actions = actions;
  t.step_costs = StepCost(s, r.to);
  t.to = std::move(r.to);
  t.select = std::move(r.select);
  t.clamp = r.clamp;
  return t;
}

Action FiniteGame::CanonicalProposal(VertexId v, Date d) const {
  if (d >= horizon_) return Action{kBottom, horizon_ + 1};
  const TimedNetwork& net = network();
  if (auto loop = net.FindEdge(v, v);
      loop && net.edges()[*loop].guard.Contains(d + 1)) {
    return Action{v, d + 1};
  }
  for (int ei : net.out_edges(v)) {
    const Edge& e = net.edges()[ei];
    if (auto d2 = e.guard.NextAfter(d); d2 && *d2 <= horizon_ + 1) {
      return Action{e.to, *d2};
    }
  }
  return Action{kBottom, horizon_ + 1};
}

Trajectory FiniteGame::CanonicalExtension(Trajectory prefix) const {
  if (prefix.empty()) return prefix;
  for (;;) {
    const TrajectoryStep& last = prefix.back();
    Action a = CanonicalProposal(last.vertex, last.date);
    if (a.vertex == kBottom || a.date > horizon_) break;
    prefix.push_back({a.vertex, a.date});
  }
  return prefix;
}

void FiniteGame::CheckWinningTrajectory(int player, const Trajectory& t) const {
  const std::string who = "trajectory of player " + std::to_string(player + 1);
  if (t.empty() || t.front().vertex != game_->src(player) ||
      t.front().date != 0) {
    throw std::invalid_argument(who + " must start at its source at date 0");
  }
  const TimedNetwork& net = network();
  bool reached = t.front().vertex == game_->tgt(player);
  for (size_t k = 1; k < t.size(); ++k) {
    const TrajectoryStep& a = t[k - 1];
    const TrajectoryStep& b = t[k];
    if (b.date <= a.date) {
      throw std::invalid_argument(who + ": dates must strictly increase");
    }
    if (b.date > horizon_) {
      throw std::invalid_argument(who + ": date " + std::to_string(b.date) +
                                  " beyond horizon " +
                                  std::to_string(horizon_));
    }
    auto e = net.FindEdge(a.vertex, b.vertex);
    if (!e || !net.edges()[*e].guard.Contains(b.date)) {
      throw std::invalid_argument(who + ": guard violation moving from " +
                                  net.name(a.vertex) + " to " +
                                  net.name(b.vertex) + " at date " +
                                  std::to_string(b.date));
    }
    if (b.vertex == game_->tgt(player)) reached = true;
  }
  if (!reached) {
    throw std::invalid_argument(who + " does not reach its target within "
                                      "the horizon");
  }
}

Trajectory FiniteGame::TruncateAtTarget(int player,
                                        const Trajectory& t) const {
  Trajectory out;
  for (const TrajectoryStep& st : t) {
    out.push_back(st);
    if (st.vertex == game_->tgt(player)) break;
  }
  return out;
}

Play FiniteGame::OutcomeOfBlind(const std::vector<Trajectory>& trajs) const {
  const int n = player_count();
  if (static_cast<int>(trajs.size()) != n) {
    throw std::invalid_argument("one trajectory per player is required");
  }
  std::vector<Trajectory> full;
  for (int i = 0; i < n; ++i) {
    CheckWinningTrajectory(i, trajs[i]);
    full.push_back(CanonicalExtension(TruncateAtTarget(i, trajs[i])));
  }
  Play p;
  p.initial = Initial();
  std::vector<size_t> at(n, 0);  // index of each player's current step
  std::vector<char> visited(n, 0);
  auto mark = [&](const TimedConfiguration& s) {
    for (int i = 0; i < n; ++i) {
      if (s.positions[i] == game_->tgt(i)) visited[i] = 1;
    }
  };
  mark(p.initial);
  TimedConfiguration s = p.initial;
  while (s.date <= horizon_ &&
         std::count(visited.begin(), visited.end(), 1) < n) {
    std::vector<Action> a(n);
    for (int i = 0; i < n; ++i) {
      if (at[i] + 1 < full[i].size()) {
        a[i] = Action{full[i][at[i] + 1].vertex, full[i][at[i] + 1].date};
      } else {
        a[i] = CanonicalProposal(s.positions[i], s.date);
      }
    }
    Transition t = MakeTransition(s, a);
    if (!t.clamp) {
      for (int i : t.select) ++at[i];
    }
    s = t.to;
    mark(s);
    p.transitions.push_back(std::move(t));
  }
  return p;
}

void FiniteGame::CheckPlay(const Play& p) const {
  const int n = player_count();
  if (static_cast<int>(p.initial.positions.size()) != n) {
    throw std::invalid_argument("play has the wrong number of players");
  }
  TimedConfiguration s = p.initial;
  for (size_t k = 0; k < p.transitions.size(); ++k) {
    const Transition& t = p.transitions[k];
    if (t.from != s) {
      throw std::invalid_argument("transition " + std::to_string(k) +
                                  " does not chain");
    }
    Transition expect = MakeTransition(s, t.actions);
    if (expect.to != t.to || expect.step_costs != t.step_costs ||
        expect.select != t.select || expect.clamp != t.clamp) {
      throw std::invalid_argument("transition " + std::to_string(k) +
                                  " disagrees with the update rule");
    }
    s = t.to;
  }
}

CostProfile PlayCost(const Game& game, const Play& p) {
  const int n = game.player_count();
  CostProfile out;
  out.costs.assign(n, Cost::Infinite());
  for (int i = 0; i < n; ++i) {
    const int first = FirstVisit(game, p, i);
    if (first < 0) continue;
    Cost c(0);
    for (int k = 0; k < first; ++k) c += p.transitions[k].step_costs[i];
    out.costs[i] = c;
  }
  out.sw = Cost(0);
  for (Cost c : out.costs) out.sw += c;
  return out;
}

int FirstVisit(const Game& game, const Play& p, int player) {
  if (p.initial.positions.at(player) == game.tgt(player)) return 0;
  for (size_t k = 0; k < p.transitions.size(); ++k) {
    if (p.transitions[k].to.positions[player] == game.tgt(player)) {
      return static_cast<int>(k) + 1;
    }
  }
  return -1;
}

Trajectory ProjectTrajectory(const Game& game, const Play& p, int player) {
  Trajectory t{{game.src(player), 0}};
  for (const Transition& tr : p.transitions) {
    if (tr.clamp) continue;
    if (std::find(tr.select.begin(), tr.select.end(), player) ==
        tr.select.end()) {
      continue;
    }
    t.push_back({tr.to.positions[player], tr.to.date});
  }
  return t;
}

namespace {

std::string Trim(std::string_view s) {
  size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return std::string(s.substr(a, b - a));
}

int64_t ToInt(const std::string& s, int line) {
  int64_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc() || ptr != s.data() + s.size() || v < 0) {
    throw ParseError(line, "expected a non-negative integer, got '" + s + "'");
  }
  return v;
}

}  // namespace

std::vector<Trajectory> ParseTrajectoryProfile(const Game& game,
                                               std::string_view text) {
  const int n = game.player_count();
  std::vector<Trajectory> out(n);
  std::vector<char> seen(n, 0);
  std::istringstream in{std::string(text)};
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    std::string_view sv(raw);
    if (auto hash = sv.find('#'); hash != std::string_view::npos) {
      sv = sv.substr(0, hash);
    }
    std::string body = Trim(sv);
    if (body.empty()) continue;
    if (body.rfind("traj", 0) != 0 ||
        (body.size() > 4 && !std::isspace(static_cast<unsigned char>(body[4])))) {
      throw ParseError(line, "expected: traj <i> (<v>,<d>) ...");
    }
    std::string rest = Trim(std::string_view(body).substr(4));
    size_t sp = 0;
    while (sp < rest.size() && !std::isspace(static_cast<unsigned char>(rest[sp])) &&
           rest[sp] != '(') {
      ++sp;
    }
    const int64_t idx = ToInt(rest.substr(0, sp), line);
    if (idx < 1 || idx > n) {
      throw ParseError(line, "player index out of range");
    }
    if (seen[idx - 1]) throw ParseError(line, "duplicate trajectory");
    seen[idx - 1] = 1;
    Trajectory t;
    size_t pos = sp;
    while (true) {
      while (pos < rest.size() &&
             std::isspace(static_cast<unsigned char>(rest[pos]))) {
        ++pos;
      }
      if (pos >= rest.size()) break;
      if (rest[pos] != '(') throw ParseError(line, "expected '('");
      const size_t close = rest.find(')', pos);
      if (close == std::string::npos) throw ParseError(line, "expected ')'");
      const std::string inner = rest.substr(pos + 1, close - pos - 1);
      const size_t comma = inner.find(',');
      if (comma == std::string::npos) {
        throw ParseError(line, "expected (<vertex>,<date>)");
      }
      const std::string name = Trim(inner.substr(0, comma));
      auto v = game.network().Find(name);
      if (!v) throw ParseError(line, "unknown vertex '" + name + "'");
      const Date d = ToInt(Trim(inner.substr(comma + 1)), line);
      if (!t.empty() && d <= t.back().date) {
        throw ParseError(line, "dates must strictly increase");
      }
      if (t.empty() && d != 0) {
        throw ParseError(line, "trajectory must start at date 0");
      }
      t.push_back({*v, d});
      pos = close + 1;
    }
    if (t.empty()) throw ParseError(line, "empty trajectory");
    out[idx - 1] = std::move(t);
  }
  for (int i = 0; i < n; ++i) {
    if (!seen[i]) {
      throw ParseError(line + 1, "missing trajectory for player " +
                                     std::to_string(i + 1));
    }
  }
  return out;
}

std::vector<Trajectory> LoadTrajectoryFile(const Game& game,
                                           const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return ParseTrajectoryProfile(game, buf.str());
}

std::string FormatTrajectory(const Game& game, const Trajectory& t) {
  std::string out;
  for (const TrajectoryStep& st : t) {
    if (!out.empty()) out += " ";
    out += "(" + game.network().name(st.vertex) + "," +
           std::to_string(st.date) + ")";
  }
  return out;
}

std::string FormatAction(const Game& game, const Action& a) {
  return "(" +
         (a.vertex == kBottom ? std::string("_")
                              : game.network().name(a.vertex)) +
         "," + std::to_string(a.date) + ")";
}

std::string FormatConfiguration(const Game& game,
                                const TimedConfiguration& s) {
  std::string out = "((";
  for (size_t i = 0; i < s.positions.size(); ++i) {
    if (i > 0) out += ",";
    out += game.network().name(s.positions[i]);
  }
  return out + ")," + std::to_string(s.date) + ")";
}

}  // namespace tng
