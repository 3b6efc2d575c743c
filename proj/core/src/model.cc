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

#include "tng/model.h"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>

namespace tng {

Guard Guard::Normalize(std::vector<Interval> intervals) {
  for (const Interval& iv : intervals) {
    if (iv.lo < 0 || iv.hi < 0) {
      throw std::invalid_argument("guard bound must be non-negative");
    }
    if (iv.lo > iv.hi) throw std::invalid_argument("empty guard interval");
  }
  if (intervals.empty()) throw std::invalid_argument("empty guard");
  std::sort(intervals.begin(), intervals.end(),
            [](const Interval& a, const Interval& b) { return a.lo < b.lo; });
  Guard g;
  for (const Interval& iv : intervals) {
    if (!g.intervals_.empty()) {
      Interval& last = g.intervals_.back();
      if (last.hi == kUnbounded || iv.lo <= last.hi + 1) {
        last.hi = std::max(last.hi, iv.hi);
        continue;
      }
    }
    g.intervals_.push_back(iv);
  }
  return g;
}

bool Guard::Contains(Date d) const {
  auto it = std::upper_bound(
      intervals_.begin(), intervals_.end(), d,
      [](Date x, const Interval& iv) { return x < iv.lo; });
  if (it == intervals_.begin()) return false;
  return d <= std::prev(it)->hi;
}

std::optional<Date> Guard::NextAfter(Date d) const {
  if (d == kUnbounded) return std::nullopt;
  const Date want = d + 1;
  for (const Interval& iv : intervals_) {
    if (iv.hi < want) continue;
    return std::max(iv.lo, want);
  }
  return std::nullopt;
}

std::optional<Date> Guard::MaxConstant() const {
  std::optional<Date> best;
  for (const Interval& iv : intervals_) {
    Date c = iv.hi == kUnbounded ? iv.lo : iv.hi;
    if (!best || c > *best) best = c;
  }
  return best;
}

WeightFn WeightFn::Affine(int64_t a, int64_t b) {
  WeightFn w;
  w.kind_ = Kind::kAffine;
  w.a_ = a;
  w.b_ = b;
  return w;
}

WeightFn WeightFn::Table(std::vector<int64_t> entries) {
  WeightFn w;
  w.kind_ = Kind::kTable;
  w.a_ = 0;
  w.b_ = 0;
  w.entries_ = std::move(entries);
  return w;
}

int64_t WeightFn::Eval(int64_t load) const {
  if (load < 1) throw std::domain_error("weight evaluated at load < 1");
  if (kind_ == Kind::kAffine) return a_ * load + b_;
  if (load > static_cast<int64_t>(entries_.size())) {
    throw std::domain_error("load " + std::to_string(load) +
                            " beyond weight table of length " +
                            std::to_string(entries_.size()));
  }
  return entries_[load - 1];
}

VertexId TimedNetwork::AddVertex(std::string name, WeightFn weight) {
  if (by_name_.count(name) > 0) {
    throw std::invalid_argument("duplicate vertex '" + name + "'");
  }
  const auto id = static_cast<VertexId>(names_.size());
  by_name_.emplace(name, id);
  names_.push_back(std::move(name));
  weights_.push_back(std::move(weight));
  out_.emplace_back();
  return id;
}

int TimedNetwork::AddEdge(VertexId from, VertexId to, const Guard& guard) {
  if (from < 0 || from >= vertex_count() || to < 0 || to >= vertex_count()) {
    throw std::invalid_argument("edge endpoint out of range");
  }
  auto key = std::make_pair(from, to);
  if (auto it = edge_index_.find(key); it != edge_index_.end()) {
    Edge& e = edges_[it->second];
    std::vector<Interval> all = e.guard.intervals();
    all.insert(all.end(), guard.intervals().begin(), guard.intervals().end());
    e.guard = Guard::Normalize(std::move(all));
    return it->second;
  }
  const int idx = static_cast<int>(edges_.size());
  edges_.push_back(Edge{from, to, guard});
  out_[from].push_back(idx);
  edge_index_.emplace(key, idx);
  return idx;
}

std::optional<VertexId> TimedNetwork::Find(std::string_view name) const {
  auto it = by_name_.find(name);
  if (it == by_name_.end()) return std::nullopt;
  return it->second;
}

std::optional<int> TimedNetwork::FindEdge(VertexId from, VertexId to) const {
  auto it = edge_index_.find({from, to});
  if (it == edge_index_.end()) return std::nullopt;
  return it->second;
}

Game Game::Symmetric(TimedNetwork network, int n, VertexId src, VertexId tgt) {
  return Asymmetric(std::move(network), n, {ObjectiveGroup{src, tgt, n}});
}

Game Game::Asymmetric(TimedNetwork network, int n,
                      std::vector<ObjectiveGroup> groups) {
  if (n < 1) throw std::invalid_argument("player count must be positive");
  Game g;
  g.n_ = n;
  int64_t total = 0;
  for (const ObjectiveGroup& grp : groups) {
    if (grp.count < 0) throw std::invalid_argument("negative objective count");
    if (grp.src < 0 || grp.src >= network.vertex_count() || grp.tgt < 0 ||
        grp.tgt >= network.vertex_count()) {
      throw std::invalid_argument("objective vertex out of range");
    }
    total += grp.count;
    if (grp.count == 0) continue;
    auto same = std::find_if(g.groups_.begin(), g.groups_.end(),
                             [&](const ObjectiveGroup& o) {
                               return o.src == grp.src && o.tgt == grp.tgt;
                             });
    if (same != g.groups_.end()) {
      same->count += grp.count;
    } else {
      g.groups_.push_back(grp);
    }
  }
  if (total != n) {
    throw std::invalid_argument("objective counts sum to " +
                                std::to_string(total) + ", expected " +
                                std::to_string(n));
  }
  for (const ObjectiveGroup& grp : g.groups_) {
    for (int64_t k = 0; k < grp.count; ++k) {
      g.src_.push_back(grp.src);
      g.tgt_.push_back(grp.tgt);
    }
  }
  g.symmetric_ = g.groups_.size() == 1;
  g.network_ = std::move(network);
  return g;
}

GameBounds ComputeBounds(const Game& game) {
  const TimedNetwork& net = game.network();
  GameBounds b;
  for (const Edge& e : net.edges()) {
    if (auto c = e.guard.MaxConstant()) b.max_int = std::max(b.max_int, *c);
  }
  for (VertexId v = 0; v < net.vertex_count(); ++v) {
    b.max_cost = std::max(b.max_cost, net.weight(v).Eval(game.player_count()));
  }
  b.max_time = b.max_cost * (b.max_int + net.vertex_count());
  return b;
}

namespace {

constexpr int64_t kMaxPlayers = 1 << 20;

std::vector<std::string_view> Tokenize(std::string_view line) {
  std::vector<std::string_view> out;
  size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i])))
      ++i;
    size_t j = i;
    while (j < line.size() &&
           !std::isspace(static_cast<unsigned char>(line[j])))
      ++j;
    if (j > i) out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

int64_t ParseNumber(std::string_view tok, int line) {
  int64_t value = 0;
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
  if (ec != std::errc() || ptr != tok.data() + tok.size() || value < 0 ||
      tok.empty() || tok[0] == '-' || tok[0] == '+') {
    throw ParseError(line, "expected a non-negative integer, got '" +
                               std::string(tok) + "'");
  }
  return value;
}

Interval ParseInterval(std::string_view tok, int line) {
  size_t dots = tok.find("..");
  if (dots == std::string_view::npos) {
    throw ParseError(line, "expected interval <lo>..<hi>, got '" +
                               std::string(tok) + "'");
  }
  Interval iv;
  iv.lo = ParseNumber(tok.substr(0, dots), line);
  std::string_view hi = tok.substr(dots + 2);
  iv.hi = hi == "inf" ? kUnbounded : ParseNumber(hi, line);
  if (iv.lo > iv.hi) throw ParseError(line, "empty guard");
  return iv;
}

std::string FormatInterval(const Interval& iv) {
  return std::to_string(iv.lo) + ".." +
         (iv.hi == kUnbounded ? std::string("inf") : std::to_string(iv.hi));
}

}  // namespace

Game ParseGame(std::string_view text) {
  TimedNetwork net;
  std::optional<int64_t> players;
  bool saw_all = false;
  std::vector<ObjectiveGroup> groups;
  int objective_line = 0;
  std::vector<std::pair<int, VertexId>> tables;  // (line, vertex)

  auto vertex = [&](std::string_view name, int line) {
    auto v = net.Find(name);
    if (!v) {
      throw ParseError(line, "unknown vertex '" + std::string(name) + "'");
    }
    return *v;
  };

  std::istringstream in{std::string(text)};
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    std::string_view sv(raw);
    if (auto hash = sv.find('#'); hash != std::string_view::npos) {
      sv = sv.substr(0, hash);
    }
    auto tok = Tokenize(sv);
    if (tok.empty()) continue;
    const std::string_view kw = tok[0];
    if (kw == "players") {
      if (tok.size() != 2) throw ParseError(line, "expected: players <n>");
      if (players) throw ParseError(line, "duplicate players line");
      int64_t n = ParseNumber(tok[1], line);
      if (n < 1) throw ParseError(line, "player count must be positive");
      if (n > kMaxPlayers) throw ParseError(line, "player count too large");
      players = n;
    } else if (kw == "vertex") {
      if (tok.size() < 3) {
        throw ParseError(line, "expected: vertex <name> affine|table ...");
      }
      WeightFn w;
      if (tok[2] == "affine") {
        if (tok.size() != 5) {
          throw ParseError(line, "expected: vertex <name> affine <a> <b>");
        }
        w = WeightFn::Affine(ParseNumber(tok[3], line),
                             ParseNumber(tok[4], line));
      } else if (tok[2] == "table") {
        if (tok.size() < 4) {
          throw ParseError(line, "expected: vertex <name> table <w1> ...");
        }
        std::vector<int64_t> entries;
        for (size_t k = 3; k < tok.size(); ++k) {
          entries.push_back(ParseNumber(tok[k], line));
        }
        w = WeightFn::Table(std::move(entries));
      } else {
        throw ParseError(line, "unknown weight kind '" + std::string(tok[2]) +
                                   "'");
      }
      if (net.Find(tok[1])) {
        throw ParseError(line, "duplicate vertex '" + std::string(tok[1]) +
                                   "'");
      }
      VertexId id = net.AddVertex(std::string(tok[1]), std::move(w));
      if (net.weight(id).kind() == WeightFn::Kind::kTable) {
        tables.emplace_back(line, id);
      }
    } else if (kw == "edge") {
      if (tok.size() < 3) {
        throw ParseError(line, "expected: edge <from> <to> <lo>..<hi> ...");
      }
      VertexId from = vertex(tok[1], line);
      VertexId to = vertex(tok[2], line);
      if (tok.size() == 3) throw ParseError(line, "empty guard");
      std::vector<Interval> ivs;
      for (size_t k = 3; k < tok.size(); ++k) {
        ivs.push_back(ParseInterval(tok[k], line));
      }
      net.AddEdge(from, to, Guard::Normalize(std::move(ivs)));
    } else if (kw == "objective") {
      if (tok.size() < 2) throw ParseError(line, "expected: objective ...");
      if (objective_line == 0) objective_line = line;
      if (tok[1] == "all") {
        if (tok.size() != 4) {
          throw ParseError(line, "expected: objective all <src> <tgt>");
        }
        if (saw_all || !groups.empty()) {
          throw ParseError(line, "'objective all' must be the only objective");
        }
        saw_all = true;
        groups.push_back({vertex(tok[2], line), vertex(tok[3], line), -1});
      } else if (tok[1] == "count") {
        if (tok.size() != 5) {
          throw ParseError(line,
                           "expected: objective count <src> <tgt> <m>");
        }
        if (saw_all) {
          throw ParseError(line, "'objective all' must be the only objective");
        }
        groups.push_back({vertex(tok[2], line), vertex(tok[3], line),
                          ParseNumber(tok[4], line)});
      } else {
        throw ParseError(line, "expected 'all' or 'count' after objective");
      }
    } else {
      throw ParseError(line, "unknown directive '" + std::string(kw) + "'");
    }
  }
  if (!players) throw ParseError(line + 1, "missing players line");
  if (groups.empty()) throw ParseError(line + 1, "missing objective");
  const int n = static_cast<int>(*players);
  for (const auto& [tline, v] : tables) {
    if (static_cast<int64_t>(net.weight(v).entries().size()) < n) {
      throw ParseError(tline, "weight table of '" + net.name(v) +
                                  "' shorter than player count " +
                                  std::to_string(n));
    }
  }
  if (saw_all) groups[0].count = n;
  try {
    return Game::Asymmetric(std::move(net), n, std::move(groups));
  } catch (const std::invalid_argument& e) {
    throw ParseError(objective_line, e.what());
  }
}

Game LoadGameFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return ParseGame(buf.str());
}

std::string RenderGame(const Game& game) {
  const TimedNetwork& net = game.network();
  std::ostringstream out;
  out << "players " << game.player_count() << "\n";
  for (VertexId v = 0; v < net.vertex_count(); ++v) {
    const WeightFn& w = net.weight(v);
    out << "vertex " << net.name(v);
    if (w.kind() == WeightFn::Kind::kAffine) {
      out << " affine " << w.a() << " " << w.b();
    } else {
      out << " table";
      for (int64_t x : w.entries()) out << " " << x;
    }
    out << "\n";
  }
  for (const Edge& e : net.edges()) {
    out << "edge " << net.name(e.from) << " " << net.name(e.to);
    for (const Interval& iv : e.guard.intervals()) {
      out << " " << FormatInterval(iv);
    }
    out << "\n";
  }
  if (game.symmetric()) {
    out << "objective all " << net.name(game.src(0)) << " "
        << net.name(game.tgt(0)) << "\n";
  } else {
    for (const ObjectiveGroup& g : game.groups()) {
      out << "objective count " << net.name(g.src) << " " << net.name(g.tgt)
          << " " << g.count << "\n";
    }
  }
  return out.str();
}

std::vector<Violation> Validate(const Game& game) {
  const TimedNetwork& net = game.network();
  const int nv = net.vertex_count();
  std::vector<Violation> out;

  bool weights_ok = true;
  for (VertexId v = 0; v < nv; ++v) {
    const WeightFn& w = net.weight(v);
    std::string problem;
    if (w.kind() == WeightFn::Kind::kAffine) {
      if (w.a() < 0 || w.b() < 0 || w.a() + w.b() < 1) {
        problem = "affine weight must have a, b >= 0 and a + b >= 1";
      }
    } else {
      const auto& e = w.entries();
      if (static_cast<int64_t>(e.size()) < game.player_count()) {
        problem = "weight table shorter than player count";
      }
      for (size_t k = 0; k < e.size() && problem.empty(); ++k) {
        if (e[k] < 1) problem = "weight table entry below 1";
        if (k > 0 && e[k] < e[k - 1]) problem = "weight table decreasing";
      }
    }
    if (!problem.empty()) {
      weights_ok = false;
      out.push_back({Violation::Kind::kWeight, v, 0, -1,
                     net.name(v) + ": " + problem});
    }
  }
  if (!weights_ok) return out;

  const GameBounds bounds = ComputeBounds(game);

  const Date cap = bounds.max_int + nv;
  for (const ObjectiveGroup& grp : game.groups()) {
    if (grp.src == grp.tgt) continue;
    // Dated BFS; dates are processed in increasing order.
    std::vector<std::vector<char>> seen(nv, std::vector<char>(cap + 1, 0));
    std::vector<std::pair<VertexId, Date>> frontier{{grp.src, 0}};
    seen[grp.src][0] = 1;
    bool found = false;
    for (size_t h = 0; h < frontier.size() && !found; ++h) {
      auto [v, d] = frontier[h];
      for (int ei : net.out_edges(v)) {
        const Edge& e = net.edges()[ei];
        for (Date d2 = d + 1; d2 <= cap; ++d2) {
          if (!e.guard.Contains(d2) || seen[e.to][d2]) continue;
          seen[e.to][d2] = 1;
          if (e.to == grp.tgt) found = true;
          frontier.emplace_back(e.to, d2);
        }
      }
    }
    if (!found) {
      int first = 0;
      for (const ObjectiveGroup& o : game.groups()) {
        if (&o == &grp) break;
        first += static_cast<int>(o.count);
      }
      out.push_back({Violation::Kind::kUnreachableTarget, grp.tgt, 0, first,
                     "target " + net.name(grp.tgt) + " unreachable from (" +
                         net.name(grp.src) + ",0)"});
    }
  }

  for (VertexId v = 0; v < nv; ++v) {
    // A vertex blocks from the first date after its last available slot.
    std::optional<Date> last;
    bool forever = false;
    for (int ei : net.out_edges(v)) {
      const Guard& g = net.edges()[ei].guard;
      if (g.IsUnbounded()) {
        forever = true;
        break;
      }
      Date hi = g.intervals().back().hi;
      if (!last || hi > *last) last = hi;
    }
    if (forever) continue;
    Date blocked_from = last ? *last : 0;
    if (blocked_from <= bounds.max_time + 1) {
      out.push_back({Violation::Kind::kBlocking, v, blocked_from, -1,
                     "no outgoing edge of " + net.name(v) +
                         " is available after date " +
                         std::to_string(blocked_from)});
    }
  }
  return out;
}

}  // namespace tng
