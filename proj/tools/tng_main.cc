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

// tng: command-line front end for timed network game analysis.
//
// Exit codes: 0 yes / success, 1 no, 2 error.

#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "tng/equilibria.h"
#include "tng/model.h"
#include "tng/ne_search.h"
#include "tng/oracle.h"
#include "tng/punish.h"
#include "tng/semantics.h"
#include "tng/social_opt.h"

namespace {

using namespace tng;

constexpr int kYes = 0;
constexpr int kNo = 1;
constexpr int kError = 2;

struct Common {
  std::string game_file;
  std::optional<int64_t> horizon;
  int jobs = 1;
};

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

void AddCommon(CLI::App* cmd, Common& c) {
  cmd->add_option("game", c.game_file, "game file")->required();
  cmd->add_option("--horizon", c.horizon, "analysis horizon H (default MaxTime)");
  cmd->add_option("--jobs", c.jobs, "worker threads")->check(CLI::PositiveNumber);
}

struct Session {
  Game game;
  FiniteGame fg;

  Session(const Common& c, Game g)
      : game(std::move(g)), fg(game, HorizonFor(c, game)) {}

  static Date HorizonFor(const Common& c, const Game& g) {
    if (!c.horizon) return std::max<Date>(1, ComputeBounds(g).max_time);
    if (*c.horizon < 1) throw UsageError("--horizon must be at least 1");
    return *c.horizon;
  }
};

Session Open(const Common& c) { return Session(c, LoadGameFile(c.game_file)); }

void Header(std::ostream& os, const std::string& command,
            const FiniteGame& fg) {
  const GameBounds& b = fg.bounds();
  os << "command=" << command << '\n'
     << "horizon=" << fg.horizon() << '\n'
     << "horizon_limited=" << (fg.horizon() < b.max_time ? "true" : "false")
     << '\n'
     << "max_int=" << b.max_int << '\n'
     << "max_cost=" << b.max_cost << '\n'
     << "max_time=" << b.max_time << '\n';
}

void PrintPlay(std::ostream& os, const Game& game, const Play& p) {
  os << "witness_steps=" << p.transitions.size() << '\n';
  for (size_t k = 0; k < p.transitions.size(); ++k) {
    const Transition& t = p.transitions[k];
    os << "step[" << k << "]=" << FormatConfiguration(game, t.from) << " [";
    for (size_t i = 0; i < t.actions.size(); ++i) {
      os << (i ? "," : "") << FormatAction(game, t.actions[i]);
    }
    os << "] -> " << FormatConfiguration(game, t.to) << '\n';
  }
}

void PrintCosts(std::ostream& os, const std::vector<Cost>& costs, Cost sw) {
  for (size_t i = 0; i < costs.size(); ++i) {
    os << "cost_" << i + 1 << '=' << costs[i] << ' ';
  }
  os << "sw=" << sw << '\n';
}

std::string Join(int argc, char** argv) {
  std::string out = "tng";
  for (int i = 1; i < argc; ++i) {
    out += ' ';
    out += argv[i];
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Timed network game solver"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all");
  const std::string command = Join(argc, argv);

  Common c;
  int64_t bound = 0;
  std::optional<int64_t> so_bound;
  std::vector<std::string> constraints;
  int player = 1;
  std::optional<int64_t> cap;
  std::string traj_file;
  std::string oracle_kind;

  auto* validate = app.add_subcommand("validate", "check a game and print its bounds");
  AddCommon(validate, c);
  auto* so = app.add_subcommand("so", "social optimum");
  AddCommon(so, c);
  so->add_option("--bound", so_bound, "only plays with SW at most this bound");
  auto* sw_le = app.add_subcommand("sw-le", "is there a play with SW <= bound");
  AddCommon(sw_le, c);
  sw_le->add_option("--bound", bound, "bound x")->required();
  auto* ne = app.add_subcommand("ne", "equilibrium outcome meeting constraints");
  AddCommon(ne, c);
  ne->add_option("--constraint", constraints,
                 "c1,...,cn:<rel>:b with rel in <=,>=,=,<,>");
  auto* best = app.add_subcommand("best-ne", "least SW of an equilibrium");
  AddCommon(best, c);
  auto* worst = app.add_subcommand("worst-ne", "largest SW of an equilibrium");
  AddCommon(worst, c);
  auto* poa = app.add_subcommand("poa", "price of anarchy");
  AddCommon(poa, c);
  auto* pos = app.add_subcommand("pos", "price of stability");
  AddCommon(pos, c);
  auto* brd = app.add_subcommand("brd", "best-response dynamics on blind strategies");
  AddCommon(brd, c);
  brd->add_option("--cap", cap, "latest arrival date of trajectories (default H)");
  auto* lowval = app.add_subcommand("lowval", "punishment value at the start");
  AddCommon(lowval, c);
  lowval->add_option("--player", player, "player, from 1")->required();
  auto* eval = app.add_subcommand("eval", "costs of a trajectory profile");
  AddCommon(eval, c);
  eval->add_option("trajectories", traj_file, "trajectory profile file")->required();
  auto* oracle = app.add_subcommand("oracle", "brute-force reference solvers");
  oracle->add_option("kind", oracle_kind, "so, lowval or blind-ne")
      ->required()
      ->check(CLI::IsMember({"so", "lowval", "blind-ne"}));
  AddCommon(oracle, c);
  oracle->add_option("--player", player, "player for lowval, from 1");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kError;
  }

  std::ostringstream out;
  int code = kYes;
  try {
    Session s = Open(c);
    const Game& g = s.game;
    const FiniteGame& fg = s.fg;
    const int n = g.player_count();
    Header(out, command, fg);

    if (validate->parsed()) {
      const std::vector<Violation> v = Validate(g);
      out << "players=" << n << '\n'
          << "vertices=" << g.network().vertex_count() << '\n'
          << "valid=" << (v.empty() ? "true" : "false") << '\n';
      for (const Violation& x : v) out << "violation=" << x.message << '\n';
      code = v.empty() ? kYes : kNo;
    } else if (so->parsed()) {
      const Cost b = so_bound ? Cost(*so_bound) : Cost::Infinite();
      if (g.symmetric()) {
        const SymmetricOptimum r = SocialOptimumSymmetric(fg, b);
        out << "so=" << r.value << '\n' << "date_cap=" << r.date_cap << '\n';
        if (r.value.IsFinite()) PrintPlay(out, g, r.witness);
      } else {
        const SocialOptimum r = SocialOptimumAsymmetric(fg, b);
        out << "so=" << r.value << '\n' << "date_cap=" << r.date_cap << '\n';
        if (r.value.IsFinite()) PrintPlay(out, g, r.witness);
      }
    } else if (sw_le->parsed()) {
      const bool yes = ConstrainedSw(fg, bound);
      out << "bound=" << bound << '\n' << "sw_le=" << (yes ? "true" : "false") << '\n';
      code = yes ? kYes : kNo;
    } else if (ne->parsed()) {
      std::vector<LinearConstraint> cs;
      for (const std::string& text : constraints) {
        try {
          cs.push_back(ParseConstraint(text, n));
        } catch (const std::invalid_argument& e) {
          throw UsageError(e.what());
        }
        out << "constraint=" << FormatConstraint(cs.back()) << '\n';
      }
      NeSolver solver(fg);
      solver.Precompute(c.jobs);
      const auto w = solver.ConstrainedNe(cs);
      out << "ne=" << (w ? "true" : "false") << '\n';
      if (w) {
        for (int i = 0; i < n; ++i) out << "cost_" << i + 1 << '=' << w->costs[i] << '\n';
        out << "sw=" << w->sw << '\n';
        PrintPlay(out, g, w->play);
      }
      code = w ? kYes : kNo;
    } else if (best->parsed() || worst->parsed()) {
      NeSolver solver(fg);
      solver.Precompute(c.jobs);
      const auto v = best->parsed() ? solver.BestSw() : solver.WorstSw();
      out << "value=" << (v ? std::to_string(*v) : "none") << '\n';
      code = v ? kYes : kNo;
    } else if (poa->parsed() || pos->parsed()) {
      const Cost opt = SocialOptimumValue(fg);
      NeSolver solver(fg);
      solver.Precompute(c.jobs);
      const auto r = poa->parsed() ? PriceOfAnarchy(solver, opt)
                                   : PriceOfStability(solver, opt);
      out << "so=" << opt << '\n'
          << "value=" << (r ? r->ToString() : "undefined") << '\n';
      code = r ? kYes : kNo;
    } else if (brd->parsed()) {
      const Date arrival = cap.value_or(fg.horizon());
      if (arrival < fg.bounds().max_int + g.network().vertex_count()) {
        std::cerr << "warning: trajectory cap " << arrival
                  << " is below MaxInt+|V|\n";
      }
      const DynamicsResult r = BestResponseDynamics(fg, arrival);
      out << "cap=" << arrival << '\n';
      for (int i = 0; i < n; ++i) {
        out << "traj " << i + 1 << ' ' << FormatTrajectory(g, r.profile[i]) << '\n';
      }
      PrintCosts(out, r.costs, r.sw);
      out << "psi_trace=";
      for (size_t k = 0; k < r.potential_trace.size(); ++k) {
        out << (k ? "," : "") << r.potential_trace[k];
      }
      out << '\n' << "rounds=" << r.rounds << '\n';
      NeSolver solver(fg);
      solver.Precompute(c.jobs);
      const NeCheck chk = solver.CheckOutcome(fg.OutcomeOfBlind(r.profile));
      out << "ne_check=" << (chk.ok ? "pass" : "fail") << '\n';
      code = chk.ok ? kYes : kNo;
    } else if (lowval->parsed()) {
      if (player < 1 || player > n) throw UsageError("--player out of range");
      LowValSolver solver(fg, player - 1);
      out << "player=" << player << '\n'
          << "value=" << solver.Value(fg.Initial()) << '\n';
    } else if (eval->parsed()) {
      const std::vector<Trajectory> trajs = LoadTrajectoryFile(g, traj_file);
      const Play p = fg.OutcomeOfBlind(trajs);
      const CostProfile cp = PlayCost(g, p);
      PrintCosts(out, cp.costs, cp.sw);
      PrintPlay(out, g, p);
    } else if (oracle->parsed()) {
      const EnumerationBudget budget;
      if (oracle_kind == "so") {
        out << "so=" << BruteSocialOptimum(fg, budget) << '\n';
      } else if (oracle_kind == "lowval") {
        if (player < 1 || player > n) throw UsageError("--player out of range");
        out << "player=" << player << '\n'
            << "value=" << BruteLowVal(fg, player - 1, fg.Initial(), budget)
            << '\n';
      } else {
        const auto eqs = BruteBlindEquilibria(fg, fg.horizon(), budget);
        out << "count=" << eqs.size() << '\n';
        for (const BlindEquilibrium& e : eqs) {
          for (int i = 0; i < n; ++i) {
            out << "traj " << i + 1 << ' ' << FormatTrajectory(g, e.profile[i])
                << '\n';
          }
          PrintCosts(out, e.costs, e.sw);
        }
      }
    }
  } catch (const BudgetExceeded& e) {
    std::cout << out.str();
    std::cerr << "error: budget exceeded: " << e.what() << '\n';
    return kError;
  } catch (const std::exception& e) {
    std::cout << out.str();
    std::cerr << "error: " << e.what() << '\n';
    return kError;
  }
  std::cout << out.str();
  return code;
}
