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

#include <gtest/gtest.h>

#include <random>

#include "test_games.h"
#include "tng/equilibria.h"
#include "tng/oracle.h"

namespace tng {
namespace {

using testing::FixturePath;

class Fig1Test : public ::testing::Test {
 protected:
  Game game_ = LoadGameFile(FixturePath("fig1.tng"));
  FiniteGame fg_{game_, 8};
  VertexId V(const char* name) const { return *game_.network().Find(name); }
};

TEST_F(Fig1Test, AllowedActionsAreOrderedByEdgeThenDate) {
  const std::vector<Action> a = fg_.AllowedAt(V("src"), 0);
  ASSERT_GE(a.size(), 4u);
  EXPECT_EQ(a[0], (Action{V("s1"), 2}));
  EXPECT_EQ(a[1], (Action{V("s1"), 3}));
  EXPECT_EQ(a[2], (Action{V("s3"), 1}));
  EXPECT_EQ(a.back(), (Action{V("src"), 9}));
  EXPECT_EQ(fg_.LatestProposal(V("src"), 0), 9);
  EXPECT_EQ(fg_.AllowedAt(V("src"), 8), (std::vector<Action>{{kBottom, 9}}));
}

TEST(SemanticsTest, DeadEndProposesBottom) {
  const Game g = ParseGame(
      "players 1\nvertex a affine 0 1\nvertex b affine 0 1\n"
      "edge a b 1..2\nedge b b 0..inf\nobjective all a b\n");
  const FiniteGame fg(g, 5);
  EXPECT_EQ(fg.AllowedAt(0, 0), (std::vector<Action>{{1, 1}, {1, 2}}));
  EXPECT_EQ(fg.AllowedAt(0, 2), (std::vector<Action>{{kBottom, 6}}));
}

TEST_F(Fig1Test, UpdateMovesOnlyEarliestProposers) {
  const TimedConfiguration s = fg_.Initial();
  const UpdateResult u =
      fg_.Update(s, {Action{V("s3"), 1}, Action{V("s1"), 2}});
  EXPECT_EQ(u.to.date, 1);
  EXPECT_EQ(u.to.positions, (std::vector<VertexId>{V("s3"), V("src")}));
  EXPECT_EQ(u.select, (std::vector<int>{0}));
  EXPECT_FALSE(u.clamp);
  const std::vector<Cost> c = fg_.StepCost(s, u.to);
  EXPECT_EQ(c[0], Cost(10));
  EXPECT_EQ(c[1], Cost(10));
}

TEST_F(Fig1Test, ClampLeavesConfigurationAndCostsNothing) {
  TimedConfiguration s{{V("s3"), V("s3")}, 8};
  const Transition t =
      fg_.MakeTransition(s, {Action{kBottom, 9}, Action{kBottom, 9}});
  EXPECT_TRUE(t.clamp);
  EXPECT_EQ(t.to.positions, s.positions);
  EXPECT_EQ(t.to.date, 9);
  EXPECT_EQ(t.step_costs[0], Cost(0));
}

TEST_F(Fig1Test, UpdateNamesOffendingPlayer) {
  try {
    fg_.Update(fg_.Initial(), {Action{V("s1"), 2}, Action{V("tgt"), 1}});
    FAIL();
  } catch (const std::invalid_argument& e) {
    EXPECT_NE(std::string(e.what()).find("player 2"), std::string::npos);
  }
}

TEST_F(Fig1Test, Example3Costs) {
  const auto t = LoadTrajectoryFile(game_, FixturePath("fig1-ex3.traj"));
  const Play p = fg_.OutcomeOfBlind(t);
  const CostProfile c = PlayCost(game_, p);
  EXPECT_EQ(c.costs, (std::vector<Cost>{Cost(28), Cost(36)}));
  EXPECT_EQ(c.sw, Cost(64));
  EXPECT_EQ(p.transitions.size(), 3u);
  for (int i = 0; i < 2; ++i) {
    EXPECT_EQ(ProjectTrajectory(game_, p, i), fg_.TruncateAtTarget(i, t[i]));
  }
}

TEST_F(Fig1Test, Example4Costs) {
  const auto t = LoadTrajectoryFile(game_, FixturePath("fig1-ex4.traj"));
  const CostProfile c = PlayCost(game_, fg_.OutcomeOfBlind(t));
  EXPECT_EQ(c.costs, (std::vector<Cost>{Cost(26), Cost(20)}));
  EXPECT_EQ(c.sw, Cost(46));
  const auto d = LoadTrajectoryFile(game_, FixturePath("fig1-ex4-dev.traj"));
  EXPECT_EQ(PlayCost(game_, fg_.OutcomeOfBlind(d)).costs[0], Cost(28));
}

TEST_F(Fig1Test, CheckWinningTrajectoryRejectsBadSteps) {
  EXPECT_THROW(fg_.CheckWinningTrajectory(0, {{V("src"), 0}, {V("s1"), 1}}),
               std::invalid_argument);
  EXPECT_THROW(fg_.CheckWinningTrajectory(0, {{V("src"), 0}, {V("s3"), 1}}),
               std::invalid_argument);
  EXPECT_NO_THROW(fg_.CheckWinningTrajectory(
      0, {{V("src"), 0}, {V("s3"), 1}, {V("tgt"), 2}}));
}

TEST_F(Fig1Test, TrajectoryFileErrors) {
  EXPECT_THROW(ParseTrajectoryProfile(game_, "traj 1 (src,0)\n"), ParseError);
  EXPECT_THROW(ParseTrajectoryProfile(game_, "traj 1 (src,0)\ntraj 1 (src,0)\n"),
               ParseError);
  EXPECT_THROW(ParseTrajectoryProfile(game_, "traj 1 (src,1)\ntraj 2 (src,0)\n"),
               ParseError);
  EXPECT_THROW(
      ParseTrajectoryProfile(game_, "traj 1 (src,0) (s3,2) (tgt,2)\ntraj 2 (src,0)\n"),
      ParseError);
  EXPECT_THROW(ParseTrajectoryProfile(game_, "traj 1 (nowhere,0)\ntraj 2 (src,0)\n"),
               ParseError);
}

TEST(SemanticsTest, HorizonMustBePositive) {
  const Game g = LoadGameFile(FixturePath("fig1.tng"));
  EXPECT_THROW(FiniteGame(g, 0), std::invalid_argument);
  EXPECT_EQ(FiniteGame(g).horizon(), 364);
}

TEST(SemanticsTest, Fig5BlindOutcomes) {
  const Game g = LoadGameFile(FixturePath("fig5.tng"));
  const FiniteGame fg(g, 8);
  const std::vector<std::string> pi = {
      "(src,0) (s1,1) (s2,2) (s3,3) (s4,4) (s5,5) (s6,6) (tgt,7)",
      "(src,0) (s7,1) (s8,2) (s9,3) (s10,4) (s11,5) (s12,6) (tgt,7)",
      "(src,0) (s1,1) (s14,2) (s9,3) (s10,4) (s11,5) (s12,6) (tgt,7)",
      "(src,0) (s1,1) (s2,2) (s3,3) (s15,4) (s11,5) (s12,6) (tgt,7)"};
  auto sw = [&](int a, int b, int c) {
    const std::string text = "traj 1 " + pi[a - 1] + "\ntraj 2 " + pi[b - 1] +
                             "\ntraj 3 " + pi[c - 1] + "\n";
    return PlayCost(g, fg.OutcomeOfBlind(ParseTrajectoryProfile(g, text))).sw;
  };
  const int table[][4] = {
      {1, 1, 1, 57}, {2, 2, 2, 75}, {3, 3, 3, 66}, {4, 4, 4, 60},
      {1, 1, 2, 39}, {1, 1, 3, 46}, {1, 1, 4, 50}, {2, 2, 1, 45},
      {2, 2, 3, 58}, {2, 2, 4, 54}, {3, 3, 1, 49}, {3, 3, 2, 55},
      {3, 3, 4, 58}, {4, 4, 1, 51}, {4, 4, 2, 49}, {4, 4, 3, 56},
      {1, 2, 3, 40}, {1, 2, 4, 40}, {1, 3, 4, 47}, {2, 3, 4, 49}};
  for (const auto& row : table) {
    EXPECT_EQ(sw(row[0], row[1], row[2]), Cost(row[3]))
        << row[0] << row[1] << row[2];
  }
}

TEST(SemanticsTest, SinglePlayerPlayFollowsTrajectory) {
  const Game g = ParseGame(
      "players 1\nvertex a affine 0 2\nvertex b affine 0 3\nvertex c affine 0 1\n"
      "edge a b 1..3\nedge b c 4..5\nedge c c 0..inf\nobjective all a c\n");
  const FiniteGame fg(g, 6);
  const Trajectory t{{0, 0}, {1, 2}, {2, 5}};
  const Play p = fg.OutcomeOfBlind({t});
  ASSERT_EQ(p.transitions.size(), 2u);
  EXPECT_EQ(ProjectTrajectory(g, p, 0), t);
  EXPECT_EQ(PlayCost(g, p).costs[0], Cost(2 * 2 + 3 * 3));
}

// Properties over random games and random plays.
class RandomPlayTest : public ::testing::TestWithParam<int> {};

TEST_P(RandomPlayTest, PlayInvariants) {
  std::mt19937_64 rng(GetParam());
  const Game g = testing::RandomGame(rng, {.horizon = 6});
  const FiniteGame fg(g, 6);
  for (int round = 0; round < 10; ++round) {
    const Play p = RandomPlay(fg, rng);
    ASSERT_NO_THROW(fg.CheckPlay(p));
    EXPECT_LE(p.transitions.size(), static_cast<size_t>(fg.horizon() + 1));
    Date last = -1;
    for (const Transition& t : p.transitions) {
      EXPECT_GT(t.to.date, last);
      last = t.to.date;
      // Replacing non-movers' vertices keeps the step costs.
      std::vector<Action> acts = t.actions;
      for (int i = 0; i < g.player_count(); ++i) {
        if (std::find(t.select.begin(), t.select.end(), i) != t.select.end()) {
          continue;
        }
        for (const Action& a : fg.Allowed(t.from, i)) {
          if (a.date == t.actions[i].date) acts[i] = a;
        }
      }
      EXPECT_EQ(fg.MakeTransition(t.from, acts).step_costs, t.step_costs);
    }
    // A finite cost implies an early enough target visit.
    const CostProfile c = PlayCost(g, p);
    for (int i = 0; i < g.player_count(); ++i) {
      if (c.costs[i].IsInfinite()) continue;
      const int k = FirstVisit(g, p, i);
      ASSERT_GE(k, 0);
      const Date d = k == 0 ? 0 : p.transitions[k - 1].to.date;
      EXPECT_LE(d, c.costs[i].value());
    }
  }
}

TEST_P(RandomPlayTest, BlindProjectionInvariance) {
  std::mt19937_64 rng(GetParam() + 1000);
  const Game g = testing::RandomGame(rng, {.horizon = 6});
  const FiniteGame fg(g, 6);
  const int n = g.player_count();
  std::vector<std::vector<Trajectory>> all(n);
  for (int i = 0; i < n; ++i) all[i] = EnumerateWinningTrajectories(fg, i, 6);
  auto pick = [&](int i) {
    std::uniform_int_distribution<size_t> d(0, all[i].size() - 1);
    return all[i][d(rng)];
  };
  for (int round = 0; round < 5; ++round) {
    std::vector<Trajectory> a(n), b(n);
    for (int i = 0; i < n; ++i) {
      a[i] = pick(i);
      b[i] = pick(i);
    }
    b[0] = a[0];
    const Play pa = fg.OutcomeOfBlind(a);
    const Play pb = fg.OutcomeOfBlind(b);
    const Trajectory ta = fg.TruncateAtTarget(0, ProjectTrajectory(g, pa, 0));
    EXPECT_EQ(ta, fg.TruncateAtTarget(0, a[0]));
    EXPECT_EQ(ta, fg.TruncateAtTarget(0, ProjectTrajectory(g, pb, 0)));
    // Costs agree with the occupancy-based evaluation.
    EXPECT_EQ(PlayCost(g, pa).costs, BlindCosts(fg, a));
  }
}

INSTANTIATE_TEST_SUITE_P(Seeds, RandomPlayTest, ::testing::Range(0, 40));

}  // namespace
}  // namespace tng
