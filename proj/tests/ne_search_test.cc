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

#include <gtest/gtest.h>

#include <random>

#include "deviation.h"
#include "test_games.h"
#include "tng/oracle.h"
#include "tng/social_opt.h"

namespace tng {
namespace {

using testing::FixturePath;

Play Outcome(const FiniteGame& fg, const char* traj_file) {
  return fg.OutcomeOfBlind(LoadTrajectoryFile(fg.game(), FixturePath(traj_file)));
}

TEST(ConstraintTest, Parse) {
  const LinearConstraint c = ParseConstraint("1,0:=:26", 2);
  EXPECT_EQ(c.coefficients, (std::vector<int64_t>{1, 0}));
  EXPECT_EQ(c.relation, Relation::kEq);
  EXPECT_EQ(c.bound, 26);
  EXPECT_EQ(ParseConstraint("1,1,1:le:39", 3).relation, Relation::kLe);
  EXPECT_EQ(ParseConstraint("-2,3:>:-5", 2).coefficients[0], -2);
  EXPECT_EQ(ParseConstraint("-2,3:>:-5", 2).bound, -5);
  EXPECT_EQ(ParseConstraint(FormatConstraint(c), 2).coefficients, c.coefficients);
}

TEST(ConstraintTest, ParseErrors) {
  for (const char* bad : {"1,0:=:", "1:<=:3", "1,0,0:<=:3", "1,0:~:3", "1,x:<=:3",
                          "1,0<=3", ""}) {
    EXPECT_THROW(ParseConstraint(bad, 2), std::invalid_argument) << bad;
  }
}

TEST(ConstraintTest, Holds) {
  const LinearConstraint c = ParseConstraint("1,2:<:10", 2);
  EXPECT_TRUE(c.Holds({3, 3}));
  EXPECT_FALSE(c.Holds({4, 3}));
  EXPECT_TRUE(SwAtMost(2, 7).Holds({3, 4}));
  EXPECT_FALSE(SwAtLeast(2, 8).Holds({3, 4}));
}

TEST(RatioTest, Reduced) {
  EXPECT_EQ(MakeRatio(98, 78), (Ratio{49, 39}));
  EXPECT_EQ(MakeRatio(98, 78).ToString(), "49/39");
  EXPECT_EQ(MakeRatio(39, 39).ToString(), "1");
  EXPECT_TRUE(RatioLessEq(MakeRatio(1, 1), MakeRatio(49, 39)));
  EXPECT_FALSE(RatioLessEq(MakeRatio(5, 3), MakeRatio(3, 2)));
}

TEST(CheckOutcomeTest, Fig1Example4Accepted) {
  const Game g = LoadGameFile(FixturePath("fig1.tng"));
  const FiniteGame fg(g, 8);
  NeSolver ne(fg);
  EXPECT_TRUE(ne.CheckOutcome(Outcome(fg, "fig1-ex4.traj")).ok);
}

TEST(CheckOutcomeTest, Fig1Example3Rejected) {
  const Game g = LoadGameFile(FixturePath("fig1.tng"));
  const FiniteGame fg(g, 8);
  NeSolver ne(fg);
  const NeCheck r = ne.CheckOutcome(Outcome(fg, "fig1-ex3.traj"));
  ASSERT_FALSE(r.ok);
  EXPECT_EQ(r.violation->step, 0);
  EXPECT_EQ(r.violation->player, 0);
  EXPECT_EQ(r.violation->deviation, (Action{*g.network().Find("s3"), 1}));
  EXPECT_EQ(r.violation->remaining, Cost(28));
  EXPECT_EQ(r.violation->bound, Cost(26));
}

TEST(CheckOutcomeTest, IncompletePlayThrows) {
  const Game g = LoadGameFile(FixturePath("fig1.tng"));
  const FiniteGame fg(g, 8);
  NeSolver ne(fg);
  Play p = Outcome(fg, "fig1-ex3.traj");
  p.transitions.resize(1);
  EXPECT_THROW(ne.CheckOutcome(p), std::invalid_argument);
}

TEST(ConstrainedNeTest, Fig1ExactCosts) {
  const Game g = LoadGameFile(FixturePath("fig1.tng"));
  const FiniteGame fg(g, 8);
  NeSolver ne(fg);
  const auto w = ne.ConstrainedNe(
      {ParseConstraint("1,0:=:26", 2), ParseConstraint("0,1:=:20", 2)});
  ASSERT_TRUE(w.has_value());
  EXPECT_EQ(w->costs, (std::vector<int64_t>{26, 20}));
  EXPECT_EQ(w->sw, 46);
  EXPECT_NO_THROW(fg.CheckPlay(w->play));
  EXPECT_TRUE(ne.CheckOutcome(w->play).ok);
}

TEST(ConstrainedNeTest, Fig1Unsatisfiable) {
  const Game g = LoadGameFile(FixturePath("fig1.tng"));
  const FiniteGame fg(g, 8);
  NeSolver ne(fg);
  EXPECT_FALSE(ne.ConstrainedNe({ParseConstraint("1,0:<=:-1", 2)}).has_value());
  EXPECT_FALSE(ne.ConstrainedNe({SwAtMost(2, 45)}).has_value());
}

TEST(ConstrainedNeTest, Fig5SocialOptimumIsEquilibrium) {
  const Game g = LoadGameFile(FixturePath("fig5.tng"));
  const FiniteGame fg(g, 8);
  NeSolver ne(fg);
  const auto w = ne.ConstrainedNe({SwAtMost(3, 39)});
  ASSERT_TRUE(w.has_value());
  EXPECT_EQ(w->costs, (std::vector<int64_t>{15, 15, 9}));
  EXPECT_TRUE(ne.CheckOutcome(w->play).ok);
  EXPECT_EQ(ne.BestSw(), 39);
}

TEST(ConstrainedNeTest, Fig5Extremes) {
  const Game g = LoadGameFile(FixturePath("fig5.tng"));
  const FiniteGame fg(g, 8);
  NeSolver ne(fg);
  EXPECT_EQ(ne.WorstSw(), 49);
  EXPECT_EQ(PriceOfAnarchy(ne, Cost(39)), MakeRatio(49, 39));
  EXPECT_EQ(PriceOfStability(ne, Cost(39)), MakeRatio(1, 1));
}

TEST(ConstrainedNeTest, Fig1Extremes) {
  const Game g = LoadGameFile(FixturePath("fig1.tng"));
  const FiniteGame fg(g, 8);
  NeSolver ne(fg);
  EXPECT_EQ(ne.BestSw(), 46);
  EXPECT_EQ(ne.WorstSw(), 50);
}

TEST(ConstrainedNeTest, JobsDoNotChangeResults) {
  const Game g = LoadGameFile(FixturePath("fig5.tng"));
  const FiniteGame fg(g, 8);
  NeSolver a(fg), b(fg);
  a.Precompute(1);
  b.Precompute(3);
  const auto wa = a.ConstrainedNe({SwAtMost(3, 45)});
  const auto wb = b.ConstrainedNe({SwAtMost(3, 45)});
  ASSERT_TRUE(wa && wb);
  EXPECT_EQ(wa->costs, wb->costs);
  EXPECT_EQ(FormatConfiguration(g, wa->play.terminal()),
            FormatConfiguration(g, wb->play.terminal()));
}

TEST(ConstrainedNeTest, SinglePlayerEquilibriaAreOptimal) {
  const Game g = ParseGame(
      "players 1\nvertex a affine 0 2\nvertex b affine 0 1\nvertex c affine 0 9\n"
      "vertex t affine 0 1\n"
      "edge a b 1..1\nedge a c 1..1\nedge b t 5..5\nedge c t 2..2\n"
      "edge t t 0..inf\nobjective all a t\n");
  const FiniteGame fg(g, 6);
  NeSolver ne(fg);
  EXPECT_EQ(ne.BestSw(), 6);
  EXPECT_EQ(ne.WorstSw(), 6);
  EXPECT_EQ(PriceOfAnarchy(ne, Cost(6)), MakeRatio(1, 1));
}

TEST(ConstrainedNeTest, UndefinedRatios) {
  const Game g = ParseGame(
      "players 2\nvertex a affine 1 1\nvertex b affine 1 1\n"
      "edge a b 1..inf\nedge a a 0..inf\nobjective all a a\n");
  const FiniteGame fg(g, 3);
  NeSolver ne(fg);
  EXPECT_EQ(ne.BestSw(), 0);
  EXPECT_FALSE(PriceOfAnarchy(ne, Cost(0)).has_value());
  EXPECT_FALSE(PriceOfStability(ne, Cost::Infinite()).has_value());
}

class RandomNeTest : public ::testing::TestWithParam<int> {};

TEST_P(RandomNeTest, ExtremesBracketBlindEquilibria) {
  std::mt19937_64 rng(GetParam());
  const Date h = 3 + GetParam() % 3;
  const Game g = testing::RandomGame(rng, {.horizon = h});
  const FiniteGame fg(g, h);
  NeSolver ne(fg);
  const Cost so = SocialOptimumValue(fg);
  const auto best = ne.BestSw();
  const auto worst = ne.WorstSw();
  const auto blind = BruteBlindEquilibria(fg, h, {});
  ASSERT_EQ(best.has_value(), worst.has_value());
  if (!best) {
    EXPECT_TRUE(blind.empty());
    return;
  }
  EXPECT_GE(Cost(*best), so);
  EXPECT_LE(*best, *worst);
  for (const BlindEquilibrium& e : blind) {
    EXPECT_LE(Cost(*best), e.sw);
    EXPECT_GE(Cost(*worst), e.sw);
  }
  const auto w = ne.ConstrainedNe({SwAtMost(g.player_count(), *best)});
  ASSERT_TRUE(w.has_value());
  EXPECT_EQ(w->sw, *best);
  EXPECT_TRUE(ne.CheckOutcome(w->play).ok);
  EXPECT_FALSE(ne.ConstrainedNe({SwAtMost(g.player_count(), *best - 1)}).has_value());
  const auto poa = PriceOfAnarchy(ne, so);
  const auto pos = PriceOfStability(ne, so);
  if (so.IsFinite() && so.value() > 0) {
    ASSERT_TRUE(poa && pos);
    EXPECT_TRUE(RatioLessEq(MakeRatio(1, 1), *pos));
    EXPECT_TRUE(RatioLessEq(*pos, *poa));
  }
}

TEST_P(RandomNeTest, OutcomeVerdictsMatchConcreteDeviations) {
  std::mt19937_64 rng(GetParam() + 1000);
  const Date h = 3 + GetParam() % 3;
  const Game g = testing::RandomGame(rng, {.horizon = h});
  const FiniteGame fg(g, h);
  NeSolver ne(fg);
  for (int k = 0; k < 4; ++k) {
    const Play p = RandomPlay(fg, rng);
    EXPECT_EQ(testing::CrossCheckOutcome(ne, p, rng, 20), "");
  }
  for (const BlindEquilibrium& e : BruteBlindEquilibria(fg, h, {})) {
    const Play p = fg.OutcomeOfBlind(e.profile);
    EXPECT_TRUE(ne.CheckOutcome(p).ok);
    EXPECT_EQ(testing::CrossCheckOutcome(ne, p, rng, 10), "");
  }
}

INSTANTIATE_TEST_SUITE_P(Seeds, RandomNeTest, ::testing::Range(0, 40));

}  // namespace
}  // namespace tng
