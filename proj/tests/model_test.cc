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

#include <gtest/gtest.h>

#include <random>

#include "test_games.h"

namespace tng {
namespace {

using testing::FixturePath;

TEST(GuardTest, NormalizeMergesOverlappingAndAdjacent) {
  const Guard g =
      Guard::Normalize({{5, 6}, {1, 2}, {3, 3}, {4, 5}, {8, kUnbounded}, {9, 12}});
  ASSERT_EQ(g.intervals().size(), 2u);
  EXPECT_EQ(g.intervals()[0], (Interval{1, 6}));
  EXPECT_EQ(g.intervals()[1], (Interval{8, kUnbounded}));
  EXPECT_EQ(Guard::Normalize({{1, 2}, {4, 5}}).intervals().size(), 2u);
  EXPECT_TRUE(g.IsUnbounded());
}

TEST(GuardTest, Contains) {
  const Guard g = Guard::Normalize({{2, 3}, {6, 6}});
  EXPECT_FALSE(g.Contains(1));
  EXPECT_TRUE(g.Contains(2));
  EXPECT_TRUE(g.Contains(3));
  EXPECT_FALSE(g.Contains(4));
  EXPECT_TRUE(g.Contains(6));
  EXPECT_FALSE(g.Contains(7));
  EXPECT_TRUE(Guard::Always().Contains(0));
  EXPECT_TRUE(Guard::Always().Contains(1'000'000));
}

TEST(GuardTest, NextAfter) {
  const Guard g = Guard::Normalize({{2, 3}, {6, 6}});
  EXPECT_EQ(g.NextAfter(0), 2);
  EXPECT_EQ(g.NextAfter(2), 3);
  EXPECT_EQ(g.NextAfter(3), 6);
  EXPECT_EQ(g.NextAfter(6), std::nullopt);
}

TEST(GuardTest, MaxConstant) {
  EXPECT_EQ(Guard::Normalize({{2, 3}, {6, 6}}).MaxConstant(), 6);
  EXPECT_EQ(Guard::Normalize({{2, 3}, {6, kUnbounded}}).MaxConstant(), 6);
  EXPECT_EQ(Guard::Always().MaxConstant(), 0);
}

TEST(GuardTest, RejectsMalformedIntervals) {
  EXPECT_THROW(Guard::Normalize({}), std::invalid_argument);
  EXPECT_THROW(Guard::Normalize({{3, 2}}), std::invalid_argument);
  EXPECT_THROW(Guard::Normalize({{-1, 2}}), std::invalid_argument);
}

TEST(WeightFnTest, AffineAndTable) {
  EXPECT_EQ(WeightFn::Affine(5, 0).Eval(2), 10);
  EXPECT_EQ(WeightFn::Affine(0, 1).Eval(7), 1);
  const WeightFn t = WeightFn::Table({1, 4, 9});
  EXPECT_EQ(t.Eval(1), 1);
  EXPECT_EQ(t.Eval(3), 9);
  EXPECT_THROW(t.Eval(4), std::domain_error);
  EXPECT_THROW(t.Eval(0), std::domain_error);
}

TEST(ParseTest, Fig1BoundsAndShape) {
  const Game g = LoadGameFile(FixturePath("fig1.tng"));
  EXPECT_EQ(g.player_count(), 2);
  EXPECT_TRUE(g.symmetric());
  EXPECT_EQ(g.network().vertex_count(), 8);
  const GameBounds b = ComputeBounds(g);
  EXPECT_EQ(b.max_int, 6);
  EXPECT_EQ(b.max_cost, 26);
  EXPECT_EQ(b.max_time, 26 * (6 + 8));
  EXPECT_TRUE(Validate(g).empty());
}

TEST(ParseTest, Fig5BoundsAndShape) {
  const Game g = LoadGameFile(FixturePath("fig5.tng"));
  EXPECT_EQ(g.player_count(), 3);
  const GameBounds b = ComputeBounds(g);
  EXPECT_EQ(b.max_int, 8);
  EXPECT_EQ(b.max_cost, 9);
  EXPECT_EQ(b.max_time, 9 * (8 + 17));
  EXPECT_TRUE(Validate(g).empty());
}

TEST(ParseTest, RenderRoundTrips) {
  for (const char* name : {"fig1.tng", "fig5.tng"}) {
    const Game g = LoadGameFile(FixturePath(name));
    EXPECT_EQ(ParseGame(RenderGame(g)), g) << name;
  }
  std::mt19937_64 rng(7);
  for (int k = 0; k < 50; ++k) {
    const Game g = testing::RandomGame(rng, {});
    EXPECT_EQ(ParseGame(RenderGame(g)), g);
  }
}

TEST(ParseTest, AsymmetricObjectives) {
  const Game g = ParseGame(
      "players 3\n"
      "vertex a affine 1 1\nvertex b affine 1 1\nvertex c table 1 2 3\n"
      "edge a b 1..2\nedge a c 1..inf\nedge b b 0..inf\nedge c c 0..inf\n"
      "objective count a b 2\nobjective count a c 1\n");
  EXPECT_FALSE(g.symmetric());
  EXPECT_EQ(g.tgt(0), 1);
  EXPECT_EQ(g.tgt(1), 1);
  EXPECT_EQ(g.tgt(2), 2);
}

TEST(ParseTest, DuplicateEdgeGuardsAreMerged) {
  const Game g = ParseGame(
      "players 1\nvertex a affine 0 1\nvertex b affine 0 1\n"
      "edge a b 1..1\nedge a b 2..3\nobjective all a b\n");
  ASSERT_EQ(g.network().edges().size(), 1u);
  EXPECT_EQ(g.network().edges()[0].guard.intervals()[0], (Interval{1, 3}));
}

TEST(ParseTest, Errors) {
  const std::string head = "players 2\nvertex a affine 1 0\nvertex b affine 1 0\n";
  auto fails = [](const std::string& text, int line) {
    try {
      ParseGame(text);
    } catch (const ParseError& e) {
      EXPECT_EQ(e.line(), line) << e.what();
      return;
    }
    ADD_FAILURE() << "accepted: " << text;
  };
  fails(head + "edge a z 1..2\nobjective all a b\n", 4);
  fails(head + "vertex a affine 1 0\n", 4);
  fails("players 2\nvertex a table 1\nedge a a 0..inf\nobjective all a a\n", 2);
  fails(head + "edge a b 3..1\n", 4);
  fails(head + "objective all a b\nobjective count a b 1\n", 5);
  fails(head + "edge a b 1..2\nfrobnicate\n", 5);
  EXPECT_THROW(ParseGame(head + "objective count a b 1\n"), ParseError);
}

TEST(ValidateTest, DetectsUnreachableTarget) {
  const Game g = ParseGame(
      "players 1\nvertex a affine 0 1\nvertex b affine 0 1\nvertex c affine 0 1\n"
      "edge a c 1..inf\nedge c c 0..inf\nedge b b 0..inf\nobjective all a b\n");
  const auto v = Validate(g);
  ASSERT_FALSE(v.empty());
  EXPECT_EQ(v[0].kind, Violation::Kind::kUnreachableTarget);
}

TEST(ValidateTest, DetectsBlocking) {
  const Game g = ParseGame(
      "players 1\nvertex a affine 0 1\nvertex b affine 0 1\n"
      "edge a b 1..2\nedge b b 0..inf\nobjective all a b\n");
  const auto v = Validate(g);
  ASSERT_FALSE(v.empty());
  EXPECT_EQ(v[0].kind, Violation::Kind::kBlocking);
  EXPECT_EQ(v[0].vertex, 0);
}

}  // namespace
}  // namespace tng
