// Copyright 2026 The Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "hrush/pclass.h"

#include <gtest/gtest.h>

#include <functional>

#include "fixtures.h"
#include "hrush/closure.h"
#include "hrush/core.h"
#include "hrush/error.h"
#include "hrush/random.h"
#include "hrush/transforms.h"
#include "oracle.h"

namespace hrush {
namespace {

using testing::S1;
using Names = std::vector<std::string>;

// Every in-class structure over R of the given arity on P's ground set
// with at most |G| - rank(G) tuples; a lift has exactly that many, since
// the predimension of G must equal its rank.
void ForEachBruteStructure(const Pregeometry& p, int arity,
                           const std::function<void(const RelStructure&)>& f) {
  const int g = p.size();
  std::vector<Tuple> all;
  if (g > 0) {
    std::vector<int> digits(arity, 0);
    while (true) {
      all.push_back(digits);
      int i = arity - 1;
      while (i >= 0 && digits[i] == g - 1) digits[i--] = 0;
      if (i < 0) break;
      ++digits[i];
    }
  }
  std::vector<Tuple> chosen;
  std::function<void(size_t)> rec = [&](size_t from) {
    StructureBuilder b(Signature::Single(arity));
    b.AddPoints(p.ground());
    for (const Tuple& t : chosen) {
      Names names;
      for (int i : t) names.push_back(p.ground()[i]);
      b.AddTuple("R", names);
    }
    RelStructure m = b.Build();
    if (!oracle::InClass(m)) return;
    f(m);
    if (static_cast<int>(chosen.size()) == g - p.Rank(p.full())) return;
    for (size_t i = from; i < all.size(); ++i) {
      chosen.push_back(all[i]);
      rec(i + 1);
      chosen.pop_back();
    }
  };
  rec(0);
}

bool IsBruteLift(const RelStructure& m, const Pregeometry& p) {
  std::vector<int> rank = oracle::RankTable(m);
  for (PgMask s = 0; s <= p.full(); ++s) {
    if (rank[s] != p.Rank(s)) return false;
  }
  return true;
}

bool BruteHasLift(const Pregeometry& p, int arity) {
  bool found = false;
  ForEachBruteStructure(p, arity, [&](const RelStructure& m) {
    found = found || IsBruteLift(m, p);
  });
  return found;
}

bool BruteStrongSub(const Pregeometry& a, const Pregeometry& b, int arity) {
  const PgMask a_mask = b.MaskOf(a.ground());
  bool found = false;
  ForEachBruteStructure(b, arity, [&](const RelStructure& m) {
    found = found ||
            (IsBruteLift(m, b) && oracle::IsSelfSufficient(m, a_mask));
  });
  return found;
}

Pregeometry Renamed(const Pregeometry& p, const Names& names) {
  std::vector<int> table(p.table().begin(), p.table().end());
  return Pregeometry::Create(names, table);
}

TEST(LiftSearchTest, FreePregeometryHasEmptyLift) {
  for (int arity = 1; arity <= 4; ++arity) {
    LiftResult r = LiftSearch(Pregeometry::Free({"x", "y", "z"}), arity);
    ASSERT_TRUE(r.lift.has_value());
    EXPECT_EQ(r.lift->TupleCount(), 0);
    EXPECT_TRUE(r.exhaustive);
  }
}

TEST(LiftSearchTest, FourPointRankThree) {
  Pregeometry p = PgExtract(S1());
  LiftResult four = LiftSearch(p, 4);
  ASSERT_TRUE(four.lift.has_value());
  EXPECT_EQ(*four.lift, S1());
  LiftResult three = LiftSearch(p, 3);
  EXPECT_FALSE(three.lift.has_value());
  EXPECT_TRUE(three.exhaustive);
}

TEST(LiftSearchTest, MatchesBruteForce) {
  struct Case {
    int size;
    int arity;
  };
  for (Case c : {Case{0, 3}, Case{1, 3}, Case{2, 3}, Case{3, 3},
                 Case{3, 2}, Case{4, 2}, Case{2, 1}}) {
    for (const Pregeometry& p : EnumeratePregeometries(c.size)) {
      LiftResult r = LiftSearch(p, c.arity);
      EXPECT_EQ(r.lift.has_value(), BruteHasLift(p, c.arity))
          << c.size << " " << c.arity;
      if (r.lift) {
        EXPECT_TRUE(InClass(*r.lift));
        EXPECT_EQ(PgExtract(*r.lift), p);
      }
    }
  }
}

TEST(LiftSearchTest, EveryVisitedLiftIsALift) {
  for (const Pregeometry& p : EnumeratePregeometries(4)) {
    int count = 0;
    ForEachLift(p, 3, {}, [&](const RelStructure& m) {
      EXPECT_TRUE(InClass(m));
      EXPECT_EQ(PgExtract(m), p);
      ++count;
      return true;
    });
    EXPECT_EQ(count > 0, LiftSearch(p, 3).lift.has_value());
  }
}

TEST(LiftSearchTest, ThreeLiftsPadToFourLifts) {
  for (const Pregeometry& p : EnumeratePregeometries(4)) {
    LiftResult r = LiftSearch(p, 3);
    if (!r.lift) continue;
    RelStructure padded = PadArity(*r.lift, 4);
    EXPECT_TRUE(InClass(padded));
    EXPECT_EQ(PgExtract(padded), p);
    EXPECT_TRUE(LiftSearch(p, 4).lift.has_value());
  }
}

TEST(LiftSearchTest, Caps) {
  Pregeometry big = Pregeometry::Free({"a", "b", "c", "d", "e", "f"});
  EXPECT_THROW(LiftSearch(big, 3), SizeLimitError);
  EXPECT_THROW(LiftSearch(Pregeometry::Free({"a"}), 6), SizeLimitError);
  Limits wide;
  wide.lift_ground_cap = 6;
  EXPECT_TRUE(LiftSearch(big, 3, wide).lift.has_value());
}

TEST(IsStrongSubTest, Examples) {
  Pregeometry p = PgExtract(S1());
  EXPECT_TRUE(IsStrongSub(Pregeometry(), p, 4).holds);
  EXPECT_FALSE(IsStrongSub(Pregeometry(), p, 3).holds);
  EXPECT_TRUE(IsStrongSub(p, p, 4).holds);

  // A rank-0 point p under a free point q.
  Pregeometry b = Pregeometry::Create({"p", "q"}, std::vector<int>{0, 0, 1, 1});
  Pregeometry a = PgRestrict(b, b.MaskOf({"p"}));
  StrongSubResult r = IsStrongSub(a, b, 3);
  ASSERT_TRUE(r.holds);
  EXPECT_TRUE(r.lift->Contains(0, {0, 0, 0}));
  EXPECT_EQ(r.lift->TupleCount(), 1);
  EXPECT_TRUE(IsSelfSufficient(*r.lift, MakeSubset(*r.lift, {"p"})));
}

// Two three-point lines through p0. It has a ternary lift, but its
// restriction to the four points off p0 is the rank-3 uniform pregeometry,
// which needs a 4-ary tuple.
Pregeometry TwoLines() {
  RelStructure m = StructureBuilder(Signature::Single(3))
                       .AddPoints(Names{"p0", "p1", "p2", "p3", "p4"})
                       .AddTuple("R", {"p0", "p1", "p2"})
                       .AddTuple("R", {"p0", "p3", "p4"})
                       .Build();
  return PgExtract(m);
}

TEST(IsStrongSubTest, RestrictionWithoutLift) {
  Pregeometry b = TwoLines();
  Pregeometry a = PgRestrict(b, b.MaskOf({"p1", "p2", "p3", "p4"}));
  EXPECT_EQ(a.table(), Renamed(PgExtract(S1()), a.ground()).table());
  EXPECT_FALSE(LiftSearch(a, 3).lift.has_value());
  EXPECT_FALSE(IsStrongSub(a, b, 3).holds);
  EXPECT_FALSE(BruteStrongSub(a, b, 3));
  // With 4-ary tuples A has a lift, but two tuples cannot make both lines
  // and leave one inside A.
  EXPECT_TRUE(LiftSearch(a, 4).lift.has_value());
  EXPECT_FALSE(IsStrongSub(a, b, 4).holds);
  EXPECT_FALSE(BruteStrongSub(a, b, 4));
}

TEST(IsStrongSubTest, RejectsNonRestriction) {
  Pregeometry b = Pregeometry::Free({"p", "q"});
  Pregeometry loop = Pregeometry::Create({"p"}, std::vector<int>{0, 0});
  EXPECT_THROW(IsStrongSub(loop, b, 3), ArgumentError);
  EXPECT_THROW(IsStrongSub(Pregeometry::Free({"z"}), b, 3), ArgumentError);
}

TEST(IsStrongSubTest, MatchesBruteForce) {
  for (int size = 0; size <= 3; ++size) {
    for (const Pregeometry& b : EnumeratePregeometries(size)) {
      for (PgMask s = 0; s <= b.full(); ++s) {
        Pregeometry a = PgRestrict(b, s);
        for (int arity : {2, 3}) {
          EXPECT_EQ(IsStrongSub(a, b, arity).holds,
                    BruteStrongSub(a, b, arity));
        }
      }
    }
  }
}

TEST(IsStrongSubTest, InvariantUnderRenaming) {
  const Names renamed = {"w", "v", "u", "t"};
  for (const Pregeometry& b : EnumeratePregeometries(4)) {
    Pregeometry b2 = Renamed(b, renamed);
    for (PgMask s = 0; s <= b.full(); ++s) {
      Pregeometry a = PgRestrict(b, s);
      Names image;
      for (int i = 0; i < 4; ++i) {
        if (s >> i & 1) image.push_back(renamed[i]);
      }
      Pregeometry a2 = PgRestrict(b2, b2.MaskOf(image));
      EXPECT_EQ(IsStrongSub(a, b, 3).holds, IsStrongSub(a2, b2, 3).holds);
    }
  }
}

TEST(IsStrongSubTest, TransitiveUpToFourPoints) {
  int chains = 0;
  for (const Pregeometry& c : PclassMembers(3, 4)) {
    for (PgMask bm = 0; bm <= c.full(); ++bm) {
      Pregeometry b = PgRestrict(c, bm);
      if (!IsStrongSub(b, c, 3).holds) continue;
      for (PgMask am = bm;; am = (am - 1) & bm) {
        Pregeometry a = PgRestrict(c, am);
        if (IsStrongSub(a, b, 3).holds) {
          ++chains;
          EXPECT_TRUE(IsStrongSub(a, c, 3).holds);
        }
        if (am == 0) break;
      }
    }
  }
  EXPECT_GT(chains, 0);
}

TEST(PregeomAmalgamTest, AllEqual) {
  Pregeometry p = PgExtract(S1());
  PgAmalgamResult r = PregeomAmalgam(p, p, p, 4);
  EXPECT_EQ(r.p, p);
  for (const std::string& x : p.ground()) {
    EXPECT_EQ(r.from_a1(x), x);
    EXPECT_EQ(r.from_a2(x), x);
  }
}

TEST(PregeomAmalgamTest, TwoFreePoints) {
  Pregeometry a = Pregeometry::Free({"a"});
  PgAmalgamResult r = PregeomAmalgam(Pregeometry(), a, a, 3);
  EXPECT_EQ(r.p, Pregeometry::Free({"a", "a_2"}));
  EXPECT_EQ(r.from_a2("a"), "a_2");
}

TEST(PregeomAmalgamTest, OverAFreePoint) {
  RelStructure abc = StructureBuilder(Signature::Single(3))
                         .AddPoints(Names{"a", "b", "c"})
                         .AddTuple("R", {"a", "b", "c"})
                         .Build();
  Pregeometry a1 = PgExtract(abc);
  Pregeometry a0 = PgRestrict(a1, a1.MaskOf({"a"}));
  Pregeometry a2 = Pregeometry::Free({"a", "x", "y"});
  PgAmalgamResult r = PregeomAmalgam(a0, a1, a2, 3);
  EXPECT_EQ(r.p.size(), 5);
  EXPECT_TRUE(PgIsMatroid(r.p.table()));
  EXPECT_EQ(r.p.Rank(r.p.full()), 4);
  EXPECT_EQ(PgRestrict(r.p, r.p.MaskOf(a1.ground())), a1);
  EXPECT_EQ(PgRestrict(r.p, r.p.MaskOf(a2.ground())), a2);
  EXPECT_TRUE(IsStrongSub(a1, r.p, 3).holds);
  EXPECT_TRUE(IsStrongSub(a2, r.p, 3).holds);
}

TEST(PregeomAmalgamTest, FailingHypothesis) {
  Pregeometry b = TwoLines();
  Pregeometry a0 = PgRestrict(b, b.MaskOf({"p1", "p2", "p3", "p4"}));
  try {
    PregeomAmalgam(a0, b, b, 3);
    FAIL() << "expected DomainError";
  } catch (const DomainError& e) {
    EXPECT_NE(std::string(e.what()).find("A1"), std::string::npos);
  }
}

// Splits members of size <= 4 into two overlapping restrictions and
// amalgamates them back.
TEST(PregeomAmalgamTest, OutputsAreStrongMatroids) {
  int done = 0;
  for (const Pregeometry& c : PclassMembers(3, 4)) {
    if (c.size() != 4) continue;
    for (PgMask x1 : {PgMask{0b0011}, PgMask{0b0111}}) {
      for (PgMask x2 : {PgMask{0b1100}, PgMask{0b1110}}) {
        Pregeometry a1 = PgRestrict(c, x1);
        Pregeometry a2 = PgRestrict(c, x2);
        Pregeometry a0 = PgRestrict(c, x1 & x2);
        if (!IsStrongSub(a0, a1, 3).holds || !IsStrongSub(a0, a2, 3).holds) {
          continue;
        }
        PgAmalgamResult r = PregeomAmalgam(a0, a1, a2, 3);
        ASSERT_TRUE(PgIsMatroid(r.p.table()));
        EXPECT_TRUE(IsStrongSub(a1, r.p, 3).holds);
        Names image;
        for (const std::string& x : a2.ground()) image.push_back(r.from_a2(x).value());
        Pregeometry a2_image = PgRestrict(r.p, r.p.MaskOf(image));
        EXPECT_EQ(a2_image.table(), a2.table());
        EXPECT_TRUE(IsStrongSub(a2_image, r.p, 3).holds);
        ++done;
      }
    }
  }
  EXPECT_GT(done, 0);
}

TEST(PclassGenericBuildTest, ZeroRounds) {
  PregeometryChain c = PclassGenericBuild(3, {.rounds = 0});
  ASSERT_EQ(c.tables.size(), 1u);
  ASSERT_TRUE(c.tables[0].has_value());
  EXPECT_EQ(*c.tables[0], Pregeometry());
}

TEST(PclassGenericBuildTest, SmallMembersEmbedInFirstStage) {
  PregeometryChain c = PclassGenericBuild(3, {.catalog_bound = 3, .rounds = 1});
  const RelStructure& m1 = c.chain.stages[1];
  std::vector<Pregeometry> members = PclassMembers(3, 3);
  EXPECT_FALSE(members.empty());
  for (const Pregeometry& p : members) {
    auto g = PgStrongEmbed(p, m1, 3);
    ASSERT_TRUE(g.has_value());
    Names image;
    for (const std::string& x : p.ground()) image.push_back(g->image.at(x));
    PointSet s = MakeSubset(m1, image);
    EXPECT_TRUE(IsSelfSufficient(m1, s));
    for (PgMask sub = 0; sub <= p.full(); ++sub) {
      Names part;
      for (const std::string& x : p.Names(sub)) part.push_back(g->image.at(x));
      EXPECT_EQ(Dimension(m1, MakeSubset(m1, part)), p.Rank(sub));
    }
  }
}

TEST(PclassGenericBuildTest, StagesRestrictToEarlierStages) {
  PregeometryChain small = PclassGenericBuild(3, {.catalog_bound = 1, .rounds = 3});
  for (size_t i = 0; i + 1 < small.tables.size(); ++i) {
    ASSERT_TRUE(small.tables[i] && small.tables[i + 1]);
    const Pregeometry& later = *small.tables[i + 1];
    EXPECT_EQ(PgRestrict(later, later.MaskOf(small.tables[i]->ground())),
              *small.tables[i]);
  }
  // Too large for tables: compare dimensions on random subsets instead.
  PregeometryChain c = PclassGenericBuild(3, {.catalog_bound = 2, .rounds = 2});
  EXPECT_FALSE(c.tables[1].has_value());
  Rng rng(4);
  for (size_t i = 1; i + 1 < c.chain.stages.size(); ++i) {
    const RelStructure& m = c.chain.stages[i];
    const RelStructure& next = c.chain.stages[i + 1];
    for (int trial = 0; trial < 200; ++trial) {
      PointSet s = RandomSubset(rng, m, 5);
      EXPECT_EQ(Dimension(m, s),
                Dimension(next, MakeSubset(next, SubsetNames(m, s))));
    }
  }
}

}  // namespace
}  // namespace hrush
