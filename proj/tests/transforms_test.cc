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

#include "hrush/transforms.h"

#include <gtest/gtest.h>

#include "fixtures.h"
#include "hrush/closure.h"
#include "hrush/core.h"
#include "hrush/error.h"
#include "hrush/pregeometry.h"
#include "hrush/random.h"
#include "oracle.h"

namespace hrush {
namespace {

using testing::S1;
using testing::S2;

using Names = std::vector<std::string>;

RelStructure Abc() {
  return StructureBuilder(Signature::Single(3))
      .AddPoints(Names{"a", "b", "c"})
      .AddTuple("R", {"a", "b", "c"})
      .Build();
}

// Predimension agrees on every subset of the original points.
void ExpectSamePredim(const RelStructure& before, const RelStructure& after) {
  ASSERT_LE(after.size(), 20);
  for (uint64_t s = 0; s < (uint64_t{1} << before.size()); ++s) {
    Names names = SubsetNames(before, FromMask(before, s));
    ASSERT_EQ(oracle::Predim(before, s),
              oracle::Predim(after, ToMask(MakeSubset(after, names))));
  }
}

void ExpectSameDimension(const RelStructure& before,
                         const RelStructure& after) {
  for (uint64_t s = 0; s < (uint64_t{1} << before.size()); ++s) {
    Names names = SubsetNames(before, FromMask(before, s));
    ASSERT_EQ(oracle::Dimension(before, s),
              oracle::Dimension(after, ToMask(MakeSubset(after, names))));
  }
}

TEST(ReplaceTest, Example) {
  RelStructure m = Abc();
  PointSet ab = MakeSubset(m, {"a", "b"});
  ASSERT_TRUE(IsSelfSufficient(m, ab));
  RelStructure a_new = StructureBuilder(Signature::Single(3))
                           .AddPoints(Names{"a", "b"})
                           .AddTuple("R", {"a", "a", "b"})
                           .Build();
  RelStructure out = ReplaceSubstructure(m, ab, a_new);
  RelStructure expected = StructureBuilder(Signature::Single(3))
                              .AddPoints(Names{"a", "b", "c"})
                              .AddTuple("R", {"a", "b", "c"})
                              .AddTuple("R", {"a", "a", "b"})
                              .Build();
  EXPECT_EQ(out, expected);
  EXPECT_TRUE(oracle::InClass(out));
  EXPECT_TRUE(oracle::IsSelfSufficient(out, ToMask(ab)));
}

TEST(ReplaceTest, IdentityAndDiagonal) {
  RelStructure m = S1();
  PointSet ab = MakeSubset(m, {"a", "b"});
  EXPECT_EQ(ReplaceSubstructure(m, ab, Induced(m, ab)), m);
  RelStructure z = DiagonalSaturate({"a", "b"}, 4);
  RelStructure out = ReplaceSubstructure(m, ab, z);
  EXPECT_EQ(Predim(out, ab), 0);
}

TEST(ReplaceTest, Errors) {
  RelStructure m = S2();
  PointSet a = MakeSubset(m, {"a"});
  RelStructure one = StructureBuilder(Signature::Single(3)).AddPoint("a").Build();
  EXPECT_THROW(ReplaceSubstructure(m, a, one), NotSelfSufficientError);
  RelStructure wrong =
      StructureBuilder(Signature::Single(3)).AddPoint("b").Build();
  EXPECT_THROW(ReplaceSubstructure(m, a, wrong), ArgumentError);
  RelStructure bad = StructureBuilder(Signature::Single(3))
                         .AddPoints(Names{"a", "b", "c"})
                         .AddTuple("R", {"a", "b", "c"})
                         .AddTuple("R", {"a", "c", "b"})
                         .AddTuple("R", {"b", "a", "c"})
                         .AddTuple("R", {"c", "a", "b"})
                         .Build();
  EXPECT_THROW(ReplaceSubstructure(m, FullSet(m), bad), DomainError);
  RelStructure other = StructureBuilder(Signature::Single(2))
                           .AddPoint("a")
                           .AddTuple("R", {"a", "a"})
                           .Build();
  ReplaceOptions loose;
  loose.require_self_sufficient = false;
  EXPECT_THROW(ReplaceSubstructure(m, a, other, loose), ArgumentError);
  ReplaceOptions same_pg;
  same_pg.require_same_pregeometry = true;
  RelStructure s1 = S1();
  EXPECT_THROW(ReplaceSubstructure(s1, FullSet(s1), DiagonalSaturate(
                                                        s1.points(), 4),
                                   same_pg),
               DomainError);
}

TEST(DiagonalTest, Examples) {
  RelStructure z = DiagonalSaturate({"a", "b"}, 3);
  EXPECT_EQ(z.TupleCount(), 2);
  EXPECT_TRUE(z.Contains(0, {0, 0, 0}));
  EXPECT_TRUE(z.Contains(0, {1, 1, 1}));
  EXPECT_EQ(Predim(z, FullSet(z)), 0);
  RelStructure empty = DiagonalSaturate({}, 3);
  EXPECT_EQ(empty.size(), 0);
  RelStructure one = DiagonalSaturate({"a"}, 4);
  EXPECT_TRUE(one.Contains(0, {0, 0, 0, 0}));
  EXPECT_EQ(Predim(one, FullSet(one)), 0);
  EXPECT_TRUE(InClass(one));
}

TEST(PiReduceTest, Examples) {
  Signature sig({{"R3", 3, 1}, {"R4", 4, 1}});
  RelStructure m = StructureBuilder(sig)
                       .AddPoints(Names{"a", "b", "c"})
                       .AddTuple("R3", {"a", "b", "c"})
                       .Build();
  RelStructure out = PiReduce(m, {{"R3", "R4"}});
  ASSERT_EQ(out.signature().size(), 1);
  EXPECT_EQ(out.signature().symbol(0).name, "R4");
  ASSERT_EQ(out.relation(0).size(), 1u);
  EXPECT_EQ(TupleNames(out, out.relation(0)[0]), (Names{"a", "a", "b", "c"}));
  EXPECT_EQ(Predim(out, FullSet(out)), 2);
  EXPECT_EQ(PiReduce(m, {}), m);

  Signature heavy({{"R3", 3, 2}, {"R4", 4, 1}});
  RelStructure w = StructureBuilder(heavy)
                       .AddPoints(Names{"a", "b", "c"})
                       .AddTuple("R3", {"a", "b", "c"})
                       .Build();
  RelStructure wout = PiReduce(w, {{"R3", "R4"}});
  ASSERT_EQ(wout.relation(0).size(), 2u);
  EXPECT_EQ(TupleNames(wout, wout.relation(0)[0]),
            (Names{"a", "a", "b", "c"}));
  EXPECT_EQ(TupleNames(wout, wout.relation(0)[1]),
            (Names{"a", "a", "c", "b"}));
  ExpectSamePredim(w, wout);
}

TEST(PiReduceTest, RejectsInadmissibleMaps) {
  Signature sig({{"R3", 3, 1}, {"R4", 4, 2}, {"Q", 2, 1}});
  RelStructure m = StructureBuilder(sig).AddPoint("a").Build();
  EXPECT_THROW(PiReduce(m, {{"R3", "R4"}}), ArgumentError);
  EXPECT_THROW(PiReduce(m, {{"R3", "Q"}}), ArgumentError);
  EXPECT_THROW(PiReduce(m, {{"R3", "Z"}}), ArgumentError);
}

TEST(PiReduceTest, DetectsMissingRoom) {
  // Outside the class: three binary tuples on two points cannot all be
  // rewritten as distinct surjective binary tuples.
  Signature sig({{"P", 2, 1}, {"Q", 2, 1}});
  RelStructure m = StructureBuilder(sig)
                       .AddPoints(Names{"a", "b"})
                       .AddTuple("P", {"a", "b"})
                       .AddTuple("Q", {"a", "b"})
                       .AddTuple("Q", {"b", "a"})
                       .Build();
  EXPECT_THROW(PiReduce(m, {{"P", "Q"}}), DomainError);
}

TEST(PiReduceProperty, PreservesPredimOnEverySubset) {
  Signature sig({{"R3", 3, 1}, {"R4", 4, 1}});
  for (int trial = 0; trial < 200; ++trial) {
    Rng rng(TrialSeed(71, trial));
    RandomStructureOptions opt;
    opt.signature = sig;
    opt.max_points = 7;
    opt.max_tuples = 14;
    RelStructure m = RandomStructure(rng, opt);
    RelStructure out = PiReduce(m, {{"R3", "R4"}});
    ExpectSamePredim(m, out);
    EXPECT_TRUE(oracle::InClass(out));
  }
}

TEST(DeriveTest, S1Example) {
  RelStructure s1 =
      StructureBuilder(Signature::Open())
          .AddPoints(Names{"a", "b", "c", "d"})
          .AddTuple("R4", {"a", "b", "c", "d"})
          .Build();
  RelStructure out = DeriveTuple(s1, "R4", {"a", "b", "c", "d"});
  EXPECT_EQ(out.size(), 7);
  Names x = DerivedPointNames(s1, "R4", {"a", "b", "c", "d"});
  ASSERT_EQ(x.size(), 3u);
  RelStructure expected = StructureBuilder(Signature::Open())
                              .AddPoints(Names{"a", "b", "c", "d"})
                              .AddPoints(x)
                              .AddTuple("R3", {"a", x[0], "b"})
                              .AddTuple("R3", {"b", x[1], "c"})
                              .AddTuple("R3", {"c", x[2], "d"})
                              .AddTuple("R3", x)
                              .Build();
  EXPECT_EQ(out, expected);
  EXPECT_EQ(Predim(out, FullSet(out)), 3);
  ExpectSameDimension(s1, out);
  // The derivative is ternary, so nothing is left to derive.
  EXPECT_THROW(DeriveTuple(out, "R3", x), ArgumentError);
  EXPECT_EQ(DeriveSaturate(s1), out);
}

TEST(DeriveTest, Errors) {
  RelStructure s1 = StructureBuilder(Signature::Open())
                        .AddPoints(Names{"a", "b", "c", "d"})
                        .AddTuple("R4", {"a", "b", "c", "d"})
                        .Build();
  EXPECT_THROW(DeriveTuple(s1, "R4", {"a", "b", "d", "c"}), ArgumentError);
  // Weight-2 symbols are outside the derivation family.
  EXPECT_THROW(DeriveTuple(testing::SingleTuple(4), "R",
                           {"p0", "p1", "p2", "p3"}),
               ArgumentError);
}

TEST(DeriveTest, FiveAryChain) {
  RelStructure m = StructureBuilder(Signature::Open())
                       .AddPoints(Names{"a", "b", "c", "d", "e"})
                       .AddTuple("R5", {"a", "b", "c", "d", "e"})
                       .Build();
  RelStructure out = DeriveSaturate(m);
  // 5 + 4 + 3 points; 4 + 3 + 1 ternary tuples.
  EXPECT_EQ(out.size(), 12);
  ASSERT_EQ(out.signature().size(), 1);
  EXPECT_EQ(out.signature().symbol(0).arity, 3);
  EXPECT_EQ(out.relation(0).size(), 8u);
  EXPECT_TRUE(InClass(out));
  ExpectSameDimension(m, out);
  RelStructure ternary = StructureBuilder(Signature::Open())
                             .AddPoints(Names{"a", "b", "c"})
                             .AddTuple("R3", {"a", "b", "c"})
                             .Build();
  EXPECT_EQ(DeriveSaturate(ternary), ternary);
}

TEST(DeriveProperty, PreservesDimensionOnOriginalSubsets) {
  for (int trial = 0; trial < 60; ++trial) {
    Rng rng(TrialSeed(73, trial));
    RandomStructureOptions opt;
    opt.signature = Signature({{"R3", 3, 1}, {"R4", 4, 1}, {"R5", 5, 1}},
                              /*open_mode=*/true);
    opt.max_points = 6;
    opt.max_tuples = 5;
    RelStructure m = RandomStructure(rng, opt);
    RelStructure out = DeriveSaturate(m);
    for (const Symbol& s : out.signature().symbols()) {
      EXPECT_EQ(s.arity, 3);
    }
    EXPECT_TRUE(InClass(out));
    // Dimension via the library on the derived side (it can exceed 20
    // points) against the oracle on the original.
    for (uint64_t a = 0; a < (uint64_t{1} << m.size()); ++a) {
      PointSet orig = FromMask(m, a);
      PointSet mapped = MakeSubset(out, SubsetNames(m, orig));
      ASSERT_EQ(oracle::Dimension(m, a), Dimension(out, mapped)) << trial;
    }
  }
}

TEST(PadTest, Examples) {
  RelStructure m = Abc();
  RelStructure padded = PadArity(m, 4);
  EXPECT_EQ(TupleNames(padded, padded.relation(0)[0]),
            (Names{"a", "b", "c", "c"}));
  EXPECT_EQ(PadArity(m, 3), m);
  RelStructure s2 = PadArity(S2(), 5);
  EXPECT_EQ(s2.relation(0).size(), 3u);
  EXPECT_EQ(Predim(s2, FullSet(s2)), 0);
  EXPECT_THROW(PadArity(m, 2), ArgumentError);
  EXPECT_THROW(PadArity(S1(), 5), ArgumentError);
}

TEST(PadTest, SamePregeometryAsOriginal) {
  RelStructure s2 = S2();
  auto map = PgIso(PgExtract(s2), PgExtract(PadArity(s2, 4)));
  ASSERT_TRUE(map.has_value());
  for (const auto& [from, to] : map->image) EXPECT_EQ(from, to);
}

TEST(PadProperty, PreservesPredim) {
  for (int trial = 0; trial < 200; ++trial) {
    Rng rng(TrialSeed(79, trial));
    RelStructure m = RandomStructure(rng, {});
    RelStructure out = PadArity(m, 3 + trial % 3);
    ExpectSamePredim(m, out);
    EXPECT_TRUE(InClass(out));
  }
}

// Replacement properties, checked against the oracle.
class ReplacementTest : public ::testing::Test {
 protected:
  struct Case {
    RelStructure m;
    PointSet z;
    RelStructure z_new;
  };

  static Case Draw(uint64_t seed, bool same_pg) {
    Rng rng(seed);
    RandomStructureOptions opt;
    opt.signature = Signature({{"R", 3, 1}, {"Q", 2, 1}});
    opt.max_points = 8;
    opt.max_tuples = 14;
    RelStructure m = RandomStructure(rng, opt);
    PointSet z = SsClosure(m, RandomSubset(rng, m, 3));
    while (z.count() > 4) z.reset(z.find_first());
    z = SsClosure(m, z);
    RelStructure induced = Induced(m, z);
    RelStructure z_new = same_pg ? ReshuffleTuples(rng, induced)
                                 : RandomStructureOn(rng, induced.points(),
                                                     opt);
    return {m, z, z_new};
  }
};

TEST_F(ReplacementTest, KeepsClassAndSelfSufficiency) {
  for (int trial = 0; trial < 300; ++trial) {
    Case c = Draw(TrialSeed(83, trial), false);
    ASSERT_TRUE(oracle::IsSelfSufficient(c.m, ToMask(c.z)));
    RelStructure out = ReplaceSubstructure(c.m, c.z, c.z_new);
    EXPECT_TRUE(oracle::InClass(out)) << trial;
    EXPECT_TRUE(oracle::IsSelfSufficient(out, ToMask(c.z))) << trial;
  }
}

TEST_F(ReplacementTest, SamePregeometryKeepsRankTable) {
  for (int trial = 0; trial < 300; ++trial) {
    Case c = Draw(TrialSeed(89, trial), true);
    ASSERT_EQ(PgExtract(Induced(c.m, c.z)), PgExtract(c.z_new));
    RelStructure out = ReplaceSubstructure(c.m, c.z, c.z_new);
    EXPECT_EQ(oracle::RankTable(c.m), oracle::RankTable(out)) << trial;
  }
}

TEST_F(ReplacementTest, KeepsLocalizedRankTable) {
  for (int trial = 0; trial < 300; ++trial) {
    Case c = Draw(TrialSeed(97, trial), false);
    RelStructure out = ReplaceSubstructure(c.m, c.z, c.z_new);
    const PgMask z = static_cast<PgMask>(ToMask(c.z));
    EXPECT_EQ(PgLocalize(PgExtract(c.m), z), PgLocalize(PgExtract(out), z));
    RelStructure diag = DiagonalSaturate(c.z_new.points(), 3,
                                         c.m.signature());
    RelStructure flat = ReplaceSubstructure(c.m, c.z, diag);
    EXPECT_EQ(PgLocalize(PgExtract(c.m), z),
              PgRestrict(PgExtract(flat), PgExtract(flat).full() & ~z));
  }
}

}  // namespace
}  // namespace hrush
