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

#ifndef HRUSH_PCLASS_H_
#define HRUSH_PCLASS_H_

#include <functional>
#include <optional>
#include <vector>

#include "hrush/embedding.h"
#include "hrush/genesis.h"
#include "hrush/limits.h"
#include "hrush/pregeometry.h"
#include "hrush/structure.h"

namespace hrush {

// Lifts are structures over the single weight-1 symbol R of the given arity
// whose extracted pregeometry is exactly P. A lift on ground G has exactly
// |G| - rank(G) tuples, and only the multiset of their point sets matters
// for the rank table, so the search runs over such multisets; within one
// point set the lexicographically least tuples are used.
//
// Every search below is exhaustive for inputs within the caps; larger
// inputs throw SizeLimitError rather than return a partial verdict.

struct LiftResult {
  std::optional<RelStructure> lift;
  // The search covered the whole space.
  bool exhaustive = true;
};

// The first lift of P in canonical order, or none.
LiftResult LiftSearch(const Pregeometry& p, int arity,
                      const Limits& limits = {});

// Visits every lift of P up to the choice of tuples within a point set.
// Stops when `visit` returns false; returns false iff it stopped early.
bool ForEachLift(const Pregeometry& p, int arity, const Limits& limits,
                 const std::function<bool(const RelStructure&)>& visit);

struct StrongSubResult {
  bool holds = false;
  // A lift of B whose restriction to A's points is self-sufficient.
  std::optional<RelStructure> lift;
  bool exhaustive = true;
};

// A <|_n B: some lift of B restricts to a self-sufficient lift of A. A must
// be the restriction of B to A's ground set (ArgumentError otherwise).
StrongSubResult IsStrongSub(const Pregeometry& a, const Pregeometry& b,
                            int arity, const Limits& limits = {});

struct PgAmalgamResult {
  Pregeometry p;
  EmbeddingMap from_a1;
  EmbeddingMap from_a2;
};

// Amalgamates A1 and A2 over their common restriction A0. Points of A2
// outside A0 whose names occur in A1 are renamed with a "_2" suffix.
// Throws DomainError naming the hypothesis that has no lift.
PgAmalgamResult PregeomAmalgam(const Pregeometry& a0, const Pregeometry& a1,
                               const Pregeometry& a2, int arity,
                               const Limits& limits = {});

struct PregeometryChain {
  GenericChain chain;
  // PG of each stage, for stages within the universe cap.
  std::vector<std::optional<Pregeometry>> tables;
};

// The generic chain over R of the given arity with its pregeometries.
PregeometryChain PclassGenericBuild(int arity,
                                    const GenericChainOptions& options);

// An embedding of P into PG(M) whose image is <|_n-strong: the image
// carries a self-sufficient lift of P. M must be over the single symbol of
// the given arity.
std::optional<EmbeddingMap> PgStrongEmbed(const Pregeometry& p,
                                          const RelStructure& m, int arity,
                                          const Limits& limits = {});

// Every pregeometry on p0..p{m-1}, m <= max_size, that has a lift.
std::vector<Pregeometry> PclassMembers(int arity, int max_size,
                                       const Limits& limits = {});

}  // namespace hrush

#endif  // HRUSH_PCLASS_H_
