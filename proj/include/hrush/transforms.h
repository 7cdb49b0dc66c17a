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

#ifndef HRUSH_TRANSFORMS_H_
#define HRUSH_TRANSFORMS_H_

#include <map>
#include <string>
#include <vector>

#include "hrush/structure.h"

namespace hrush {

struct ReplaceOptions {
  // Throw NotSelfSufficientError unless A <= M.
  bool require_self_sufficient = true;
  // Throw DomainError unless PgExtract(Induced(M, A)) == PgExtract(A_new).
  bool require_same_pregeometry = false;
};

// Swaps the relations lying inside A for those of `a_new`, which must have
// exactly the points of A. Symbols of `a_new` must be compatible with M's
// signature. Throws ArgumentError on a point-set or signature mismatch and
// DomainError when `a_new` is not in the class.
RelStructure ReplaceSubstructure(const RelStructure& m, const PointSet& a,
                                 const RelStructure& a_new,
                                 const ReplaceOptions& options = {});

// One diagonal tuple (c, ..., c) per point of `z`, under the weight-1
// symbol of arity `n` in `signature` (R<n> in open mode). The default
// signature is the single symbol R of arity n.
RelStructure DiagonalSaturate(const std::vector<std::string>& z, int n);
RelStructure DiagonalSaturate(const std::vector<std::string>& z, int n,
                              const Signature& signature);

// Rewrites every tuple of a symbol i with target[i] = j != i into
// weight(i)/weight(j) tuples of j over the same underlying set, choosing the
// lexicographically least unused tuples that use every point of the set.
// Symbols missing from `target` are kept. Throws ArgumentError when the map
// is not admissible and DomainError when no room is left.
RelStructure PiReduce(const RelStructure& m,
                      const std::map<std::string, std::string>& target);

// Replaces the tuple `names` of `symbol` (arity n >= 4) by n-1 fresh points
// x_1..x_{n-1}, the chain (b_k, x_k, b_{k+1}) under the weight-1 ternary
// symbol and (x_1, ..., x_{n-1}) under the weight-1 (n-1)-ary symbol.
RelStructure DeriveTuple(const RelStructure& m, const std::string& symbol,
                         const std::vector<std::string>& names);

// Applies DeriveTuple until only ternary tuples remain. Tuples of arity
// >= 4 are processed in enumeration order and each derivative is handled
// right after its parent.
RelStructure DeriveSaturate(const RelStructure& m);

// (a, b, c) -> (a, b, c, c, ..., c) of length n, for a structure over a
// single ternary weight-1 symbol.
RelStructure PadArity(const RelStructure& m, int n);

// The names DeriveTuple gives to the fresh points for this tuple.
std::vector<std::string> DerivedPointNames(const RelStructure& m,
                                           const std::string& symbol,
                                           const std::vector<std::string>& names);

}  // namespace hrush

#endif  // HRUSH_TRANSFORMS_H_
