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

#ifndef HRUSH_WORKSPACE_H_
#define HRUSH_WORKSPACE_H_

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "hrush/limits.h"
#include "hrush/pregeometry.h"
#include "hrush/signature.h"
#include "hrush/structure.h"

namespace hrush {

struct NamedSignature {
  std::string name;
  Signature signature;

  friend bool operator==(const NamedSignature&,
                         const NamedSignature&) = default;
};

struct NamedStructure {
  std::string name;
  std::string signature;
  RelStructure structure;

  friend bool operator==(const NamedStructure&,
                         const NamedStructure&) = default;
};

struct NamedPregeometry {
  std::string name;
  Pregeometry pregeometry;

  friend bool operator==(const NamedPregeometry&,
                         const NamedPregeometry&) = default;
};

// The contents of one or more input files, in declaration order. Names are
// unique per kind.
struct Workspace {
  std::vector<NamedSignature> signatures;
  std::vector<NamedStructure> structures;
  std::vector<NamedPregeometry> pregeometries;
  // Recognized keys: cap, lift_cap, lift_arity_cap, catalog_cap, seed,
  // budget, rounds.
  std::map<std::string, int64_t> config;

  // Throw ArgumentError when the name is unknown.
  const Signature& GetSignature(std::string_view name) const;
  const RelStructure& GetStructure(std::string_view name) const;
  const Pregeometry& GetPregeometry(std::string_view name) const;
  bool HasStructure(std::string_view name) const;
  bool HasPregeometry(std::string_view name) const;

  // Default limits overridden by the config block.
  Limits limits() const;

  // Appends the items of `other`; throws ArgumentError on a name clash.
  void Merge(const Workspace& other);

  friend bool operator==(const Workspace&, const Workspace&) = default;
};

// Parses the workspace grammar (docs/grammar.md). Throws ParseError with
// the line and column of the offending token.
Workspace Parse(std::string_view text);

// Inverse of Parse: Parse(Serialize(w)) == w.
std::string Serialize(const Workspace& w);

std::string SerializeSignature(const std::string& name, const Signature& s);
std::string SerializeStructure(const std::string& name,
                               const std::string& signature,
                               const RelStructure& m);
std::string SerializePregeometry(const std::string& name,
                                 const Pregeometry& p);
// A self-contained block: a signature named <name>_sig followed by the
// structure.
std::string SerializeStandalone(const std::string& name,
                                const RelStructure& m);

}  // namespace hrush

#endif  // HRUSH_WORKSPACE_H_
